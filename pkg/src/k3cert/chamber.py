"""Positive-cone geometry in signature (1, rank-1).

A Chamber is cut out by reflective walls (each an integral reflection
vector) plus optional non-reflective boundary faces derived from an
explicit list of extreme rays.  Wall inequalities are oriented so the
ample anchor is strictly inside.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from .lattice import IntegerLattice, LatticeError, mat_vec
from .isometry import Isometry, reflection_in
from .quadfield import QuadExt, sign_of, is_square


class ChamberError(LatticeError):
    pass


def in_positive_cone(lat, anchor, x):
    """True iff x has positive norm and pairs positively with the anchor."""
    if lat.norm(anchor) <= 0:
        raise ChamberError("anchor must have positive norm")
    return lat.norm(x) > 0 and lat.inner(x, anchor) > 0


def _clear_denominators(v):
    dens = [Fraction(c).denominator for c in v]
    lcm = 1
    for d in dens:
        lcm = lcm * d // _gcd(lcm, d)
    ints = [int(Fraction(c) * lcm) for c in v]
    g = 0
    for c in ints:
        g = _gcd(g, abs(c))
    if g > 1:
        ints = [c // g for c in ints]
    return tuple(ints)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


@dataclass(frozen=True)
class Chamber:
    lattice: IntegerLattice
    anchor: tuple
    walls: tuple               # reflection vectors
    extra_rays: tuple = None   # extreme rays of the chamber (rational coords)

    # derived, cached at construction
    wall_forms: tuple = field(default=None, compare=False)
    face_forms: tuple = field(default=None, compare=False)
    reflections: tuple = field(default=None, compare=False)

    def __post_init__(self):
        lat = self.lattice
        if lat.norm(self.anchor) <= 0:
            raise ChamberError("(anchor, anchor) must be positive")
        forms = []
        refls = []
        for w in self.walls:
            row = lat.pairing_row(w)
            val = sum(r * a for r, a in zip(row, self.anchor))
            if val == 0:
                raise ChamberError("wall %s passes through the anchor" % (w,))
            s = 1 if val > 0 else -1
            forms.append(tuple(s * r for r in row))
            refls.append(reflection_in(lat, w))
        object.__setattr__(self, "wall_forms", tuple(forms))
        object.__setattr__(self, "reflections", tuple(refls))
        if self.extra_rays is not None:
            object.__setattr__(self, "face_forms",
                               self._facets_from_rays(self.extra_rays))

    def _facets_from_rays(self, rays):
        """Facet inequalities of the cone over the given rays (rank 3)."""
        if self.lattice.rank != 3:
            raise ChamberError("ray-derived faces implemented for rank 3")
        rs = [_clear_denominators(r) for r in rays]
        facets = []
        for i in range(len(rs)):
            for j in range(i + 1, len(rs)):
                n = _cross(rs[i], rs[j])
                if all(c == 0 for c in n):
                    continue
                vals = [sum(nc * rc for nc, rc in zip(n, r)) for r in rs]
                if all(v >= 0 for v in vals):
                    f = n
                elif all(v <= 0 for v in vals):
                    f = tuple(-c for c in n)
                else:
                    continue
                f = _clear_denominators(f)
                if f not in facets:
                    facets.append(f)
        return tuple(facets)

    def wall_value(self, i, x):
        """Oriented wall form i evaluated at x (exact, QuadExt-safe)."""
        row = self.wall_forms[i]
        acc = 0
        for r, c in zip(row, x):
            acc = acc + r * c
        return acc

    def face_value(self, f, x):
        acc = 0
        for r, c in zip(f, x):
            acc = acc + r * c
        return acc


def in_chamber(chamber, x):
    """Boundary-inclusive membership in the chamber."""
    if chamber.face_forms is not None:
        return all(chamber.face_value(f, x) >= 0 for f in chamber.face_forms)
    return all(chamber.wall_value(i, x) >= 0 for i in range(len(chamber.walls)))


def walls_satisfied(chamber, x):
    return all(chamber.wall_value(i, x) >= 0 for i in range(len(chamber.walls)))


@dataclass(frozen=True)
class ReductionTrace:
    word: tuple    # 1-based wall indices, in the order they were applied
    result: tuple

    def unreduce(self, chamber):
        """Apply the recorded reflections backwards to recover the input."""
        x = self.result
        for i in reversed(self.word):
            x = chamber.reflections[i - 1].apply(x)
        return x


def reduce_to_chamber(chamber, x, cap=1000):
    """Reflect x across strictly violated walls until none is violated.

    Tie-break: lowest wall index.  Non-reflective faces never generate
    reductions.  A step cap guards against non-terminating inputs.
    """
    if all(c == 0 for c in x):
        raise ChamberError("cannot reduce the zero vector")
    word = []
    cur = tuple(x)
    for _ in range(cap):
        viol = next((i for i in range(len(chamber.walls))
                     if chamber.wall_value(i, cur) < 0), None)
        if viol is None:
            return ReductionTrace(word=tuple(w + 1 for w in word), result=cur)
        cur = chamber.reflections[viol].apply(cur)
        word.append(viol)
    raise ChamberError(
        "reduction did not terminate in %d steps; trajectory word %s, at %s"
        % (cap, [w + 1 for w in word], cur))


# ---------------------------------------------------------------------------
# ping-pong certification

def isotropic_rays_in_wall(lat, wall, anchor):
    """The two isotropic rays of the plane orthogonal to ``wall`` (rank 3),
    oriented to pair positively with the anchor.  Coordinates are QuadExt
    when irrational, Fractions otherwise."""
    from .lattice import _integer_kernel
    row = lat.pairing_row(wall)
    p, q = _integer_kernel(row)
    np_, npq, nq = lat.norm(p), lat.inner(p, q), lat.norm(q)
    rays = []
    if np_ == 0 and nq == 0:
        if npq == 0:
            raise ChamberError("wall plane is totally isotropic")
        rays = [tuple(Fraction(c) for c in p), tuple(Fraction(c) for c in q)]
    elif np_ == 0:
        rays = [tuple(Fraction(c) for c in p),
                tuple(Fraction(-nq * pc + 2 * npq * qc) for pc, qc in zip(p, q))]
    else:
        disc = npq * npq - np_ * nq
        if disc < 0:
            raise ChamberError("wall plane misses the light cone")
        if is_square(disc):
            r = isqrt(disc)
            for s in (r, -r):
                lam = Fraction(-npq + s, np_)
                rays.append(tuple(lam * pc + qc for pc, qc in zip(p, q)))
        else:
            for s in (1, -1):
                lam = QuadExt(Fraction(-npq, np_), Fraction(s, np_), disc)
                rays.append(tuple(lam * pc + qc for pc, qc in zip(p, q)))
    out = []
    anchor_row = lat.pairing_row(anchor)
    for ray in rays:
        val = 0
        for r, c in zip(anchor_row, ray):
            val = val + r * c
        s = sign_of(val)
        if s == 0:
            raise ChamberError("isotropic ray orthogonal to the anchor")
        out.append(tuple(s * c for c in ray) if s < 0 else ray)
    return out


@dataclass(frozen=True)
class PingPongCertificate:
    containments: tuple  # entries {"pair": (i, j), "signs": [...], "pass": bool}
    anchor_conditions: tuple
    passed: bool

    def to_json(self):
        return {
            "containments": [
                {"pair": list(c["pair"]), "rays": c["rays"],
                 "signs": c["signs"], "pass": c["pass"]}
                for c in self.containments],
            "anchor_conditions": [
                {"wall": a["wall"], "pass": a["pass"]}
                for a in self.anchor_conditions],
            "pass": self.passed,
        }


def pingpong_certify(chamber):
    """Free-product certificate for the wall reflections.

    For walls i != j, the half-space claim S_j subset {l_i > 0} (S_j the
    open cap {l_j < 0} of the positive cone) reduces to exact sign checks
    on the isotropic boundary rays: l_i >= 0 on both rays of wall plane j
    and l_j >= 0 on both rays of wall plane i, each with at least one
    strict inequality.  Wall planes may touch at a shared isotropic ray
    (sign 0 on one side), but then the zero chord of l_i has both ideal
    endpoints in the convex region {l_j >= 0}, so it misses the open cap,
    and l_i keeps one sign there -- positive, by continuity at the strict
    ray.  Also certifies that each wall reflection throws the anchor into
    its own half-space S_i (so every S_i is nonempty).
    """
    lat = chamber.lattice
    k = len(chamber.walls)
    plane_rays = [isotropic_rays_in_wall(lat, w, chamber.anchor)
                  for w in chamber.walls]
    containments = []
    all_ok = True
    for i in range(k):
        for j in range(k):
            if i == j:
                continue
            signs = []
            side_ij = []
            side_ji = []
            for u in plane_rays[j]:
                s = sign_of(chamber.wall_value(i, u))
                signs.append(("l%d" % (i + 1), s))
                side_ij.append(s)
            for p in plane_rays[i]:
                s = sign_of(chamber.wall_value(j, p))
                signs.append(("l%d" % (j + 1), s))
                side_ji.append(s)
            ok = all(s >= 0 for s in side_ij + side_ji) \
                and any(s > 0 for s in side_ij) and any(s > 0 for s in side_ji)
            all_ok = all_ok and ok
            containments.append({
                "pair": (i + 1, j + 1),
                "rays": [[str(c) for c in u] for u in plane_rays[j]],
                "signs": signs,
                "pass": ok,
            })
    anchor_conditions = []
    for i in range(k):
        img = chamber.reflections[i].apply(chamber.anchor)
        ok = (in_positive_cone(lat, chamber.anchor, img)
              and chamber.wall_value(i, img) < 0)
        all_ok = all_ok and ok
        anchor_conditions.append({"wall": i + 1, "pass": ok})
    return PingPongCertificate(containments=tuple(containments),
                               anchor_conditions=tuple(anchor_conditions),
                               passed=all_ok)


def orbit_of_anchor(chamber, max_word_len):
    """Images of the anchor under all reduced words (no adjacent repeats)
    in the wall reflections, up to the given length.  Raises on duplicates,
    which would contradict a ping-pong certificate."""
    k = len(chamber.walls)
    out = [tuple(chamber.anchor)]
    frontier = [((), tuple(chamber.anchor))]
    seen = {tuple(chamber.anchor)}
    for _ in range(max_word_len):
        nxt = []
        for word, vec in frontier:
            for i in range(k):
                if word and word[-1] == i:
                    continue
                img = chamber.reflections[i].apply(vec)
                if img in seen:
                    raise ChamberError(
                        "duplicate orbit class %s (word %s + wall %d)"
                        % (img, word, i + 1))
                seen.add(img)
                out.append(img)
                nxt.append((word + (i,), img))
        frontier = nxt
    return out
