"""Integer-matrix isometries of a fixed lattice.

Convention: a matrix acts on coordinate columns, x -> M x.  For geometric
maps this is the pullback, so composing geometric maps reverses matrix
order: (g o h)^* = h^* o g^*.  ``compose(p, q)`` multiplies pullback
matrices directly (apply q first, then p).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .lattice import (
    IntegerLattice,
    LatticeError,
    identity_matrix,
    mat_mul,
    mat_transpose,
    mat_vec,
    mat_inverse_frac,
    det_int,
    reduce_mod_lattice,
)


class NotAnIsometry(LatticeError):
    pass


@dataclass(frozen=True)
class Isometry:
    lattice: IntegerLattice
    matrix: tuple

    def __post_init__(self):
        m = tuple(tuple(int(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        n = self.lattice.rank
        if len(m) != n or any(len(r) != n for r in m):
            raise NotAnIsometry("matrix must be %dx%d" % (n, n))
        a = self.lattice.gram
        mtam = mat_mul(mat_transpose(m), mat_mul(a, m))
        for i in range(n):
            for j in range(n):
                if mtam[i][j] != a[i][j]:
                    raise NotAnIsometry(
                        "gram entry (%d,%d) not preserved: %d != %d"
                        % (i, j, mtam[i][j], a[i][j]))
        if abs(det_int(m)) != 1:
            raise NotAnIsometry("determinant must be +-1")

    def apply(self, x):
        self.lattice.check_vector(x)
        return mat_vec(self.matrix, x)

    def apply_dual(self, u):
        """Image of a rational vector (same coordinate action)."""
        return tuple(sum(Fraction(self.matrix[i][j]) * Fraction(u[j])
                         for j in range(self.lattice.rank))
                     for i in range(self.lattice.rank))

    def det(self):
        return det_int(self.matrix)

    def inverse(self):
        inv = mat_inverse_frac(self.matrix)
        m = tuple(tuple(int(c) for c in row) for row in inv)
        return Isometry(self.lattice, m)

    def is_identity(self):
        return self.matrix == identity_matrix(self.lattice.rank)

    def power(self, k):
        if k < 0:
            return self.inverse().power(-k)
        out = identity(self.lattice)
        base = self
        while k:
            if k & 1:
                out = compose(out, base)
            base = compose(base, base)
            k >>= 1
        return out

    def to_json(self, basis_tag=None):
        obj = {"matrix": [list(r) for r in self.matrix]}
        if basis_tag is not None:
            obj["basis"] = basis_tag
        return obj


def make_isometry(lat, m):
    return Isometry(lattice=lat, matrix=tuple(tuple(r) for r in m))


def identity(lat):
    return Isometry(lat, identity_matrix(lat.rank))


def compose(p, q):
    """Product of pullback matrices: apply q to coordinates, then p."""
    if p.lattice is not q.lattice and p.lattice != q.lattice:
        raise LatticeError("isometries live on different lattices")
    return Isometry(p.lattice, mat_mul(p.matrix, q.matrix))


def reflection_in(lat, w):
    """Reflection s_w(x) = x - (2(x,w)/(w,w)) w, when integral on the lattice."""
    ww = lat.norm(w)
    if ww == 0:
        raise LatticeError("cannot reflect in an isotropic vector")
    n = lat.rank
    cols = []
    for j in range(n):
        e = tuple(1 if i == j else 0 for i in range(n))
        t = Fraction(2 * lat.inner(e, w), ww)
        if t.denominator != 1:
            raise LatticeError(
                "reflection in %s is not integral on basis vector %s"
                % (w, lat.labels[j]))
        cols.append(tuple(e[i] - int(t) * w[i] for i in range(n)))
    m = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
    return Isometry(lat, m)


# ---------------------------------------------------------------------------
# order detection

_CYCLOTOMICS = {
    # order: coefficients of the cyclotomic polynomial, low degree first
    1: (-1, 1),
    2: (1, 1),
    3: (1, 1, 1),
    4: (1, 0, 1),
    6: (1, -1, 1),
}


def char_poly(m):
    """Characteristic polynomial det(tI - M), coefficients low-first, exact."""
    n = len(m)
    # Faddeev-LeVerrier over the rationals, result is integral
    coeffs = [Fraction(1)]  # leading
    mk = [[Fraction(m[i][j]) for j in range(n)] for i in range(n)]
    acc = [row[:] for row in mk]
    cs = []
    for k in range(1, n + 1):
        tr = sum(acc[i][i] for i in range(n))
        ck = -tr / k
        cs.append(ck)
        if k < n:
            for i in range(n):
                acc[i][i] += ck
            acc = [[sum(mk[i][t] * acc[t][j] for t in range(n)) for j in range(n)]
                   for i in range(n)]
    poly = [Fraction(1)] + cs  # t^n + c1 t^(n-1) + ...
    out = [int(c) for c in reversed(poly)]
    return tuple(out)


def _poly_divmod(num, den):
    num = list(num)
    dd = len(den) - 1
    quot = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c % den[-1] != 0:
            return None, None
        q = c // den[-1]
        quot[i - dd] = q
        for j, dc in enumerate(den):
            num[i - dd + j] -= q * dc
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return tuple(quot), tuple(num)


def _cyclotomic_part(poly):
    """Split off cyclotomic factors; returns (orders, residual polynomial)."""
    orders = []
    p = tuple(poly)
    changed = True
    while changed and len(p) > 1:
        changed = False
        for order, cyc in _CYCLOTOMICS.items():
            if len(cyc) > len(p):
                continue
            q, r = _poly_divmod(p, cyc)
            if q is not None and r == (0,):
                orders.append(order)
                p = q
                changed = True
                break
    return orders, p


def order_of(g, cap=64):
    """Smallest n <= cap with g^n = id, else the string "infinite".

    Returns (order, certificate) where certificate names the route:
    "iterated" for a found finite order, "noncyclotomic" when the
    characteristic polynomial has a root off the unit circle (Kronecker),
    "nonsemisimple" when all eigenvalues are roots of unity but no power
    up to their lcm is the identity (e.g. nontrivial unipotents).
    """
    if cap < 1:
        raise LatticeError("cap must be >= 1")
    acc = g
    for n in range(1, cap + 1):
        if acc.is_identity():
            return n, "iterated"
        acc = compose(acc, g)
    orders, residual = _cyclotomic_part(char_poly(g.matrix))
    if len(residual) > 1:
        return "infinite", "noncyclotomic"
    # all eigenvalues are roots of unity: finite order would divide the lcm,
    # which was already covered by iteration whenever cap >= 12 (rank <= 3)
    return "infinite", "nonsemisimple"


# ---------------------------------------------------------------------------
# induced action on the discriminant group

@dataclass(frozen=True)
class DiscriminantAction:
    kind: str  # "identity" | "negation" | "other"
    witness: tuple = None  # for "other": a generator whose image is not +-itself


def discriminant_action(g, disc):
    """Classify the induced action on NS*/NS as +-id or neither.

    The action is +-id exactly when every generator maps to the same
    global sign of itself modulo the lattice.
    """
    ok_plus = True
    ok_minus = True
    for gen in disc.generators:
        img = reduce_mod_lattice(g.apply_dual(gen))
        plus = reduce_mod_lattice(gen)
        minus = reduce_mod_lattice(tuple(-c for c in gen))
        if img != plus and img != minus:
            return DiscriminantAction("other", witness=gen)
        ok_plus = ok_plus and img == plus
        ok_minus = ok_minus and img == minus
    if ok_plus:
        return DiscriminantAction("identity")
    if ok_minus:
        return DiscriminantAction("negation")
    # every generator maps to +-itself but with mixed signs: still not +-id
    return DiscriminantAction("other", witness=disc.generators[0])


# ---------------------------------------------------------------------------
# the Mordell-Weil translation family on the (f, e, v) basis

def mw_translation(lat, n):
    """Translation pullback on the rank-3 fibration lattice in (f, e, v)
    coordinates: f fixed, e -> 10 n^2 f + e + n v, v -> 20 n f + v."""
    m = ((1, 10 * n * n, 20 * n),
         (0, 1, 0),
         (0, n, 1))
    return Isometry(lat, m)
