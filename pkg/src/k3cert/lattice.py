"""Exact arithmetic on integral lattices.

Vectors are plain tuples of Python ints (coordinates in the lattice
basis); dual vectors are tuples of :class:`fractions.Fraction`.  All
computations are exact -- no floating point anywhere in this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product


class LatticeError(ValueError):
    pass


class DimensionMismatch(LatticeError):
    pass


class NotABasis(LatticeError):
    pass


# ---------------------------------------------------------------------------
# small exact matrix helpers (rank is tiny, lists of lists are fine)

def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return tuple(
        tuple(sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m))
        for i in range(n)
    )


def mat_vec(a, x):
    return tuple(sum(row[j] * x[j] for j in range(len(x))) for row in a)


def mat_transpose(a):
    return tuple(zip(*a))


def identity_matrix(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def det_int(m):
    """Exact determinant of an integer matrix (fraction-free Bareiss)."""
    n = len(m)
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


def mat_inverse_frac(m):
    """Inverse of a square integer/Fraction matrix, entries as Fractions."""
    n = len(m)
    a = [[Fraction(m[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
         for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise LatticeError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def solve_int_linear(m, rhs):
    """Solve m*x = rhs over the rationals; returns Fractions or raises."""
    inv = mat_inverse_frac(m)
    return mat_vec(inv, tuple(Fraction(c) for c in rhs))


# ---------------------------------------------------------------------------
# Smith normal form

def smith_normal_form(m):
    """Return (U, D, V) with U*m*V = D, U, V unimodular, D diagonal with
    nonnegative entries and d_i | d_{i+1}."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [list(r) for r in m]
    u = [list(r) for r in identity_matrix(rows)]
    v = [list(r) for r in identity_matrix(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, c):
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, c):
        for r in a:
            r[dst] += c * r[src]
        for r in v:
            r[dst] += c * r[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(rows, cols):
        # find a nonzero pivot in the remaining block
        piv = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] != 0:
                    if piv is None or abs(a[i][j]) < abs(a[piv[0]][piv[1]]):
                        piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            # clear column t
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    add_row(i, t, -q)
                    if a[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    add_col(j, t, -q)
                    if a[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
            if not dirty:
                break
        # divisibility: pivot must divide the rest of the block
        fixed = True
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if a[i][j] % a[t][t] != 0:
                    add_row(t, i, 1)
                    fixed = False
                    break
            if not fixed:
                break
        if fixed:
            if a[t][t] < 0:
                negate_row(t)
            t += 1

    return (tuple(tuple(r) for r in u),
            tuple(tuple(r) for r in a),
            tuple(tuple(r) for r in v))


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntegerLattice:
    gram: tuple
    labels: tuple = None

    def __post_init__(self):
        gram = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", gram)
        n = len(gram)
        if any(len(row) != n for row in gram):
            raise LatticeError("gram matrix must be square")
        for i in range(n):
            for j in range(n):
                if gram[i][j] != gram[j][i]:
                    raise LatticeError("gram matrix must be symmetric")
            if gram[i][i] % 2 != 0:
                raise LatticeError("lattice must be even (odd diagonal entry at %d)" % i)
        if det_int(gram) == 0:
            raise LatticeError("gram matrix is degenerate")
        if self.labels is None:
            object.__setattr__(self, "labels",
                               tuple("b%d" % i for i in range(n)))
        else:
            object.__setattr__(self, "labels", tuple(self.labels))
            if len(self.labels) != n:
                raise LatticeError("need one label per basis vector")

    @property
    def rank(self):
        return len(self.gram)

    def check_vector(self, x):
        if len(x) != self.rank:
            raise DimensionMismatch(
                "vector of length %d in rank-%d lattice" % (len(x), self.rank))

    def inner(self, x, y):
        self.check_vector(x)
        self.check_vector(y)
        return sum(x[i] * self.gram[i][j] * y[j]
                   for i in range(self.rank) for j in range(self.rank))

    def norm(self, x):
        return self.inner(x, x)

    def determinant(self):
        return det_int(self.gram)

    def pairing_row(self, w):
        """Row vector r with (x, w) = sum(r[i] * x[i]); entries exact."""
        self.check_vector(w)
        return mat_vec(self.gram, w)

    def to_json(self):
        return {"labels": list(self.labels), "gram": [list(r) for r in self.gram]}

    @classmethod
    def from_json(cls, obj):
        return cls(gram=tuple(tuple(r) for r in obj["gram"]),
                   labels=tuple(obj["labels"]))


def inner_product(lat, x, y):
    return lat.inner(x, y)


def determinant(lat):
    return lat.determinant()


# ---------------------------------------------------------------------------
# dual vectors and the discriminant group

def is_dual_vector(lat, u):
    """True if u (rational coordinates) pairs integrally with the lattice."""
    for i in range(lat.rank):
        p = sum(Fraction(u[j]) * lat.gram[i][j] for j in range(lat.rank))
        if p.denominator != 1:
            return False
    return True


def reduce_mod_lattice(u):
    """Canonical coset representative of u in NS*/NS: entries in [0, 1)."""
    return tuple(Fraction(c) - (Fraction(c).numerator // Fraction(c).denominator)
                 for c in u)


@dataclass(frozen=True)
class DiscriminantGroup:
    lattice: IntegerLattice
    invariant_factors: tuple
    generators: tuple  # one dual vector (tuple of Fractions) per factor

    @property
    def order(self):
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n

    def elements(self):
        """All cosets as canonical representatives (may be large)."""
        for ks in product(*[range(d) for d in self.invariant_factors]):
            u = tuple(sum((Fraction(k) * g[i] for k, g in zip(ks, self.generators)),
                          Fraction(0))
                      for i in range(self.lattice.rank))
            yield ks, reduce_mod_lattice(u)

    def coordinates_of(self, u):
        """Express coset of u in the generators, or None."""
        target = reduce_mod_lattice(u)
        for ks, rep in self.elements():
            if rep == target:
                return ks
        return None

    def element_order(self, u):
        rep = reduce_mod_lattice(u)
        if all(c == 0 for c in rep):
            return 1
        k = 1
        acc = rep
        while True:
            k += 1
            acc = reduce_mod_lattice(tuple(a + b for a, b in zip(acc, rep)))
            if all(c == 0 for c in acc):
                return k
            if k > self.order:
                raise LatticeError("element order exceeds group order")


def discriminant_group(lat):
    """NS*/NS from the Smith normal form of the Gram matrix.

    Generators come out of the unimodular transforms: with U*G*V = D the
    i-th generator is column i of V divided by d_i, so its denominator is
    exactly its invariant factor.
    """
    u, d, v = smith_normal_form(lat.gram)
    n = lat.rank
    factors = []
    gens = []
    for i in range(n):
        di = d[i][i]
        if di > 1:
            factors.append(di)
            gen = tuple(Fraction(v[r][i], di) for r in range(n))
            gens.append(reduce_mod_lattice(gen))
    grp = DiscriminantGroup(lattice=lat, invariant_factors=tuple(factors),
                            generators=tuple(gens))
    for di, g in zip(factors, gens):
        if not is_dual_vector(lat, g):
            raise LatticeError("discriminant generator does not pair integrally")
        if grp.element_order(g) != di:
            raise LatticeError("discriminant generator has wrong order")
    if grp.order != abs(lat.determinant()):
        raise LatticeError("invariant factors do not multiply to |det|")
    return grp


# ---------------------------------------------------------------------------

def change_basis(lat, new_basis):
    """Gram matrix in a new integral basis.

    Returns (new_lattice, transform) where transform columns are the new
    basis vectors in old coordinates.  Raises NotABasis if the vectors do
    not span the same lattice over the integers.
    """
    n = lat.rank
    if len(new_basis) != n:
        raise NotABasis("need exactly %d vectors" % n)
    for b in new_basis:
        lat.check_vector(b)
    t = tuple(tuple(new_basis[j][i] for j in range(n)) for i in range(n))
    dt = det_int(t)
    if dt == 0:
        raise NotABasis("vectors are not of full rank")
    if abs(dt) != 1:
        raise NotABasis("vectors span a proper sublattice (index %d)" % abs(dt))
    new_gram = mat_mul(mat_transpose(t), mat_mul(lat.gram, t))
    return IntegerLattice(gram=new_gram), t


def coordinates_in_basis(lat, transform, x):
    """Coordinates of x with respect to the basis given by transform columns."""
    sol = solve_int_linear(transform, x)
    if any(c.denominator != 1 for c in sol):
        raise LatticeError("vector not in the span of the basis over Z")
    return tuple(c.numerator for c in sol)


# ---------------------------------------------------------------------------
# enumeration

def solve_norm_system(lat, constraints, norm, box):
    """All nonzero vectors x with |coords| <= box, (x, v_i) = c_i for every
    constraint (v_i, c_i) and (x, x) = norm, in lexicographic order."""
    if box < 1:
        raise LatticeError("box must be >= 1")
    rows = [(lat.pairing_row(v), c) for v, c in constraints]
    gram = lat.gram
    n = lat.rank
    out = []
    rng = range(-box, box + 1)

    def norm_of(x):
        return sum(x[i] * gram[i][j] * x[j] for i in range(n) for j in range(n))

    # when a constraint pins the last coordinate, solve instead of scanning
    pivot = next(((r, c) for r, c in rows if r[n - 1] != 0), None)
    if pivot is not None and n >= 2:
        r0, c0 = pivot
        for head in product(rng, repeat=n - 1):
            rem = c0 - sum(r0[i] * head[i] for i in range(n - 1))
            if rem % r0[n - 1] != 0:
                continue
            last = rem // r0[n - 1]
            if abs(last) > box:
                continue
            x = head + (last,)
            if all(c == 0 for c in x):
                continue
            if any(sum(r[i] * x[i] for i in range(n)) != c for r, c in rows):
                continue
            if norm_of(x) == norm:
                out.append(x)
    else:
        for x in product(rng, repeat=n):
            if all(c == 0 for c in x):
                continue
            if any(sum(r[i] * x[i] for i in range(n)) != c for r, c in rows):
                continue
            if norm_of(x) == norm:
                out.append(x)
    out.sort()
    return out


def _integer_kernel(row):
    """Basis of the integer kernel of a single integer linear form."""
    m = (tuple(int(c) for c in row),)
    u, d, v = smith_normal_form(m)
    # columns of V past the rank of the form span the kernel
    rank = 1 if any(c != 0 for c in row) else 0
    n = len(row)
    return [tuple(v[r][j] for r in range(n)) for j in range(rank, n)]


def _particular_solution(row, c):
    """Integer x with row . x == c, or None."""
    m = (tuple(int(e) for e in row),)
    u, d, v = smith_normal_form(m)
    g = d[0][0]
    if g == 0:
        return None if c != 0 else tuple(0 for _ in row)
    if c % g != 0:
        return None
    n = len(row)
    y = (c // g,) + tuple(0 for _ in range(n - 1))
    x = mat_vec(v, y)
    got = sum(r * xi for r, xi in zip(m[0], x))
    if got == -c:
        x = tuple(-xi for xi in x)
    elif got != c:
        raise LatticeError("particular solution construction failed")
    return x


def _isqrt_or_none(n):
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def solve_pairing_norm(lat, anchor, pairing, norm):
    """Complete enumeration of x with (x, anchor) = pairing, (x, x) = norm.

    Requires (anchor, anchor) > 0 in a lattice of signature (1, rank-1),
    so the solution set is finite (the quadratic form is negative definite
    on the orthogonal complement of the anchor).  No box is involved.
    """
    if lat.norm(anchor) <= 0:
        raise LatticeError("anchor must have positive norm")
    row = lat.pairing_row(anchor)
    x0 = _particular_solution(row, pairing)
    if x0 is None:
        return []
    kernel = _integer_kernel(row)
    out = []
    if len(kernel) == 0:
        if lat.norm(x0) == norm:
            out.append(x0)
    elif len(kernel) == 1:
        b1 = kernel[0]
        # (x0 + t b1)^2 = norm: quadratic with negative leading coefficient
        a2 = lat.norm(b1)
        a1 = 2 * lat.inner(x0, b1)
        a0 = lat.norm(x0) - norm
        if a2 == 0:
            raise LatticeError("kernel direction is isotropic; region not compact")
        disc = a1 * a1 - 4 * a2 * a0
        r = _isqrt_or_none(disc)
        if r is not None:
            for num in (-a1 + r, -a1 - r):
                if num % (2 * a2) == 0:
                    t = num // (2 * a2)
                    x = tuple(x0[i] + t * b1[i] for i in range(lat.rank))
                    if x not in out:
                        out.append(x)
    elif len(kernel) == 2:
        b1, b2 = kernel
        q11 = lat.norm(b1)
        q12 = lat.inner(b1, b2)
        q22 = lat.norm(b2)
        l1 = 2 * lat.inner(x0, b1)
        l2 = 2 * lat.inner(x0, b2)
        c0 = lat.norm(x0) - norm
        # q(t1,t2) = q11 t1^2 + 2 q12 t1 t2 + q22 t2^2 + l1 t1 + l2 t2 + c0 = 0
        if q22 >= 0 or q11 * q22 - q12 * q12 <= 0:
            raise LatticeError("orthogonal complement is not negative definite")
        # for fixed t1 solve the quadratic in t2; real solutions need
        # (2 q12 t1 + l2)^2 - 4 q22 (q11 t1^2 + l1 t1 + c0) >= 0, which is a
        # downward parabola in t1 (coefficient 4(q12^2 - q11 q22) < 0)
        pa = 4 * (q12 * q12 - q11 * q22)
        pb = 4 * (q12 * l2 - q22 * l1)
        pc = l2 * l2 - 4 * q22 * c0
        pd = pb * pb - 4 * pa * pc
        if pd < 0:
            return []
        rr = math.isqrt(pd)
        lo, hi = sorted(((-pb - rr) // (2 * pa), (-pb + rr) // (2 * pa)))
        for t1 in range(lo - 1, hi + 2):
            a2_ = q22
            a1_ = 2 * q12 * t1 + l2
            a0_ = q11 * t1 * t1 + l1 * t1 + c0
            disc = a1_ * a1_ - 4 * a2_ * a0_
            r = _isqrt_or_none(disc)
            if r is None:
                continue
            for num in (-a1_ + r, -a1_ - r):
                if num % (2 * a2_) == 0:
                    t2 = num // (2 * a2_)
                    x = tuple(x0[i] + t1 * b1[i] + t2 * b2[i]
                              for i in range(lat.rank))
                    if x not in out:
                        out.append(x)
    else:
        raise LatticeError("solve_pairing_norm implemented for rank <= 3")
    out = [x for x in out if any(c != 0 for c in x)]
    out.sort()
    return out


# ---------------------------------------------------------------------------
# serialization helpers

def frac_to_str(x):
    f = Fraction(x)
    return "%d/%d" % (f.numerator, f.denominator) if f.denominator != 1 else str(f.numerator)


def frac_from_str(s):
    return Fraction(s)
