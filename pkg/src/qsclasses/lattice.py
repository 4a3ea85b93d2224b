"""Exact integer and rational lattice arithmetic.

Everything here works over Python ints and ``fractions.Fraction``; no floating
point enters the package anywhere.  The two workhorses are Smith normal form
with unimodular transforms and Hermite-canonical sublattice bases, on top of
which sit kernels, images, saturations, lattice membership and finite abelian
quotients.  Rational lattices (finitely generated subgroups of Q^n) are
handled by `QLattice`, a scaled integer lattice in canonical form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence, Tuple

Vec = Tuple[int, ...]
QVec = Tuple[Fraction, ...]


class NotFinite(ValueError):
    pass


class NotContained(ValueError):
    pass


class BadCharacteristic(ValueError):
    pass


# ---------------------------------------------------------------------------
# small vector/matrix helpers (row-vector convention: apply(v, M) = v @ M)

def qvec(v: Sequence) -> QVec:
    return tuple(Fraction(x) for x in v)


def vadd(a: Sequence, b: Sequence) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Sequence, b: Sequence) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def vscale(c, a: Sequence) -> tuple:
    return tuple(c * x for x in a)


def vdot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def vneg(a: Sequence) -> tuple:
    return tuple(-x for x in a)


def mat_identity(n: int) -> Tuple[Vec, ...]:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a, b):
    bt = tuple(zip(*b))
    return tuple(tuple(vdot(row, col) for col in bt) for row in a)


def apply_row(v: Sequence, m) -> tuple:
    """v @ M for a row vector v."""
    cols = len(m[0]) if m else 0
    return tuple(sum(v[i] * m[i][j] for i in range(len(v))) for j in range(cols))


def mat_transpose(m):
    return tuple(zip(*m))


def mat_inverse_q(m) -> Tuple[QVec, ...]:
    """Inverse of a square matrix, exact over Q."""
    n = len(m)
    aug = [[Fraction(m[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def solve_left_q(m, v: Sequence) -> Optional[QVec]:
    """Solve x @ M = v over Q; None if inconsistent.

    M need not be square; rows of M are treated as generators.  When the rows
    are dependent the solution with zeros on non-pivot coordinates is chosen.
    """
    rows = len(m)
    if rows == 0:
        return tuple() if all(x == 0 for x in v) else None
    cols = len(m[0])
    # Gaussian elimination on the transpose: M^T x^T = v^T.
    a = [[Fraction(m[r][c]) for r in range(rows)] + [Fraction(v[c])] for c in range(cols)]
    pivots = []
    r = 0
    for c in range(rows):
        piv = next((i for i in range(r, cols) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = Fraction(1) / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(cols):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == cols:
            break
    for i in range(r, cols):
        if a[i][rows] != 0:
            return None
    x = [Fraction(0)] * rows
    for i, c in enumerate(pivots):
        x[c] = a[i][rows]
    return tuple(x)


# ---------------------------------------------------------------------------
# integer matrices and Smith normal form

@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: Tuple[Vec, ...]  # row-major

    @staticmethod
    def from_rows(rows: Iterable[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        rws = tuple(tuple(int(x) for x in r) for r in rows)
        if rws:
            cols = len(rws[0])
            if any(len(r) != cols for r in rws):
                raise ValueError("ragged rows")
        elif cols is None:
            cols = 0
        return IntMatrix(len(rws), cols, rws)

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(n, n, mat_identity(n))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, other.cols, mat_mul(self.entries, other.entries))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, mat_transpose(self.entries))

    def row(self, i: int) -> Vec:
        return self.entries[i]


@dataclass(frozen=True)
class SmithDecomposition:
    U: IntMatrix
    S: IntMatrix
    V: IntMatrix

    @property
    def invariant_factors(self) -> Tuple[int, ...]:
        d = []
        for i in range(min(self.S.rows, self.S.cols)):
            if self.S.entries[i][i] != 0:
                d.append(self.S.entries[i][i])
        return tuple(d)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def smith_normal_form(m: IntMatrix) -> SmithDecomposition:
    """U @ M @ V = S diagonal with d1 | d2 | ..., U and V unimodular."""
    a = [list(r) for r in m.entries]
    nr, nc = m.rows, m.cols
    u = [list(r) for r in mat_identity(nr)]
    v = [list(r) for r in mat_identity(nc)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def addmul_row(dst, src, f):
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def addmul_col(dst, src, f):
        for r in a:
            r[dst] += f * r[src]
        for r in v:
            r[dst] += f * r[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(nr, nc):
        # find a pivot of minimal absolute value in the trailing block
        piv = None
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        if a[t][t] < 0:
            negate_row(t)
        dirty = False
        for i in range(t + 1, nr):
            if a[i][t] % a[t][t] != 0:
                dirty = True
            addmul_row(i, t, -(a[i][t] // a[t][t]))
        for j in range(t + 1, nc):
            if a[t][j] % a[t][t] != 0:
                dirty = True
            addmul_col(j, t, -(a[t][j] // a[t][t]))
        if dirty or any(a[i][t] for i in range(t + 1, nr)) or any(a[t][j] for j in range(t + 1, nc)):
            continue
        # enforce divisibility d_t | trailing block
        bad = None
        for i in range(t + 1, nr):
            for j in range(t + 1, nc):
                if a[i][j] % a[t][t] != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            addmul_row(t, bad, 1)
            continue
        t += 1
    U = IntMatrix.from_rows(u, nr)
    S = IntMatrix.from_rows(a, nc)
    V = IntMatrix.from_rows(v, nc)
    return SmithDecomposition(U, S, V)


def det_unimodular_sign(m: IntMatrix) -> int:
    """Determinant of a square integer matrix (used to check |det| = 1)."""
    a = [[Fraction(x) for x in row] for row in m.entries]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        inv = Fraction(1) / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(c + 1, n):
            if a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    num = det.numerator if det.denominator == 1 else None
    if num is None:
        raise ValueError("non-integer determinant")
    return num


# ---------------------------------------------------------------------------
# Hermite canonical bases and sublattices

def hermite_row_basis(rows: Iterable[Sequence[int]], width: int) -> Tuple[Vec, ...]:
    """Canonical (row-style HNF) basis of the lattice spanned by ``rows``.

    Pivots are positive, entries above a pivot are reduced into [0, pivot).
    Equal lattices yield identical bases.
    """
    a = [list(int(x) for x in r) for r in rows if any(r)]
    if not a:
        return tuple()
    nr = len(a)
    r = 0
    for c in range(width):
        # gcd elimination in column c below row r
        while True:
            nz = [i for i in range(r, nr) if a[i][c] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda i: abs(a[i][c]))
            i0 = nz[0]
            for i in nz[1:]:
                q = a[i][c] // a[i0][c]
                a[i] = [x - q * y for x, y in zip(a[i], a[i0])]
        nz = [i for i in range(r, nr) if a[i][c] != 0]
        if not nz:
            continue
        i0 = nz[0]
        a[r], a[i0] = a[i0], a[r]
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == nr:
            break
    return tuple(tuple(row) for row in a[:r] if any(row))


@dataclass(frozen=True)
class Sublattice:
    """A pure-integer sublattice of Z^n in Hermite-canonical form."""

    ambient_rank: int
    basis: Tuple[Vec, ...]

    @staticmethod
    def from_vectors(ambient_rank: int, vectors: Iterable[Sequence[int]]) -> "Sublattice":
        return Sublattice(ambient_rank, hermite_row_basis(vectors, ambient_rank))

    @staticmethod
    def full(n: int) -> "Sublattice":
        return Sublattice(n, mat_identity(n))

    @property
    def rank(self) -> int:
        return len(self.basis)


def kernel_lattice(m: IntMatrix) -> Sublattice:
    """{v in Z^cols : M v = 0}, always a saturated sublattice."""
    dec = smith_normal_form(m)
    r = dec.rank
    # columns of V beyond rank r span the kernel; as rows: V^T rows
    vt = mat_transpose(dec.V.entries)
    return Sublattice.from_vectors(m.cols, vt[r:])


def image_lattice(m: IntMatrix) -> Sublattice:
    """Column span of M over Z, in canonical form."""
    return Sublattice.from_vectors(m.rows, mat_transpose(m.entries))


def saturation(lat: Sublattice) -> Sublattice:
    """Smallest pure sublattice containing ``lat`` (span over Q, intersected with Z^n)."""
    if lat.rank == 0:
        return lat
    ann = kernel_lattice(IntMatrix.from_rows(lat.basis, lat.ambient_rank))
    if ann.rank == 0:
        return Sublattice.full(lat.ambient_rank)
    return kernel_lattice(IntMatrix.from_rows(ann.basis, lat.ambient_rank))


def membership(v: Sequence, lat: Sublattice) -> Optional[Vec]:
    """Integer coordinates of v in lat's basis, or None."""
    if not any(v):
        return tuple(0 for _ in range(lat.rank))
    if lat.rank == 0:
        return None
    x = solve_left_q(lat.basis, qvec(v))
    if x is None or any(c.denominator != 1 for c in x):
        return None
    return tuple(c.numerator for c in x)


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Invariant-factor form d1 | d2 | ... with every d >= 2."""

    invariants: Tuple[int, ...]

    @staticmethod
    def from_factors(factors: Iterable[int]) -> "FiniteAbelianGroup":
        return FiniteAbelianGroup(tuple(int(d) for d in factors if d > 1))

    @staticmethod
    def trivial() -> "FiniteAbelianGroup":
        return FiniteAbelianGroup(())

    @property
    def order(self) -> int:
        n = 1
        for d in self.invariants:
            n *= d
        return n

    @property
    def exponent(self) -> int:
        return self.invariants[-1] if self.invariants else 1

    def __str__(self) -> str:
        if not self.invariants:
            return "1"
        return "x".join(f"Z/{d}" for d in self.invariants)


def quotient_group(sub: Sublattice, sup: Sublattice) -> FiniteAbelianGroup:
    """sup / sub as a finite abelian group; requires sub of finite index in sup."""
    if sub.ambient_rank != sup.ambient_rank:
        raise NotContained("different ambient ranks")
    if sub.rank != sup.rank:
        raise NotFinite("quotient has positive rank")
    coords = []
    for b in sub.basis:
        c = membership(b, sup)
        if c is None:
            raise NotContained("sub is not contained in sup")
        coords.append(c)
    if sub.rank == 0:
        return FiniteAbelianGroup.trivial()
    dec = smith_normal_form(IntMatrix.from_rows(coords, sup.rank))
    if dec.rank < sub.rank:
        raise NotFinite("degenerate inclusion")
    return FiniteAbelianGroup.from_factors(dec.invariant_factors)


def pprime_part(group: FiniteAbelianGroup, p: int) -> FiniteAbelianGroup:
    """Remove p-power torsion from each invariant factor; identity for p = 0."""
    if p == 0:
        return group
    if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise BadCharacteristic(f"{p} is neither 0 nor prime")
    out = []
    for d in group.invariants:
        while d % p == 0:
            d //= p
        out.append(d)
    return FiniteAbelianGroup.from_factors(out)


def pprime_exponent(n: int, p: int) -> int:
    """Largest divisor of n coprime to p (n itself when p = 0)."""
    if p == 0:
        return n
    while n % p == 0:
        n //= p
    return n


# ---------------------------------------------------------------------------
# rational lattices: finitely generated subgroups of Q^n

def _common_denominator(vectors: Sequence[Sequence[Fraction]]) -> int:
    den = 1
    for v in vectors:
        for x in v:
            den = den * x.denominator // gcd(den, x.denominator)
    return den


@dataclass(frozen=True)
class QLattice:
    """Lattice (1/den) * rowspan_Z(ibasis) inside Q^n, in canonical form.

    ``den`` is minimal, so equal lattices compare equal structurally.
    """

    dim: int
    den: int
    ibasis: Tuple[Vec, ...]

    @staticmethod
    def from_vectors(dim: int, vectors: Iterable[Sequence]) -> "QLattice":
        vs = [qvec(v) for v in vectors]
        vs = [v for v in vs if any(v)]
        if not vs:
            return QLattice(dim, 1, ())
        den = _common_denominator(vs)
        rows = [[int(x * den) for x in v] for v in vs]
        basis = hermite_row_basis(rows, dim)
        # normalize: divide den by the gcd of all entries and den
        g = den
        for r in basis:
            for x in r:
                g = gcd(g, abs(x))
        if g > 1:
            basis = tuple(tuple(x // g for x in r) for r in basis)
            den //= g
        return QLattice(dim, den, basis)

    @staticmethod
    def zero(dim: int) -> "QLattice":
        return QLattice(dim, 1, ())

    @property
    def rank(self) -> int:
        return len(self.ibasis)

    @property
    def basis(self) -> Tuple[QVec, ...]:
        d = Fraction(1, self.den)
        return tuple(tuple(d * x for x in r) for r in self.ibasis)

    def coordinates(self, v: Sequence) -> Optional[QVec]:
        """Rational coordinates of v in this basis, or None if v is outside the span."""
        vq = qvec(v)
        if not any(vq):
            return tuple(Fraction(0) for _ in range(self.rank))
        if self.rank == 0:
            return None
        return solve_left_q(self.basis, vq)

    def member(self, v: Sequence) -> Optional[Vec]:
        """Integer coordinates of v in this basis, or None."""
        x = self.coordinates(v)
        if x is None or any(c.denominator != 1 for c in x):
            return None
        return tuple(c.numerator for c in x)

    def contains(self, other: "QLattice") -> bool:
        return all(self.member(b) is not None for b in other.basis)

    def sum(self, other: "QLattice") -> "QLattice":
        return QLattice.from_vectors(self.dim, list(self.basis) + list(other.basis))

    def intersect(self, other: "QLattice") -> "QLattice":
        """Intersection, via the kernel of the stacked relation matrix."""
        if self.rank == 0 or other.rank == 0:
            return QLattice.zero(self.dim)
        den = self.den * other.den // gcd(self.den, other.den)
        a = [[x * (den // self.den) for x in r] for r in self.ibasis]
        b = [[x * (den // other.den) for x in r] for r in other.ibasis]
        # M = [a^T | -b^T]: M @ (u, w)^T = 0  <=>  u@a = w@b, which spans the
        # intersection via u@a
        m_rows = []
        for j in range(self.dim):
            m_rows.append([a[i][j] for i in range(len(a))] + [-b[i][j] for i in range(len(b))])
        ker = kernel_lattice(IntMatrix.from_rows(m_rows, len(a) + len(b)))
        vecs = []
        for row in ker.basis:
            u = row[: len(a)]
            vec = [Fraction(sum(u[i] * a[i][j] for i in range(len(a))), den) for j in range(self.dim)]
            vecs.append(vec)
        return QLattice.from_vectors(self.dim, vecs)

    def quotient_by(self, sub: "QLattice") -> FiniteAbelianGroup:
        """self / sub, for sub of finite index in self."""
        if sub.rank != self.rank:
            raise NotFinite("quotient has positive rank")
        coords = []
        for b in sub.basis:
            c = self.member(b)
            if c is None:
                raise NotContained("sub not contained in lattice")
            coords.append(c)
        if not coords:
            return FiniteAbelianGroup.trivial()
        dec = smith_normal_form(IntMatrix.from_rows(coords, self.rank))
        if dec.rank < sub.rank:
            raise NotFinite("degenerate inclusion")
        return FiniteAbelianGroup.from_factors(dec.invariant_factors)

    def denominator_of(self, v: Sequence) -> Optional[int]:
        """Order of v modulo this lattice (lcm of coordinate denominators)."""
        x = self.coordinates(v)
        if x is None:
            return None
        d = 1
        for c in x:
            d = d * c.denominator // gcd(d, c.denominator)
        return d
