"""Exact integer-lattice arithmetic.

Everything here runs on Python's arbitrary-precision integers (and
``fractions.Fraction`` for the rational helpers); fixed-width arithmetic is a
correctness bug in normal-form computations, not an optimization target.

Conventions, fixed for deterministic serialization:

* Hermite normal form is row-style: ``H = U * A`` with ``U`` unimodular,
  pivots positive, entries above each pivot reduced into ``[0, pivot)``,
  zero rows trailing.
* Smith normal form returns ``left * A * right`` diagonal with nonnegative
  elementary divisors, each dividing the next, zero divisors trailing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import (
    DimensionMismatchError,
    InfiniteIndexError,
    ZeroVectorError,
)


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended gcd: returns ``(g, x, y)`` with ``g = x*a + y*b`` and ``g >= 0``."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


def primitive_vector(v) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its components.

    The result points in the same direction as ``v`` (positive multiple) and
    has coprime components.  Raises ``ZeroVectorError`` on the zero vector.
    """
    vec = tuple(int(x) for x in v)
    g = 0
    for x in vec:
        g = gcd(g, x)
    if g == 0:
        raise ZeroVectorError("zero vector has no primitive representative")
    return tuple(x // g for x in vec)


@dataclass(frozen=True)
class IntegerMatrix:
    """Immutable dense integer matrix, row-major."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise DimensionMismatchError("ragged matrix rows")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_rows(cls, rows) -> "IntegerMatrix":
        return cls(tuple(tuple(int(x) for x in row) for row in rows))

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls(tuple(tuple(0 for _ in range(cols)) for _ in range(rows)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix(tuple(zip(*self.entries))) if self.entries else self

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        bt = other.transpose().entries
        return IntegerMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in bt)
                for row in self.entries
            )
        )

    def apply_to(self, v) -> tuple[int, ...]:
        """Matrix times column vector."""
        vec = tuple(int(x) for x in v)
        if len(vec) != self.cols:
            raise DimensionMismatchError("vector length does not match column count")
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self.entries)

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise DimensionMismatchError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = [list(row) for row in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def is_unimodular(self) -> bool:
        return self.rows == self.cols and abs(self.det()) == 1


def hermite_normal_form(a: IntegerMatrix) -> tuple[IntegerMatrix, IntegerMatrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``H = U @ a``, ``U`` unimodular, ``H`` in row
    echelon form with positive pivots and the entries above each pivot reduced
    into ``[0, pivot)``.
    """
    m, n = a.rows, a.cols
    h = [list(row) for row in a.entries]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    pivot_row = 0
    for col in range(n):
        if pivot_row >= m:
            break
        # Pull a nonzero entry into the pivot position, then fold the rest
        # of the column into it with unimodular combinations.
        pivot = None
        for i in range(pivot_row, m):
            if h[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        if pivot != pivot_row:
            h[pivot_row], h[pivot] = h[pivot], h[pivot_row]
            u[pivot_row], u[pivot] = u[pivot], u[pivot_row]
        for i in range(pivot_row + 1, m):
            if h[i][col] != 0:
                a0, b0 = h[pivot_row][col], h[i][col]
                if b0 % a0 == 0:
                    q = b0 // a0
                    h[i] = [e - q * f for e, f in zip(h[i], h[pivot_row])]
                    u[i] = [e - q * f for e, f in zip(u[i], u[pivot_row])]
                    continue
                g, x, y = xgcd(a0, b0)
                ag, bg = a0 // g, b0 // g
                hp, hi = h[pivot_row], h[i]
                up, ui = u[pivot_row], u[i]
                for j in range(n):
                    e, f = hp[j], hi[j]
                    hp[j] = x * e + y * f
                    hi[j] = -bg * e + ag * f
                for j in range(m):
                    e, f = up[j], ui[j]
                    up[j] = x * e + y * f
                    ui[j] = -bg * e + ag * f
        if h[pivot_row][col] < 0:
            h[pivot_row] = [-x for x in h[pivot_row]]
            u[pivot_row] = [-x for x in u[pivot_row]]
        p = h[pivot_row][col]
        for i in range(pivot_row):
            q = h[i][col] // p  # floor division reduces into [0, p)
            if q:
                h[i] = [e - q * f for e, f in zip(h[i], h[pivot_row])]
                u[i] = [e - q * f for e, f in zip(u[i], u[pivot_row])]
        pivot_row += 1
    return IntegerMatrix.from_rows(h), IntegerMatrix.from_rows(u)


@dataclass(frozen=True)
class SnfResult:
    """Smith normal form: ``left @ A @ right`` is ``diag(diagonal)``."""

    diagonal: tuple[int, ...]
    left: IntegerMatrix
    right: IntegerMatrix

    @property
    def nonzero(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d != 0)


def smith_normal_form(a: IntegerMatrix) -> SnfResult:
    """Smith normal form with both unimodular transforms.

    The divisor chain is nonnegative, each entry divides the next, and zero
    divisors trail.  For square nonsingular input the product of the divisors
    equals ``|det|``.
    """
    m, n = a.rows, a.cols
    s = [list(row) for row in a.entries]
    left = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    right = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_op(p, i, x, y, u, v):
        # rows p,i <- (x*p + y*i, u*p + v*i), applied to s and left
        for mat in (s, left):
            rp, ri = mat[p], mat[i]
            for j in range(len(rp)):
                e, f = rp[j], ri[j]
                rp[j] = x * e + y * f
                ri[j] = u * e + v * f

    def col_op(p, i, x, y, u, v):
        for mat in (s, right):
            for row in mat:
                e, f = row[p], row[i]
                row[p] = x * e + y * f
                row[i] = u * e + v * f

    k = 0
    while k < min(m, n):
        # Find a pivot in the trailing block.
        pr = pc = None
        for i in range(k, m):
            for j in range(k, n):
                if s[i][j] != 0:
                    pr, pc = i, j
                    break
            if pr is not None:
                break
        if pr is None:
            break
        if pr != k:
            row_op(k, pr, 0, 1, 1, 0)
        if pc != k:
            col_op(k, pc, 0, 1, 1, 0)
        while True:
            for i in range(k + 1, m):
                if s[i][k] != 0:
                    if s[i][k] % s[k][k] == 0:
                        row_op(k, i, 1, 0, -(s[i][k] // s[k][k]), 1)
                    else:
                        # gcd combination; strictly shrinks the pivot
                        g, x, y = xgcd(s[k][k], s[i][k])
                        row_op(k, i, x, y, -(s[i][k] // g), s[k][k] // g)
            for j in range(k + 1, n):
                if s[k][j] != 0:
                    if s[k][j] % s[k][k] == 0:
                        col_op(k, j, 1, 0, -(s[k][j] // s[k][k]), 1)
                    else:
                        g, x, y = xgcd(s[k][k], s[k][j])
                        col_op(k, j, x, y, -(s[k][j] // g), s[k][k] // g)
            if all(s[i][k] == 0 for i in range(k + 1, m)) and all(
                s[k][j] == 0 for j in range(k + 1, n)
            ):
                break
        k += 1

    # Normalize signs, then repair the divisibility chain pairwise.
    rank = k
    for i in range(rank):
        if s[i][i] < 0:
            for mat in (s, left):
                mat[i] = [-x for x in mat[i]]
    changed = True
    while changed:
        changed = False
        for i in range(rank - 1):
            a0, b0 = s[i][i], s[i + 1][i + 1]
            if b0 % a0 != 0:
                changed = True
                # diag(a, b) -> diag(gcd, lcm) via tracked 2x2 operations
                row_op(i, i + 1, 1, 1, 0, 1)
                g, x, y = xgcd(s[i][i], s[i][i + 1])
                col_op(i, i + 1, x, y, -(s[i][i + 1] // g), s[i][i] // g)
                if s[i + 1][i] != 0:
                    q = s[i + 1][i] // s[i][i]
                    row_op(i, i + 1, 1, 0, -q, 1)
                if s[i + 1][i + 1] < 0:
                    for mat in (s, left):
                        mat[i + 1] = [-x for x in mat[i + 1]]

    diag = tuple(s[i][i] if i < rank else 0 for i in range(min(m, n)))
    return SnfResult(diag, IntegerMatrix.from_rows(left), IntegerMatrix.from_rows(right))


@dataclass(frozen=True)
class SublatticeBasis:
    """A sublattice of ``Z^ambient_rank`` given by generator rows."""

    ambient_rank: int
    basis: IntegerMatrix

    def __post_init__(self):
        if self.basis.rows and self.basis.cols != self.ambient_rank:
            raise DimensionMismatchError("basis row length must equal the ambient rank")
        if self.basis.rows > self.ambient_rank:
            raise DimensionMismatchError("more generators than the ambient rank allows")

    @classmethod
    def from_rows(cls, ambient_rank: int, rows) -> "SublatticeBasis":
        return cls(ambient_rank, IntegerMatrix.from_rows(rows))

    @property
    def full_rank(self) -> bool:
        h, _ = hermite_normal_form(self.basis)
        pivots = sum(1 for row in h.entries if any(row))
        return pivots == self.ambient_rank


def sublattice_index(b: SublatticeBasis) -> int:
    """Index ``[Z^n : N']`` of a full-rank sublattice, ``|det|`` of the basis."""
    if b.basis.rows != b.ambient_rank:
        raise InfiniteIndexError("sublattice basis is not full-rank")
    d = b.basis.det()
    if d == 0:
        raise InfiniteIndexError("sublattice basis is singular")
    return abs(d)


def exponent_bound(b: SublatticeBasis) -> int:
    """Smallest ``r`` with ``r * Z^n`` contained in the sublattice.

    This is the exponent of the quotient group, i.e. the largest elementary
    divisor of the basis matrix.
    """
    if b.basis.rows != b.ambient_rank:
        raise InfiniteIndexError("sublattice basis is not full-rank")
    snf = smith_normal_form(b.basis)
    if any(d == 0 for d in snf.diagonal):
        raise InfiniteIndexError("sublattice basis is singular")
    return snf.diagonal[-1]


def member_of_sublattice(v, b: SublatticeBasis) -> bool:
    """Whether ``v`` lies in the integer row span of the basis (HNF solve)."""
    vec = [int(x) for x in v]
    if len(vec) != b.ambient_rank:
        raise DimensionMismatchError("vector length does not match the ambient rank")
    h, _ = hermite_normal_form(b.basis)
    for row in h.entries:
        col = next((j for j, x in enumerate(row) if x != 0), None)
        if col is None:
            break
        if vec[col] % row[col] != 0:
            return False
        q = vec[col] // row[col]
        if q:
            vec = [e - q * f for e, f in zip(vec, row)]
    return not any(vec)


def integer_solve(b: IntegerMatrix, v):
    """An integer solution ``x`` of ``x @ b = v``, or None if none exists.

    Works for any generator matrix: reduce ``v`` against the HNF rows and
    pull the combination back through the transform.
    """
    vec = [int(x) for x in v]
    if len(vec) != b.cols:
        raise DimensionMismatchError("target length does not match the matrix")
    h, u = hermite_normal_form(b)
    coeffs = [0] * b.rows
    for r, row in enumerate(h.entries):
        col = next((j for j, x in enumerate(row) if x != 0), None)
        if col is None:
            break
        if vec[col] % row[col] != 0:
            return None
        q = vec[col] // row[col]
        if q:
            coeffs[r] = q
            vec = [e - q * f for e, f in zip(vec, row)]
    if any(vec):
        return None
    return tuple(
        sum(coeffs[r] * u.entries[r][i] for r in range(b.rows)) for i in range(b.rows)
    )


def integer_kernel(a: IntegerMatrix) -> IntegerMatrix:
    """Basis rows for the left kernel lattice ``{x : x @ a = 0}``.

    The zero rows of the HNF correspond to transform rows spanning the kernel;
    the result is HNF-canonicalized.
    """
    h, u = hermite_normal_form(a)
    kernel_rows = [u.entries[i] for i in range(a.rows) if not any(h.entries[i])]
    if not kernel_rows:
        return IntegerMatrix.from_rows([])
    canon, _ = hermite_normal_form(IntegerMatrix.from_rows(kernel_rows))
    return IntegerMatrix.from_rows([r for r in canon.entries if any(r)])


# ---------------------------------------------------------------------------
# Exact rational linear algebra (Fraction-based), used by the geometry layers.


def solve_rational(rows, rhs):
    """Solve ``A x = b`` exactly over the rationals.

    ``rows`` is a sequence of coefficient rows, ``rhs`` the right-hand side.
    Returns a list of Fractions (free variables pinned to 0) or ``None`` if
    the system is inconsistent.
    """
    m = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    if not m:
        return []
    ncols = len(m[0]) - 1
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    for i in range(r, len(m)):
        if m[i][ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = m[i][ncols]
    return x


def kernel_rational(rows):
    """Basis of the rational null space ``{x : A x = 0}`` (columns as unknowns)."""
    if not rows:
        return []
    ncols = len(rows[0])
    m = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis


def rational_rank(rows) -> int:
    """Rank of a matrix over the rationals."""
    if not rows:
        return 0
    return len(rows[0]) - len(kernel_rational(rows))


def clear_denominators(vec) -> tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector, same direction."""
    fracs = [Fraction(x) for x in vec]
    if all(f == 0 for f in fracs):
        raise ZeroVectorError("cannot scale the zero vector")
    lcm = 1
    for f in fracs:
        lcm = lcm * f.denominator // gcd(lcm, f.denominator)
    return primitive_vector([int(f * lcm) for f in fracs])
