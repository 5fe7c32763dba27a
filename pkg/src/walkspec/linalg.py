"""Exact linear algebra over arbitrary-precision integers and rationals.

Everything here is pure bigint/Fraction arithmetic: fraction-free determinants,
integer characteristic polynomials, ranks over prime fields, Smith normal forms
with unimodular transforms, and exact rational inverses. No floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from . import numtheory


class SingularMatrixError(ArithmeticError):
    """Inversion was requested for a matrix with zero determinant."""


class IntMatrix:
    """Immutable dense matrix of Python ints."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Sequence[Sequence[int]]):
        rows = len(data)
        cols = len(data[0]) if rows else 0
        packed = []
        for r in data:
            if len(r) != cols:
                raise ValueError("ragged rows")
            packed.append(tuple(int(x) for x in r))
        self.rows = rows
        self.cols = cols
        self._data = tuple(packed)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]]) -> IntMatrix:
        rows = len(columns[0])
        return cls([[col[i] for col in columns] for i in range(rows)])

    @classmethod
    def diagonal(cls, entries: Sequence[int], rows: int | None = None,
                 cols: int | None = None) -> IntMatrix:
        k = len(entries)
        rows = k if rows is None else rows
        cols = k if cols is None else cols
        data = [[0] * cols for _ in range(rows)]
        for i, e in enumerate(entries):
            data[i][i] = e
        return cls(data)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self._data[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self._data)

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self._data]

    def transpose(self) -> IntMatrix:
        return IntMatrix([[self._data[i][j] for i in range(self.rows)]
                          for j in range(self.cols)])

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        bt = other.transpose()._data
        return IntMatrix([[sum(x * y for x, y in zip(r, c)) for c in bt]
                          for r in self._data])

    def matvec(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        return tuple(sum(x * y for x, y in zip(r, v)) for r in self._data)

    def __add__(self, other: IntMatrix) -> IntMatrix:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch")
        return IntMatrix([[x + y for x, y in zip(r, s)]
                          for r, s in zip(self._data, other._data)])

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        return self + (-other)

    def __neg__(self) -> IntMatrix:
        return IntMatrix([[-x for x in r] for r in self._data])

    def scaled(self, k: int) -> IntMatrix:
        return IntMatrix([[k * x for x in r] for r in self._data])

    def trace(self) -> int:
        if not self.is_square:
            raise ValueError("trace requires a square matrix")
        return sum(self._data[i][i] for i in range(self.rows))

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, IntMatrix) and self._data == other._data
                and self.cols == other.cols)

    def __hash__(self) -> int:
        return hash((self.cols, self._data))

    def __repr__(self) -> str:
        return f"IntMatrix({self.to_lists()!r})"


class RationalMatrix:
    """Immutable dense matrix of Fractions (always in lowest terms)."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Sequence[Sequence[Fraction | int]]):
        rows = len(data)
        cols = len(data[0]) if rows else 0
        packed = []
        for r in data:
            if len(r) != cols:
                raise ValueError("ragged rows")
            packed.append(tuple(Fraction(x) for x in r))
        self.rows = rows
        self.cols = cols
        self._data = tuple(packed)

    @classmethod
    def identity(cls, n: int) -> RationalMatrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_int_matrix(cls, m: IntMatrix) -> RationalMatrix:
        return cls(m.to_lists())

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._data[i]

    def to_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    def transpose(self) -> RationalMatrix:
        return RationalMatrix([[self._data[i][j] for i in range(self.rows)]
                               for j in range(self.cols)])

    def __matmul__(self, other: RationalMatrix | IntMatrix) -> RationalMatrix:
        if isinstance(other, IntMatrix):
            other = RationalMatrix.from_int_matrix(other)
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        bt = other.transpose()._data
        return RationalMatrix([[sum(x * y for x, y in zip(r, c)) for c in bt]
                               for r in self._data])

    def __rmatmul__(self, other: IntMatrix) -> RationalMatrix:
        return RationalMatrix.from_int_matrix(other) @ self

    def matvec(self, v: Sequence[Fraction | int]) -> tuple[Fraction, ...]:
        vv = [Fraction(x) for x in v]
        if len(vv) != self.cols:
            raise ValueError("dimension mismatch")
        return tuple(sum(x * y for x, y in zip(r, vv)) for r in self._data)

    def is_identity(self) -> bool:
        return (self.is_square and
                all(self._data[i][j] == (1 if i == j else 0)
                    for i in range(self.rows) for j in range(self.cols)))

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for r in self._data for x in r)

    def to_int_matrix(self) -> IntMatrix:
        if not self.is_integral():
            raise ValueError("matrix has non-integer entries")
        return IntMatrix([[int(x) for x in r] for r in self._data])

    def denominator_lcm(self) -> int:
        out = 1
        for r in self._data:
            for x in r:
                out = lcm(out, x.denominator)
        return out

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, RationalMatrix) and self._data == other._data
                and self.cols == other.cols)

    def __hash__(self) -> int:
        return hash((self.cols, self._data))

    def __repr__(self) -> str:
        return f"RationalMatrix({[[str(x) for x in r] for r in self._data]!r})"


# ---------------------------------------------------------------------------
# determinant and characteristic polynomial
# ---------------------------------------------------------------------------


def det_bareiss(m: IntMatrix) -> int:
    """Fraction-free Gaussian elimination; every interior division is exact."""
    if not m.is_square:
        raise ValueError("determinant requires a square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.to_lists()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            row = a[i]
            top = a[k]
            lead = row[k]
            for j in range(k + 1, n):
                row[j] = (row[j] * pivot - lead * top[j]) // prev
            row[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def charpoly(m: IntMatrix) -> tuple[int, ...]:
    """Coefficients (c0, ..., cn) of det(xI - m), cn = 1, by trace recursion.

    Step k divides the running trace by k; the quotient is exact because the
    coefficients are integers for any integer matrix.
    """
    if not m.is_square:
        raise ValueError("characteristic polynomial requires a square matrix")
    n = m.rows
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    work = IntMatrix.identity(n)
    for k in range(1, n + 1):
        work = m @ work
        t = work.trace()
        if t % k:
            raise AssertionError("trace recursion divided inexactly")
        c = -(t // k)
        coeffs[n - k] = c
        if k < n:
            work = work + IntMatrix.identity(n).scaled(c)
    return tuple(coeffs)


def poly_eval(coeffs: Sequence[int], x: int) -> int:
    out = 0
    for c in reversed(coeffs):
        out = out * x + c
    return out


# ---------------------------------------------------------------------------
# modular rank
# ---------------------------------------------------------------------------


def rank_mod_p(m: IntMatrix, p: int) -> int:
    """Rank over the field of p elements; p must (probably) be prime."""
    if p < 2 or not numtheory.is_probable_prime(p):
        raise ValueError(f"{p} is not prime")
    a = [[x % p for x in row] for row in m._data]
    rows, cols = m.rows, m.cols
    rank = 0
    for j in range(cols):
        pivot = next((i for i in range(rank, rows) if a[i][j]), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        inv = pow(a[rank][j], -1, p)
        a[rank] = [x * inv % p for x in a[rank]]
        for i in range(rows):
            if i != rank and a[i][j]:
                f = a[i][j]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SNFDecomposition:
    """m = v1 @ diagonal(divisors) @ v2 with unimodular v1, v2.

    divisors is the full min(rows, cols)-vector: nonneg, each dividing the
    next, zeros trailing.
    """

    divisors: tuple[int, ...]
    v1: IntMatrix
    v2: IntMatrix
    rows: int
    cols: int

    def diagonal(self) -> IntMatrix:
        return IntMatrix.diagonal(self.divisors, self.rows, self.cols)

    def recompose(self) -> IntMatrix:
        return self.v1 @ self.diagonal() @ self.v2


def _xgcd(u: int, v: int) -> tuple[int, int, int]:
    """(g, x, y) with g = gcd(u, v) >= 0 and x*u + y*v = g."""
    r0, r1 = u, v
    x0, x1 = 1, 0
    y0, y1 = 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if r0 < 0:
        r0, x0, y0 = -r0, -x0, -y0
    return r0, x0, y0


def _eliminate(a: list[list[int]], rows: int, cols: int,
               v1: list[list[int]] | None, v2: list[list[int]] | None,
               mod: int | None = None) -> None:
    """Diagonalize `a` in place by unimodular row and column operations.

    Each non-divisible clear is a single 2x2 Bezout block (det 1), so the
    pivot strictly shrinks instead of walking a remainder chain through the
    whole row. When v1/v2 are given, every left operation E lands in v1 as
    E^-1 acting on columns and every right operation F lands in v2 as F^-1
    acting on rows, keeping original = v1 @ a @ v2 an exact invariant.

    With `mod` set (tracking must be off), every updated entry is reduced
    into [0, mod); the caller owns mapping the residue diagonal back to true
    divisors.
    """
    if mod is not None and (v1 is not None or v2 is not None):
        raise ValueError("modular reduction cannot carry transforms")

    def row_sub(i: int, q: int, j: int) -> None:
        # row i -= q * row j ; inverse adds it back, so v1 col j += q * col i
        rj = a[j]
        if mod is None:
            a[i] = [x - q * y for x, y in zip(a[i], rj)]
        else:
            a[i] = [(x - q * y) % mod for x, y in zip(a[i], rj)]
        if v1 is not None:
            for r in v1:
                r[j] += q * r[i]

    def col_sub(j: int, q: int, i: int) -> None:
        # col j -= q * col i ; v2 row i += q * row j
        if mod is None:
            for row in a:
                row[j] -= q * row[i]
        else:
            for row in a:
                row[j] = (row[j] - q * row[i]) % mod
        if v2 is not None:
            v2[i] = [x + q * y for x, y in zip(v2[i], v2[j])]

    def bezout_row(t: int, i: int, p: int, b: int) -> int:
        # rows (t, i) <- [[x, y], [-b/g, p/g]] @ rows; v1 columns pick up
        # the inverse [[p/g, -y], [b/g, x]]
        g, x, y = _xgcd(p, b)
        pg, bg = p // g, b // g
        rt, ri = a[t], a[i]
        if mod is None:
            a[t] = [x * u + y * v for u, v in zip(rt, ri)]
            a[i] = [pg * v - bg * u for u, v in zip(rt, ri)]
        else:
            a[t] = [(x * u + y * v) % mod for u, v in zip(rt, ri)]
            a[i] = [(pg * v - bg * u) % mod for u, v in zip(rt, ri)]
        if v1 is not None:
            for r in v1:
                u, v = r[t], r[i]
                r[t] = u * pg + v * bg
                r[i] = v * x - u * y
        return g

    def bezout_col(t: int, j: int, p: int, b: int) -> int:
        # cols (t, j) <- cols @ [[x, -b/g], [y, p/g]]; v2 rows pick up
        # the inverse [[p/g, b/g], [-y, x]]
        g, x, y = _xgcd(p, b)
        pg, bg = p // g, b // g
        if mod is None:
            for row in a:
                u, v = row[t], row[j]
                row[t] = x * u + y * v
                row[j] = pg * v - bg * u
        else:
            for row in a:
                u, v = row[t], row[j]
                row[t] = (x * u + y * v) % mod
                row[j] = (pg * v - bg * u) % mod
        if v2 is not None:
            wt, wj = v2[t], v2[j]
            v2[t] = [pg * u + bg * v for u, v in zip(wt, wj)]
            v2[j] = [x * v - y * u for u, v in zip(wt, wj)]
        return g

    size = min(rows, cols)
    for t in range(size):
        # move the smallest-magnitude nonzero of the trailing block to (t, t)
        best = None
        for i in range(t, rows):
            row = a[i]
            for j in range(t, cols):
                x = row[j]
                if x:
                    x = -x if x < 0 else x
                    if best is None or x < best[0]:
                        best = (x, i, j)
                        if x == 1:
                            break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            a[t], a[bi] = a[bi], a[t]
            if v1 is not None:
                for r in v1:
                    r[t], r[bi] = r[bi], r[t]
        if bj != t:
            for row in a:
                row[t], row[bj] = row[bj], row[t]
            if v2 is not None:
                v2[t], v2[bj] = v2[bj], v2[t]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if v1 is not None:
                for r in v1:
                    r[t] = -r[t]
        while True:
            while True:
                p = a[t][t]
                for i in range(t + 1, rows):
                    b = a[i][t]
                    if b:
                        q, r = divmod(b, p)
                        if r:
                            p = bezout_row(t, i, p, b)
                        elif q:
                            row_sub(i, q, t)
                p = a[t][t]
                dirty = False
                for j in range(t + 1, cols):
                    b = a[t][j]
                    if b:
                        q, r = divmod(b, p)
                        if r:
                            # recombining full columns re-dirties column t
                            p = bezout_col(t, j, p, b)
                            dirty = True
                        elif q:
                            col_sub(j, q, t)
                if not dirty:
                    break
            p = a[t][t]
            offender = None
            for i in range(t + 1, rows):
                if any(x % p for x in a[i][t + 1:cols]):
                    offender = i
                    break
            if offender is None:
                break
            row_sub(t, -1, offender)  # row t += offending row, then re-clear


def smith_normal_form(m: IntMatrix) -> SNFDecomposition:
    """Full decomposition m = v1 @ diag(divisors) @ v2 with unimodular v1, v2.

    Entry growth is unbounded in the worst case; callers that only need the
    divisors of a large square matrix should prefer smith_divisors.
    """
    R, C = m.rows, m.cols
    a = m.to_lists()
    v1 = [[1 if i == j else 0 for j in range(R)] for i in range(R)]
    v2 = [[1 if i == j else 0 for j in range(C)] for i in range(C)]
    _eliminate(a, R, C, v1, v2)
    divisors = tuple(a[i][i] for i in range(min(R, C)))
    return SNFDecomposition(divisors, IntMatrix(v1), IntMatrix(v2), R, C)


def smith_divisors(m: IntMatrix) -> tuple[int, ...]:
    """Invariant factors of m, without the transform matrices.

    A square nonsingular input takes a bounded-entry path: with d = |det m|,
    d * I lies in the column lattice (m @ adj(m) = det(m) * I), so every
    entry may be reduced mod d after each elementary operation and the true
    divisors recovered as gcd(diagonal, d). Intermediate entries then never
    exceed d, where the plain elimination can grow them exponentially.
    """
    rows, cols = m.rows, m.cols
    if m.is_square and rows:
        d = abs(det_bareiss(m))
        if d == 1:
            return (1,) * rows
        if d:
            a = [[x % d for x in row] for row in m._data]
            _eliminate(a, rows, cols, None, None, mod=d)
            out = [gcd(a[i][i], d) for i in range(rows)]
            # the residue diagonal determines the group, but only prime by
            # prime; pairwise gcd/lcm sweeps sort the exponents into a chain
            changed = True
            while changed:
                changed = False
                for i in range(rows - 1):
                    x, y = out[i], out[i + 1]
                    if y % x:
                        g = gcd(x, y)
                        out[i], out[i + 1] = g, x * y // g
                        changed = True
            prod = 1
            for x in out:
                prod *= x
            if prod != d:
                raise AssertionError("modular elimination lost a divisor")
            return tuple(out)
    a = m.to_lists()
    _eliminate(a, rows, cols, None, None)
    return tuple(a[i][i] for i in range(min(rows, cols)))


def congruence_solvable(m: IntMatrix, p: int) -> bool:
    """Whether m @ x = 0 mod p^2 has a solution x not vanishing mod p.

    Equivalent to p^2 dividing the last Smith divisor (zero included).
    """
    if not m.is_square:
        raise ValueError("congruence test requires a square matrix")
    if p < 2 or not numtheory.is_probable_prime(p):
        raise ValueError(f"{p} is not prime")
    last = smith_divisors(m)[-1]
    return last % (p * p) == 0


def rational_inverse(m: IntMatrix) -> RationalMatrix:
    """Exact inverse over the rationals; raises SingularMatrixError if det = 0."""
    if not m.is_square:
        raise ValueError("inverse requires a square matrix")
    n = m.rows
    aug = [[Fraction(m[i, j]) for j in range(n)] +
           [Fraction(1 if j == i else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if aug[i][col]), None)
        if pivot is None:
            raise SingularMatrixError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return RationalMatrix([row[n:] for row in aug])
