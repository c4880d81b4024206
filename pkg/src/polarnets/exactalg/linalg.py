"""Exact linear algebra over QQ and GF(p), plus determinants of polynomial matrices.

Rank over QQ uses fraction-free integer elimination with row-content removal;
over GF(p) the row operations are vectorised with int64 numpy arrays when
``p*p`` fits in 63 bits.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from .fields import QQ, DomainError, GF, Mod, PrimeField
from .poly import Poly

_NUMPY_PRIME_LIMIT = 3037000499  # floor(sqrt(2**63 - 1))


class ShapeError(ValueError):
    pass


def infer_field(values) -> object:
    """Common field of a collection of scalars; raises on mixed domains.

    Any ``Mod`` entry selects GF(p); plain ints are then read as residues,
    while a ``Fraction`` or a second modulus is a domain mismatch.
    """
    primes = {v.p for v in values if isinstance(v, Mod)}
    if len(primes) > 1:
        raise DomainError(f"mixed prime fields {sorted(primes)}")
    for v in values:
        if not isinstance(v, (int, Fraction, Mod)):
            raise DomainError(f"unsupported scalar type {type(v).__name__}")
        if primes and isinstance(v, Fraction):
            raise DomainError("mixed rational and prime-field entries")
    return GF(primes.pop()) if primes else QQ


class Matrix:
    """Rectangular matrix of raw field elements."""

    __slots__ = ("rows", "nrows", "ncols", "field")

    def __init__(self, rows: Sequence[Sequence], field=None, ncols: int | None = None):
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ShapeError("ragged matrix")
        if field is None:
            field = infer_field([x for r in rows for x in r])
        self.field = field
        conv = field.convert
        self.rows = [[conv(x) for x in r] for r in rows]
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def identity(cls, n: int, field=QQ) -> "Matrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], field)

    @classmethod
    def zeros(cls, m: int, n: int, field=QQ) -> "Matrix":
        return cls([[0] * n for _ in range(m)], field, ncols=n)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def transpose(self) -> "Matrix":
        return Matrix([list(c) for c in zip(*self.rows)], self.field, ncols=self.nrows)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        if self.field != other.field:
            raise DomainError("matrix fields differ")
        norm = self.field.normalize
        cols = list(zip(*other.rows))
        out = [[norm(sum(a * b for a, b in zip(r, c))) for c in cols] for r in self.rows]
        return Matrix(out, self.field, ncols=other.ncols)

    def apply(self, v: Sequence) -> list:
        if len(v) != self.ncols:
            raise ShapeError("vector length mismatch")
        norm = self.field.normalize
        vv = [self.field.convert(x) for x in v]
        return [norm(sum(a * b for a, b in zip(r, vv))) for r in self.rows]

    def reduce(self, field: PrimeField) -> "Matrix":
        if self.field != QQ:
            raise DomainError("only QQ matrices can be reduced mod p")
        return Matrix(self.rows, field, ncols=self.ncols)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.shape == other.shape
            and self.rows == other.rows
        )

    def __repr__(self):
        return f"Matrix({self.rows!r}, {self.field!r})"


def as_matrix(M, field=None) -> Matrix:
    return M if isinstance(M, Matrix) and field in (None, M.field) else Matrix(
        M.rows if isinstance(M, Matrix) else M, field
    )


# -- QQ: fraction-free integer elimination ----------------------------------------


def _integer_rows(rows) -> list[list[int]]:
    out = []
    for r in rows:
        den = 1
        for x in r:
            if isinstance(x, Fraction):
                den = den * x.denominator // math.gcd(den, x.denominator)
        ir = [int(x * den) for x in r]
        if any(ir):
            out.append(ir)
    return out


def _primitive(row: list[int]) -> list[int]:
    g = math.gcd(*row)
    if g > 1:
        return [x // g for x in row]
    return row


def _int_echelon(rows: list[list[int]], ncols: int, full: bool):
    """In-place fraction-free elimination; returns (pivot columns, rows).

    With ``full`` the result is an integer reduced form: each pivot column is
    zero outside its pivot row.
    """
    rows = [_primitive(r) for r in rows if any(r)]
    pivots = []
    r = 0
    n = len(rows)
    for c in range(ncols):
        if r == n:
            break
        best = None
        for i in range(r, n):
            v = rows[i][c]
            if v and (best is None or abs(v) < abs(rows[best][c])):
                best = i
                if abs(v) == 1:
                    break
        if best is None:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        pr = rows[r]
        a = pr[c]
        targets = range(n) if full else range(r + 1, n)
        for i in targets:
            if i == r:
                continue
            b = rows[i][c]
            if not b:
                continue
            g = math.gcd(a, b)
            fa, fb = a // g, b // g
            rows[i] = _primitive([fa * x - fb * y for x, y in zip(rows[i], pr)])
        pivots.append(c)
        r += 1
    return pivots, rows[:r]


# -- GF(p) elimination -------------------------------------------------------------


def _gf_echelon(rows, ncols: int, p: int, full: bool):
    if p < _NUMPY_PRIME_LIMIT:
        return _gf_echelon_numpy(rows, ncols, p, full)
    return _gf_echelon_python(rows, ncols, p, full)


def _gf_echelon_numpy(rows, ncols, p, full):
    if not rows:
        return [], []
    A = np.array(rows, dtype=np.int64).reshape(len(rows), ncols) % p
    n = A.shape[0]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == n:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = (A[r] * inv) % p
        col = A[:, c].copy()
        col[r] = 0
        if not full:
            col[:r] = 0
        idx = np.flatnonzero(col)
        if idx.size:
            A[idx] = (A[idx] - (col[idx, None] * A[r][None, :]) % p) % p
        pivots.append(c)
        r += 1
    return pivots, [[int(x) for x in row] for row in A[:r]]


def _gf_echelon_python(rows, ncols, p, full):
    rows = [list(r) for r in rows if any(r)]
    n = len(rows)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == n:
            break
        i = next((i for i in range(r, n) if rows[i][c]), None)
        if i is None:
            continue
        rows[r], rows[i] = rows[i], rows[r]
        inv = pow(rows[r][c], -1, p)
        pr = rows[r] = [x * inv % p for x in rows[r]]
        for k in range(n) if full else range(r + 1, n):
            if k == r or not rows[k][c]:
                continue
            f = rows[k][c]
            rows[k] = [(x - f * y) % p for x, y in zip(rows[k], pr)]
        pivots.append(c)
        r += 1
    return pivots, rows[:r]


# -- public operations ---------------------------------------------------------------


def _echelon(M: Matrix, full: bool):
    if isinstance(M.field, PrimeField):
        return _gf_echelon(M.rows, M.ncols, M.field.p, full)
    return _int_echelon(_integer_rows(M.rows), M.ncols, full)


def rank(M) -> int:
    """Rank of a scalar matrix (all rational or all in one prime field)."""
    M = M if isinstance(M, Matrix) else Matrix(M)
    if M.nrows == 0 or M.ncols == 0:
        return 0
    return len(_echelon(M, full=False)[0])


def rref(M) -> tuple[list[int], list[list]]:
    """Pivot columns and rows of the reduced row echelon form (raw entries)."""
    M = M if isinstance(M, Matrix) else Matrix(M)
    pivots, rows = _echelon(M, full=True)
    if isinstance(M.field, PrimeField):
        return pivots, rows
    norm = QQ.normalize
    out = []
    for c, row in zip(pivots, rows):
        a = row[c]
        out.append([norm(Fraction(x, a)) if x % a else x // a for x in row])
    return pivots, out


def kernel_basis(M) -> list[list]:
    """Canonical basis of the right null space.

    One vector per free column ``f``: it has a 1 in position ``f``, zeros in
    the other free positions, and the pivot entries forced by the RREF.
    """
    M = M if isinstance(M, Matrix) else Matrix(M)
    field = M.field
    norm = field.normalize
    pivots, rows = rref(M) if M.nrows else ([], [])
    pivot_set = set(pivots)
    basis = []
    for f in range(M.ncols):
        if f in pivot_set:
            continue
        v = [0] * M.ncols
        v[f] = 1
        for c, row in zip(pivots, rows):
            v[c] = norm(-row[f])
        basis.append(v)
    return basis


def solve(M, b) -> list | None:
    """One solution of ``M x = b`` (free variables zero), or ``None``."""
    M = M if isinstance(M, Matrix) else Matrix(M)
    field = M.field
    aug = Matrix([r + [field.convert(x)] for r, x in zip(M.rows, b)], field, ncols=M.ncols + 1)
    pivots, rows = rref(aug)
    if M.ncols in pivots:
        return None
    x = [0] * M.ncols
    for c, row in zip(pivots, rows):
        x[c] = row[-1]
    return x


def determinant(M) -> object:
    """Determinant of a square scalar matrix."""
    M = M if isinstance(M, Matrix) else Matrix(M)
    if M.nrows != M.ncols:
        raise ShapeError("determinant of a non-square matrix")
    field = M.field
    n = M.nrows
    rows = [list(r) for r in M.rows]
    det = 1
    for c in range(n):
        i = next((i for i in range(c, n) if rows[i][c]), None)
        if i is None:
            return 0
        if i != c:
            rows[c], rows[i] = rows[i], rows[c]
            det = -det
        piv = rows[c][c]
        det = field.normalize(det * piv)
        inv = field.inv(piv)
        for k in range(c + 1, n):
            f = rows[k][c]
            if f:
                f = field.normalize(f * inv)
                rows[k] = [field.normalize(x - f * y) for x, y in zip(rows[k], rows[c])]
    return field.normalize(det)


# -- polynomial matrices ---------------------------------------------------------------


def det_poly_matrix(M: Sequence[Sequence[Poly]]) -> Poly:
    """Exact determinant of a square matrix of polynomials.

    Dynamic programming over column subsets: after processing row k we hold
    every k x k minor on the first k rows, keyed by its column bitmask.
    """
    n = len(M)
    if any(len(r) != n for r in M):
        raise ShapeError("determinant of a non-square matrix")
    if n == 0:
        raise ShapeError("empty matrix")
    ring = None
    for r in M:
        for x in r:
            if isinstance(x, Poly):
                if ring is None:
                    ring = x.ring
                elif x.ring != ring:
                    raise DomainError("matrix entries live in different rings")
    if ring is None:
        raise DomainError("det_poly_matrix needs polynomial entries")
    rows = [[x if isinstance(x, Poly) else ring.constant(x) for x in r] for r in M]
    minors: dict[int, Poly] = {0: ring.one}
    for row in rows:
        nxt: dict[int, Poly] = {}
        for mask, m in minors.items():
            if m.is_zero():
                continue
            for j in range(n):
                bit = 1 << j
                if mask & bit or row[j].is_zero():
                    continue
                above = bin(mask >> (j + 1)).count("1")
                term = row[j] * m
                if above & 1:
                    term = -term
                key = mask | bit
                nxt[key] = nxt[key] + term if key in nxt else term
        minors = nxt
    return minors.get((1 << n) - 1, ring.zero)


def evaluate_poly_matrix(M: Sequence[Sequence[Poly]], point: Sequence) -> Matrix:
    field = next(x.field for r in M for x in r if isinstance(x, Poly))
    return Matrix(
        [[x.evaluate(point) if isinstance(x, Poly) else x for x in r] for r in M], field
    )
