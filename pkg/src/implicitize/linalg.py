"""Dense exact linear algebra.

Matrices are plain row lists wrapped in :class:`Matrix`.  Scalar entries are
``Fraction`` or ``GF``; :class:`LinFormMatrix` holds linear forms in the
target variables.  Everything here is exact: elimination over Q works on
fractions (or integers, fraction-free), determinants of polynomial matrices
use Bareiss elimination with exact polynomial division.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InconsistencyError, NotDivisibleError, RankDeficiencyError
from .parse import parse_poly
from .poly import GF, Polynomial, exact_divide, to_scalar

DEFAULT_PRIME = 2**61 - 1


class Matrix:
    """Row-major dense matrix with entries from any commutative ring."""

    __slots__ = ("nrows", "ncols", "data")

    def __init__(self, data: Sequence[Sequence], ncols: int | None = None):
        self.data = [list(row) for row in data]
        self.nrows = len(self.data)
        if ncols is None:
            if not self.data:
                raise ValueError("pass ncols for a matrix without rows")
            ncols = len(self.data[0])
        self.ncols = ncols
        for row in self.data:
            if len(row) != ncols:
                raise ValueError(f"ragged row of length {len(row)}; expected {ncols}")

    @classmethod
    def identity(cls, n: int, one=Fraction(1), zero=Fraction(0)):
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)], n)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i: int) -> list:
        return list(self.data[i])

    def column(self, j: int) -> list:
        return [row[j] for row in self.data]

    def tolist(self) -> list[list]:
        return [list(row) for row in self.data]

    def transpose(self):
        return type(self)._like(self, [list(col) for col in zip(*self.data)] if self.data else [], self.nrows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]):
        return type(self)._like(self, [[self.data[i][j] for j in cols] for i in rows], len(cols))

    @classmethod
    def _like(cls, template, data, ncols):
        return Matrix(data, ncols)

    def map(self, fn) -> "Matrix":
        return Matrix([[fn(x) for x in row] for row in self.data], self.ncols)

    def evaluate(self, point) -> "Matrix":
        return self.map(lambda x: x.evaluate(point) if isinstance(x, Polynomial) else x)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = [other.column(j) for j in range(other.ncols)]
        out = []
        for row in self.data:
            out_row = []
            for col in cols:
                acc = 0
                for a, b in zip(row, col):
                    if a and b:
                        acc = acc + a * b
                out_row.append(acc)
            out.append(out_row)
        return Matrix(out, other.ncols)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)], self.ncols)

    def is_zero(self) -> bool:
        return not any(x for row in self.data for x in row)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __repr__(self):
        return f"{type(self).__name__}({self.nrows}x{self.ncols})"


ExactMatrix = Matrix


class LinFormMatrix(Matrix):
    """Matrix whose entries are linear forms (or zero) in ``vars``."""

    __slots__ = ("vars",)

    def __init__(self, data, vars: Sequence[str], ncols: int | None = None):
        self.vars = tuple(vars)
        rows = []
        for row in data:
            out = []
            for x in row:
                if not isinstance(x, Polynomial):
                    if x:
                        raise ValueError(f"nonzero constant entry {x} in a matrix of linear forms")
                    x = Polynomial.zero(self.vars)
                if x.vars != self.vars:
                    raise ValueError(f"entry over {x.vars}, expected {self.vars}")
                if x and (x.degree != 1 or not x.is_homogeneous):
                    raise ValueError(f"entry {x} is not a linear form")
                out.append(x)
            rows.append(out)
        super().__init__(rows, ncols)

    @classmethod
    def _like(cls, template, data, ncols):
        return LinFormMatrix(data, template.vars, ncols)

    def to_tsv(self) -> str:
        return to_tsv(self)


@dataclass(frozen=True)
class MinorSelection:
    stage: int
    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != len(self.cols):
            raise ValueError("row and column selections differ in size")

    @property
    def size(self) -> int:
        return len(self.rows)


def _as_field(x):
    return Fraction(x) if isinstance(x, int) else x


def rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[list], list[int]]:
    """Reduced row echelon form over a field; returns (nonzero rows, pivot columns)."""
    A = [[_as_field(x) for x in r] for r in rows]
    m = len(A)
    pivots: list[int] = []
    r = 0
    for j in range(ncols):
        if r == m:
            break
        piv = next((i for i in range(r, m) if A[i][j]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][j]
        pr = [x * inv if x else x for x in A[r]]
        A[r] = pr
        for i in range(m):
            c = A[i][j]
            if i != r and c:
                A[i] = [a - c * b if b else a for a, b in zip(A[i], pr)]
        pivots.append(j)
        r += 1
    return A[:r], pivots


def nullspace(M: Matrix) -> list[list]:
    """Basis of {v : M v = 0}; vector k has a 1 at the k-th free column and 0 at the others."""
    R, pivots = rref(M.data, M.ncols)
    pivset = set(pivots)
    basis = []
    one = Fraction(1)
    zero = Fraction(0)
    if R and R[0]:
        sample = R[0][pivots[0]]
        one, zero = sample, sample - sample
    for f in range(M.ncols):
        if f in pivset:
            continue
        v = [zero] * M.ncols
        v[f] = one
        for k, pj in enumerate(pivots):
            v[pj] = -R[k][f]
        basis.append(v)
    return basis


def _fraction_free_rank(rows: list[list[int]], ncols: int) -> int:
    A = [r[:] for r in rows]
    m = len(A)
    prev = 1
    r = 0
    for j in range(ncols):
        if r == m:
            break
        piv = next((i for i in range(r, m) if A[i][j]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        a = A[r][j]
        for i in range(r + 1, m):
            b = A[i][j]
            A[i] = [(a * x - b * y) // prev for x, y in zip(A[i], A[r])]
        prev = a
        r += 1
    return r


def rank(M: Matrix) -> int:
    """Exact rank.  Rational matrices are cleared to integers and eliminated fraction-free."""
    if M.nrows == 0 or M.ncols == 0:
        return 0
    if any(isinstance(x, GF) for row in M.data for x in row):
        return len(rref(M.data, M.ncols)[1])
    rows = []
    for row in M.data:
        row = [to_scalar(x) for x in row]
        den = math.lcm(*(x.denominator for x in row))
        rows.append([int(x * den) for x in row])
    return _fraction_free_rank(rows, M.ncols)


def _divide(a, b):
    if isinstance(a, Polynomial):
        if isinstance(b, Polynomial):
            if b.is_constant():
                return a.scale(1 / b.leading_coefficient())
            return exact_divide(a, b)
        return a.scale(1 / b)
    return a / b


_FIELD_BITS = 16
_FIELD_MAX = 1 << (_FIELD_BITS - 1)


def _pack(exps) -> int:
    key = 0
    for e in exps:
        key = (key << _FIELD_BITS) | e
    return key


def _unpack(key: int, nvars: int) -> tuple[int, ...]:
    mask = (1 << _FIELD_BITS) - 1
    out = []
    for _ in range(nvars):
        out.append(key & mask)
        key >>= _FIELD_BITS
    return tuple(reversed(out))


def _packed_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    get = out.get
    for ea, ca in a.items():
        for eb, cb in b.items():
            m = ea + eb
            out[m] = get(m, 0) + ca * cb
    return {m: c for m, c in out.items() if c}


def _packed_sub(a: dict, b: dict) -> dict:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) - c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _packed_divide(a: dict, b: dict, guard: int) -> dict:
    """Exact quotient of integer polynomials with packed exponents (lex order)."""
    lm_b = max(b)
    lc_b = b[lm_b]
    tail = [(m, c) for m, c in b.items() if m != lm_b]
    rem = dict(a)
    quo = {}
    while rem:
        lm = max(rem)
        if ((lm | guard) - lm_b) & guard != guard:
            raise NotDivisibleError("inexact division in fraction-free elimination")
        q, r = divmod(rem.pop(lm), lc_b)
        if r:
            raise NotDivisibleError("inexact division in fraction-free elimination")
        shift = lm - lm_b
        quo[shift] = q
        for m, c in tail:
            k = shift + m
            v = rem.get(k, 0) - q * c
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return quo


def _det_integer_polynomials(M: Matrix, vars: tuple[str, ...]) -> Polynomial:
    """Bareiss over Z[vars] after clearing denominators row by row."""
    n = M.nrows
    nvars = len(vars)
    scale = Fraction(1)
    A = []
    for row in M.data:
        den = math.lcm(*(c.denominator for x in row for c in x.terms.values())) if any(row) else 1
        scale *= den
        A.append([{_pack(e): int(c * den) for e, c in x.terms.items()} for x in row])
    guard = _pack([_FIELD_MAX] * nvars)
    sign = 1
    prev = None
    for k in range(n - 1):
        if not A[k][k]:
            piv = next((i for i in range(k + 1, n) if A[i][k]), None)
            if piv is None:
                return Polynomial.zero(vars)
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        akk = A[k][k]
        row_k = A[k]
        for i in range(k + 1, n):
            row_i = A[i]
            aik = row_i[k]
            for j in range(k + 1, n):
                num = _packed_mul(akk, row_i[j]) if row_i[j] else {}
                if aik and row_k[j]:
                    num = _packed_sub(num, _packed_mul(aik, row_k[j]))
                row_i[j] = _packed_divide(num, prev, guard) if prev is not None and num else num
        prev = akk
    last = A[n - 1][n - 1]
    c = Fraction(sign) / scale
    return Polynomial._raw(vars, {_unpack(m, nvars): v * c for m, v in last.items()})


def det_fraction_free(M: Matrix, vars: Sequence[str] | None = None):
    """Determinant by Bareiss elimination; every division is exact.

    ``vars`` is only needed to type the result of a 0x0 polynomial matrix.
    Polynomial matrices over Q are cleared to integer coefficients first.
    """
    n = M.nrows
    if n != M.ncols:
        raise ValueError(f"determinant of a non-square {M.shape} matrix")
    if n == 0:
        if vars is None and isinstance(M, LinFormMatrix):
            vars = M.vars
        return Polynomial.constant(vars, 1) if vars is not None else Fraction(1)
    polys = [x for row in M.data for x in row if isinstance(x, Polynomial)]
    if polys and len(polys) == n * n and all(x.modulus is None for x in polys):
        top = max((max(m, default=0) for x in polys for m in x.terms), default=0)
        if 2 * n * max(top, 1) < _FIELD_MAX:
            return _det_integer_polynomials(M, polys[0].vars)
    A = [[_as_field(x) for x in row] for row in M.data]
    sign = 1
    prev = None
    for k in range(n - 1):
        if not A[k][k]:
            piv = next((i for i in range(k + 1, n) if A[i][k]), None)
            if piv is None:
                return A[k][k] - A[k][k]
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                num = akk * row_i[j]
                if aik and row_k[j]:
                    num = num - aik * row_k[j]
                row_i[j] = num if prev is None else _divide(num, prev)
        prev = akk
    d = A[n - 1][n - 1]
    return -d if sign < 0 else d


def _reduce_against(vec, basis):
    """Reduce ``vec`` by echelon ``basis`` of (pivot, normalized vector); return remainder."""
    v = list(vec)
    for piv, b in basis:
        c = v[piv]
        if c:
            v = [x - c * y for x, y in zip(v, b)]
    return v


def _greedy_independent(vectors, limit):
    """Indices of the first ``limit`` vectors (left to right) that are independent."""
    basis = []
    chosen = []
    for idx, vec in enumerate(vectors):
        v = _reduce_against(vec, basis)
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            continue
        inv = 1 / v[piv]
        basis.append((piv, [x * inv for x in v]))
        chosen.append(idx)
        if len(chosen) == limit:
            break
    return chosen


def evaluate_mod(M: Matrix, point: Sequence[int], p: int) -> Matrix:
    pt = [GF(x, p) for x in point]
    zero = GF(0, p)

    def ev(x):
        if isinstance(x, Polynomial):
            return x.evaluate(pt) if x else zero
        return GF(x, p)

    return M.map(ev)


def select_nonzero_minor(
    M: Matrix,
    r: int,
    seed: int = 0,
    prime: int = DEFAULT_PRIME,
    stage: int = 0,
    confirm: bool = False,
    attempts: int = 3,
) -> MinorSelection:
    """Pick an r x r minor of ``M`` that is not the zero polynomial.

    The matrix is evaluated at a random point of F_p^k; columns are chosen
    greedily from the left and rows greedily from the top among those that
    stay independent.  A nonzero value at the point certifies that the minor
    is a nonzero polynomial.  Up to ``attempts`` points are tried before the
    matrix is declared rank deficient.
    """
    if r < 0 or r > min(M.nrows, M.ncols):
        raise ValueError(f"minor size {r} impossible for a {M.shape} matrix")
    if r == 0:
        return MinorSelection(stage, (), ())
    nvars = len(M.vars) if isinstance(M, LinFormMatrix) else 0
    rng = random.Random(seed)
    for _ in range(attempts):
        point = [rng.randrange(1, prime) for _ in range(nvars)]
        A = evaluate_mod(M, point, prime)
        cols = _greedy_independent([A.column(j) for j in range(A.ncols)], r)
        if len(cols) < r:
            continue
        rows = _greedy_independent([[A[i, j] for j in cols] for i in range(A.nrows)], r)
        if len(rows) < r:
            continue
        sel = MinorSelection(stage, tuple(rows), tuple(cols))
        if confirm and not det_fraction_free(M.submatrix(sel.rows, sel.cols)):
            raise InconsistencyError("minor certified nonzero mod p is zero over Q")
        return sel
    raise RankDeficiencyError(
        f"no nonzero {r}x{r} minor found in the {M.nrows}x{M.ncols} matrix of stage {stage} "
        f"after {attempts} random evaluations",
        hint="the graded piece is not generically exact; raise mu or check the base locus",
    )


def to_tsv(M: Matrix) -> str:
    """One row per line, entries tab separated, polynomials in the text grammar."""
    return "".join("\t".join(str(x) for x in row) + "\n" for row in M.data)


def from_tsv(text: str, vars: Sequence[str]) -> LinFormMatrix:
    rows = [line.split("\t") for line in text.splitlines() if line.strip()]
    data = [[parse_poly(x, vars) for x in row] for row in rows]
    return LinFormMatrix(data, vars, len(data[0]) if data else 0)
