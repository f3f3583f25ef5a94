"""Graded pieces of the two Koszul differentials and their cycles.

A coordinate vector on ``K_p (x) R_mu`` is indexed by pairs (subset, monomial):
subsets ``i_1 < ... < i_p`` of ``{0..n}`` in lexicographic order, then the
monomials of ``R_mu``.  Following the simplified grading used throughout,
every coefficient of a degree-``mu`` element has degree ``mu`` (no shift by
``p*d``).

Both differentials contract with the same sign rule::

    g e_{i_1} ^ ... ^ e_{i_p}  ->  sum_j (-1)^(j+1) x_{i_j} g e_{i_1} ^ ..^ (i_j omitted) ^ .. e_{i_p}

with ``x = f`` for ``d^f`` and ``x = T`` for ``d^T``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .errors import InconsistencyError, InputError
from .linalg import LinFormMatrix, Matrix, nullspace, rref
from .poly import GradedBasis, Polynomial, mono_basis


@dataclass(frozen=True)
class ExteriorBasis:
    ngens: int
    p: int
    coeff: GradedBasis
    subsets: tuple[tuple[int, ...], ...] = field(repr=False)
    subset_index: Mapping[tuple[int, ...], int] = field(repr=False, compare=False)

    @property
    def dim(self) -> int:
        return len(self.subsets) * len(self.coeff)

    def coord(self, subset: tuple[int, ...], mono: tuple[int, ...]) -> int:
        return self.subset_index[subset] * len(self.coeff) + self.coeff.index[mono]

    def split(self, k: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        s, m = divmod(k, len(self.coeff))
        return self.subsets[s], self.coeff.monomials[m]


def exterior_basis(ngens: int, p: int, vars: Sequence[str], mu: int) -> ExteriorBasis:
    subsets = tuple(combinations(range(ngens), p)) if 0 <= p <= ngens else ()
    coeff = mono_basis(vars, mu) if mu >= 0 else GradedBasis(tuple(vars), mu, (), {})
    return ExteriorBasis(ngens, p, coeff, subsets, {s: i for i, s in enumerate(subsets)})


def common_degree(f: Sequence[Polynomial]) -> int:
    """Degree d shared by the forms in ``f``; raise InputError otherwise."""
    if not f:
        raise InputError("no forms given")
    vars = f[0].vars
    degs = set()
    for i, fi in enumerate(f):
        if fi.vars != vars:
            raise InputError(f"form {i} lives over {fi.vars}, expected {vars}")
        if fi.is_zero():
            raise InputError(f"form {i} is zero")
        if not fi.is_homogeneous:
            raise InputError(f"form {i} ({fi}) is not homogeneous")
        degs.add(fi.degree)
    if len(degs) != 1:
        raise InputError(f"forms have different degrees {sorted(degs)}")
    return degs.pop()


def koszul_d_f_matrix(f: Sequence[Polynomial], p: int, mu: int) -> Matrix:
    """Matrix of ``d_p^f : K_p (x) R_mu -> K_{p-1} (x) R_{mu+d}``."""
    d = common_degree(f)
    ngens = len(f)
    if not 0 <= p <= ngens:
        raise ValueError(f"exterior power {p} out of range 0..{ngens}")
    vars = f[0].vars
    src = exterior_basis(ngens, p, vars, mu)
    tgt = exterior_basis(ngens, p - 1, vars, mu + d)
    zero = Fraction(0)
    data = [[zero] * src.dim for _ in range(len(tgt.subsets) * len(tgt.coeff))]
    if p == 0:
        return Matrix(data, src.dim)
    f_terms = [list(fi.terms.items()) for fi in f]
    for col in range(src.dim):
        subset, mono = src.split(col)
        for j, i in enumerate(subset):
            rest = subset[:j] + subset[j + 1:]
            sign = 1 if j % 2 == 0 else -1
            for e, c in f_terms[i]:
                row = tgt.coord(rest, tuple(a + b for a, b in zip(mono, e)))
                data[row][col] += sign * c
    return Matrix(data, src.dim)


def koszul_d_T_matrix(ngens: int, p: int, vars: Sequence[str], mu: int, target_vars: Sequence[str]) -> LinFormMatrix:
    """Matrix of ``d_p^T`` on the whole of ``K_p (x) R_mu`` (not only on cycles)."""
    src = exterior_basis(ngens, p, vars, mu)
    tgt = exterior_basis(ngens, p - 1, vars, mu)
    T = [Polynomial.variable(target_vars, t) for t in target_vars]
    zero = Polynomial.zero(target_vars)
    data = [[zero] * src.dim for _ in range(len(tgt.subsets) * len(tgt.coeff))]
    if p > 0:
        for col in range(src.dim):
            subset, mono = src.split(col)
            for j, i in enumerate(subset):
                row = tgt.coord(subset[:j] + subset[j + 1:], mono)
                data[row][col] = data[row][col] + (T[i] if j % 2 == 0 else -T[i])
    return LinFormMatrix(data, target_vars, src.dim)


class CycleSpace:
    """A basis of ``Z_p(f;R)_mu`` together with a solver for coordinates in it."""

    def __init__(self, f: Sequence[Polynomial], p: int, mu: int, vectors: Sequence[Sequence], check: bool = True):
        self.f = tuple(f)
        self.p = p
        self.mu = mu
        self.basis = exterior_basis(len(f), p, f[0].vars, mu)
        self.vectors = [[Fraction(x) if isinstance(x, int) else x for x in v] for v in vectors]
        for v in self.vectors:
            if len(v) != self.basis.dim:
                raise ValueError(f"cycle of length {len(v)}; expected {self.basis.dim}")
        if check and p > 0 and self.vectors:
            D = koszul_d_f_matrix(f, p, mu)
            for k, v in enumerate(self.vectors):
                if any(sum(a * b for a, b in zip(row, v) if a and b) for row in D.data):
                    raise ValueError(f"basis vector {k} is not a cycle of d^f_{p}")
        self._solver = None

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def _prepare(self):
        K, N = self.dim, self.basis.dim
        aug = [v + [Fraction(int(i == k)) for i in range(K)] for k, v in enumerate(self.vectors)]
        E, pivots = rref(aug, N + K)
        if len(pivots) < K or (pivots and pivots[-1] >= N):
            raise ValueError("cycle basis vectors are linearly dependent")
        self._solver = (E, pivots)

    def coordinates(self, v: Sequence) -> list:
        """Coefficients c with ``v == sum c_k vectors[k]``; InconsistencyError if v is outside the span."""
        if self._solver is None:
            self._prepare()
        E, pivots = self._solver
        N = self.basis.dim
        coeffs = [Fraction(0)] * self.dim
        recon = [Fraction(0)] * N
        for row, pj in zip(E, pivots):
            c = v[pj]
            if not c:
                continue
            for k in range(self.dim):
                if row[N + k]:
                    coeffs[k] += c * row[N + k]
            for i in range(N):
                if row[i]:
                    recon[i] += c * row[i]
        if list(recon) != list(v):
            raise InconsistencyError(
                f"vector is not in the span of the degree-{self.mu} cycles Z_{self.p}"
            )
        return coeffs

    def as_forms(self) -> list[dict[tuple[int, ...], Polynomial]]:
        """Each cycle as a map subset -> coefficient form of degree mu."""
        out = []
        n = len(self.basis.coeff)
        for v in self.vectors:
            forms = {}
            for s, subset in enumerate(self.basis.subsets):
                terms = {m: v[s * n + i] for i, m in enumerate(self.basis.coeff.monomials) if v[s * n + i]}
                if terms:
                    forms[subset] = Polynomial(self.basis.coeff.vars, terms)
            out.append(forms)
        return out


def forms_to_vector(basis: ExteriorBasis, forms: Mapping[tuple[int, ...], Polynomial]) -> list:
    """Coordinates of ``sum forms[S] e_S`` (unsorted subsets are sorted with the sign of the permutation)."""
    v = [Fraction(0)] * basis.dim
    for subset, form in forms.items():
        sign = 1
        s = list(subset)
        for i in range(len(s)):
            for j in range(len(s) - 1 - i):
                if s[j] > s[j + 1]:
                    s[j], s[j + 1] = s[j + 1], s[j]
                    sign = -sign
        if len(set(s)) != len(s):
            continue
        for e, c in form.terms.items():
            if sum(e) != basis.coeff.degree:
                raise ValueError(f"coefficient {form} is not of degree {basis.coeff.degree}")
            v[basis.coord(tuple(s), e)] += sign * c
    return v


def cycles(f: Sequence[Polynomial], p: int, mu: int) -> CycleSpace:
    """Echelonized basis of the degree-mu cycles ``Z_p(f;R)_mu``."""
    common_degree(f)
    if p == 0:
        dim = len(mono_basis(f[0].vars, mu)) if mu >= 0 else 0
        vecs = [[Fraction(int(i == k)) for i in range(dim)] for k in range(dim)]
        return CycleSpace(f, 0, mu, vecs, check=False)
    if mu < 0:
        return CycleSpace(f, p, mu, [], check=False)
    return CycleSpace(f, p, mu, nullspace(koszul_d_f_matrix(f, p, mu)), check=False)


def contract(v: Sequence, src: ExteriorBasis, tgt: ExteriorBasis, i: int) -> list:
    """Coefficient of ``T_i`` in ``d^T(v)``, as a vector on ``tgt``."""
    out = [Fraction(0)] * tgt.dim
    n = len(src.coeff)
    for s, subset in enumerate(src.subsets):
        if i not in subset:
            continue
        j = subset.index(i)
        sign = 1 if j % 2 == 0 else -1
        base = tgt.subset_index[subset[:j] + subset[j + 1:]] * n
        for m in range(n):
            c = v[s * n + m]
            if c:
                out[base + m] += sign * c
    return out


def d_T_matrix(zp: CycleSpace, zp_minus: CycleSpace, target_vars: Sequence[str]) -> LinFormMatrix:
    """Matrix of ``d_p^T`` from the cycles ``zp`` to the cycles ``zp_minus``.

    Column k holds the image of ``zp.vectors[k]`` written in the basis of
    ``zp_minus``; entries are linear forms in ``target_vars``.
    """
    if zp.p != zp_minus.p + 1 or zp.mu != zp_minus.mu or zp.f != zp_minus.f:
        raise ValueError("cycle spaces do not come from consecutive stages of one piece")
    if len(target_vars) != len(zp.f):
        raise ValueError(f"need {len(zp.f)} target variables, got {len(target_vars)}")
    target_vars = tuple(target_vars)
    ntv = len(target_vars)
    cols = []
    for z in zp.vectors:
        coeffs = [[Fraction(0)] * ntv for _ in range(zp_minus.dim)]
        for i in range(ntv):
            w = contract(z, zp.basis, zp_minus.basis, i)
            if not any(w):
                continue
            for row, c in enumerate(zp_minus.coordinates(w)):
                coeffs[row][i] = c
        col = []
        for row in coeffs:
            terms = {tuple(int(j == i) for j in range(ntv)): c for i, c in enumerate(row) if c}
            col.append(Polynomial(target_vars, terms))
        cols.append(col)
    data = [[cols[k][r] for k in range(zp.dim)] for r in range(zp_minus.dim)]
    return LinFormMatrix(data, target_vars, zp.dim)


def anticommutation_check(f: Sequence[Polynomial], p: int, mu: int, target_vars: Sequence[str] | None = None) -> bool:
    """Check ``d^f_{p-1} d^T_p + d^T_{p-1} d^f_p == 0`` on all of ``K_p (x) R_mu``."""
    if p < 1:
        raise ValueError("p must be at least 1")
    d = common_degree(f)
    ngens = len(f)
    vars = f[0].vars
    if target_vars is None:
        target_vars = tuple(f"T{i}" for i in range(ngens))
    left = koszul_d_f_matrix(f, p - 1, mu) @ koszul_d_T_matrix(ngens, p, vars, mu, target_vars)
    right = koszul_d_T_matrix(ngens, p - 1, vars, mu + d, target_vars) @ koszul_d_f_matrix(f, p, mu)
    return (left + right).is_zero()
