"""Degree-by-degree analysis of the base ideal ``I = (f_0, ..., f_n)``.

Everything is linear algebra on graded slices: ``I_e`` is the span of the
multiples ``m * f_i`` with ``deg m = e - d``; the saturation is obtained by
taking colons by the irrelevant ideal from a degree where ``I`` and its
saturation are known to agree.  No Groebner bases, no primary decomposition.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .errors import InconsistencyError
from .koszul import common_degree
from .linalg import Matrix, nullspace, rref
from .poly import GradedBasis, Polynomial, from_vector, mono_basis

log = logging.getLogger(__name__)


class DimClass(str, Enum):
    EMPTY = "empty"
    ZERO = "zero-dimensional"
    POSITIVE = "positive-dimensional"


@dataclass
class GradedIdealSlices:
    """Echelon bases of the graded pieces ``J_e`` of an ideal, for ``e <= bound``."""

    vars: tuple[str, ...]
    generators: tuple[Polynomial, ...]
    bound: int
    rows: dict[int, list[list[Fraction]]] = field(default_factory=dict)
    pivots: dict[int, list[int]] = field(default_factory=dict)

    def set_slice(self, e: int, vectors: Sequence[Sequence]):
        R, piv = rref(vectors, len(mono_basis(self.vars, e)))
        self.rows[e] = R
        self.pivots[e] = piv

    def basis(self, e: int) -> GradedBasis:
        return mono_basis(self.vars, e)

    def dim(self, e: int) -> int:
        if e < 0:
            return 0
        return len(self.rows[e])

    def dims(self) -> list[int]:
        return [self.dim(e) for e in range(self.bound + 1)]

    def forms(self, e: int) -> list[Polynomial]:
        b = self.basis(e)
        return [from_vector(v, b) for v in self.rows[e]]

    def contains(self, g: Polynomial) -> bool:
        """Membership of a form of degree at most ``bound``."""
        if g.is_zero():
            return True
        e = g.degree
        b = self.basis(e)
        v = [Fraction(0)] * len(b)
        for m, c in g.terms.items():
            v[b.index[m]] = c
        for row, pj in zip(self.rows[e], self.pivots[e]):
            c = v[pj]
            if c:
                v = [x - c * y for x, y in zip(v, row)]
        return not any(v)


def ideal_slices(f: Sequence[Polynomial], D: int) -> GradedIdealSlices:
    """Slices ``I_e = sum_i f_i R_{e-d}`` for ``0 <= e <= D``."""
    d = common_degree(f)
    vars = f[0].vars
    slices = GradedIdealSlices(vars, tuple(f), D)
    for e in range(D + 1):
        if e < d:
            slices.set_slice(e, [])
            continue
        target = mono_basis(vars, e)
        vecs = []
        for m in mono_basis(vars, e - d):
            for fi in f:
                v = [Fraction(0)] * len(target)
                for t, c in fi.terms.items():
                    v[target.index[tuple(a + b for a, b in zip(m, t))]] = c
                vecs.append(v)
        slices.set_slice(e, vecs)
    return slices


def colon_by_irrelevant(slices: GradedIdealSlices, e: int) -> list[list[Fraction]]:
    """Basis of ``(J : m)_e = {g in R_e : X_i g in J_{e+1} for all i}``.

    Each condition ``X_i g in J_{e+1}`` says the normal form of ``X_i g``
    modulo the echelon basis of ``J_{e+1}`` vanishes; all of them are stacked
    into one matrix whose nullspace is the answer.
    """
    if e + 1 not in slices.rows:
        raise ValueError(f"slice of degree {e + 1} not available")
    src = mono_basis(slices.vars, e)
    tgt = mono_basis(slices.vars, e + 1)
    E, piv = slices.rows[e + 1], slices.pivots[e + 1]
    pivot_row = {pj: k for k, pj in enumerate(piv)}
    free = [j for j in range(len(tgt)) if j not in pivot_row]
    free_pos = {j: k for k, j in enumerate(free)}
    nvars = len(slices.vars)
    zero = Fraction(0)
    constraints = [[zero] * len(src) for _ in range(nvars * len(free))]
    for col, m in enumerate(src):
        for i in range(nvars):
            shifted = tgt.index[tuple(a + (k == i) for k, a in enumerate(m))]
            base = i * len(free)
            if shifted in pivot_row:
                row = E[pivot_row[shifted]]
                for j in free:
                    if row[j]:
                        constraints[base + free_pos[j]][col] -= row[j]
            else:
                constraints[base + free_pos[shifted]][col] += 1
    return nullspace(Matrix(constraints, len(src)))


def saturate_truncated(f: Sequence[Polynomial], D: int | None = None, slices: GradedIdealSlices | None = None) -> GradedIdealSlices:
    """Slices of the saturation ``I^sat`` in degrees ``0..D``.

    Starts from ``I_D`` (equal to the saturation there once ``D`` is past the
    regularity of ``I``) and walks down taking colons by the irrelevant ideal.
    """
    d = common_degree(f)
    n = len(f[0].vars)
    if D is None:
        D = n * (d - 1) + 2
    if slices is None or slices.bound < D:
        slices = ideal_slices(f, D)
    sat = GradedIdealSlices(slices.vars, tuple(f), D)
    sat.rows[D], sat.pivots[D] = slices.rows[D], slices.pivots[D]
    for e in range(D - 1, -1, -1):
        sat.set_slice(e, colon_by_irrelevant(sat, e))
    return sat


def epsilon_X(sat: GradedIdealSlices) -> int | None:
    """Initial degree of the saturation; None when it contains 1 (empty base locus)."""
    if sat.dim(0):
        return None
    for e in range(sat.bound + 1):
        if sat.dim(e):
            return e
    return None


def hilbert_function(sat: GradedIdealSlices) -> list[int]:
    return [len(sat.basis(e)) - sat.dim(e) for e in range(sat.bound + 1)]


@dataclass(frozen=True)
class Classification:
    dim_class: DimClass
    degree: int | None
    window: tuple[int, ...]


def classify_dimension(sat: GradedIdealSlices, n: int, d: int) -> Classification:
    """Read off the dimension of X from the Hilbert function past the regularity bound."""
    start = (n - 1) * (d - 1) + 1
    if sat.bound < start + 1:
        raise ValueError(f"need slices up to degree {start + 1}, have {sat.bound}")
    h = hilbert_function(sat)
    window = tuple(h[start:])
    if not any(window):
        return Classification(DimClass.EMPTY, None, window)
    if len(set(window)) == 1:
        return Classification(DimClass.ZERO, window[0], window)
    return Classification(DimClass.POSITIVE, None, window)


@dataclass
class BaseLocusReport:
    n: int
    d: int
    dim_class: DimClass
    epsilon: int | None
    degree: int | None
    bound: int
    ideal_dims: list[int]
    saturation_dims: list[int]
    hilbert: list[int]
    mu: int | None = None
    warnings: list[str] = field(default_factory=list)
    saturation: GradedIdealSlices | None = field(default=None, repr=False, compare=False)

    def to_dict(self) -> dict:
        return {
            "dim_class": self.dim_class.value,
            "epsilon": self.epsilon,
            "degree": self.degree,
            "bound": self.bound,
            "ideal_dims": self.ideal_dims,
            "saturation_dims": self.saturation_dims,
            "hilbert_function": self.hilbert,
            "mu": self.mu,
            "warnings": list(self.warnings),
        }


def mu_threshold(n: int, d: int, report: BaseLocusReport) -> int:
    """Smallest source degree for which the determinant is licensed."""
    base = (n - 1) * (d - 1)
    if report.dim_class is DimClass.ZERO:
        return max(0, base - report.epsilon)
    return base


_LCI_NOTE = (
    "unchecked assumption: X is locally a complete intersection; otherwise the "
    "determinant carries an extraneous factor G"
)
_ACYCLIC_NOTE = "unchecked assumption: X is locally defined by at most n equations"
_CURVE_NOTES = (
    "unchecked assumption: dim X = 1 and X is locally defined by at most n equations",
    "unchecked assumption: the unmixed curve part C of X is defined by at most n-1 "
    "equations on a dense open subset and locally on its support",
    "unchecked assumption: H^0(C, O_C(mu)) = 0 for mu < -d (holds e.g. if C is reduced)",
    "the determinant is H^delta * G where G vanishes on the image of the base curve; "
    "the threshold is not lowered by epsilon_X",
)


def analyze_base_locus(f: Sequence[Polynomial], bound: int | None = None) -> BaseLocusReport:
    d = common_degree(f)
    n = len(f[0].vars)
    D = bound if bound is not None else n * (d - 1) + 2
    D = max(D, (n - 1) * (d - 1) + 2, d)
    I = ideal_slices(f, D)
    sat = saturate_truncated(f, D, I)
    cls = classify_dimension(sat, n, d)
    eps = epsilon_X(sat)
    report = BaseLocusReport(
        n=n,
        d=d,
        dim_class=cls.dim_class,
        epsilon=eps,
        degree=cls.degree,
        bound=D,
        ideal_dims=I.dims(),
        saturation_dims=sat.dims(),
        hilbert=hilbert_function(sat),
        saturation=sat,
    )
    if cls.dim_class is DimClass.ZERO:
        if eps is None or not 1 <= eps <= d:
            raise InconsistencyError(f"initial degree {eps} of the saturation outside 1..{d}")
        report.warnings += [_ACYCLIC_NOTE, _LCI_NOTE]
    elif cls.dim_class is DimClass.POSITIVE:
        report.warnings += list(_CURVE_NOTES)
        w = cls.window
        if len(w) >= 3 and any(w[i + 2] - 2 * w[i + 1] + w[i] > 0 for i in range(len(w) - 2)):
            report.warnings.append(
                "base locus appears to have dimension >= 2; no result covers this case"
            )
        report.warnings.append(
            f"saturation computed from degree {D}; exact only if the regularity of I is at most {D}"
        )
    report.mu = mu_threshold(n, d, report)
    log.debug("base locus: %s", report.to_dict())
    return report
