"""Determinant of a graded piece of the Z-complex, and the Fitting-ideal route.

The piece in source degree ``mu`` is the complex of linear-form matrices

    ... -> R' (x) Z_2 -> R' (x) Z_1 -> R' (x) Z_0 -> 0

Its determinant is computed by the usual decomposition: pick a nonzero
maximal minor of the last map, restrict the next map to the complementary
rows, and recurse.  The alternating product of those minors is a polynomial
in the target variables.
"""
from __future__ import annotations

import itertools
import logging
import math
import random
from dataclasses import dataclass, field
from typing import Sequence

from .errors import DegeneracyError, InconsistencyError, NonAcyclicError, NotDivisibleError, RankDeficiencyError
from .koszul import CycleSpace, common_degree, cycles, d_T_matrix
from .linalg import DEFAULT_PRIME, LinFormMatrix, Matrix, MinorSelection, det_fraction_free, rank, select_nonzero_minor
from .poly import GF, Polynomial, compose, exact_divide, gcd_poly

log = logging.getLogger(__name__)

RETRY_BUDGET = 8
FULL_ENUMERATION_LIMIT = 2000
RANDOM_MINORS = 64
CONFIRM_MINORS = 16


@dataclass
class ZComplexPiece:
    f: tuple[Polynomial, ...]
    mu: int
    target_vars: tuple[str, ...]
    spaces: list[CycleSpace]
    matrices: list[LinFormMatrix]

    @property
    def dims(self) -> list[int]:
        return [z.dim for z in self.spaces]

    @property
    def d(self) -> int:
        return common_degree(self.f)

    def minor_sizes(self) -> list[int]:
        """Sizes r_p of the square blocks: r_1 = dim Z_0, r_{p+1} = dim Z_p - r_p."""
        sizes = []
        r = 0
        for dim in self.dims[:-1]:
            r = dim - r
            sizes.append(r)
        return sizes

    def euler_characteristic(self) -> int:
        return sum((-1) ** p * dim for p, dim in enumerate(self.dims))


def _check_piece(piece: ZComplexPiece) -> None:
    for p in range(1, len(piece.matrices)):
        if not (piece.matrices[p - 1] @ piece.matrices[p]).is_zero():
            raise InconsistencyError(f"d_{p}^T d_{p + 1}^T is not zero in degree {piece.mu}")
    chi = piece.euler_characteristic()
    if chi != 0:
        dims = ", ".join(f"dim Z_{p} = {k}" for p, k in enumerate(piece.dims))
        raise NonAcyclicError(
            f"graded piece in degree {piece.mu} is not exact: {dims}, Euler characteristic {chi}",
            hint="raise mu; if that does not help, the base locus is not locally defined by n equations",
        )


def piece_from_spaces(spaces: Sequence[CycleSpace], target_vars: Sequence[str], check: bool = True) -> ZComplexPiece:
    """Assemble a piece from explicit cycle bases (stage p at index p)."""
    spaces = list(spaces)
    target_vars = tuple(target_vars)
    matrices = [d_T_matrix(spaces[p], spaces[p - 1], target_vars) for p in range(1, len(spaces))]
    piece = ZComplexPiece(spaces[0].f, spaces[0].mu, target_vars, spaces, matrices)
    if check:
        _check_piece(piece)
    return piece


def build_piece(f: Sequence[Polynomial], mu: int, target_vars: Sequence[str], check: bool = True) -> ZComplexPiece:
    """Cycle spaces and d^T matrices of the degree-``mu`` piece, trailing zero stages dropped."""
    if mu < 0:
        raise ValueError(f"negative degree {mu}")
    common_degree(f)
    if len(target_vars) != len(f):
        raise ValueError(f"need {len(f)} target variables, got {len(target_vars)}")
    ngens = len(f)
    spaces = [cycles(f, p, mu) for p in range(ngens + 1)]
    if spaces[ngens].dim:
        raise InconsistencyError("top exterior power has nonzero cycles")
    while len(spaces) > 1 and spaces[-1].dim == 0:
        spaces.pop()
    log.debug("piece mu=%d dims=%s", mu, [z.dim for z in spaces])
    return piece_from_spaces(spaces, target_vars, check)


@dataclass
class Decomposition:
    selections: list[MinorSelection]
    determinants: list[Polynomial]

    @property
    def numerator(self) -> Polynomial:
        return math.prod(self.determinants[0::2], start=_one_like(self.determinants[0]))

    @property
    def denominator(self) -> Polynomial:
        return math.prod(self.determinants[1::2], start=_one_like(self.determinants[0]))


def _one_like(p: Polynomial) -> Polynomial:
    return Polynomial.constant(p.vars, 1)


def decompose(piece: ZComplexPiece, seed: int = 0, prime: int = DEFAULT_PRIME, confirm: bool = False) -> Decomposition:
    """Choose the square blocks stage by stage and compute their determinants."""
    if not piece.matrices:
        if piece.dims[0]:
            raise RankDeficiencyError(
                f"no syzygies in degree {piece.mu}", hint="raise mu"
            )
        raise RankDeficiencyError(f"empty piece in degree {piece.mu}")
    rng = random.Random(seed)
    rows = list(range(piece.dims[0]))
    selections, dets = [], []
    for p, M in enumerate(piece.matrices, start=1):
        sub = M.submatrix(rows, range(M.ncols))
        sel = select_nonzero_minor(sub, len(rows), seed=rng.randrange(2**63), prime=prime, stage=p, confirm=confirm)
        cols = sorted(sel.cols)
        selections.append(MinorSelection(p, tuple(rows), tuple(cols)))
        dets.append(det_fraction_free(sub.submatrix(range(len(rows)), cols), piece.target_vars))
        chosen = set(cols)
        rows = [j for j in range(M.ncols) if j not in chosen]
    if rows:
        raise NonAcyclicError(
            f"stage {len(piece.matrices)} has {len(rows)} columns left after decomposition",
            hint="the piece is not exact; raise mu",
        )
    return Decomposition(selections, dets)


def det_complex(piece: ZComplexPiece, seed: int = 0, prime: int = DEFAULT_PRIME, confirm: bool = False,
                retries: int = RETRY_BUDGET) -> Polynomial:
    """Normalized determinant of the piece."""
    rng = random.Random(seed)
    last_error = None
    for attempt in range(retries):
        attempt_seed = seed if attempt == 0 else rng.randrange(2**63)
        try:
            dec = decompose(piece, attempt_seed, prime, confirm)
            return exact_divide(dec.numerator, dec.denominator).normalized()
        except (NotDivisibleError, RankDeficiencyError) as exc:
            log.info("decomposition attempt %d failed: %s", attempt, exc)
            last_error = exc
    raise DegeneracyError(
        f"determinant of the degree-{piece.mu} piece failed after {retries} attempts: {last_error}",
        hint="the complex is not acyclic in this degree: raise mu or check the base locus",
    )


@dataclass
class FittingResult:
    value: Polynomial
    minors_used: int
    exhaustive: bool
    warnings: list[str] = field(default_factory=list)


def fitting_gcd_report(piece: ZComplexPiece, budget: int = FULL_ENUMERATION_LIMIT, seed: int = 0,
                       prime: int = DEFAULT_PRIME) -> FittingResult:
    """Gcd of the maximal minors of the first map d_1^T."""
    if not piece.matrices:
        raise RankDeficiencyError(f"no syzygies in degree {piece.mu}", hint="raise mu")
    M = piece.matrices[0]
    r = M.nrows
    select_nonzero_minor(M, r, seed=seed, prime=prime, stage=1)
    total = math.comb(M.ncols, r)
    rows = range(r)
    warnings = []
    g = None
    used = 0

    def fold(cols):
        nonlocal g, used
        minor = det_fraction_free(M.submatrix(rows, cols), piece.target_vars)
        used += 1
        if minor:
            g = minor.normalized() if g is None else gcd_poly(g, minor)

    if total <= budget:
        for cols in itertools.combinations(range(M.ncols), r):
            fold(cols)
            if g is not None and g.is_constant():
                break
        return FittingResult(g, used, True, warnings)

    rng = random.Random(seed)
    for _ in range(RANDOM_MINORS):
        fold(sorted(rng.sample(range(M.ncols), r)))
    g = g if g is not None else Polynomial.constant(piece.target_vars, 0)
    warnings.append(
        f"{total} maximal minors exceed the budget {budget}; gcd of {RANDOM_MINORS} random "
        "minors may be a proper multiple of the true gcd"
    )
    for _ in range(CONFIRM_MINORS):
        cols = sorted(rng.sample(range(M.ncols), r))
        minor = det_fraction_free(M.submatrix(rows, cols), piece.target_vars)
        used += 1
        if not minor or not g:
            continue
        try:
            exact_divide(minor, g)
        except NotDivisibleError:
            warnings.append("a confirmation minor was not divisible by the sampled gcd; refined")
            g = gcd_poly(g, minor)
    if not g:
        raise RankDeficiencyError("all sampled maximal minors vanish")
    return FittingResult(g, used, False, warnings)


def fitting_gcd(piece: ZComplexPiece, budget: int = FULL_ENUMERATION_LIMIT, seed: int = 0) -> Polynomial:
    return fitting_gcd_report(piece, budget, seed).value


def image_dimension(f: Sequence[Polynomial], seed: int = 0, prime: int = DEFAULT_PRIME, points: int = 3) -> int:
    """Dimension of the image closure in P^n: generic Jacobian rank minus one.

    The rank is taken mod ``prime`` at random points; a low value at one point
    is an accident with probability at most deg/prime, so the maximum is kept.
    """
    common_degree(f)
    vars = f[0].vars
    jac = [[fi.partial(v) for v in vars] for fi in f]
    rng = random.Random(seed)
    best = 0
    for _ in range(points):
        pt = [GF(rng.randrange(prime), prime) for _ in vars]
        M = Matrix([[GF(g.evaluate(pt), prime) if g else GF(0, prime) for g in row] for row in jac])
        best = max(best, rank(M))
        if best == len(vars):
            break
    return best - 1


def require_hypersurface_image(f: Sequence[Polynomial], seed: int = 0, prime: int = DEFAULT_PRIME) -> None:
    dim = image_dimension(f, seed, prime)
    n = len(f) - 1
    if dim < n - 1:
        raise DegeneracyError(
            f"the image of the map has dimension {dim}, not {n - 1}: it is not a hypersurface "
            "and no implicit equation exists",
            hint="the maps are algebraically dependent beyond a single relation; check the parametrization",
        )


def verify_vanishing(D: Polynomial, f: Sequence[Polynomial]) -> bool:
    """True iff D(f_0, ..., f_n) is identically zero."""
    if D.is_zero():
        raise ValueError("the zero polynomial vanishes on everything")
    return compose(D, f).is_zero()


@dataclass
class DegreeAudit:
    degree: int
    minor_sizes: list[int]
    expected: int
    base_point_free_degree: int | None
    notes: list[str]


def degree_audit(piece: ZComplexPiece, D: Polynomial, base_point_free: bool = False) -> DegreeAudit:
    sizes = piece.minor_sizes()
    expected = sum((-1) ** k * r for k, r in enumerate(sizes))
    if D.degree != expected:
        raise InconsistencyError(f"deg D = {D.degree} but the minor sizes {sizes} give {expected}")
    notes = [f"deg D = {expected} = delta * deg H + deg G; delta and deg G are not determined"]
    bpf = None
    if base_point_free:
        n = len(piece.f) - 1
        bpf = piece.d ** (n - 1)
        if D.degree != bpf:
            raise InconsistencyError(f"empty base locus requires deg D = d^(n-1) = {bpf}, got {D.degree}")
    return DegreeAudit(D.degree, sizes, expected, bpf, notes)


def squarefree_part(D: Polynomial) -> Polynomial:
    """D divided by gcd(D, dD/dT_0, ..., dD/dT_n); normalized."""
    if D.is_zero():
        raise ValueError("squarefree part of zero")
    if D.is_constant():
        return D.normalized()
    g = D
    for v in D.vars:
        dv = D.partial(v)
        if dv:
            g = gcd_poly(g, dv)
        if g.is_constant():
            break
    return exact_divide(D, g).normalized()
