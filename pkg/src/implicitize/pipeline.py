"""End-to-end runs: base-locus analysis, the graded piece, its determinant, checks."""
from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path

from .baselocus import BaseLocusReport, DimClass, analyze_base_locus
from .elim import (
    DegreeAudit,
    ZComplexPiece,
    build_piece,
    degree_audit,
    det_complex,
    fitting_gcd_report,
    require_hypersurface_image,
    squarefree_part,
    verify_vanishing,
)
from .errors import InconsistencyError
from .linalg import to_tsv
from .parse import parse_poly
from .poly import Polynomial
from .problem import ProblemInput


@dataclass
class ImplicitReport:
    problem: ProblemInput
    mu: int
    mu_source: str
    method: str
    D: Polynomial
    dims: list[int]
    minor_sizes: list[int]
    verified: bool
    squarefree: Polynomial
    base_locus: BaseLocusReport
    audit: DegreeAudit | None
    fitting: Polynomial | None = None
    equation: Polynomial | None = None
    warnings: list[str] = field(default_factory=list)
    timings: dict[str, float] | None = None

    @property
    def degree(self) -> int:
        return self.D.degree

    def to_dict(self) -> dict:
        out = {
            "source_vars": list(self.problem.source_vars),
            "target_vars": list(self.problem.target_vars),
            "maps": list(self.problem.maps),
            "d": self.problem.degree,
            "method": self.method,
            "mu": self.mu,
            "mu_source": self.mu_source,
            "seed": self.problem.options.seed,
            "dims": self.dims,
            "minor_sizes": self.minor_sizes,
            "D": str(self.D),
            "degree": self.degree,
            "verified": self.verified,
            "squarefree_part": str(self.squarefree),
            "fitting_gcd": None if self.fitting is None else str(self.fitting),
            "implicit_equation": None if self.equation is None else str(self.equation),
            "base_locus": self.base_locus.to_dict(),
            "warnings": list(self.warnings),
        }
        if self.timings is not None:
            out["timings"] = {k: round(v, 6) for k, v in self.timings.items()}
        return out

    def to_text(self) -> str:
        bl = self.base_locus
        lines = [
            f"map          : P^{self.problem.n - 1} -> P^{self.problem.n}, degree {self.problem.degree}",
            f"base locus   : {bl.dim_class.value}"
            + (f", degree {bl.degree}" if bl.degree is not None else "")
            + (f", epsilon_X = {bl.epsilon}" if bl.epsilon is not None else ""),
            f"mu           : {self.mu} ({self.mu_source})",
            f"dims Z_p     : {self.dims}",
            f"minor sizes  : {self.minor_sizes}",
            f"method       : {self.method}",
            f"D            : {self.D}",
            f"degree       : {self.degree}",
            f"squarefree   : {self.squarefree}",
            f"verified     : {'yes' if self.verified else 'NO'}",
        ]
        if self.equation is not None:
            lines.append(f"implicit eq. : {self.equation}")
        for w in self.warnings:
            lines.append(f"warning      : {w}")
        if self.timings is not None:
            for k, v in self.timings.items():
                lines.append(f"time {k:<8}: {v:.3f}s")
        return "\n".join(lines) + "\n"


@contextmanager
def _timer(timings: dict, key: str):
    start = time.perf_counter()
    try:
        yield
    finally:
        timings[key] = time.perf_counter() - start


def export_matrices(piece: ZComplexPiece, directory) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for p, M in enumerate(piece.matrices, start=1):
        path = directory / f"d{p}_mu{piece.mu}.tsv"
        path.write_text(to_tsv(M))
        paths.append(path)
    return paths


def run_analyze(problem: ProblemInput) -> BaseLocusReport:
    return analyze_base_locus(problem.forms)


def build_problem_piece(problem: ProblemInput, report: BaseLocusReport | None = None) -> ZComplexPiece:
    if report is None:
        report = run_analyze(problem)
    mu = problem.options.mu if problem.options.mu is not None else report.mu
    return build_piece(problem.forms, mu, problem.target_vars)


def run_implicitize(problem: ProblemInput, timings: bool = False, export_dir=None) -> ImplicitReport:
    """Full pipeline.  Hard diagnostics propagate as ImplicitizationError subclasses."""
    opts = problem.options
    clock: dict[str, float] = {}
    with _timer(clock, "analyze"):
        bl = run_analyze(problem)
    warnings = list(bl.warnings)
    mu = opts.mu if opts.mu is not None else bl.mu
    mu_source = "override" if opts.mu is not None else "threshold"
    if opts.mu is not None and opts.mu < bl.mu:
        warnings.append(f"mu = {opts.mu} is below the threshold {bl.mu}; the result is not guaranteed")
    require_hypersurface_image(problem.forms, opts.seed, opts.prime)
    with _timer(clock, "piece"):
        piece = build_piece(problem.forms, mu, problem.target_vars)
    if export_dir is not None:
        export_matrices(piece, export_dir)

    D = fitting = None
    exhaustive = True
    with _timer(clock, "det"):
        if opts.method in ("det", "both"):
            D = det_complex(piece, seed=opts.seed, prime=opts.prime)
    with _timer(clock, "fitting"):
        if opts.method in ("fitting", "both"):
            fr = fitting_gcd_report(piece, seed=opts.seed, prime=opts.prime)
            fitting, exhaustive = fr.value, fr.exhaustive
            warnings += fr.warnings
    if D is None:
        D = fitting
    elif fitting is not None and fitting != D:
        if exhaustive:
            raise InconsistencyError(f"determinant {D} and Fitting gcd {fitting} disagree")
        warnings.append(f"sampled Fitting gcd {fitting} differs from the determinant")

    audit = None
    bpf = bl.dim_class is DimClass.EMPTY and mu >= bl.mu
    try:
        audit = degree_audit(piece, D, base_point_free=bpf)
    except InconsistencyError:
        if opts.method == "fitting" and not exhaustive:
            warnings.append("degree audit failed for the sampled Fitting gcd")
        else:
            raise
    if audit is not None:
        warnings += audit.notes

    with _timer(clock, "verify"):
        verified = verify_vanishing(D, problem.forms)
        sqf = squarefree_part(D)
    if sqf != D:
        warnings.append(
            f"D is not squarefree (squarefree part has degree {sqf.degree}): the map has degree "
            "delta > 1 or the extraneous factor has repeated components"
        )
    equation = D if opts.assume_birational_lci else None
    if equation is None:
        warnings.append(
            "D = H^delta * G; pass --assume-birational-lci to label D as the implicit equation"
        )
    return ImplicitReport(
        problem=problem,
        mu=mu,
        mu_source=mu_source,
        method=opts.method,
        D=D,
        dims=piece.dims,
        minor_sizes=piece.minor_sizes(),
        verified=verified,
        squarefree=sqf,
        base_locus=bl,
        audit=audit,
        fitting=fitting,
        equation=equation,
        warnings=warnings,
        timings=clock if timings else None,
    )


@dataclass
class VerifyResult:
    candidate: Polynomial
    vanishes: bool
    degree: int
    is_homogeneous: bool

    def to_dict(self) -> dict:
        return {
            "candidate": str(self.candidate),
            "verified": self.vanishes,
            "degree": self.degree,
            "homogeneous": self.is_homogeneous,
        }

    def to_text(self) -> str:
        return (
            f"candidate  : {self.candidate}\n"
            f"degree     : {self.degree}{'' if self.is_homogeneous else ' (not homogeneous)'}\n"
            f"vanishes   : {'yes' if self.vanishes else 'no'}\n"
        )


def run_verify(problem: ProblemInput, candidate: str) -> VerifyResult:
    """Back-substitute ``candidate`` (a polynomial over the target variables)."""
    h = parse_poly(candidate, problem.target_vars)
    if h.is_zero():
        return VerifyResult(h, True, -1, True)
    return VerifyResult(h, verify_vanishing(h, problem.forms), h.degree, h.is_homogeneous)
