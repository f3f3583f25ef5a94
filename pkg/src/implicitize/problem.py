"""Problem documents: parametrization, variable names and run options."""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Mapping, Sequence

from .errors import InputError, ParseError
from .linalg import DEFAULT_PRIME
from .parse import parse_poly
from .poly import Polynomial

METHODS = ("det", "fitting", "both")
_DEFAULT_TARGETS = ("x", "y", "z", "t")


@dataclass(frozen=True)
class Options:
    mu: int | None = None
    method: str = "det"
    seed: int = 0
    prime: int = DEFAULT_PRIME
    assume_birational_lci: bool = False

    def __post_init__(self):
        if self.mu is not None and (not isinstance(self.mu, int) or self.mu < 0):
            raise InputError(f"mu must be a non-negative integer, got {self.mu!r}")
        if self.method not in METHODS:
            raise InputError(f"method must be one of {', '.join(METHODS)}, got {self.method!r}")
        if not isinstance(self.seed, int):
            raise InputError(f"seed must be an integer, got {self.seed!r}")
        if not isinstance(self.prime, int) or self.prime < 3 or not _is_probable_prime(self.prime):
            raise InputError(f"{self.prime!r} is not a prime")


def _is_probable_prime(p: int) -> bool:
    from sympy import isprime

    return isprime(p)


@dataclass(frozen=True)
class ProblemInput:
    source_vars: tuple[str, ...]
    target_vars: tuple[str, ...]
    maps: tuple[str, ...]
    forms: tuple[Polynomial, ...] = field(repr=False)
    degree: int
    options: Options = Options()

    @property
    def n(self) -> int:
        return len(self.source_vars)

    def with_options(self, **changes) -> "ProblemInput":
        return replace(self, options=replace(self.options, **changes))


def default_targets(count: int) -> tuple[str, ...]:
    if count <= len(_DEFAULT_TARGETS):
        return _DEFAULT_TARGETS[:count]
    return tuple(f"T{i}" for i in range(count))


def _check_names(names: Sequence[str], what: str) -> tuple[str, ...]:
    if isinstance(names, str):
        names = [v.strip() for v in names.replace(",", " ").split()]
    names = tuple(names)
    for v in names:
        if not isinstance(v, str) or not v.isidentifier():
            raise InputError(f"{what}: {v!r} is not a valid variable name")
    if len(set(names)) != len(names):
        raise InputError(f"{what}: repeated variable name in {names}")
    return names


def make_problem(source_vars, maps: Sequence[str], target_vars=None, options: Options | Mapping | None = None) -> ProblemInput:
    """Validate a parametrization given as polynomial strings."""
    src = _check_names(source_vars, "source_vars")
    n = len(src)
    if n < 2:
        raise InputError(f"need at least 2 source variables, got {n}")
    maps = tuple(maps)
    if len(maps) != n + 1:
        raise InputError(f"{n} source variables need exactly {n + 1} maps, got {len(maps)}")
    tgt = _check_names(target_vars, "target_vars") if target_vars is not None else default_targets(n + 1)
    if len(tgt) != n + 1:
        raise InputError(f"need {n + 1} target variables, got {len(tgt)}")
    if set(src) & set(tgt):
        raise InputError(f"source and target variables overlap: {sorted(set(src) & set(tgt))}")
    forms = []
    for i, text in enumerate(maps):
        if not isinstance(text, str):
            raise InputError(f"maps[{i}] must be a string")
        try:
            fi = parse_poly(text, src)
        except ParseError as exc:
            raise ParseError(f"maps[{i}]: {exc.args[0].rsplit(' (line', 1)[0]}", exc.line, exc.column, text) from None
        if fi.is_zero():
            raise InputError(f"maps[{i}] is the zero polynomial")
        if not fi.is_homogeneous:
            raise InputError(f"maps[{i}] = {text!r} is not homogeneous")
        forms.append(fi)
    degrees = sorted({fi.degree for fi in forms})
    if len(degrees) != 1:
        raise InputError(f"maps have different degrees {degrees}; all must share one degree")
    d = degrees[0]
    if d < 1:
        raise InputError("maps must have degree at least 1")
    if options is None:
        options = Options()
    elif isinstance(options, Mapping):
        options = _options_from_mapping(options)
    return ProblemInput(src, tgt, maps, tuple(forms), d, options)


def _options_from_mapping(raw: Mapping) -> Options:
    known = {"mu", "method", "seed", "prime", "assume_birational_lci"}
    unknown = set(raw) - known
    if unknown:
        raise InputError(f"unknown option(s): {', '.join(sorted(unknown))}")
    return Options(**dict(raw))


def parse_input(document: str | Mapping) -> ProblemInput:
    """Build a problem from a JSON document (text or already-decoded mapping).

    Fields: ``source_vars``, ``maps``, optional ``target_vars`` and ``options``.
    Variable lists may be JSON arrays or comma/space separated strings.
    """
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(document, Mapping):
        raise InputError("problem document must be a JSON object")
    unknown = set(document) - {"source_vars", "target_vars", "maps", "options"}
    if unknown:
        raise InputError(f"unknown field(s): {', '.join(sorted(unknown))}")
    for key in ("source_vars", "maps"):
        if key not in document:
            raise InputError(f"missing field {key!r}")
    if not isinstance(document["maps"], list):
        raise InputError("'maps' must be a list of polynomial strings")
    return make_problem(
        document["source_vars"],
        document["maps"],
        document.get("target_vars"),
        document.get("options") or {},
    )


def to_document(problem: ProblemInput) -> dict:
    o = problem.options
    return {
        "source_vars": list(problem.source_vars),
        "target_vars": list(problem.target_vars),
        "maps": list(problem.maps),
        "options": {
            "mu": o.mu,
            "method": o.method,
            "seed": o.seed,
            "prime": o.prime,
            "assume_birational_lci": o.assume_birational_lci,
        },
    }
