"""Exact scalars and sparse multivariate polynomials.

Coefficients are :class:`fractions.Fraction` for computations over Q, or
:class:`GF` elements for the probabilistic checks done over a prime field.
A polynomial is a dict mapping exponent tuples to nonzero coefficients,
tagged with the tuple of variable names it lives over.

Monomials are ordered degree-lexicographically (total degree first, then
lexicographic in the declared variable order).  For homogeneous forms this
is plain lex, which gives the familiar layout ``a^2, ab, ac, b^2, bc, c^2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import InputError, NotDivisibleError, VariableMismatchError

NEG_INF = -math.inf


class GF:
    """Element of the prime field F_p, stored as its representative in [0, p)."""

    __slots__ = ("value", "p")

    def __init__(self, value, p: int):
        if isinstance(value, GF):
            value = value.value
        elif isinstance(value, Fraction):
            value = value.numerator * pow(value.denominator, -1, p)
        self.value = value % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, GF):
            if other.p != self.p:
                raise ValueError(f"mixing F_{self.p} and F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p) % self.p
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GF(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GF(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GF(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GF(self.value * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return GF(self.value * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.value == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return GF(o * pow(self.value, -1, self.p), self.p)

    def __neg__(self):
        return GF(-self.value, self.p)

    def __pow__(self, k: int):
        return GF(pow(self.value, k, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.value == o

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"GF({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


def to_scalar(c, p: int | None = None):
    """Coerce ``c`` into Q (``p`` is None) or into F_p."""
    if p is not None:
        return c if isinstance(c, GF) and c.p == p else GF(c, p)
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, GF):
        raise TypeError("cannot lift an F_p element to Q")
    return Fraction(c)


def order_key(exps: tuple[int, ...]):
    """Sort key for the degree-lexicographic order; larger is leading."""
    return (sum(exps), exps)


def _exponent_tuples(nvars: int, mu: int) -> Iterator[tuple[int, ...]]:
    if nvars == 0:
        if mu == 0:
            yield ()
        return
    if nvars == 1:
        yield (mu,)
        return
    for first in range(mu, -1, -1):
        for rest in _exponent_tuples(nvars - 1, mu - first):
            yield (first,) + rest


@dataclass(frozen=True)
class GradedBasis:
    """Monomials of one total degree, in decreasing lex order."""

    vars: tuple[str, ...]
    degree: int
    monomials: tuple[tuple[int, ...], ...]
    index: Mapping[tuple[int, ...], int] = field(compare=False, repr=False)

    def __len__(self):
        return len(self.monomials)

    def __iter__(self):
        return iter(self.monomials)

    def __getitem__(self, i):
        return self.monomials[i]

    def labels(self) -> list[str]:
        return [_monomial_str(self.vars, m) or "1" for m in self.monomials]


def mono_basis(vars: Sequence[str], mu: int) -> GradedBasis:
    if mu < 0:
        raise ValueError(f"negative degree {mu}")
    vars = tuple(vars)
    monos = tuple(_exponent_tuples(len(vars), mu))
    return GradedBasis(vars, mu, monos, {m: i for i, m in enumerate(monos)})


def _monomial_str(vars, exps) -> str:
    parts = []
    for v, e in zip(vars, exps):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def _coeff_str(c) -> str:
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return str(c)


def _is_negative(c) -> bool:
    return isinstance(c, Fraction) and c < 0


class Polynomial:
    """Immutable sparse polynomial over a fixed tuple of variable names."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Iterable[str], terms: Mapping | None = None, p: int | None = None):
        self.vars = tuple(vars)
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != len(self.vars):
                raise ValueError(f"exponent vector {exps} does not match {self.vars}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = to_scalar(c, p)
            if c:
                clean[exps] = clean.get(exps, 0) + c
                if not clean[exps]:
                    del clean[exps]
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, vars, terms) -> "Polynomial":
        obj = cls.__new__(cls)
        obj.vars = vars
        obj.terms = terms
        obj._hash = None
        return obj

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, vars) -> "Polynomial":
        return cls._raw(tuple(vars), {})

    @classmethod
    def constant(cls, vars, c, p: int | None = None) -> "Polynomial":
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): c}, p)

    @classmethod
    def variable(cls, vars, name: str) -> "Polynomial":
        vars = tuple(vars)
        try:
            i = vars.index(name)
        except ValueError:
            raise VariableMismatchError(f"{name!r} is not one of {vars}") from None
        exps = tuple(int(j == i) for j in range(len(vars)))
        return cls._raw(vars, {exps: Fraction(1)})

    @classmethod
    def monomial(cls, vars, exps, c=1) -> "Polynomial":
        return cls(vars, {tuple(exps): c})

    # -- queries ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    @property
    def modulus(self) -> int | None:
        for c in self.terms.values():
            return c.p if isinstance(c, GF) else None
        return None

    @property
    def degree(self):
        """Total degree; ``-inf`` for the zero polynomial."""
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    @property
    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def leading_monomial(self) -> tuple[int, ...]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=order_key)

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()] if self.terms else Fraction(0)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], object]]:
        return sorted(self.terms.items(), key=lambda kv: order_key(kv[0]), reverse=True)

    def coefficient(self, exps) -> object:
        return self.terms.get(tuple(exps), Fraction(0))

    def used_vars(self) -> set[str]:
        return {v for exps in self.terms for v, e in zip(self.vars, exps) if e}

    # -- arithmetic ---------------------------------------------------
    def _check(self, other: "Polynomial"):
        if self.vars != other.vars:
            raise VariableMismatchError(f"variable lists differ: {self.vars} vs {other.vars}")

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        p = other.p if isinstance(other, GF) else self.modulus
        return Polynomial.constant(self.vars, other, p)

    def __add__(self, other):
        if not isinstance(other, (Polynomial, int, Fraction, GF)):
            return NotImplemented
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial._raw(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, (Polynomial, int, Fraction, GF)):
            return NotImplemented
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        if not c:
            return Polynomial.zero(self.vars)
        return Polynomial._raw(self.vars, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GF)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        if len(self.terms) > len(other.terms):
            a, b = self.terms, other.terms
        else:
            a, b = other.terms, self.terms
        out: dict = {}
        for eb, cb in b.items():
            for ea, ca in a.items():
                m = tuple(x + y for x, y in zip(ea, eb))
                out[m] = out.get(m, 0) + ca * cb
        return Polynomial._raw(self.vars, {e: c for e, c in out.items() if c})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GF)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.vars, 1, self.modulus)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction, GF)):
            return self.terms == self._lift(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    # -- calculus / evaluation ---------------------------------------
    def partial(self, var: str) -> "Polynomial":
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                m = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[m] = c * e[i]
        return Polynomial._raw(self.vars, out)

    def evaluate(self, point):
        """Value at ``point`` (a sequence aligned with ``vars`` or a name mapping)."""
        if isinstance(point, Mapping):
            point = [point[v] for v in self.vars]
        if len(point) != len(self.vars):
            raise ValueError("point has the wrong number of coordinates")
        total = 0
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term = term * x**k
            total = total + term
        return total

    def reduce_mod(self, p: int) -> "Polynomial":
        """Image in F_p[vars]; denominators must be prime to ``p``."""
        return Polynomial(self.vars, {e: GF(c, p) for e, c in self.terms.items()}, p)

    def change_vars(self, vars: Sequence[str]) -> "Polynomial":
        """Re-express over another variable list containing every used variable."""
        vars = tuple(vars)
        pos = []
        for v in self.vars:
            pos.append(vars.index(v) if v in vars else None)
        out = {}
        for e, c in self.terms.items():
            m = [0] * len(vars)
            for i, k in enumerate(e):
                if k:
                    if pos[i] is None:
                        raise VariableMismatchError(f"variable {self.vars[i]!r} not in {vars}")
                    m[pos[i]] = k
            out[tuple(m)] = c
        return Polynomial._raw(vars, out)

    # -- normal forms -------------------------------------------------
    def content(self):
        """Positive rational c with self/c integral and primitive."""
        if not self.terms:
            return Fraction(0)
        if self.modulus is not None:
            return self.leading_coefficient()
        coeffs = list(self.terms.values())
        num = reduce(math.gcd, (c.numerator for c in coeffs))
        den = reduce(lambda a, b: a * b // math.gcd(a, b), (c.denominator for c in coeffs))
        return Fraction(num, den)

    def normalized(self) -> "Polynomial":
        """Primitive integral representative with positive leading coefficient.

        Over F_p the representative is monic.
        """
        if not self.terms:
            return self
        c = self.content()
        if _is_negative(self.leading_coefficient()):
            c = -c
        return Polynomial._raw(self.vars, {e: v / c for e, v in self.terms.items()})

    # -- printing -----------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for i, (e, c) in enumerate(self.sorted_terms()):
            neg = _is_negative(c)
            mag = -c if neg else c
            mono = _monomial_str(self.vars, e)
            if not mono:
                body = _coeff_str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{_coeff_str(mag)}*{mono}"
            if i == 0:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f" - {body}" if neg else f" + {body}")
        return "".join(out)

    def __repr__(self):
        return f"Polynomial({str(self)!r}, vars={self.vars})"


# -- module-level operations --------------------------------------------

def add(p: Polynomial, q: Polynomial) -> Polynomial:
    p._check(q)
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    p._check(q)
    return p * q


def scalar_mul(c, p: Polynomial) -> Polynomial:
    return p.scale(to_scalar(c, p.modulus))


def normalize(p: Polynomial) -> Polynomial:
    return p.normalized()


def coefficient_vector(p: Polynomial, basis: GradedBasis) -> list:
    """Coordinates of a form of degree ``basis.degree`` on ``basis``."""
    vec = [Fraction(0)] * len(basis)
    for e, c in p.terms.items():
        try:
            vec[basis.index[e]] = c
        except KeyError:
            raise ValueError(f"{p} is not a form of degree {basis.degree}") from None
    return vec


def from_vector(vec: Sequence, basis: GradedBasis) -> Polynomial:
    return Polynomial._raw(basis.vars, {m: c for m, c in zip(basis.monomials, vec) if c})


def compose(h: Polynomial, subs: Sequence[Polynomial], homogeneous: bool = True) -> Polynomial:
    """Substitute ``subs[i]`` for the i-th variable of ``h``."""
    if len(subs) != len(h.vars):
        raise InputError(f"expected {len(h.vars)} substitutions, got {len(subs)}")
    if not subs:
        raise InputError("nothing to substitute")
    target = subs[0].vars
    for s in subs:
        if s.vars != target:
            raise VariableMismatchError("substitutions live over different variables")
    if homogeneous:
        degs = {s.degree for s in subs if s}
        if any(not s.is_homogeneous for s in subs) or len(degs) > 1:
            raise InputError("substitutions must be forms of one common degree")
    powers: list[list[Polynomial]] = [[Polynomial.constant(target, 1)] for _ in subs]
    result = Polynomial.zero(target)
    for e, c in h.terms.items():
        term = Polynomial.constant(target, c, c.p if isinstance(c, GF) else None)
        for i, k in enumerate(e):
            if not k:
                continue
            pw = powers[i]
            while len(pw) <= k:
                pw.append(pw[-1] * subs[i])
            term = term * pw[k]
        result = result + term
    return result


def exact_divide(a: Polynomial, b: Polynomial) -> Polynomial:
    """Return q with a == b*q; raise NotDivisibleError if there is none."""
    a._check(b)
    if not b.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    lm_b = b.leading_monomial()
    lc_b = b.terms[lm_b]
    tail = [(e, c) for e, c in b.terms.items() if e != lm_b]
    rem = dict(a.terms)
    quo = {}
    while rem:
        lm = max(rem, key=order_key)
        shift = tuple(x - y for x, y in zip(lm, lm_b))
        if any(s < 0 for s in shift):
            raise NotDivisibleError(f"{b} does not divide {a}")
        q = rem.pop(lm) / lc_b
        quo[shift] = q
        for e, c in tail:
            m = tuple(x + y for x, y in zip(shift, e))
            v = rem.get(m, 0) - q * c
            if v:
                rem[m] = v
            else:
                rem.pop(m, None)
    return Polynomial._raw(a.vars, quo)


def _monomial_gcd(mono: tuple[int, ...], p: Polynomial) -> Polynomial:
    exps = list(mono)
    for e in p.terms:
        exps = [min(x, y) for x, y in zip(exps, e)]
    return Polynomial._raw(p.vars, {tuple(exps): Fraction(1)})


def _to_sympy(p: Polynomial, gens, domain):
    import sympy

    if p.modulus is not None:
        data = {e: int(c) for e, c in p.terms.items()}
    else:
        data = {e: sympy.Rational(c.numerator, c.denominator) for e, c in p.terms.items()}
    return sympy.Poly.from_dict(data, *gens, domain=domain)


def gcd_poly(a: Polynomial, b: Polynomial) -> Polynomial:
    """Normalized greatest common divisor.

    Constant and monomial arguments are handled directly; everything else
    goes through sympy's multivariate gcd over Q (or F_p).
    """
    a._check(b)
    if not a.terms and not b.terms:
        raise ValueError("gcd of two zero polynomials is undefined")
    if not a.terms:
        return b.normalized()
    if not b.terms:
        return a.normalized()
    p = a.modulus if a.modulus is not None else b.modulus
    one = Polynomial.constant(a.vars, 1, p)
    if a.is_constant() or b.is_constant():
        return one
    if len(a.terms) == 1 or len(b.terms) == 1:
        mono, other = (a, b) if len(a.terms) == 1 else (b, a)
        g = _monomial_gcd(next(iter(mono.terms)), other)
        return g if p is None else g.reduce_mod(p)

    import sympy

    gens = sympy.symbols(f"g0:{len(a.vars)}")
    domain = sympy.GF(p) if p is not None else sympy.QQ
    g = _to_sympy(a, gens, domain).gcd(_to_sympy(b, gens, domain))
    terms = {}
    for e, c in g.as_dict().items():
        if p is not None:
            terms[e] = GF(int(c), p)
        else:
            c = sympy.Rational(c)
            terms[e] = Fraction(int(c.p), int(c.q))
    return Polynomial(a.vars, terms, p).normalized()
