"""Shared inputs: the cubic surface with six base points, the conic, random quadric maps."""
from __future__ import annotations

import random
from fractions import Fraction

import sympy

from implicitize.baselocus import DimClass, analyze_base_locus
from implicitize.koszul import CycleSpace, exterior_basis, forms_to_vector
from implicitize.parse import parse_poly
from implicitize.poly import mono_basis
from implicitize.problem import make_problem

E_SOURCE = ("a", "b", "c")
E_TARGET = ("x", "y", "z", "t")
E_MAPS = ("a*c^2", "b^2*(a+c)", "a*b*(a+c)", "b*c*(a+c)")
E_IMPLICIT = "x*y*(z+t) - z*t^2"

CONIC_SOURCE = ("s", "t")
CONIC_TARGET = ("x", "y", "z")
CONIC_MAPS = ("s^2", "s*t", "t^2")


def six_point_cubic():
    return make_problem(E_SOURCE, E_MAPS, E_TARGET)


def conic():
    return make_problem(CONIC_SOURCE, CONIC_MAPS, CONIC_TARGET)


def _src(text):
    return parse_poly(text, E_SOURCE)


# Generator index of each target variable: x <-> f_0, ..., t <-> f_3.
_GEN = {v: i for i, v in enumerate(E_TARGET)}


def _syzygy(terms):
    """``terms`` maps a target variable to its source-side coefficient."""
    return {(_GEN[v],): _src(c) for v, c in terms.items()}


# Degree-2 syzygies of the six-point cubic, in the reference order s_1..s_9.
E_SYZYGIES_DEG2 = [
    _syzygy({"y": "a^2", "z": "-a*b"}),
    _syzygy({"y": "a*b", "z": "-b^2"}),
    _syzygy({"t": "a^2", "z": "-a*c"}),
    _syzygy({"t": "a*b", "z": "-b*c"}),
    _syzygy({"t": "a*c", "z": "-c^2"}),
    _syzygy({"y": "a*c", "t": "-a*b"}),
    _syzygy({"y": "b*c", "t": "-b^2"}),
    _syzygy({"y": "c^2", "t": "-b*c"}),
    _syzygy({"t": "a*c", "x": "-a*b - b*c"}),
]


def _wedge(u, v, coeff):
    return {(_GEN[u], _GEN[v]): coeff}


def e_sigma_times(mult: str):
    """``mult * Sigma`` where ``Sigma = -c e_y^e_z + a e_y^e_t - b e_z^e_t``.

    This is the degree-1 second-order cycle whose d^T image is
    ``-t (x) (ay-bz) + y (x) (at-cz) + z (x) (cy-bt)``.
    """
    m = _src(mult)
    out = {}
    for (u, v), c in ((("y", "z"), "-c"), (("y", "t"), "a"), (("z", "t"), "-b")):
        out.update(_wedge(u, v, m * _src(c)))
    return out


def e_reference_spaces():
    """Cycle spaces of the six-point cubic in degree 2 on the reference bases."""
    f = six_point_cubic().forms
    b1 = exterior_basis(4, 1, E_SOURCE, 2)
    b2 = exterior_basis(4, 2, E_SOURCE, 2)
    z0 = CycleSpace(f, 0, 2, [[Fraction(int(i == k)) for i in range(6)] for k in range(6)])
    z1 = CycleSpace(f, 1, 2, [forms_to_vector(b1, s) for s in E_SYZYGIES_DEG2])
    z2 = CycleSpace(f, 2, 2, [forms_to_vector(b2, e_sigma_times(m)) for m in ("a", "b", "c")])
    return z0, z1, z2


# The 6x9 matrix of d_1^T as printed (rows a^2, ab, ac, b^2, bc, c^2; columns s_1..s_9).
E_D1_DISPLAY = [
    ["y", "0", "t", "0", "0", "0", "0", "0", "0"],
    ["-z", "y", "0", "t", "0", "-t", "0", "0", "-x"],
    ["0", "0", "-z", "0", "t", "y", "0", "0", "t"],
    ["0", "-z", "0", "0", "0", "0", "-t", "0", "0"],
    ["0", "0", "0", "-z", "0", "0", "y", "-t", "-x"],
    ["0", "0", "0", "0", "-z", "0", "0", "y", "0"],
]

# The 3x9 matrix printed as the transpose of d_2^T (rows a.Sigma, b.Sigma, c.Sigma).
E_D2T_DISPLAY = [
    ["-t", "0", "y", "0", "0", "z", "0", "0", "0"],
    ["0", "-t", "0", "y", "0", "0", "z", "0", "0"],
    ["0", "0", "0", "-t", "y", "t", "0", "z", "0"],
]

E_DELTA2 = "y^3"
E_DELTA1 = "-y^3*(x*y*z + x*y*t - t^2*z)"


def random_quadric_maps(seed: int, n: int = 3, lo: int = -3, hi: int = 3):
    """Random integer quadrics in n variables with empty common zero locus."""
    rng = random.Random(seed)
    src = ("a", "b", "c", "e")[:n]
    monos = [f"{u}*{v}" for i, u in enumerate(src) for v in src[i:]]
    while True:
        maps = []
        for _ in range(n + 1):
            terms = [f"({rng.randint(lo, hi)})*{m}" for m in monos]
            maps.append(str(parse_poly(" + ".join(terms), src)))
        problem = make_problem(src, maps)
        if any(f.is_zero() for f in problem.forms):
            continue
        report = analyze_base_locus(problem.forms)
        if report.dim_class is DimClass.EMPTY:
            return problem


def brute_force_ideal_dims(gens, vars, top):
    """dim of (gens)_e for e <= top: rank of all monomial multiples, via sympy."""
    dims = []
    for e in range(top + 1):
        basis = mono_basis(vars, e)
        rows = []
        for g in gens:
            k = e - g.degree
            if k < 0:
                continue
            for m in mono_basis(vars, k):
                row = [0] * len(basis)
                for t, c in g.terms.items():
                    row[basis.index[tuple(a + b for a, b in zip(m, t))]] += c
                rows.append(row)
        dims.append(sympy.Matrix(rows).rank() if rows else 0)
    return dims
