from fractions import Fraction

import pytest
import sympy

from fixtures import (
    E_D1_DISPLAY,
    E_D2T_DISPLAY,
    E_SOURCE,
    E_SYZYGIES_DEG2,
    E_TARGET,
    conic,
    e_reference_spaces,
    e_sigma_times,
    six_point_cubic,
)
from implicitize.elim import piece_from_spaces
from implicitize.errors import InconsistencyError, InputError
from implicitize.koszul import (
    CycleSpace,
    anticommutation_check,
    common_degree,
    cycles,
    d_T_matrix,
    exterior_basis,
    forms_to_vector,
    koszul_d_f_matrix,
    koszul_d_T_matrix,
)
from implicitize.linalg import LinFormMatrix
from implicitize.parse import parse_poly
from implicitize.poly import compose, mono_basis

E = six_point_cubic().forms


def brute_force_syzygy_dim(f, mu):
    """dim of {(g_i) in R_mu^(n+1) : sum g_i f_i = 0}, by a sympy rank count."""
    vars = f[0].vars
    d = f[0].degree
    src, tgt = mono_basis(vars, mu), mono_basis(vars, mu + d)
    cols = []
    for fi in f:
        for m in src:
            col = [0] * len(tgt)
            for e, c in fi.terms.items():
                col[tgt.index[tuple(a + b for a, b in zip(m, e))]] += c
            cols.append(col)
    M = sympy.Matrix(cols).T if cols else sympy.zeros(len(tgt), 0)
    return len(cols) - M.rank()


@pytest.mark.parametrize("p", [2, 3, 4])
@pytest.mark.parametrize("mu", [0, 1, 2])
def test_d_f_squares_to_zero(p, mu):
    assert (koszul_d_f_matrix(E, p - 1, mu + 3) @ koszul_d_f_matrix(E, p, mu)).is_zero()


@pytest.mark.parametrize("p", [2, 3, 4])
def test_d_T_squares_to_zero(p):
    T = ("x", "y", "z", "t")
    A = koszul_d_T_matrix(4, p - 1, E_SOURCE, 2, T)
    B = koszul_d_T_matrix(4, p, E_SOURCE, 2, T)
    assert (A @ B).is_zero()


@pytest.mark.parametrize("p", [1, 2, 3])
def test_differentials_anticommute(p):
    assert anticommutation_check(E, p, 1)


@pytest.mark.parametrize("mu", [0, 1, 2, 3])
def test_first_cycles_match_brute_force(mu):
    assert cycles(E, 1, mu).dim == brute_force_syzygy_dim(E, mu)


def test_six_point_cubic_cycle_dimensions_in_degree_two():
    assert [cycles(E, p, 2).dim for p in range(5)] == [6, 9, 3, 0, 0]


def test_six_point_cubic_second_cycles_in_degree_one():
    z2 = cycles(E, 2, 1)
    assert z2.dim == 1
    b = exterior_basis(4, 2, E_SOURCE, 1)
    sigma = forms_to_vector(b, e_sigma_times("1"))
    assert z2.coordinates(sigma) != [0]


def test_reference_second_cycle_as_printed_is_not_a_cycle():
    # c y^z - b z^t - a y^t with generator order x, y, z, t
    P = lambda s: parse_poly(s, E_SOURCE)
    b = exterior_basis(4, 2, E_SOURCE, 1)
    literal = forms_to_vector(b, {(1, 2): P("c"), (2, 3): P("-b"), (1, 3): P("-a")})
    with pytest.raises(ValueError):
        CycleSpace(E, 2, 1, [literal])


def test_reference_syzygies_are_cycles_and_a_basis():
    b1 = exterior_basis(4, 1, E_SOURCE, 2)
    z1 = CycleSpace(E, 1, 2, [forms_to_vector(b1, s) for s in E_SYZYGIES_DEG2])
    ours = cycles(E, 1, 2)
    for v in ours.vectors:
        z1.coordinates(v)
    assert z1.dim == ours.dim == 9


def test_coordinates_reject_vectors_outside_span():
    z = cycles(E, 1, 2)
    bad = [Fraction(0)] * z.basis.dim
    bad[0] = Fraction(1)
    with pytest.raises(InconsistencyError):
        z.coordinates(bad)


def test_conic_d1_matrix():
    f = conic().forms
    M = d_T_matrix(cycles(f, 1, 1), cycles(f, 0, 1), ("x", "y", "z"))
    assert M.shape == (2, 2)
    # every column is a moving line: sum_i L_i(s,t) T_i with sum_i L_i f_i = 0
    for j in range(2):
        col = M.column(j)
        # rows are s, t; substituting T -> f kills s*col[0] + t*col[1]
        s, t = parse_poly("s", ("s", "t")), parse_poly("t", ("s", "t"))
        assert (compose(col[0], f) * s + compose(col[1], f) * t).is_zero()


def test_common_degree_validation():
    P = lambda s: parse_poly(s, ("s", "t"))
    assert common_degree([P("s^2"), P("t^2")]) == 2
    with pytest.raises(InputError):
        common_degree([P("s^2"), P("t^3")])
    with pytest.raises(InputError):
        common_degree([P("s^2 + t"), P("t^2")])
    with pytest.raises(InputError):
        common_degree([P("0"), P("t^2")])


def test_printed_example_matrices_do_not_compose_to_zero():
    # d_1^T d_2^T must vanish; with the printed 3x9 matrix it does not, with ours it does
    P = lambda s: parse_poly(s, E_TARGET)
    d1 = LinFormMatrix([[P(x) for x in row] for row in E_D1_DISPLAY], E_TARGET)
    d2_printed = LinFormMatrix([[P(x) for x in row] for row in E_D2T_DISPLAY], E_TARGET).transpose()
    product = d1 @ d2_printed
    nonzero = {(i, j) for i in range(6) for j in range(3) if product[i, j]}
    assert nonzero == {(1, 2), (2, 2)}
    assert product[1, 2] == P("-2*t^2") and product[2, 2] == P("2*y*t")
    ours = piece_from_spaces(e_reference_spaces(), E_TARGET)
    assert ours.matrices[0] == d1
    assert (d1 @ ours.matrices[1]).is_zero()
