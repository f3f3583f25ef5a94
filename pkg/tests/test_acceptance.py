"""Acceptance criteria, one test each; every test records a PASS/FAIL line."""
import time

import conftest
import test_properties as props
from fixtures import (
    E_D1_DISPLAY,
    E_D2T_DISPLAY,
    E_DELTA1,
    E_DELTA2,
    E_SOURCE,
    E_TARGET,
    brute_force_ideal_dims,
    conic,
    e_reference_spaces,
    six_point_cubic,
    random_quadric_maps,
)
from implicitize.baselocus import analyze_base_locus, saturate_truncated
from implicitize.elim import build_piece, det_complex, fitting_gcd_report, piece_from_spaces, verify_vanishing
from implicitize.linalg import det_fraction_free
from implicitize.parse import parse_poly
from implicitize.pipeline import run_implicitize

RANDOM_SEEDS = range(6)


def record(number, title, failures):
    status = "PASS" if not failures else "FAIL"
    line = f"criterion {number} [{status}] {title}"
    if failures:
        line += ": " + "; ".join(failures)
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)
    assert not failures, line


def tgt(text):
    return parse_poly(text, E_TARGET)


def test_criterion_1_six_point_cubic_golden_run():
    failures = []
    start = time.perf_counter()
    rep = run_implicitize(six_point_cubic())
    elapsed = time.perf_counter() - start
    if rep.base_locus.epsilon != 2:
        failures.append(f"epsilon_X = {rep.base_locus.epsilon}")
    if rep.mu != 2:
        failures.append(f"mu = {rep.mu}")
    if tuple(rep.dims) != (6, 9, 3):
        failures.append(f"dims = {rep.dims}")
    if rep.D != tgt("x*y*(z+t) - z*t^2").normalized():
        failures.append(f"D = {rep.D}")
    if elapsed >= 1.0:
        failures.append(f"took {elapsed:.2f}s")
    record(1, f"six-point cubic golden run ({elapsed:.3f}s)", failures)


def _mismatches(ours, display):
    out = []
    for i, row in enumerate(display):
        for j, text in enumerate(row):
            if ours[i, j] != tgt(text):
                out.append(f"({i + 1},{j + 1}) ours {ours[i, j]} vs printed {text}")
    return out


def test_criterion_2_six_point_cubic_matrix_fixtures():
    failures = []
    piece = piece_from_spaces(e_reference_spaces(), E_TARGET)
    d1, d2 = piece.matrices
    failures += [f"d1 {m}" for m in _mismatches(d1, E_D1_DISPLAY)]
    failures += [f"d2^T {m}" for m in _mismatches(d2.transpose(), E_D2T_DISPLAY)]
    # Delta_2: rows s_3, s_4, s_5 of d_2^T; Delta_1: d_1^T without columns s_3, s_4, s_5
    delta2 = det_fraction_free(d2.submatrix([2, 3, 4], [0, 1, 2]))
    delta1 = det_fraction_free(d1.submatrix(range(6), [0, 1, 5, 6, 7, 8]))
    if delta2 != tgt(E_DELTA2):
        failures.append(f"Delta_2 = {delta2}")
    if delta1 != tgt(E_DELTA1):
        failures.append(f"Delta_1 = {delta1}")
    record(2, "six-point cubic matrix fixtures", failures)


def test_criterion_3_conic_oracle():
    # Hand derivation: the degree-1 syzygies of (s^2, st, t^2) are t*e_x - s*e_y and
    # t*e_y - s*e_z.  On the basis (s, t) of R_1 the moving lines give the matrix
    # [[-y, -z], [x, y]], whose determinant is xz - y^2.
    oracle = parse_poly("x*z - y^2", ("x", "y", "z"))
    rep = run_implicitize(conic())
    failures = []
    if rep.D != oracle:
        failures.append(f"D = {rep.D}")
    if rep.mu != 1:
        failures.append(f"mu = {rep.mu}")
    record(3, "conic oracle", failures)


def test_criterion_4_method_cross_check():
    failures = []
    cases = [("six-point cubic", six_point_cubic())] + [(f"random seed {s}", random_quadric_maps(s)) for s in RANDOM_SEEDS]
    for name, problem in cases:
        mu = analyze_base_locus(problem.forms).mu
        piece = build_piece(problem.forms, mu, problem.target_vars)
        fit = fitting_gcd_report(piece)
        if not fit.exhaustive:
            failures.append(f"{name}: enumeration not exhaustive")
        D = det_complex(piece)
        if fit.value != D:
            failures.append(f"{name}: fitting {fit.value} vs det {D}")
    record(4, f"fitting gcd = det on six-point cubic and {len(RANDOM_SEEDS)} random fixtures", failures)


def test_criterion_5_base_point_free_degree_law():
    failures = []
    for s in RANDOM_SEEDS:
        problem = random_quadric_maps(s)
        rep = run_implicitize(problem)
        if rep.base_locus.dim_class.value != "empty":
            failures.append(f"seed {s}: base locus {rep.base_locus.dim_class.value}")
        if rep.degree != 4:
            failures.append(f"seed {s}: deg D = {rep.degree}")
        if not verify_vanishing(rep.D, problem.forms):
            failures.append(f"seed {s}: D does not vanish")
    record(5, f"deg D = 4 on {len(RANDOM_SEEDS)} base-point-free quadric maps", failures)


def test_criterion_6_seed_independence():
    piece = build_piece(six_point_cubic().forms, 2, E_TARGET)
    results = {str(det_complex(piece, seed=s)) for s in range(10)}
    record(6, "10 seeds give one polynomial", [] if len(results) == 1 else [f"got {sorted(results)}"])


def test_criterion_7_saturation_slices():
    P = lambda s: parse_poly(s, E_SOURCE)
    oracle = brute_force_ideal_dims([P("a*c^2"), P("b*(a+c)")], E_SOURCE, 8)
    ours = saturate_truncated(six_point_cubic().forms).dims()
    record(7, "saturation slices up to degree 8", [] if ours == oracle else [f"{ours} vs {oracle}"])


PROPERTY_SUITES = [
    props.test_d_f_composes_to_zero,
    props.test_d_T_composes_to_zero,
    props.test_differentials_anticommute,
    props.test_euler_characteristic_vanishes_on_acyclic_pieces,
    props.test_rank_nullity,
    props.test_exact_divide_undoes_multiplication,
    props.test_gcd_divides_both_and_contains_common_factor,
]


def test_criterion_8_property_suites():
    failures = []
    for suite in PROPERTY_SUITES:
        if suite._hypothesis_internal_use_settings.max_examples < 100:
            failures.append(f"{suite.__name__}: fewer than 100 examples")
        try:
            suite()
        except Exception as exc:  # report and keep going
            failures.append(f"{suite.__name__}: {type(exc).__name__}")
    record(8, f"{len(PROPERTY_SUITES)} property suites, 100 examples each", failures)
