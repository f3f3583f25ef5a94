import pytest

from fixtures import conic, random_quadric_maps, six_point_cubic
from implicitize.errors import DegeneracyError, InputError
from implicitize.pipeline import run_analyze, run_implicitize, run_verify
from implicitize.problem import Options, make_problem, parse_input, to_document

FIXTURES = {"cubic": six_point_cubic, "conic": conic, "quadrics": lambda: random_quadric_maps(0)}


@pytest.mark.parametrize("name", FIXTURES)
def test_verify_roundtrip(name):
    problem = FIXTURES[name]()
    rep = run_implicitize(problem)
    assert rep.verified
    assert run_verify(problem, str(rep.D)).vanishes


def test_report_text_is_reproducible():
    a = run_implicitize(six_point_cubic()).to_text()
    b = run_implicitize(six_point_cubic().with_options(seed=17)).to_text()
    assert a == b


def test_report_fields():
    d = run_implicitize(conic()).to_dict()
    for key in ("method", "mu", "dims", "minor_sizes", "D", "degree", "verified", "warnings"):
        assert key in d
    assert any("assume-birational-lci" in w for w in d["warnings"])


def test_fitting_only_method():
    rep = run_implicitize(six_point_cubic().with_options(method="fitting"))
    assert str(rep.D) == "x*y*z + x*y*t - z*t^2" and rep.fitting == rep.D


def test_analyze_base_point_free():
    r = run_analyze(random_quadric_maps(1))
    assert r.dim_class.value == "empty" and r.mu == 2


def test_verify_reports_degree():
    v = run_verify(conic(), "x*z - y^2 + x")
    assert not v.vanishes and v.degree == 2 and not v.is_homogeneous


def test_degenerate_image():
    with pytest.raises(DegeneracyError):
        run_implicitize(make_problem("a,b,c", ["a^2", "a*b", "b^2", "a^2 + b^2"]))


def test_document_roundtrip():
    p = six_point_cubic().with_options(mu=3, method="both")
    q = parse_input(to_document(p))
    assert q == p and q.degree == 3


@pytest.mark.parametrize("doc", [
    {"source_vars": ["s", "t"], "maps": ["s^2", "s*t^2", "t^2"]},
    {"source_vars": ["s"], "maps": ["s", "s"]},
    {"source_vars": ["s", "t"], "maps": ["s", "t", "s"], "target_vars": ["s", "y", "z"]},
    {"source_vars": ["s", "t"], "maps": ["s", "t", "s"], "options": {"colour": 1}},
    {"source_vars": ["s", "t"], "maps": ["s", "t", "s"], "options": {"mu": -1}},
    {"maps": ["s", "t", "s"]},
    {"source_vars": ["s", "t"], "maps": ["s", "t", "0"]},
    {"source_vars": ["s", "t"], "maps": ["s", "t", "s + 1"]},
])
def test_document_validation(doc):
    with pytest.raises(InputError):
        parse_input(doc)


def test_conic_document_degree():
    assert parse_input('{"source_vars": ["s", "t"], "maps": ["s^2", "s*t", "t^2"]}').degree == 2


def test_options_validation():
    with pytest.raises(InputError):
        Options(prime=91)
    with pytest.raises(InputError):
        Options(method="svd")
