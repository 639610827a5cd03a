import pytest

from branchcurve.errors import DomainError, NonHomogeneousInput, PolynomialSyntaxError
from branchcurve.focal import DualPair, ParametricPair
from branchcurve.parsing import load_family, load_surface, parse_family_text, parse_polynomial, parse_surface_text
from conftest import poly


def test_parse_fermat_and_expansion():
    f = parse_polynomial("x0^3+x1^3+x2^3+x3^3", homogeneous=True)
    assert f.degree() == 3 and len(f) == 4
    assert parse_polynomial("x0*(x1+x2)^2") == parse_polynomial("x0*x1^2 + 2*x0*x1*x2 + x0*x2^2")
    assert parse_polynomial(" - ( x0 - 2 ) * x1 ") == parse_polynomial("2*x1 - x0*x1")


def test_non_homogeneous():
    with pytest.raises(NonHomogeneousInput):
        parse_polynomial("x0^2 + x1", homogeneous=True)


@pytest.mark.parametrize("text, pos", [("x0 + * x1", 5), ("x0^", 3), ("x9", 0), ("(x0 + x1", 8)])
def test_syntax_errors_carry_positions(text, pos):
    with pytest.raises(PolynomialSyntaxError) as exc:
        parse_polynomial(text)
    assert exc.value.position == pos
    assert isinstance(exc.value, SyntaxError)


def test_surface_text_headers_and_offsets():
    sf = parse_surface_text("# Roman\n# g=0\n# ksq=9\n# chi=1\n# deg_gamma=3\nx0^2*x1^2 + x1^2*x2^2 + x0^2*x2^2 - x0*x1*x2*x3\n")
    assert sf.headers == {"g": 0, "Ksq": 9, "chi": 1, "deg_double_curve": 3}
    with pytest.raises(PolynomialSyntaxError) as exc:
        parse_surface_text("# c\nx0 + * x1\n")
    assert exc.value.position == 4 + 5


def test_load_surfaces(data_dir):
    S = load_surface(data_dir / "fermat_cubic.surf")
    assert S.smooth_claimed and S.d == 3
    R = load_surface(data_dir / "roman.surf")
    assert not R.smooth_claimed and (R.g, R.Ksq, R.chi, R.deg_double_curve) == (0, 9, 1, 3)


def test_smooth_headers_that_disagree(tmp_path):
    p = tmp_path / "s.surf"
    p.write_text("# g=2\nx0^3 + x1^3 + x2^3 + x3^3\n")
    with pytest.raises(DomainError):
        load_surface(p)  # non-smooth claim without ksq / chi


def test_family_files(data_dir):
    fam = load_family(data_dir / "quadric_tangents.fam")
    assert isinstance(fam, ParametricPair)
    fam = parse_family_text("u, -1, 0, 0\nv, 0, -1, 0\n")
    assert isinstance(fam, DualPair)
    assert fam.a[0] == parse_polynomial("u", ("u", "v"))
    with pytest.raises(PolynomialSyntaxError):
        parse_family_text("u, v, 1\n0, 0, 0, 1\n")
    with pytest.raises(PolynomialSyntaxError):
        parse_family_text("u, v, 1, 0\n")
