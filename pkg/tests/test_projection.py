import random

import pytest

from branchcurve import upoly
from branchcurve.errors import CenterOnSurface, NonReducedBranch
from branchcurve.fields import QQ, PrimeField
from branchcurve.polyring import MultiPoly
from branchcurve.projection import (
    branch_curve,
    irreducibility_evidence,
    is_reduced,
    line_profile,
    profile_from_restriction,
    ramification_smooth_check,
)
from branchcurve.singclass import census
from branchcurve.surface import ProjectionFrame, SurfaceModel, random_frame
from conftest import XYZ, poly

P = 1000000007
FERMAT3 = "x0^3 + x1^3 + x2^3 + x3^3"


def surface(text, **kw):
    return SurfaceModel.from_polynomial(poly(text), **kw)


def test_quadric_branch_curve_over_qq():
    S = surface("x3^2 + x0*x1 + x2^2")
    bc = branch_curve(S, ProjectionFrame.identity())
    assert bc.B == poly("x0*x1 + x2^2", ("x0", "x1", "x2"))
    assert bc.degB == 2 and bc.B_reduced


def test_fermat_cubic_identity_frame_is_not_reduced():
    S = surface(FERMAT3)
    with pytest.raises(NonReducedBranch):
        branch_curve(S, ProjectionFrame.identity())
    with pytest.raises(NonReducedBranch):
        branch_curve(S, ProjectionFrame.identity(PrimeField(P)))


def test_center_on_surface():
    S = surface("x0^3 + x1^3 + x2^3 + x0*x3^2")
    with pytest.raises(CenterOnSurface):
        branch_curve(S, ProjectionFrame.identity())


@pytest.mark.parametrize("d", [2, 3, 4])
def test_branch_degree_and_homogeneity(d):
    S = surface(f"x0^{d} + x1^{d} + x2^{d} + x3^{d}")
    F = PrimeField(P)
    bc = branch_curve(S, random_frame(S, 1, F))
    assert bc.degB == d * (d - 1)
    assert bc.B.is_homogeneous() and bc.B.degree() == bc.degB
    assert is_reduced(bc.B)


def test_is_reduced_detects_squares():
    F = PrimeField(P)
    q = poly("x^2 + y*z + 3*x*z", XYZ, F)
    assert is_reduced(q)
    assert not is_reduced(q * q * poly("x + y", XYZ, F))


def test_ramification_smooth_generic_frames():
    F = PrimeField(P)
    for text in ("x0*x1 - x2*x3", FERMAT3):
        S = surface(text)
        v = ramification_smooth_check(S, random_frame(S, 5, F))
        assert v.smooth and not v.witnesses


# A smooth cubic with a planar point at [0:0:1:0]: in the chart x2 = 1 its
# tangent plane is x0 = 0, and the tangent line towards the center [0:0:0:1]
# meets the surface to order 3 while the quadratic term has no x1*x3 or x3^2*
# piece, so the ramification curve acquires a singular point there.
PLANAR = (
    "x1*x2^2 + x0^2*x2 + x3^3 + x0^3 + 2*x1^3 + 3*x0^2*x3 - x0*x3^2 + x1*x3^2"
    " + 5*x1*x0*x2 - 7*x1*x3*x2 + x0*x1*x3"
)


def test_ramification_witness_at_constructed_point():
    S = surface(PLANAR)
    F = PrimeField(P)
    v = ramification_smooth_check(S, ProjectionFrame.identity(F))
    assert not v.smooth
    pts = [[w.field.to_json(c) for c in w.coords] for w in v.witnesses]
    K = v.witnesses[0].field
    assert [K.to_json(K.convert(c)) for c in (0, 0, 1, 0)] in pts
    assert ramification_smooth_check(S, random_frame(S, 0, F)).smooth


def test_line_profile_off_branch_curve():
    S = surface(FERMAT3)
    F = PrimeField(P)
    fr = random_frame(S, 2, F)
    bc = branch_curve(S, fr)
    rng = random.Random(0)
    while True:
        y = [F.random(rng) for _ in range(3)]
        if bc.B.evaluate(y) != 0:
            break
    prof = line_profile(S, fr, y)
    assert prof.multiplicities == (1, 1, 1) and prof.b == 0 and prof.a == 0


def test_line_profile_at_smooth_branch_point():
    S = surface(FERMAT3)
    F = PrimeField(P)
    fr = random_frame(S, 2, F)
    bc = branch_curve(S, fr)
    rng = random.Random(1)
    t = MultiPoly.var(F, 1, 0)
    # a rational point of B on a random line, away from the singular points
    while True:
        a = [F.random(rng) for _ in range(3)]
        b = [F.random(rng) for _ in range(3)]
        u = bc.B.substitute([MultiPoly.constant(F, 1, ai) + t.scale(bi) for ai, bi in zip(a, b)]).to_univariate(0)
        roots = upoly.roots(F, upoly.strip(F, u))
        if roots:
            r = roots[0]
            y = [F.add(ai, F.mul(r, bi)) for ai, bi in zip(a, b)]
            if any(bc.B.diff(i).evaluate(y) != 0 for i in range(3)):
                break
    prof = line_profile(S, fr, y, f_moved=bc.f_moved)
    assert prof.multiplicities == (2, 1) and prof.b == 1 and prof.a == 0


def test_profile_counts_points_over_closure():
    F = PrimeField(7)
    # (s^2 + 1)^2 (s - 3): a conjugate pair of double points and a simple one
    u = upoly.mul(F, upoly.mul(F, [1, 0, 1], [1, 0, 1]), [4, 1])
    prof = profile_from_restriction(F, (1, 0, 0), u)
    assert prof.multiplicities == (2, 2, 1)
    assert prof.residue_degrees == (2, 2, 1)
    assert (prof.b, prof.a) == (2, 0)
    prof = profile_from_restriction(F, (1, 0, 0), upoly.mul(F, [4, 1], upoly.mul(F, [4, 1], [4, 1])))
    assert prof.multiplicities == (3,) and (prof.b, prof.a) == (2, 1)


def test_profiles_at_cubic_cusps():
    S = surface(FERMAT3)
    F = PrimeField(P)
    fr = random_frame(S, 4, F)
    bc = branch_curve(S, fr)
    cen = census(bc.B, seed=4)
    assert (cen.cusp_count, cen.node_count) == (6, 0)
    for pt in cen.points:
        prof = line_profile(S, fr, pt.coords, pt.field, bc.f_moved)
        assert prof.multiplicities == (3,) and (prof.b, prof.a) == (2, 1)
        assert pt.multiplicity == prof.b


def test_irreducibility_evidence():
    F = PrimeField(P)
    S = surface(FERMAT3)
    bc = branch_curve(S, random_frame(S, 3, F))
    ev = irreducibility_evidence(bc.B, kmax=4)
    assert ev.irreducible and ev.certified == {1: True, 2: True, 3: True, 4: True}
    # a product of two conics is never certified
    q1 = poly("x^2 + y*z", XYZ, F)
    q2 = poly("y^2 - 3*x*z + z^2", XYZ, F)
    ev = irreducibility_evidence(q1 * q2, kmax=2)
    assert not ev.certified[1] and not ev.irreducible
    assert 2 in ev.residual[1]


def test_irreducibility_conjugate_lines_over_extension():
    # x^2 + y^2 is irreducible over GF(p), p = 3 mod 4, but splits over GF(p^2)
    F = PrimeField(1000003)
    ev = irreducibility_evidence(poly("x^2 + y^2", XYZ, F), kmax=2)
    assert ev.certified[1] and not ev.certified[2]
    assert not ev.smooth_rational_point


def test_roman_surface_branch_curve():
    S = surface("x1^2*x2^2 + x0^2*x2^2 + x0^2*x1^2 - x0*x1*x2*x3", smooth_claimed=False, Ksq=9, chi=1, deg_double_curve=3)
    assert S.g == 0
    F = PrimeField(P)
    bc = branch_curve(S, random_frame(S, 0, F))
    assert bc.degB == 6
    assert bc.double_image is not None and bc.double_image.degree() == 3
    cen = census(bc.B, seed=0)
    assert (cen.cusp_count, cen.node_count, cen.other_count) == (9, 0, 0)
