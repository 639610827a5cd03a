from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from branchcurve.errors import InconsistentInvariants
from branchcurve.invariants import (
    CountReport,
    InvariantSet,
    branch_degree,
    clifford_h_bound,
    count_report,
    cusp_count,
    hilbert_bound,
    hilbert_report,
    moduli_bounds_canonical,
    node_count,
    nonspeciality,
    normal_h1_bound,
    normal_h2,
    ram_genus,
    special_h0_bound,
)
from branchcurve.surface import smooth_invariants

QUADRIC = InvariantSet(2, 0, 8, 1)
CUBIC = InvariantSet(3, 1, 3, 1)
QUARTIC = InvariantSet(4, 3, 0, 2)
QUINTIC = InvariantSet(5, 6, 5, 5)
VERONESE = InvariantSet(d=4, g=0, Ksq=9, chi=1, r=5, h=0)


def test_branch_degree():
    assert branch_degree(InvariantSet(2, 0, 0, 0)) == 2
    assert branch_degree(CUBIC) == 6
    assert branch_degree(QUINTIC) == 20


@pytest.mark.parametrize(
    "inv, expected",
    [(QUADRIC, (2, 0, 0, 0)), (CUBIC, (6, 6, 4, 0)), (QUARTIC, (12, 24, 19, 12)), (QUINTIC, (20, 60, 51, 60))],
)
def test_count_reports(inv, expected):
    assert count_report(inv) == CountReport(*expected)
    assert (branch_degree(inv), cusp_count(inv), ram_genus(inv), node_count(inv)) == expected


def test_negative_nodes_are_inconsistent():
    with pytest.raises(InconsistentInvariants):
        node_count(InvariantSet(3, 1, 30, 0))


def test_invariant_set_validation():
    with pytest.raises(ValueError):
        InvariantSet(0, 0, 0, 0)
    with pytest.raises(ValueError):
        InvariantSet(3, -1, 0, 0)


@pytest.mark.parametrize("d", range(2, 13))
def test_smooth_branch_degree_identity(d):
    g, Ksq, chi = smooth_invariants(d)
    assert branch_degree(InvariantSet(d, g, Ksq, chi)) == d * (d - 1)


def test_veronese_hilbert_bound():
    # PGL(6) has dimension 35 and Aut(P^2) = PGL(3) has dimension 8
    assert hilbert_bound(VERONESE) == 35 - 8
    rep = hilbert_report(VERONESE)
    assert rep["bound"] == 27 and rep["equality_eligible"] and not rep["equality_certified"]
    rep = hilbert_report(InvariantSet(4, 0, 9, 1, r=5, h=0, hS=0))
    assert rep["equality_certified"]


def test_hilbert_bound_linear_in_h():
    base = InvariantSet(3, 1, 3, 1, r=3, h=0)
    plus = InvariantSet(3, 1, 3, 1, r=3, h=1)
    assert hilbert_bound(plus) == hilbert_bound(base) + 1
    assert not hilbert_report(plus)["equality_eligible"]


def test_quadric_hilbert_bound():
    assert hilbert_bound(InvariantSet(2, 0, 8, 1, r=3, h=0)) == 9


def test_hilbert_needs_r():
    with pytest.raises(ValueError):
        hilbert_bound(CUBIC)


def test_nonspeciality():
    assert nonspeciality(InvariantSet(4, 0, 9, 1))
    assert not nonspeciality(InvariantSet(1, 0, 9, 1))
    assert nonspeciality(QUADRIC)


def test_clifford_bound_is_exact_rational():
    assert clifford_h_bound(InvariantSet(5, 4, 5, 3)) == Fraction(1, 2)
    assert clifford_h_bound(CUBIC) == Fraction(-11, 2)
    assert clifford_h_bound(InvariantSet(4, 3, 8, 1)) == Fraction(25, 2)
    assert isinstance(clifford_h_bound(CUBIC), Fraction)


def test_special_h0_bound():
    assert special_h0_bound(InvariantSet(1, 1, 0, 0, r=3)) == 6
    assert special_h0_bound(InvariantSet(4, 0, 9, 1, r=5)) == 23


@given(st.integers(3, 30), st.integers(1, 10), st.integers(0, 10), st.integers(-5, 10), st.integers(-3, 5))
def test_special_h0_step_in_r(r, d, g, Ksq, chi):
    a = special_h0_bound(InvariantSet(d, g, Ksq, chi, r=r))
    b = special_h0_bound(InvariantSet(d, g, Ksq, chi, r=r + 1))
    assert b - a == 2 * r


def test_normal_bundle_helpers():
    assert normal_h1_bound(5, 2) == 6
    assert normal_h2(4, 1) == 2


def test_moduli_bounds():
    b = moduli_bounds_canonical(InvariantSet(9, 0, 9, 3), q=0, pg=2)
    assert b["special"] == 49 and b["nonspecial"] == 11
    assert moduli_bounds_canonical(InvariantSet(9, 0, 9, 3), q=0, pg=3)["castelnuovo"] == 34
