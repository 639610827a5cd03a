"""Enumerative formulas for generic projections of surfaces to the plane.

Everything is exact: integers where the formula is integral and
:class:`fractions.Fraction` where it is not.

>>> inv = InvariantSet(d=4, g=3, Ksq=0, chi=2)
>>> count_report(inv)
CountReport(degB=12, kappa=24, paR=19, nodes=12)
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction

from .errors import InconsistentInvariants

__all__ = [
    "InvariantSet",
    "CountReport",
    "branch_degree",
    "cusp_count",
    "ram_genus",
    "node_count",
    "count_report",
    "nonspeciality",
    "hilbert_bound",
    "hilbert_report",
    "clifford_h_bound",
    "special_h0_bound",
    "normal_h1_bound",
    "normal_h2",
    "moduli_bounds_canonical",
]


@dataclass(frozen=True)
class InvariantSet:
    """Numerical data of a surface ``S`` in ``P^r`` with hyperplane class ``H``.

    Parameters
    ----------
    d : int
        Degree ``H^2``.
    g : int
        Sectional genus.
    Ksq : int
        Self-intersection of the canonical class.
    chi : int
        Holomorphic Euler characteristic of the structure sheaf.
    r : int, optional
        Dimension of the ambient projective space.
    h : int, optional
        ``h^1`` of the twisted normal bundle ``N(-1)``; ``None`` means unknown.
    hS : int, optional
        Irregularity of the hyperplane class, ``h^1(O_S(H))``.
    """

    d: int
    g: int
    Ksq: int
    chi: int
    r: int | None = None
    h: int | None = None
    hS: int | None = None

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("degree must be positive")
        if self.g < 0:
            raise ValueError("sectional genus must be non-negative")


@dataclass(frozen=True)
class CountReport:
    degB: int
    kappa: int
    paR: int
    nodes: int

    def to_json(self):
        return asdict(self)


def branch_degree(inv: InvariantSet) -> int:
    """Degree of the branch curve, ``2(d + g - 1)``."""
    return 2 * (inv.d + inv.g - 1)


def cusp_count(inv: InvariantSet) -> int:
    """Number of cusps of the branch curve, ``3(d + K^2 - 4 chi + 6(g - 1))``."""
    return 3 * (inv.d + inv.Ksq - 4 * inv.chi + 6 * (inv.g - 1))


def ram_genus(inv: InvariantSet) -> int:
    """Arithmetic genus of the ramification curve, ``9(g - 1) + K^2 + 1``."""
    return 9 * (inv.g - 1) + inv.Ksq + 1


def node_count(inv: InvariantSet) -> int:
    """Number of nodes of the branch curve.

    The branch curve of degree ``n`` is birational to the ramification curve,
    so its nodes make up the difference between ``(n-1)(n-2)/2`` and the
    genus, after the cusps are accounted for.  Raises
    :class:`InconsistentInvariants` when the result is negative.
    """
    n = branch_degree(inv)
    nodes = (n - 1) * (n - 2) // 2 - ram_genus(inv) - cusp_count(inv)
    if nodes < 0:
        raise InconsistentInvariants(f"negative node count {nodes} for {inv}")
    return nodes


def count_report(inv: InvariantSet) -> CountReport:
    return CountReport(branch_degree(inv), cusp_count(inv), ram_genus(inv), node_count(inv))


def nonspeciality(inv: InvariantSet) -> bool:
    """Sufficient condition ``d - K^2 - 4(g-1) + 4 chi > 0`` for a non-special twisted normal bundle."""
    return inv.d - inv.Ksq - 4 * (inv.g - 1) + 4 * inv.chi > 0


def _require_r(inv):
    if inv.r is None or inv.r < 3:
        raise ValueError("the ambient dimension r >= 3 is required")
    return inv.r


def hilbert_bound(inv: InvariantSet) -> int:
    """Upper bound for the dimension of the Hilbert scheme at ``[S]``.

    ``(r-2)(r+1) + 3d - 3(g-1) - 2K^2 + 12 chi + h`` with ``h`` read as 0
    when unknown.
    """
    r = _require_r(inv)
    h = inv.h or 0
    return (r - 2) * (r + 1) + 3 * inv.d - 3 * (inv.g - 1) - 2 * inv.Ksq + 12 * inv.chi + h


def hilbert_report(inv: InvariantSet) -> dict:
    """The Hilbert bound and whether it can be an equality.

    ``equality_eligible`` holds when ``h = 0`` and the non-speciality test
    passes; equality then additionally needs ``h^1(O_S(H)) = 0``, reported as
    ``equality_certified`` when ``hS`` is known.
    """
    bound = hilbert_bound(inv)
    eligible = (inv.h or 0) == 0 and nonspeciality(inv)
    return {
        "bound": bound,
        "equality_eligible": eligible,
        "equality_requires": "hS == 0",
        "equality_certified": eligible and inv.hS == 0,
    }


def clifford_h_bound(inv: InvariantSet) -> Fraction:
    """Bound ``h <= (3/2)(K^2 - d) + 6(g - 1 - chi) + 1/2`` for special normal bundles."""
    return Fraction(3, 2) * (inv.Ksq - inv.d) + 6 * (inv.g - 1 - inv.chi) + Fraction(1, 2)


def special_h0_bound(inv: InvariantSet) -> Fraction:
    """Bound ``(r^2 - r - 1) + (3d - K^2 - 1)/2 + 3(g-1) + 6 chi`` on ``h^0`` of the normal bundle."""
    r = _require_r(inv)
    return (r * r - r - 1) + Fraction(3 * inv.d - inv.Ksq - 1, 2) + 3 * (inv.g - 1) + 6 * inv.chi


def normal_h1_bound(r: int, hS: int) -> int:
    """``h^1(N) <= (r - 2) h^1(O_S(H))``."""
    return (r - 2) * hS


def normal_h2(r: int, h2H: int) -> int:
    """``h^2(N) = (r - 2) h^2(O_S(H))``."""
    return (r - 2) * h2H


def moduli_bounds_canonical(inv: InvariantSet, q: int, pg: int) -> dict:
    """Bounds on the number of moduli when the hyperplane class is canonical.

    ``special`` is ``4K^2 + 3 chi - 3q + 4`` (special case), ``nonspecial`` is
    ``12 chi - 3 p_g - 1 - 2K^2`` and ``castelnuovo`` is ``3 p_g - 12 q + 25``.
    """
    return {
        "special": 4 * inv.Ksq + 3 * inv.chi - 3 * q + 4,
        "nonspecial": 12 * inv.chi - 3 * pg - 1 - 2 * inv.Ksq,
        "castelnuovo": 3 * pg - 12 * q + 25,
    }
