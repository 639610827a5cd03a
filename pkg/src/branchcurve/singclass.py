"""Singular points of plane curves and their node / cusp / other classification."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial

from . import upoly
from .elimination import PlanePoint, dehomogenize, normalize_projective, solve_projective_plane
from .errors import DomainError
from .fields import ExtensionField, PrimeField
from .polyring import MultiPoly

__all__ = [
    "SingularPoint",
    "SingularityCensus",
    "singular_points",
    "classify",
    "census",
    "NODE",
    "CUSP",
    "OTHER",
]

NODE = "node"
CUSP = "cusp"
OTHER = "other"


@dataclass(frozen=True)
class SingularPoint:
    """A classified Galois orbit of singular points.

    ``coords`` is a projective representative over ``field`` normalized so
    that coordinate ``chart`` equals 1; ``affine`` are the two remaining
    coordinates.  ``tangent_cone`` lists the coefficients of the lowest-degree
    form ``sum c_j x^(m-j) y^j`` in those affine variables.
    """

    field: object
    coords: tuple
    chart: int
    affine: tuple
    residue_degree: int
    multiplicity: int
    tangent_cone: tuple
    classification: str
    descriptor: dict = field(default_factory=dict, compare=False)

    def to_json(self):
        K = self.field
        return {
            "field": K.describe(),
            "coords": [K.to_json(c) for c in self.coords],
            "chart": self.chart,
            "residue_degree": self.residue_degree,
            "multiplicity": self.multiplicity,
            "tangent_cone": [K.to_json(c) for c in self.tangent_cone],
            "classification": self.classification,
            "descriptor": self.descriptor,
        }


@dataclass(frozen=True)
class SingularityCensus:
    points: tuple
    node_count: int
    cusp_count: int
    other_count: int

    @property
    def total(self) -> int:
        return sum(pt.residue_degree for pt in self.points)

    @property
    def passed(self) -> bool:
        return self.other_count == 0

    def to_json(self):
        return {
            "nodes": self.node_count,
            "cusps": self.cusp_count,
            "other": self.other_count,
            "orbits": [pt.to_json() for pt in self.points],
        }


def singular_points(B: MultiPoly, seed: int = 0, method: str = "shear") -> list[PlanePoint]:
    """All singular points of the plane curve ``B = 0`` over the algebraic closure.

    They are the common zeros of the three partial derivatives (Euler's
    relation gives ``B`` itself when the characteristic does not divide the
    degree).  Raises :class:`PositiveDimensionalIntersection` when ``B`` has
    a repeated component.
    """
    F = B.domain
    if not isinstance(F, PrimeField):
        raise DomainError("singular points are located over a prime field")
    if B.nvars != 3 or not B.is_homogeneous():
        raise DomainError("expected a homogeneous polynomial in 3 variables")
    D = B.degree()
    if D % F.p == 0:
        raise DomainError("the characteristic divides the degree")
    if D <= 1:
        return []
    grads = [B.diff(i) for i in range(3)]
    return solve_projective_plane(grads, seed=seed, method=method)


class _Jets:
    """Taylor coefficients of an affine bivariate polynomial at a point over ``K``."""

    def __init__(self, b: MultiPoly, K, point):
        self.b = b
        self.K = K
        D = max(b.degree(), 1)
        self.D = D
        x, y = point
        self.xp = [K.one]
        self.yp = [K.one]
        for _ in range(D):
            self.xp.append(K.mul(self.xp[-1], x))
            self.yp.append(K.mul(self.yp[-1], y))
        self.derivs = {(0, 0): b}
        self.cache = {}
        base = b.domain
        self.inv_fact = [base.inv(base.convert(factorial(i))) for i in range(D + 1)]

    def _deriv(self, i, j):
        key = (i, j)
        if key not in self.derivs:
            if i > 0:
                self.derivs[key] = self._deriv(i - 1, j).diff(0)
            else:
                self.derivs[key] = self._deriv(i, j - 1).diff(1)
        return self.derivs[key]

    def _evaluate(self, q):
        K = self.K
        rows = {}
        for (a, c), coeff in q.terms.items():
            t = _scale(K, coeff, self.xp[a])
            rows[c] = K.add(rows[c], t) if c in rows else t
        acc = K.zero
        for c, v in rows.items():
            acc = K.add(acc, K.mul(v, self.yp[c]))
        return acc

    def coeff(self, i, j):
        """Coefficient of ``X^i Y^j`` in ``b(x + X, y + Y)``."""
        key = (i, j)
        if key not in self.cache:
            if i + j > self.b.degree():
                val = self.K.zero
            else:
                q = self._deriv(i, j)
                val = self._evaluate(q)
                c = self.b.domain.mul(self.inv_fact[i], self.inv_fact[j])
                val = _scale(self.K, c, val)
            self.cache[key] = val
        return self.cache[key]

    def form(self, k):
        """Degree-``k`` part as ``[c_{k,0}, c_{k-1,1}, ..., c_{0,k}]``."""
        return [self.coeff(k - j, j) for j in range(k + 1)]

    def along(self, k, direction):
        K = self.K
        dx, dy = direction
        acc = K.zero
        for j, c in enumerate(self.form(k)):
            if not K.is_zero(c):
                acc = K.add(acc, K.mul(c, K.mul(K.pow(dx, k - j), K.pow(dy, j))))
        return acc


def _scale(K, c, a):
    if isinstance(K, ExtensionField):
        return K.scale(c, a)
    return K.mul(c, a)


def _cone_roots(K, form):
    # multiplicities of the linear factors of sum c_j x^(m-j) y^j over the closure
    m = len(form) - 1
    u = upoly.strip(K, [form[m - i] for i in range(m + 1)])  # in x with y = 1, low -> high
    at_inf = m - (len(u) - 1)
    mults = [at_inf] if at_inf else []
    if len(u) > 1:
        _, parts = upoly.sqf_list(K, u)
        for g, e in parts:
            mults.extend([e] * (len(g) - 1))
    return sorted(mults, reverse=True)


def _as_plane_point(point, F):
    if isinstance(point, PlanePoint):
        return point
    coords = tuple(point)
    K = ExtensionField(F.p, (0, 1), check=False)
    coords = normalize_projective(K, tuple(K.convert(c) for c in coords))
    return PlanePoint(K, coords, 1)


def classify(B: MultiPoly, point) -> SingularPoint:
    """Classify a singular point of ``B`` by its 2- and 3-jets.

    ``point`` is a :class:`PlanePoint` or a coordinate triple over the base
    field.  A double point is a node when its tangent cone has two distinct
    lines and a cusp when the cone is a double line meeting the curve with
    multiplicity exactly 3; everything else is ``other`` with a descriptor.

    Examples
    --------
    >>> from branchcurve.parsing import parse_polynomial
    >>> from branchcurve.fields import PrimeField
    >>> B = parse_polynomial("x1^2*x2 - x0^3", ("x0", "x1", "x2"), PrimeField(101))
    >>> classify(B, (0, 0, 1)).classification
    'cusp'
    """
    F = B.domain
    pt = _as_plane_point(point, F)
    K = pt.field
    coords = pt.coords
    chart = max(i for i in range(3) if not K.is_zero(coords[i]))
    coords = normalize_projective_at(K, coords, chart)
    others = [i for i in range(3) if i != chart]
    b = dehomogenize(B, chart)
    jets = _Jets(b, K, (coords[others[0]], coords[others[1]]))
    if not K.is_zero(jets.coeff(0, 0)):
        raise ValueError("point is not on the curve")
    m = None
    for k in range(1, jets.D + 1):
        if any(not K.is_zero(c) for c in jets.form(k)):
            m = k
            break
    if m is None:
        raise ValueError("curve vanishes identically near the point")
    if m < 2:
        raise ValueError("point is a smooth point of the curve")
    cone = tuple(jets.form(m))
    desc = {"m": m, "cone_roots": _cone_roots(K, list(cone))}
    kind = OTHER
    if m == 2:
        c20, c11, c02 = cone
        disc = K.sub(K.mul(c11, c11), K.mul(K.convert(4), K.mul(c20, c02)))
        if not K.is_zero(disc):
            kind = NODE
        else:
            if not K.is_zero(c20):
                direction = (K.neg(K.div(c11, K.mul(K.convert(2), c20))), K.one)
            else:
                direction = (K.one, K.zero)
            contact = None
            for k in range(3, jets.D + 1):
                if not K.is_zero(jets.along(k, direction)):
                    contact = k
                    break
            desc["contact"] = contact
            if contact == 3:
                kind = CUSP
    return SingularPoint(K, coords, chart, (coords[others[0]], coords[others[1]]), pt.degree, m, cone, kind, desc)


def normalize_projective_at(K, coords, i):
    inv = K.inv(coords[i])
    return tuple(K.mul(inv, c) for c in coords)


def census(B: MultiPoly, seed: int = 0, method: str = "shear") -> SingularityCensus:
    """Locate and classify every singular point; counts include orbit sizes."""
    pts = [classify(B, pt) for pt in singular_points(B, seed=seed, method=method)]
    counts = {NODE: 0, CUSP: 0, OTHER: 0}
    for pt in pts:
        counts[pt.classification] += pt.residue_degree
    pts.sort(key=lambda s: (s.classification, s.residue_degree, [s.field.to_json(c) for c in s.coords]))
    return SingularityCensus(tuple(pts), counts[NODE], counts[CUSP], counts[OTHER])
