"""Surfaces in P^3, projection frames and the smoothness screen.

A surface is a homogeneous quartic-ish polynomial ``f`` in ``x0..x3`` with
rational coefficients, together with its numerical invariants: sectional
genus ``g``, self-intersection of the canonical class ``Ksq`` and holomorphic
Euler characteristic ``chi``.  For smooth surfaces these follow from the
degree alone; surfaces with ordinary singularities must supply them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import upoly
from .elimination import (
    drop_variable,
    gcd as mgcd,
    normalize_projective,
    random_invertible,
    resultant,
    solve_projective_plane,
)
from .errors import (
    CenterOnSurface,
    DomainError,
    NegativeGenus,
    NonHomogeneousInput,
    PositiveDimensionalIntersection,
    RetryBudgetExhausted,
    ShearBudgetExhausted,
)
from .fields import QQ, ExtensionField, PrimeField
from .polyring import MultiPoly, identity, mat_inv

__all__ = [
    "SurfaceModel",
    "ProjectionFrame",
    "SpacePoint",
    "SmoothnessVerdict",
    "smooth_invariants",
    "sectional_genus_with_double_curve",
    "random_frame",
    "check_smoothness",
    "lift_plane_point",
]


def smooth_invariants(d: int) -> tuple[int, int, int]:
    """``(g, Ksq, chi)`` of a smooth surface of degree ``d`` in P^3.

    >>> smooth_invariants(4)
    (3, 0, 2)
    """
    if d < 1:
        raise ValueError("degree must be positive")
    g = (d - 1) * (d - 2) // 2
    ksq = d * (d - 4) ** 2
    chi = 1 + (d - 1) * (d - 2) * (d - 3) // 6
    return g, ksq, chi


def sectional_genus_with_double_curve(d: int, deg_gamma: int) -> int:
    """Genus of a general plane section when the surface has a double curve.

    A plane section is a plane curve of degree ``d`` with ``deg_gamma`` nodes.
    """
    g = (d - 1) * (d - 2) // 2 - deg_gamma
    if g < 0:
        raise NegativeGenus(f"degree {d} with a double curve of degree {deg_gamma} gives genus {g}")
    return g


@dataclass(frozen=True)
class SurfaceModel:
    """A surface ``V(f)`` in P^3 and its invariants.

    Use :meth:`from_polynomial`; it validates the input and fills in the
    invariants of smooth surfaces.
    """

    f: MultiPoly
    d: int
    smooth_claimed: bool
    g: int
    Ksq: int
    chi: int
    deg_double_curve: int | None = None

    @classmethod
    def from_polynomial(
        cls,
        f: MultiPoly,
        smooth_claimed: bool = True,
        g: int | None = None,
        Ksq: int | None = None,
        chi: int | None = None,
        deg_double_curve: int | None = None,
    ) -> "SurfaceModel":
        if f.nvars != 4:
            raise DomainError("a surface in P^3 needs 4 variables")
        if f.is_zero():
            raise NonHomogeneousInput("zero polynomial")
        if not f.is_homogeneous():
            raise NonHomogeneousInput("surface equation is not homogeneous")
        d = f.degree()
        if d < 2:
            raise NonHomogeneousInput("surface equation must have degree >= 2")
        if smooth_claimed:
            sg, sk, sc = smooth_invariants(d)
            for name, given, expected in (("g", g, sg), ("Ksq", Ksq, sk), ("chi", chi, sc)):
                if given is not None and given != expected:
                    raise DomainError(f"{name}={given} disagrees with a smooth surface of degree {d} ({expected})")
            return cls(f, d, True, sg, sk, sc, None)
        if g is None and deg_double_curve is not None:
            g = sectional_genus_with_double_curve(d, deg_double_curve)
        if g is None or Ksq is None or chi is None:
            raise DomainError("a surface with singularities needs g (or deg_gamma), Ksq and chi")
        if g < 0:
            raise NegativeGenus(f"g={g}")
        return cls(f, d, False, g, Ksq, chi, deg_double_curve)

    def invariants(self, **extra):
        from .invariants import InvariantSet

        return InvariantSet(d=self.d, g=self.g, Ksq=self.Ksq, chi=self.chi, **extra)

    def reduce(self, F) -> MultiPoly:
        """The equation over a prime field (raises if it degenerates mod p)."""
        if self.f.domain == F:
            return self.f
        fp = self.f.change_domain(F)
        if fp.is_zero() or fp.degree() != self.d:
            raise DomainError(f"the equation vanishes modulo {F.p}")
        return fp


@dataclass(frozen=True)
class ProjectionFrame:
    """Coordinates ``x = M y`` in which the center is ``[0:0:0:1]``.

    ``center`` is the last column of ``M`` and ``target_plane`` is the linear
    form (last row of ``M^{-1}``) whose zero set is the image of ``y3 = 0``.
    """

    field: object
    matrix: tuple
    center: tuple
    target_plane: tuple
    seed: int | None = None

    @classmethod
    def from_matrix(cls, F, M, seed=None):
        M = tuple(tuple(F.convert(c) for c in row) for row in M)
        Minv = mat_inv(F, [list(r) for r in M])
        center = tuple(row[3] for row in M)
        return cls(F, M, center, tuple(Minv[3]), seed)

    @classmethod
    def identity(cls, F=QQ):
        return cls.from_matrix(F, identity(F, 4))

    def moved(self, f: MultiPoly) -> MultiPoly:
        """``f(M y)``."""
        return f.linear_substitute([list(r) for r in self.matrix])

    def to_space(self, K, y):
        """Original coordinates of the point with frame coordinates ``y`` (over ``K``)."""
        out = []
        for row in self.matrix:
            acc = K.zero
            for m, c in zip(row, y):
                acc = K.add(acc, K.mul(_lift(K, m), c))
            out.append(acc)
        return normalize_projective(K, out)

    def to_json(self):
        F = self.field
        return {
            "matrix": [[F.to_json(c) for c in row] for row in self.matrix],
            "center": [F.to_json(c) for c in self.center],
            "target_plane": [F.to_json(c) for c in self.target_plane],
        }


def _lift(K, m):
    return K.embed(m) if isinstance(K, ExtensionField) else K.convert(m)


def frame_rng(seed, p, attempt) -> random.Random:
    """Deterministic generator for frame ``attempt`` at prime ``p``."""
    return random.Random(f"frame:{seed}:{p}:{attempt}")


def random_frame(S: SurfaceModel, seed: int, F: PrimeField, attempt: int = 0, budget: int = 32):
    """A random frame over ``F`` whose center is off the surface."""
    fp = S.reduce(F)
    rng = frame_rng(seed, F.p, attempt)
    for _ in range(budget):
        M = random_invertible(F, 4, rng)
        center = [row[3] for row in M]
        if fp.evaluate(center) != 0:
            return ProjectionFrame.from_matrix(F, M, seed)
    raise RetryBudgetExhausted("every sampled center lies on the surface")


@dataclass(frozen=True)
class SpacePoint:
    """A Galois orbit of points of P^3 over ``field``.

    When the fibre over a plane point could not be split over ``field``,
    ``coords`` is ``None`` and ``fiber`` holds the univariate polynomial whose
    roots give the last coordinate.
    """

    field: object
    coords: tuple | None
    plane: tuple
    fiber: tuple = ()
    frame_coords: tuple | None = None

    def to_json(self):
        K = self.field
        out = {"field": K.describe(), "plane": [K.to_json(c) for c in self.plane]}
        if self.coords is not None:
            out["coords"] = [K.to_json(c) for c in self.coords]
        else:
            out["fiber"] = [K.to_json(c) for c in self.fiber]
        return out


def lift_plane_point(polys, K, y):
    """Common roots in ``y3`` of ``polys(y0, y1, y2, y3)`` as a monic gcd over ``K``."""
    G = None
    for q in polys:
        coeffs = [K.zero] * (q.degree_in(3) + 1)
        for e, c in q.terms.items():
            m = _lift(K, c)
            for yi, ei in zip(y, e[:3]):
                if ei:
                    m = K.mul(m, K.pow(yi, ei))
            coeffs[e[3]] = K.add(coeffs[e[3]], m)
        g = upoly.strip(K, coeffs)
        G = g if G is None else upoly.gcd(K, G, g)
    if not G:
        raise PositiveDimensionalIntersection("the whole line lies in the common zero set")
    return upoly.monic(K, G)


@dataclass
class SmoothnessVerdict:
    """Outcome of :func:`check_smoothness` over one prime field."""

    smooth: bool
    prime: int
    witnesses: list = field(default_factory=list)
    singular_curve: bool = False

    def to_json(self):
        return {
            "smooth": self.smooth,
            "prime": self.prime,
            "singular_curve": self.singular_curve,
            "witnesses": [w.to_json() for w in self.witnesses],
        }


def common_zeros_p3(polys, frame: ProjectionFrame, seed: int = 0, probe_lines: int = 4):
    """Common zeros in P^3 of polynomials given in frame coordinates.

    ``polys[0]`` must have a constant leading coefficient in ``y3``.  Each
    other polynomial is eliminated against it, the plane system is solved and
    every plane point is lifted back along its line through the center.
    Returns ``(points, curve)`` where ``curve`` is True when the zero set has a
    one-dimensional part (then ``points`` are witnesses on it).
    """
    lead = polys[0]
    F = lead.domain
    lc = lead.coefficient((0, 0, 0, lead.degree()))
    if lead.degree_in(3) != lead.degree() or lc == F.zero:
        raise ValueError("leading equation must be monic-like in the last variable")
    res = [drop_variable(resultant(lead, q, 3), 3) for q in polys[1:]]
    res = [r for r in res if not r.is_zero()]
    rng = random.Random(seed)
    if not res:
        return _probe_curve(polys, frame, None, rng, probe_lines), True
    try:
        plane = solve_projective_plane(res, seed=rng.randrange(2**32))
    except PositiveDimensionalIntersection:
        # a common curve: look for witnesses on it, else solve the residual system
        G = res[0]
        for r in res[1:]:
            G = mgcd(G, r)
        pts = _probe_curve(polys, frame, G if not G.is_constant() else None, rng, probe_lines)
        if pts or G.is_constant():
            return pts, True
        res = [r.divexact(G) for r in res]
        try:
            plane = solve_projective_plane(res, seed=rng.randrange(2**32))
        except PositiveDimensionalIntersection:
            return [], True
    out = []
    for pt in plane:
        K = pt.field
        g = lift_plane_point(polys, K, pt.coords)
        if len(g) <= 1:
            continue
        out.append(_space_point(frame, K, pt.coords, g))
    return out, False


def _space_point(frame, K, y, g):
    if len(g) == 2:
        x3 = K.neg(g[0])
        local = tuple(y) + (x3,)
        return SpacePoint(K, frame.to_space(K, local), tuple(y), (), local)
    return SpacePoint(K, None, tuple(y), tuple(g))


def _probe_curve(polys, frame, G, rng, lines):
    # intersect the plane curve G (or, when unknown, the projection of the
    # whole zero set) with random lines and lift the intersection points
    F = polys[0].domain
    out = []
    for _ in range(lines):
        a = [F.random(rng) for _ in range(3)]
        b = [F.random(rng) for _ in range(3)]
        if G is not None:
            line = _restrict(G, a, b)
            if len(line) <= 1:
                continue
            _, facs = upoly.factor(F, line, rng)
            for h, _e in facs:
                K = ExtensionField(F.p, tuple(h), check=False)
                t = K.gen
                y = tuple(K.add(K.embed(ai), K.mul(K.embed(bi), t)) for ai, bi in zip(a, b))
                g = lift_plane_point(polys, K, y)
                if len(g) > 1:
                    out.append(_space_point(frame, K, y, g))
        else:
            # the lead polynomial restricted to the plane over the line
            t = MultiPoly.var(F, 2, 0)
            y_line = [MultiPoly.constant(F, 2, ai) + t.scale(bi) for ai, bi in zip(a, b)]
            sub = [q.substitute(y_line + [MultiPoly.var(F, 2, 1)]) for q in polys]
            from .elimination import solve_system

            try:
                pts = solve_system(sub, seed=rng.randrange(2**32))
            except (PositiveDimensionalIntersection, ShearBudgetExhausted):
                continue
            for o in pts:
                K = o.field
                t, x3 = o.coords
                y = tuple(K.add(K.embed(ai), K.mul(K.embed(bi), t)) for ai, bi in zip(a, b))
                out.append(SpacePoint(K, frame.to_space(K, y + (x3,)), y, (), y + (x3,)))
        if out:
            return out
    return out


def _restrict(G, a, b):
    F = G.domain
    t = MultiPoly.var(F, 1, 0)
    images = [MultiPoly.constant(F, 1, ai) + t.scale(bi) for ai, bi in zip(a, b)]
    return upoly.strip(F, G.substitute(images).to_univariate(0))


def check_smoothness(S: SurfaceModel, F: PrimeField, seed: int = 0, budget: int = 8) -> SmoothnessVerdict:
    """Decide whether ``V(f, df/dx0, ..., df/dx3)`` is empty over the closure of ``F``.

    The surface equation is moved to a random frame, the partial derivative
    along the center direction is used to eliminate the last coordinate, and
    every candidate is lifted back and verified exactly.  A nonempty answer
    comes with witness points in the original coordinates.
    """
    fp = S.reduce(F)
    if F.p <= S.d:
        raise DomainError("the characteristic must exceed the degree")
    last_error = None
    for attempt in range(budget):
        frame = random_frame(S, seed, F, attempt=attempt)
        g = frame.moved(fp)
        grads = [g.diff(i) for i in range(4)]
        polys = [grads[3], grads[0], grads[1], grads[2]]
        try:
            pts, curve = common_zeros_p3(polys, frame, seed=seed + attempt)
        except ShearBudgetExhausted as exc:
            last_error = exc
            continue
        if curve and not pts:
            continue
        return SmoothnessVerdict(not pts, F.p, pts, curve)
    raise RetryBudgetExhausted(f"smoothness screen found no generic frame ({last_error})")
