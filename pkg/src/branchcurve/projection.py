"""Branch curve of a linear projection from a point, and line profiles.

In frame coordinates the center is ``[0:0:0:1]`` and the projection forgets
the last coordinate.  Scaling ``f`` to be monic in ``y3`` turns the branch
curve into the discriminant with respect to ``y3``; the line over a plane
point ``y`` meets the surface in the roots of ``f(y, y3)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import upoly
from .elimination import (
    discriminant,
    drop_variable,
    squarefree_decomposition,
    squarefree_part,
)
from .errors import CenterOnSurface, LineInSurface, NonReducedBranch
from .fields import ExtensionField, PrimeField, Rationals
from .polyring import MultiPoly
from .surface import ProjectionFrame, SpacePoint, SurfaceModel, _lift, common_zeros_p3

__all__ = [
    "BranchComputation",
    "LineProfile",
    "RamificationVerdict",
    "IrreducibilityEvidence",
    "branch_curve",
    "normalize_branch",
    "is_reduced",
    "ramification_smooth_check",
    "line_profile",
    "irreducibility_evidence",
]


@dataclass(frozen=True)
class BranchComputation:
    """Everything computed for one surface and one frame.

    ``B`` is a polynomial in the three plane coordinates.  For surfaces with a
    double curve the discriminant is ``B * C^2`` with ``C`` the image of the
    double curve; ``double_image`` holds ``C`` (``None`` for smooth surfaces).
    """

    frame: ProjectionFrame
    f_moved: MultiPoly
    ram_ideal: tuple
    B: MultiPoly
    B_reduced: bool
    degB: int
    double_image: MultiPoly | None = None


def normalize_branch(B: MultiPoly) -> MultiPoly:
    """Scale so that the lexicographically largest monomial has coefficient 1."""
    if B.is_zero():
        return B
    lead = max(B.terms)
    F = B.domain
    return B.scale(F.inv(B.terms[lead]))


def _moved_monic(S: SurfaceModel, frame: ProjectionFrame) -> MultiPoly:
    F = frame.field
    f = S.f if isinstance(F, Rationals) else S.reduce(F)
    g = frame.moved(f)
    lc = g.coefficient((0, 0, 0, S.d))
    if F.is_zero(lc):
        raise CenterOnSurface("the projection center lies on the surface")
    return g.scale(F.inv(lc))


def branch_curve(S: SurfaceModel, frame: ProjectionFrame, seed: int = 0) -> BranchComputation:
    """Branch curve of the projection of ``S`` from ``frame.center``.

    For a smooth surface the discriminant must be reduced, otherwise
    :class:`NonReducedBranch` is raised so the caller can pick another frame.
    For a surface with a double curve the squared factor is split off first.

    Examples
    --------
    >>> from branchcurve.parsing import parse_polynomial
    >>> S = SurfaceModel.from_polynomial(parse_polynomial("x3^2 + x0*x1 + x2^2"))
    >>> str(branch_curve(S, ProjectionFrame.identity()).B)
    'x0*x1 + x2^2'
    """
    g = _moved_monic(S, frame)
    g3 = g.diff(3)
    disc = drop_variable(discriminant(g, 3), 3)
    if disc.is_zero():
        raise NonReducedBranch("discriminant vanishes identically")
    double = None
    if S.smooth_claimed:
        B = normalize_branch(disc)
        if not is_reduced(B, seed=seed):
            raise NonReducedBranch("discriminant has a repeated factor")
    else:
        parts = squarefree_decomposition(disc)
        B = MultiPoly.one(disc.domain, 3)
        rest = MultiPoly.one(disc.domain, 3)
        for q, e in parts:
            if e == 1:
                B = B * q
            else:
                rest = rest * q
        B = normalize_branch(B)
        double = None if rest.is_constant() else normalize_branch(rest)
    return BranchComputation(frame, g, (g, g3), B, True, B.degree(), double)


def is_reduced(B: MultiPoly, seed: int = 0, tries: int = 8) -> bool:
    """Whether the homogeneous plane polynomial ``B`` has no repeated factor.

    Over the rationals this is an exact gcd computation.  Over a prime field
    the coordinates are sheared at random and ``B`` is required to specialize
    to a squarefree polynomial in each of the two affine variables; a repeated
    factor makes one of the two tests fail for every specialization, so a
    ``True`` answer is always correct.
    """
    F = B.domain
    if not isinstance(F, PrimeField):
        return squarefree_part(B).degree() == B.degree()
    rng = random.Random(seed)
    D = B.degree()
    for _ in range(tries):
        from .elimination import dehomogenize, random_invertible

        T = random_invertible(F, 3, rng)
        b = dehomogenize(B.linear_substitute(T), 2)
        if b.degree() != D or b.degree_in(0) != D or b.degree_in(1) != D:
            continue
        if _squarefree_in(b, 1, rng, tries) and _squarefree_in(b, 0, rng, tries):
            return True
    return False


def _squarefree_in(b, var, rng, tries):
    F = b.domain
    other = 1 - var
    for _ in range(tries):
        c = F.random(rng)
        u = b.partial_evaluate({other: c}).to_univariate(var)
        u = upoly.strip(F, u)
        if len(u) - 1 != b.degree_in(var):
            continue
        if len(upoly.gcd(F, u, upoly.deriv(F, u))) == 1:
            return True
    return False


# -- ramification curve --------------------------------------------------------


@dataclass
class RamificationVerdict:
    """Outcome of :func:`ramification_smooth_check`.

    ``checked`` is the number of candidate points (over the closure) whose
    Jacobian rank was computed explicitly; ``witnesses`` are the orbits where
    it dropped below 2.  ``unchecked`` holds candidates whose fibre did not
    split over the field of the plane point (a non-generic frame).
    """

    smooth: bool
    checked: int
    witnesses: list = field(default_factory=list)
    unchecked: list = field(default_factory=list)

    def to_json(self):
        return {
            "smooth": self.smooth,
            "checked_points": self.checked,
            "witnesses": [w.to_json() for w in self.witnesses],
            "unchecked": [w.to_json() for w in self.unchecked],
        }


def _jacobian_rank_drops(polys, K, x):
    rows = []
    for q in polys:
        rows.append([_eval(q.diff(i), K, x) for i in range(4)])
    for i in range(4):
        for j in range(i + 1, 4):
            m = K.sub(K.mul(rows[0][i], rows[1][j]), K.mul(rows[0][j], rows[1][i]))
            if not K.is_zero(m):
                return False
    return True


def _eval(q, K, x):
    return q.evaluate([c for c in x], domain=K)


def ramification_smooth_check(S: SurfaceModel, frame: ProjectionFrame, seed: int = 0) -> RamificationVerdict:
    """Check that ``V(f, df/dy3)`` has no point where its Jacobian has rank < 2.

    On that scheme the gradient of ``f`` has a zero last entry, so away from
    the singular points of the surface (screened by
    :func:`~branchcurve.surface.check_smoothness`) the rank can only drop
    where ``d2f/dy3^2`` also vanishes.  That candidate set is finite for a
    generic frame; it is computed by elimination and the rank is evaluated
    exactly at each candidate.
    """
    g = _moved_monic(S, frame)
    g3 = g.diff(3)
    g33 = g3.diff(3)
    cands, _curve = common_zeros_p3([g, g3, g33], frame, seed=seed)
    witnesses, unchecked = [], []
    checked = 0
    for pt in cands:
        if pt.frame_coords is None:
            unchecked.append(pt)
            continue
        checked += pt.field.degree
        if _jacobian_rank_drops((g, g3), pt.field, pt.frame_coords):
            witnesses.append(pt)
    return RamificationVerdict(not witnesses and not unchecked, checked, witnesses, unchecked)


# -- line profiles ---------------------------------------------------------------


@dataclass(frozen=True)
class LineProfile:
    """How the line through the center and ``y`` meets the surface.

    ``multiplicities`` lists the intersection multiplicities of the distinct
    points over the algebraic closure, largest first; ``residue_degrees`` gives
    for each the degree of its residue field over the field of ``y``.
    """

    field: object
    point: tuple
    multiplicities: tuple
    residue_degrees: tuple
    b: int
    a: int

    def to_json(self):
        K = self.field
        return {
            "field": K.describe(),
            "point": [K.to_json(c) for c in self.point],
            "multiplicities": list(self.multiplicities),
            "residue_degrees": list(self.residue_degrees),
            "b": self.b,
            "a": self.a,
        }


def restrict_to_line(f_moved: MultiPoly, K, y) -> list:
    """``f_moved(y0, y1, y2, s)`` as a dense polynomial in ``s`` over ``K``."""
    coeffs = [K.zero] * (f_moved.degree_in(3) + 1)
    powers = [[K.one] for _ in range(3)]
    for e, c in f_moved.terms.items():
        m = _lift(K, c)
        for i in range(3):
            pw = powers[i]
            while len(pw) <= e[i]:
                pw.append(K.mul(pw[-1], y[i]))
            if e[i]:
                m = K.mul(m, pw[e[i]])
        coeffs[e[3]] = K.add(coeffs[e[3]], m)
    return upoly.strip(K, coeffs)


def profile_from_restriction(K, y, u) -> LineProfile:
    if not u:
        raise LineInSurface("the line lies on the surface")
    _, parts = upoly.sqf_list(K, u)
    entries = []
    for g, e in parts:
        for r in upoly.residue_degrees(K, g):
            entries.extend([(e, r)] * r)
    entries.sort(key=lambda t: (-t[0], t[1]))
    mults = tuple(n for n, _ in entries)
    degs = tuple(r for _, r in entries)
    b = sum(n - 1 for n in mults)
    a = sum(max(n - 2, 0) for n in mults)
    return LineProfile(K, tuple(y), mults, degs, b, a)


def line_profile(S: SurfaceModel, frame: ProjectionFrame, y, K=None, f_moved: MultiPoly | None = None) -> LineProfile:
    """Intersection profile of the line through the center and the plane point ``y``.

    ``y`` is given in frame coordinates over ``K`` (default: the frame's field).
    """
    K = K or frame.field
    g = f_moved if f_moved is not None else _moved_monic(S, frame)
    y = tuple(K.convert(c) for c in y)
    if all(K.is_zero(c) for c in y):
        raise ValueError("zero vector is not a plane point")
    u = restrict_to_line(g, K, y)
    if len(u) - 1 != S.d:
        raise LineInSurface("the restriction lost degree") if not u else CenterOnSurface("center on surface")
    return profile_from_restriction(K, y, u)


# -- irreducibility ---------------------------------------------------------------


@dataclass
class IrreducibilityEvidence:
    """Certificate that ``B`` has no factor over ``GF(p^k)`` for ``k`` in ``certified``.

    Every nontrivial factorization over ``GF(p^k)`` restricts to every
    rational line, so its factor degree would appear among the subset sums of
    each line's factorization pattern over ``GF(p^k)``.  ``residual[k]`` is
    the set of proper degrees not yet excluded.

    A second certificate covers every ``k`` at once: a curve irreducible over
    ``GF(p)`` with a smooth ``GF(p)``-point is absolutely irreducible, since
    rational points of a curve whose components are conjugate lie on their
    intersection.  A simple rational root of a line restriction is such a
    point (``smooth_rational_point``).
    """

    degree: int
    kmax: int
    lines: int
    certified: dict
    residual: dict
    smooth_rational_point: bool = False

    @property
    def irreducible(self) -> bool:
        return all(self.certified.get(k, False) for k in range(1, self.kmax + 1))

    def to_json(self):
        return {
            "degree": self.degree,
            "kmax": self.kmax,
            "lines": self.lines,
            "certified": {str(k): v for k, v in sorted(self.certified.items())},
            "irreducible": self.irreducible,
            "smooth_rational_point": self.smooth_rational_point,
        }


def _subset_sums(parts, D):
    sums = {0}
    for e in parts:
        sums |= {s + e for s in sums if s + e <= D}
    return sums


def irreducibility_evidence(B: MultiPoly, kmax: int = 4, seed: int = 0, max_lines: int = 64) -> IrreducibilityEvidence:
    """Certify irreducibility of ``B`` over ``GF(p^k)`` for ``k <= kmax`` by line restrictions."""
    F = B.domain
    D = B.degree()
    rng = random.Random(seed)
    residual = {k: set(range(1, D)) for k in range(1, kmax + 1)}
    used = 0
    rational = False
    t = MultiPoly.var(F, 1, 0)
    for _ in range(max_lines):
        if all(not r for r in residual.values()) or (rational and not residual[1]):
            break
        a = [F.random(rng) for _ in range(3)]
        b = [F.random(rng) for _ in range(3)]
        if F.is_zero(B.evaluate(b)):
            continue
        images = [MultiPoly.constant(F, 1, ai) + t.scale(bi) for ai, bi in zip(a, b)]
        u = upoly.strip(F, B.substitute(images).to_univariate(0))
        if len(u) - 1 != D or len(upoly.gcd(F, u, upoly.deriv(F, u))) != 1:
            continue
        used += 1
        pattern = upoly.degree_pattern(F, u)
        rational = rational or 1 in pattern
        for k in residual:
            parts = []
            for e in pattern:
                c = _gcd(e, k)
                parts.extend([e // c] * c)
            residual[k] &= _subset_sums(parts, D)
    absolute = rational and not residual[1]
    certified = {k: absolute or not r for k, r in residual.items()}
    return IrreducibilityEvidence(D, kmax, used, certified, {k: sorted(r) for k, r in residual.items()}, rational)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a
