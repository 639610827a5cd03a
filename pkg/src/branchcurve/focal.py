"""Foci of two-parameter families of lines in P^3.

A family is given either by two planes ``a(u, v), b(u, v)`` whose
intersection is the line (:class:`DualPair`) or by two points ``P(u, v),
Q(u, v)`` spanning it (:class:`ParametricPair`).  On the line over ``z`` write
``x = s P(z) + t Q(z)``; the foci are the zeros of the binary quadratic

    F(s, t) = det [[a_u . x, a_v . x], [b_u . x, b_v . x]]

where subscripts are formal partial derivatives in ``u`` and ``v``.  The
independent check is the Jacobian determinant of ``(s, t, u, v) -> sP + tQ``.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateLine, LineInSurface, NotFilling
from .fields import QQ, PrimeField, random_prime
from .polyring import MultiPoly, mat_det

__all__ = [
    "DualPair",
    "ParametricPair",
    "FocalForm",
    "Focus",
    "cross",
    "dual_vectors",
    "parametric_vectors",
    "focal_form",
    "focal_polynomial",
    "parametric_focal_polynomial",
    "foci",
    "restrict_surface",
    "contact_order",
    "is_filling",
]

# variables of the symbolic ring: u, v (family parameters), s, t (line coordinates)
U, V, S, T = range(4)


@dataclass(frozen=True)
class DualPair:
    """Line over ``z`` is ``{a(z).x = b(z).x = 0}``; entries are polynomials in ``u, v``."""

    a: tuple
    b: tuple

    def __post_init__(self):
        _check_vector(self.a)
        _check_vector(self.b)


@dataclass(frozen=True)
class ParametricPair:
    """Line over ``z`` is spanned by the points ``P(z)`` and ``Q(z)``."""

    P: tuple
    Q: tuple

    def __post_init__(self):
        _check_vector(self.P)
        _check_vector(self.Q)


def _check_vector(vec):
    if len(vec) != 4 or any(not isinstance(c, MultiPoly) or c.nvars != 2 for c in vec):
        raise ValueError("expected four polynomials in u, v")


def _embed(p: MultiPoly) -> MultiPoly:
    # polynomial in (u, v) -> polynomial in (u, v, s, t)
    return MultiPoly(p.domain, 4, {e + (0, 0): c for e, c in p.terms.items()}, clean=True)


def cross(v1, v2, v3):
    """Vector orthogonal to three vectors of length 4 (signed 3x3 minors)."""
    rows = [v1, v2, v3]
    out = []
    for j in range(4):
        cols = [c for c in range(4) if c != j]
        m = _det3([[rows[i][c] for c in cols] for i in range(3)])
        out.append(m if j % 2 == 0 else -m)
    return tuple(out)


def _det3(M):
    a, b, c = M
    return (
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
    )


def _unit(F, k):
    return tuple(MultiPoly.constant(F, 2, F.one if i == k else F.zero) for i in range(4))


def _rank2(v, w, point) -> bool:
    vv = [c.evaluate(point) for c in v]
    ww = [c.evaluate(point) for c in w]
    return any(vv[i] * ww[j] - vv[j] * ww[i] != 0 for i in range(4) for j in range(i + 1, 4))


def _complement(x, y, point):
    """Two of the vectors ``cross(x, y, e_k)`` independent at ``point``."""
    F = x[0].domain
    cands = [cross(x, y, _unit(F, k)) for k in range(4)]
    for v, w in itertools.combinations(cands, 2):
        if _rank2(v, w, point):
            return v, w
    raise DegenerateLine("the two vectors are dependent at the given parameters")


def _generic_point(fam, seed=0):
    rng = random.Random(seed)
    return [Fraction(rng.randrange(-97, 98), rng.randrange(1, 13)) for _ in range(2)]


def dual_vectors(fam, z=None):
    """Planes ``(a, b)`` containing the lines, as polynomials in ``u, v``."""
    if isinstance(fam, DualPair):
        return fam.a, fam.b
    return _complement(fam.P, fam.Q, list(z) if z is not None else _generic_point(fam))


def parametric_vectors(fam, z=None):
    """Points ``(P, Q)`` spanning the lines, as polynomials in ``u, v``."""
    if isinstance(fam, ParametricPair):
        return fam.P, fam.Q
    return _complement(fam.a, fam.b, list(z) if z is not None else _generic_point(fam))


def focal_polynomial(fam, z=None) -> MultiPoly:
    """The focal determinant restricted to the lines, in ``QQ[u, v, s, t]``.

    The basis of each line and, for parametric input, the pair of planes are
    chosen to be independent at ``z`` (default: a fixed generic point).
    """
    a, b = dual_vectors(fam, z)
    P, Q = parametric_vectors(fam, z)
    F = a[0].domain
    s = MultiPoly.var(F, 4, S)
    t = MultiPoly.var(F, 4, T)
    x = [s * _embed(p) + t * _embed(q) for p, q in zip(P, Q)]

    def dot(vec, var):
        acc = MultiPoly.zero(F, 4)
        for c, xi in zip(vec, x):
            d = c.diff(var)
            if not d.is_zero():
                acc = acc + _embed(d) * xi
        return acc

    return dot(a, 0) * dot(b, 1) - dot(a, 1) * dot(b, 0)


def parametric_focal_polynomial(fam, z=None) -> MultiPoly:
    """``det[P, Q, s P_u + t Q_u, s P_v + t Q_v]`` in ``QQ[u, v, s, t]``."""
    P, Q = parametric_vectors(fam, z)
    F = P[0].domain
    s = MultiPoly.var(F, 4, S)
    t = MultiPoly.var(F, 4, T)
    cols = [
        [_embed(p) for p in P],
        [_embed(q) for q in Q],
        [s * _embed(p.diff(0)) + t * _embed(q.diff(0)) for p, q in zip(P, Q)],
        [s * _embed(p.diff(1)) + t * _embed(q.diff(1)) for p, q in zip(P, Q)],
    ]
    return _det4_poly([[cols[j][i] for j in range(4)] for i in range(4)])


def _det4_poly(M):
    total = None
    for perm in itertools.permutations(range(4)):
        sign = _perm_sign(perm)
        term = M[0][perm[0]] * M[1][perm[1]] * M[2][perm[2]] * M[3][perm[3]]
        if term.is_zero():
            continue
        total = (term if sign > 0 else -term) if total is None else (total + term if sign > 0 else total - term)
    return total if total is not None else MultiPoly.zero(M[0][0].domain, M[0][0].nvars)


def _perm_sign(perm):
    sign = 1
    p = list(perm)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def _binary_coeffs(poly: MultiPoly, z, degree: int):
    # coefficients of s^(degree-k) t^k, k = 0..degree, after setting (u, v) = z
    F = poly.domain
    out = [F.zero] * (degree + 1)
    for e, c in poly.terms.items():
        if e[S] + e[T] != degree:
            raise ValueError("not homogeneous in s, t")
        val = F.mul(c, F.mul(F.pow(F.convert(z[0]), e[U]), F.pow(F.convert(z[1]), e[V])))
        out[e[T]] = F.add(out[e[T]], val)
    return out


@dataclass(frozen=True)
class FocalForm:
    """``F(s, t) = c0 s^2 + c1 s t + c2 t^2`` on the line over ``z``.

    ``P`` and ``Q`` are the points with line coordinates ``(1, 0)`` and ``(0, 1)``.
    """

    z: tuple
    P: tuple
    Q: tuple
    coeffs: tuple

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    @property
    def degree(self) -> int:
        return -1 if self.is_zero else 2

    @property
    def discriminant(self):
        c0, c1, c2 = self.coeffs
        return c1 * c1 - 4 * c0 * c2

    @property
    def root_structure(self) -> str:
        if self.is_zero:
            return "zero"
        return "double" if self.discriminant == 0 else "distinct"

    def __call__(self, s, t):
        c0, c1, c2 = self.coeffs
        return c0 * s * s + c1 * s * t + c2 * t * t

    def to_json(self):
        return {
            "z": [str(c) for c in self.z],
            "P": [str(c) for c in self.P],
            "Q": [str(c) for c in self.Q],
            "coeffs": [str(c) for c in self.coeffs],
            "root_structure": self.root_structure,
        }


def focal_form(fam, z) -> FocalForm:
    """The focal quadratic on the line over the parameter point ``z = (u, v)``.

    Examples
    --------
    >>> from branchcurve.parsing import parse_polynomial as pp
    >>> fam = ParametricPair(tuple(pp(c, ("u", "v")) for c in "1 u v u*v".split()),
    ...                      tuple(pp(c, ("u", "v")) for c in "0 1 1 u+v".split()))
    >>> focal_form(fam, (2, 3))(1, 0)
    Fraction(0, 1)
    """
    z = tuple(QQ.convert(c) if isinstance(c, (int, Fraction)) else c for c in z)
    a, b = dual_vectors(fam, z)
    if not _rank2(a, b, list(z)):
        raise DegenerateLine("the two planes coincide at z")
    P, Q = parametric_vectors(fam, z)
    if not _rank2(P, Q, list(z)):
        raise DegenerateLine("the two points coincide at z")
    poly = focal_polynomial(fam, z)
    coeffs = tuple(_binary_coeffs(poly, z, 2)) if not poly.is_zero() else (QQ.zero,) * 3
    return FocalForm(z, tuple(c.evaluate(list(z)) for c in P), tuple(c.evaluate(list(z)) for c in Q), coeffs)


@dataclass(frozen=True)
class Focus:
    """A focus with line coordinates ``(s, t)`` and its point ``s P + t Q``.

    When ``radicand`` is set the coordinates live in ``QQ(sqrt(radicand))``
    and every entry is a pair ``(rational part, coefficient of the root)``.
    """

    s: object
    t: object
    point: tuple
    multiplicity: int
    radicand: Fraction | None = None

    def to_json(self):
        def enc(x):
            return [str(x[0]), str(x[1])] if self.radicand is not None else str(x)

        out = {
            "st": [enc(self.s), enc(self.t)],
            "point": [enc(c) for c in self.point],
            "multiplicity": self.multiplicity,
        }
        if self.radicand is not None:
            out["sqrt_of"] = str(self.radicand)
        return out


def _rational_sqrt(q: Fraction):
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _normalize_st(s, t):
    if t != 0:
        return s / t, Fraction(1)
    return Fraction(1), Fraction(0)


def foci(fam, z) -> list[Focus]:
    """Roots of the focal quadratic on the line over ``z``, with multiplicities.

    Raises :class:`NotFilling` when the focal form vanishes identically.
    """
    form = focal_form(fam, z)
    if form.is_zero:
        raise NotFilling("focal form vanishes identically on this line")
    c0, c1, c2 = form.coeffs
    P, Q = form.P, form.Q

    def point(s, t):
        return tuple(s * p + t * q for p, q in zip(P, Q))

    out = []
    if c0 == 0:
        # t divides F
        roots = [((Fraction(1), Fraction(0)), None)]
        if c1 == 0:
            return [Focus(Fraction(1), Fraction(0), point(1, 0), 2)]
        roots.append(((-c2 / c1, Fraction(1)), None))
        for (s, t), _ in roots:
            s, t = _normalize_st(s, t)
            out.append(Focus(s, t, point(s, t), 1))
        return out
    disc = form.discriminant
    if disc == 0:
        s = -c1 / (2 * c0)
        return [Focus(s, Fraction(1), point(s, 1), 2)]
    r = _rational_sqrt(disc)
    if r is not None:
        for sign in (1, -1):
            s = (-c1 + sign * r) / (2 * c0)
            out.append(Focus(s, Fraction(1), point(s, 1), 1))
        return out
    # conjugate pair over QQ(sqrt(disc)): s = (-c1 +- sqrt(disc)) / (2 c0)
    for sign in (1, -1):
        s = (-c1 / (2 * c0), sign / (2 * c0))
        t = (Fraction(1), Fraction(0))
        pt = tuple((s[0] * p + q, s[1] * p) for p, q in zip(P, Q))
        out.append(Focus(s, t, pt, 1, disc))
    return out


# -- contact with a surface ---------------------------------------------------------


def restrict_surface(f: MultiPoly, fam) -> MultiPoly:
    """``f(s P(u, v) + t Q(u, v))`` in ``QQ[u, v, s, t]``."""
    P, Q = parametric_vectors(fam)
    F = f.domain
    s = MultiPoly.var(F, 4, S)
    t = MultiPoly.var(F, 4, T)
    images = [s * _embed(p) + t * _embed(q) for p, q in zip(P, Q)]
    return f.substitute(images)


def contact_order(f: MultiPoly, fam, z, contact=(1, 0)) -> int:
    """Contact order of the line over ``z`` with ``V(f)`` at the given line point.

    The restriction of ``f`` to the line is a binary form; the result is the
    multiplicity of the root ``contact`` (default ``(1, 0)``, the point
    ``P(z)``) minus one.
    """
    P, Q = parametric_vectors(fam, z)
    zz = [QQ.convert(c) for c in z]
    Pz = [c.evaluate(zz) for c in P]
    Qz = [c.evaluate(zz) for c in Q]
    F = f.domain
    s = MultiPoly.var(F, 2, 0)
    t = MultiPoly.var(F, 2, 1)
    g = f.substitute([s.scale(p) + t.scale(q) for p, q in zip(Pz, Qz)])
    if g.is_zero():
        raise LineInSurface("the line lies on the surface")
    s0, t0 = (QQ.convert(c) for c in contact)
    # multiplicity of (s0 : t0): change coordinates so that it becomes (1 : 0)
    if s0 != 0:
        images = [s.scale(s0), s.scale(t0) + t]
    else:
        images = [t, s.scale(t0)]
    h = g.substitute(images)
    if h.is_zero():
        raise LineInSurface("the line lies on the surface")
    order = min(e[1] for e in h.terms)
    if order == 0:
        raise ValueError("the contact point is not on the surface")
    return order - 1


def is_filling(fam, seed: int = 0, trials: int = 2) -> bool:
    """Whether ``(s, t, u, v) -> s P + t Q`` has rank 4 at a random point.

    Evaluated modulo a random prime near 2^31; ``True`` is certain, ``False``
    is wrong with probability at most ``deg / p`` per trial.
    """
    rng = random.Random(seed)
    P, Q = parametric_vectors(fam)
    for _ in range(trials):
        p = random_prime(rng)
        F = PrimeField(p, check=False)
        try:
            pt = [F.random(rng) for _ in range(2)]
            st = [F.random(rng) for _ in range(2)]
            rows = []
            for p_i, q_i in zip(P, Q):
                pp, qq = p_i.change_domain(F), q_i.change_domain(F)
                rows.append([
                    pp.evaluate(pt),
                    qq.evaluate(pt),
                    F.add(F.mul(st[0], pp.diff(0).evaluate(pt)), F.mul(st[1], qq.diff(0).evaluate(pt))),
                    F.add(F.mul(st[0], pp.diff(1).evaluate(pt)), F.mul(st[1], qq.diff(1).evaluate(pt))),
                ])
        except ZeroDivisionError:
            continue
        if mat_det(F, rows) != 0:
            return True
    return False
