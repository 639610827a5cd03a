"""Elimination: resultants, discriminants, gcds, factoring and bivariate solving.

Resultants of multivariate inputs go through the subresultant PRS (Collins,
Brown-Traub), with the Sylvester determinant (fraction-free Bareiss
elimination) kept as an independent path for small cases.  Bivariate systems
over a prime field are solved by shearing, eliminating one variable by
evaluation and interpolation, factoring the eliminant, and lifting each
irreducible factor to a point over the residue field it defines.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from . import upoly
from .errors import (
    DomainMismatch,
    PositiveDimensionalIntersection,
    ShearBudgetExhausted,
    ZeroInput,
    ZeroLeadingCoefficient,
)
from .fields import ExtensionField, PrimeField
from .polyring import MultiPoly

__all__ = [
    "UnivariateView",
    "FactoredUnivariate",
    "PointOrbit",
    "resultant",
    "sylvester_resultant",
    "discriminant",
    "gcd",
    "squarefree_part",
    "squarefree_decomposition",
    "solve_projective_plane",
    "factor_univariate",
    "solve_bivariate",
    "solve_system",
]


@dataclass(frozen=True)
class UnivariateView:
    """A polynomial seen as univariate in ``main_var``.

    ``coefficients[k]`` multiplies ``x_main^k`` and does not involve the main
    variable; it lives in the same ring as ``base``.
    """

    base: MultiPoly
    main_var: int
    coefficients: tuple

    @classmethod
    def of(cls, p: MultiPoly, main_var: int) -> "UnivariateView":
        if p.is_zero():
            raise ZeroInput("zero polynomial has no univariate view")
        return cls(p, main_var, tuple(p.coefficients_in(main_var)))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading_coefficient(self) -> MultiPoly:
        return self.coefficients[-1]

    def reassemble(self) -> MultiPoly:
        return MultiPoly.from_coefficients(list(self.coefficients), self.main_var)


def _view(p, var):
    if isinstance(p, UnivariateView):
        return p
    return UnivariateView.of(p, var)


# -- resultants ----------------------------------------------------------------


def _lc(A):
    return A[-1]


def _trim(A):
    while A and A[-1].is_zero():
        A.pop()
    return A


def _prem(A, B):
    """Pseudo-remainder of coefficient lists (low-to-high)."""
    R = list(A)
    db = len(B) - 1
    lb = B[-1]
    e = len(A) - len(B) + 1
    while len(R) - 1 >= db and R:
        c = R[-1]
        shift = len(R) - 1 - db
        R = [r * lb for r in R]
        for j, b in enumerate(B):
            R[shift + j] = R[shift + j] - c * b
        R.pop()
        _trim(R)
        e -= 1
    if e > 0 and R:
        f = lb**e
        R = [r * f for r in R]
    return R


def _subresultant_res(A, B):
    zero = A[0] * 0
    one = zero + 1
    m, n = len(A) - 1, len(B) - 1
    s = 1
    if m < n:
        A, B = B, A
        if m % 2 and n % 2:
            s = -1
        m, n = n, m
    if n == 0:
        return (B[0] ** m) * s
    g = one
    h = one
    while True:
        delta = len(A) - len(B)
        if (len(A) - 1) % 2 and (len(B) - 1) % 2:
            s = -s
        R = _prem(A, B)
        if not R:
            return zero
        A = B
        div = g * h**delta
        B = [r.divexact(div) for r in R]
        g = _lc(A)
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = (g**delta).divexact(h ** (delta - 1))
        if len(B) == 1:
            dA = len(A) - 1
            lb = B[0]
            if dA == 0:
                res = one
            elif dA == 1:
                res = lb
            else:
                res = (lb**dA).divexact(h ** (dA - 1))
            return res * s


def resultant(p, q, var: int | None = None) -> MultiPoly:
    """Resultant of ``p`` and ``q`` with respect to ``var`` (subresultant PRS)."""
    A = _view(p, var)
    B = _view(q, var if var is not None else A.main_var)
    if A.main_var != B.main_var:
        raise DomainMismatch("resultant operands use different main variables")
    A.base._check(B.base)
    return _subresultant_res(list(A.coefficients), list(B.coefficients))


def sylvester_matrix(A, B):
    m, n = len(A) - 1, len(B) - 1
    zero = A[0] * 0
    size = m + n
    rows = []
    for i in range(n):
        row = [zero] * size
        for j, c in enumerate(reversed(A)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for j, c in enumerate(reversed(B)):
            row[i + j] = c
        rows.append(row)
    return rows


def bareiss_det(M):
    """Fraction-free determinant of a square matrix of ``MultiPoly`` entries."""
    n = len(M)
    M = [list(r) for r in M]
    sign = 1
    prev = None
    for k in range(n - 1):
        if M[k][k].is_zero():
            piv = next((r for r in range(k + 1, n) if not M[r][k].is_zero()), None)
            if piv is None:
                return M[0][0] * 0
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                v = M[k][k] * M[i][j] - M[i][k] * M[k][j]
                M[i][j] = v if prev is None else v.divexact(prev)
        prev = M[k][k]
    return M[n - 1][n - 1] * sign


def sylvester_resultant(p, q, var: int | None = None) -> MultiPoly:
    """Resultant as the determinant of the Sylvester matrix (cross-check path)."""
    A = _view(p, var)
    B = _view(q, var if var is not None else A.main_var)
    A.base._check(B.base)
    Ac, Bc = list(A.coefficients), list(B.coefficients)
    if len(Ac) == 1 and len(Bc) == 1:
        return Ac[0] * 0 + 1
    return bareiss_det(sylvester_matrix(Ac, Bc))


def discriminant(p, var: int | None = None) -> MultiPoly:
    """``(-1)^(n(n-1)/2) Res(p, dp/dx) / lc(p)`` with respect to ``var``."""
    A = _view(p, var)
    n = A.degree
    if n < 1:
        raise ValueError("discriminant needs degree >= 1 in the main variable")
    lc = A.leading_coefficient
    if lc.is_zero():
        raise ZeroLeadingCoefficient("leading coefficient vanishes")
    coeffs = list(A.coefficients)
    dcoeffs = [c * k for k, c in enumerate(coeffs)][1:]
    _trim(dcoeffs)
    if not dcoeffs:
        raise ZeroLeadingCoefficient("derivative vanishes identically (characteristic divides degree)")
    if n == 1:
        return lc * 0 + 1
    R = _subresultant_res(coeffs, dcoeffs)
    D = R.divexact(lc)
    if (n * (n - 1) // 2) % 2:
        D = -D
    return D


# -- gcd and squarefree part ---------------------------------------------------


def _normalize(p: MultiPoly) -> MultiPoly:
    return p.monic() if p else p


def gcd(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Monic (leading grevlex coefficient 1) gcd over a field.

    Univariate inputs use the Euclidean algorithm; multivariate inputs recurse
    on content and primitive part with respect to the highest variable.
    """
    p._check(q)
    if p.is_zero():
        return _normalize(q)
    if q.is_zero():
        return _normalize(p)
    vs = sorted(set(p.variables()) | set(q.variables()))
    if not vs:
        return MultiPoly.one(p.domain, p.nvars)
    if len(vs) == 1:
        x = vs[0]
        F = p.domain
        g = upoly.gcd(F, _dense(p, x), _dense(q, x))
        return MultiPoly.from_univariate(F, g, p.nvars, x)
    x = vs[-1]
    if p.degree_in(x) == 0:
        return gcd(p, _content(q, x))
    if q.degree_in(x) == 0:
        return gcd(q, _content(p, x))
    cp, cq = _content(p, x), _content(q, x)
    A = [c.divexact(cp) for c in p.coefficients_in(x)]
    B = [c.divexact(cq) for c in q.coefficients_in(x)]
    if len(A) < len(B):
        A, B = B, A
    while True:
        R = _prem(A, B)
        if not R:
            break
        if len(R) == 1:
            B = [B[0] * 0 + 1]
            break
        A, B = B, _primitive(R)
    c = gcd(cp, cq)
    g = MultiPoly.from_coefficients(_primitive(B), x)
    return _normalize(c * g)


def _dense(p, x):
    F = p.domain
    out = [F.zero] * (p.degree_in(x) + 1)
    for e, c in p.terms.items():
        out[e[x]] = c
    return upoly.strip(F, out)


def _content(p, x):
    g = None
    for c in p.coefficients_in(x):
        if c.is_zero():
            continue
        g = c if g is None else gcd(g, c)
        if g.is_constant():
            return MultiPoly.one(p.domain, p.nvars)
    return _normalize(g)


def _primitive(coeffs):
    g = None
    for c in coeffs:
        if c.is_zero():
            continue
        g = c if g is None else gcd(g, c)
        if g.is_constant():
            break
    return [c.divexact(g) for c in coeffs]


def squarefree_part(p: MultiPoly) -> MultiPoly:
    """``p / gcd(p, dp/dx_1, ..., dp/dx_n)``, normalized.

    Valid in characteristic zero or above the degree of ``p``.
    """
    if p.is_zero():
        return p
    g = p
    for i in p.variables():
        g = gcd(g, p.partial_derivative(i))
        if g.is_constant():
            break
    return _normalize(p.divexact(g))


def squarefree_decomposition(p: MultiPoly):
    """``[(g_1, 1), (g_2, 2), ...]`` with ``p = c * prod g_i^i`` and each ``g_i`` squarefree.

    Entries with constant ``g_i`` are omitted.  Same characteristic caveat as
    :func:`squarefree_part`.
    """
    layers = []
    cur = p
    while not cur.is_constant():
        s = squarefree_part(cur)
        layers.append(s)
        cur = cur.divexact(s)
    out = []
    for i, s in enumerate(layers):
        g = s.divexact(layers[i + 1]) if i + 1 < len(layers) else s
        if not g.is_constant():
            out.append((_normalize(g), i + 1))
    return out


# -- univariate factoring ------------------------------------------------------


@dataclass(frozen=True)
class FactoredUnivariate:
    domain: object
    unit: object
    factors: tuple  # ((dense monic irreducible, multiplicity), ...)
    var: int | None = None
    nvars: int | None = None

    def expand(self):
        F = self.domain
        out = [self.unit]
        for g, e in self.factors:
            for _ in range(e):
                out = upoly.mul(F, out, g)
        return out

    @property
    def multiplicities(self) -> list[int]:
        return sorted((e for _, e in self.factors), reverse=True)

    def as_polys(self) -> list[tuple[MultiPoly, int]]:
        if self.var is None:
            raise ValueError("factorization was built from a dense list")
        return [
            (MultiPoly.from_univariate(self.domain, g, self.nvars, self.var), e)
            for g, e in self.factors
        ]


def factor_univariate(p, rng: random.Random | None = None, domain=None) -> FactoredUnivariate:
    """Complete factorization of a univariate polynomial over a finite field.

    ``p`` may be a ``MultiPoly`` in at most one variable or a dense list over
    ``domain``.
    """
    if isinstance(p, MultiPoly):
        F = p.domain
        vs = p.variables()
        if len(vs) > 1:
            raise ValueError("factor_univariate needs a univariate polynomial")
        x = vs[0] if vs else 0
        dense = _dense(p, x)
        var, nvars = x, p.nvars
    else:
        F = domain
        dense = upoly.strip(F, list(p))
        var = nvars = None
    if not getattr(F, "is_finite", False):
        raise DomainMismatch("factor_univariate needs a finite-field domain")
    if not dense:
        raise ZeroInput("cannot factor the zero polynomial")
    unit, facs = upoly.factor(F, dense, rng)
    return FactoredUnivariate(F, unit, tuple((tuple(g), e) for g, e in facs), var, nvars)


# -- bivariate solving ---------------------------------------------------------


@dataclass(frozen=True)
class PointOrbit:
    """One Galois orbit of common zeros.

    ``coords`` are elements of ``field`` = GF(p)[t]/(minpoly); the orbit has
    ``degree`` conjugate points.  ``multiplicity`` is the multiplicity of the
    orbit's factor in the (sheared) eliminant.
    """

    field: ExtensionField
    coords: tuple
    degree: int
    multiplicity: int
    shear: int = field(default=0, compare=False)

    def conjugates(self):
        """All ``degree`` conjugate points, as coordinate tuples over ``field``."""
        pts = [self.coords]
        K = self.field
        cur = self.coords
        for _ in range(self.degree - 1):
            cur = tuple(K.frobenius(c) for c in cur)
            pts.append(cur)
        return pts


class _ShearFailure(Exception):
    pass


class _NotSeparated(_ShearFailure):
    """Some fibre of the sheared projection holds more than one orbit."""


def _bivariate_dense(p: MultiPoly, c: int):
    """Return ``P(u, y) = p(u - c*y, y)`` as a list (by y-degree) of dense u-polys."""
    F = p.domain
    u, y = MultiPoly.gens(F, 2)
    P = p.substitute([u - y * c, y]) if c else p
    dy = P.degree_in(1)
    out = [[] for _ in range(dy + 1)]
    for k, coeff in enumerate(P.coefficients_in(1)):
        out[k] = _dense(coeff, 0)
    return out, P


def _eval_coeffs(F, cols, u0):
    p = F.p
    vals = []
    for col in cols:
        acc = 0
        for a in reversed(col):
            acc = (acc * u0 + a) % p
        vals.append(acc)
    while vals and vals[-1] == 0:
        vals.pop()
    return vals


def _resultant_in_u(F, Pc, Qc, P, Q, rng):
    """``Res_y(P, Q)`` as a dense polynomial in ``u``; ``P`` has constant lc in y."""
    m, n = len(Pc) - 1, len(Qc) - 1
    bound = P.degree() * Q.degree()
    if F.p <= bound + 1:
        R = resultant(P, Q, 1)
        return _dense(R, 0) if R else []
    lcP = Pc[-1][0]
    xs, ys = [], []
    u0 = 0
    while len(xs) < bound + 1:
        a = _eval_coeffs(F, Pc, u0)
        b = _eval_coeffs(F, Qc, u0)
        if not b:
            r = 0
        else:
            r = upoly.resultant(F, a, b)
            r = r * pow(lcP, n - (len(b) - 1), F.p) % F.p
        xs.append(u0)
        ys.append(r)
        u0 += 1
    return upoly.interpolate(F, xs, ys)


def _admissible(P: MultiPoly):
    # constant nonzero leading coefficient in y, of full degree
    d = P.degree()
    return d >= 0 and P.degree_in(1) == d


def _shear_candidates(p: int, rng: random.Random, budget: int):
    if p <= 64:
        cs = list(range(p))
        rng.shuffle(cs)
        cs.remove(0)
        return [0] + cs
    return [0] + [rng.randrange(1, p) for _ in range(budget - 1)]


def solve_system(
    polys: Sequence[MultiPoly],
    seed: int = 0,
    shear_budget: int = 16,
):
    """All common zeros in the affine plane of bivariate polynomials over GF(p).

    Returns a list of :class:`PointOrbit`, one per Galois orbit.  Multiplicity
    is read from the eliminant built from the first admissible polynomial.
    """
    polys = [q for q in polys]
    if not polys:
        raise ZeroInput("empty system")
    F = polys[0].domain
    if not isinstance(F, PrimeField) or any(q.nvars != 2 for q in polys):
        raise DomainMismatch("solve_system expects bivariate polynomials over a prime field")
    for q in polys[1:]:
        polys[0]._check(q)
    nonzero = [q for q in polys if not q.is_zero()]
    if any(q.is_constant() for q in nonzero):
        return []
    if len(nonzero) <= 1:
        raise PositiveDimensionalIntersection("fewer than two nonzero equations")
    rng = random.Random(seed)
    fallback = None
    for c in _shear_candidates(F.p, rng, shear_budget):
        try:
            return _solve_with_shear(F, nonzero, c, rng)
        except _NotSeparated:
            fallback = c if fallback is None else fallback
        except _ShearFailure:
            continue
    if fallback is not None:
        # small fields may have no separating shear at all: split the fibres
        return _solve_with_shear(F, nonzero, fallback, rng, split_fibres=True)
    raise ShearBudgetExhausted("no admissible shear found")


def solve_bivariate(p: MultiPoly, q: MultiPoly, seed: int = 0, shear_budget: int = 16):
    """Common zeros of two bivariate polynomials; see :func:`solve_system`."""
    return solve_system([p, q], seed=seed, shear_budget=shear_budget)


def _solve_with_shear(F, polys, c, rng, split_fibres=False):
    sheared = [_bivariate_dense(q, c) for q in polys]
    lead = next((i for i, (_, P) in enumerate(sheared) if _admissible(P)), None)
    if lead is None:
        raise _ShearFailure
    Pc, P = sheared[lead]
    rest = [q for i, q in enumerate(polys) if i != lead]
    if len(rest) >= 2:
        # two random combinations of the remaining equations cut out the same
        # points on the lead curve, but no longer share a stray component with it
        combos = []
        for _ in range(2):
            acc = MultiPoly.zero(F, 2)
            for q in rest:
                acc = acc + q.scale(F.random(rng) or 1)
            combos.append(acc)
        others = [_bivariate_dense(q, c) for q in combos]
    else:
        others = [s for i, s in enumerate(sheared) if i != lead]
    R = None
    first = True
    for Qc, Q in others:
        r = _resultant_in_u(F, Pc, Qc, P, Q, rng)
        if not r:
            raise PositiveDimensionalIntersection("eliminant vanishes identically")
        R = r if first else upoly.gcd(F, R, r)
        first = False
        if len(R) == 1:
            return []
    if len(R) <= 1:
        return []
    _, facs = upoly.factor(F, R, rng)
    orbits = []
    all_cols = [s[0] for s in sheared]
    for h, mult in facs:
        K = ExtensionField(F.p, tuple(h), check=False)
        cols_K = [[_reduce_to_field(F, K, h, col) for col in cols] for cols in all_cols]
        G = None
        for cols in cols_K:
            g = upoly.strip(K, list(cols))
            G = g if G is None else upoly.gcd(K, G, g)
        if not G or len(G) == 1:
            continue
        G = upoly.sqf_part(K, G)
        if len(G) == 2:
            fibre = [(K, K.gen, K.neg(K.div(G[0], G[1])))]
        elif split_fibres:
            fibre = _split_fibre(F, K, h, G, rng)
        else:
            raise _NotSeparated
        for L, u0, y0 in fibre:
            x0 = L.sub(u0, L.scale(c, y0))
            for q in polys:
                if not L.is_zero(q.evaluate([x0, y0], domain=L)):
                    raise ArithmeticError("lifted point does not satisfy the system")
            orbits.append(PointOrbit(L, (x0, y0), L.degree, mult, shear=c))
    return orbits


def _split_fibre(F, K, h, G, rng):
    """Orbits over the fibre ``u = root of h`` where ``G(y)`` has several roots.

    Each irreducible factor of ``G`` over ``K`` of degree ``e`` gives one orbit
    whose residue field has degree ``deg(h) * e`` over GF(p); a point is
    written over a fresh simple extension of that degree, into which ``K`` is
    embedded by a root of ``h``.  All orbits of the fibre share the
    multiplicity of ``h`` in the eliminant.
    """
    from .fields import extension

    out = []
    _, facs = upoly.factor(K, G, rng)
    k = K.degree
    for g, _e in facs:
        e = len(g) - 1
        if e == 1:
            out.append((K, K.gen, K.neg(g[0])))
            continue
        L = extension(F.p, k * e, rng)
        alpha = upoly.roots(L, [L.embed(a) for a in h], rng)[0]
        powers = [L.one]
        for _ in range(k - 1):
            powers.append(L.mul(powers[-1], alpha))

        def to_L(a):
            acc = L.zero
            for ai, pw in zip(a, powers):
                if ai:
                    acc = L.add(acc, L.scale(ai, pw))
            return acc

        y0 = upoly.roots(L, [to_L(a) for a in g], rng)[0]
        out.append((L, alpha, y0))
    return out


def _reduce_to_field(F, K, h, col):
    r = upoly.rem(F, col, list(h)) if len(col) >= len(h) else list(col)
    return K.convert(tuple(r))


def count_rational_points(orbits, k: int) -> int:
    """Number of GF(p^k)-rational points represented by the orbits."""
    return sum(o.degree for o in orbits if k % o.degree == 0)


# -- projective plane ------------------------------------------------------------


@dataclass(frozen=True)
class PlanePoint:
    """A Galois orbit of points of P^2; ``coords`` has its last nonzero entry 1."""

    field: ExtensionField
    coords: tuple
    degree: int
    multiplicity: int = 1

    def to_json(self):
        K = self.field
        return {
            "field": K.describe(),
            "coords": [K.to_json(c) for c in self.coords],
            "degree": self.degree,
        }


def normalize_projective(K, coords):
    coords = list(coords)
    for c in reversed(coords):
        if not K.is_zero(c):
            inv = K.inv(c)
            return tuple(K.mul(inv, x) for x in coords)
    raise ValueError("zero vector is not a projective point")


def dehomogenize(P: MultiPoly, i: int) -> MultiPoly:
    """Set variable ``i`` to 1 and drop it (returns a polynomial in nvars-1 variables)."""
    F = P.domain
    out: dict = {}
    for e, c in P.terms.items():
        ne = e[:i] + e[i + 1:]
        out[ne] = F.add(out[ne], c) if ne in out else c
    return MultiPoly(F, P.nvars - 1, {e: c for e, c in out.items() if c != F.zero}, clean=True)


def drop_variable(P: MultiPoly, i: int) -> MultiPoly:
    """Forget a variable that does not occur."""
    if P.degree_in(i) > 0:
        raise ValueError(f"variable {i} occurs in the polynomial")
    return MultiPoly(P.domain, P.nvars - 1, {e[:i] + e[i + 1:]: c for e, c in P.terms.items()}, clean=True)


def add_variables(P: MultiPoly, n: int) -> MultiPoly:
    """Embed into a ring with ``n`` extra trailing variables."""
    return MultiPoly(P.domain, P.nvars + n, {e + (0,) * n: c for e, c in P.terms.items()}, clean=True)


def random_invertible(F, n, rng):
    from .polyring import mat_det

    while True:
        M = [[F.random(rng) for _ in range(n)] for _ in range(n)]
        if not F.is_zero(mat_det(F, M)):
            return M


def solve_projective_plane(polys, seed: int = 0, method: str = "shear"):
    """Common zeros in P^2 of homogeneous polynomials in 3 variables over GF(p).

    ``method="charts"`` covers the chart ``x2 = 1``, then the line ``x2 = 0``
    through the chart ``x1 = 1``, then the point ``[1:0:0]``.  ``"shear"``
    (default) first applies a random invertible coordinate change so the
    points are in general position, then runs the same cover and maps back.
    """
    polys = [q for q in polys if not q.is_zero()]
    if not polys:
        raise PositiveDimensionalIntersection("all equations vanish")
    F = polys[0].domain
    if method == "charts":
        return _charts(polys, seed)
    if method != "shear":
        raise ValueError(f"unknown method {method!r}")
    rng = random.Random(seed)
    T = random_invertible(F, 3, rng)
    moved = [q.linear_substitute(T) for q in polys]
    out = []
    for pt in _charts(moved, rng.randrange(2**32)):
        K = pt.field
        back = [
            _dot_K(K, [K.embed(t) for t in row], pt.coords)
            for row in T
        ]
        out.append(PlanePoint(K, normalize_projective(K, back), pt.degree, pt.multiplicity))
    return out


def _dot_K(K, a, b):
    acc = K.zero
    for x, y in zip(a, b):
        acc = K.add(acc, K.mul(x, y))
    return acc


def _charts(polys, seed):
    F = polys[0].domain
    out = []
    affine = [dehomogenize(q, 2) for q in polys]
    if any(q.is_zero() for q in affine):
        raise PositiveDimensionalIntersection("an equation is divisible by x2^k and vanishes on the chart")
    if any(q.is_constant() for q in affine):
        affine_pts = []
    elif len(affine) == 1:
        raise PositiveDimensionalIntersection("a single equation defines a curve")
    else:
        affine_pts = solve_system(affine, seed=seed)
    for o in affine_pts:
        K = o.field
        out.append(PlanePoint(K, (o.coords[0], o.coords[1], K.one), o.degree, o.multiplicity))
    # line x2 = 0, chart x1 = 1
    G = None
    for q in polys:
        line = _restrict_line(q)
        G = line if G is None else upoly.gcd(F, G, line)
    if G is not None and not G:
        raise PositiveDimensionalIntersection("the line x2 = 0 is a common component")
    if G and len(G) > 1:
        _, facs = upoly.factor(F, G, random.Random(seed))
        for h, e in facs:
            K = ExtensionField(F.p, tuple(h), check=False)
            out.append(PlanePoint(K, (K.gen, K.one, K.zero), len(h) - 1, e))
    # the point [1:0:0]
    if all(q.evaluate([1, 0, 0]) == 0 for q in polys):
        K = ExtensionField(F.p, (0, 1), check=False)
        out.append(PlanePoint(K, (K.one, K.zero, K.zero), 1, 1))
    return out


def _restrict_line(q):
    # q(t, 1, 0) as a dense polynomial in t
    F = q.domain
    deg = q.degree()
    out = [F.zero] * (deg + 1)
    for e, c in q.terms.items():
        if e[2] == 0:
            out[e[0]] = F.add(out[e[0]], c)
    return upoly.strip(F, out)
