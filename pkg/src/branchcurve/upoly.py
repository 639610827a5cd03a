"""Dense univariate polynomials over a field domain.

Polynomials are lists of domain elements ordered low-to-high with no trailing
zeros; ``[]`` is the zero polynomial.  Every function takes the field first,
in the style ``op(F, f, g)``.  Over ``PrimeField`` the hot paths (products and
remainders) work directly on ints and switch to Kronecker substitution for
large operands.

Factorization follows the usual three stages: squarefree decomposition,
distinct-degree splitting and Cantor-Zassenhaus equal-degree splitting.  The
p-power Frobenius is applied through a precomputed matrix, which makes the
q-power map cheap over extension fields as well.
"""

from __future__ import annotations

import random

__all__ = [
    "strip",
    "degree",
    "add",
    "sub",
    "neg",
    "scale",
    "mul",
    "divmod_",
    "rem",
    "quo",
    "exquo",
    "monic",
    "gcd",
    "gcdex",
    "invmod",
    "powmod",
    "deriv",
    "evaluate",
    "resultant",
    "sqf_list",
    "sqf_part",
    "ddf",
    "edf",
    "factor",
    "is_irreducible",
    "roots",
    "interpolate",
]


def _prime(F):
    return F.degree == 1 and not isinstance(F.zero, tuple) and F.characteristic > 0


def strip(F, a):
    z = F.zero
    while a and a[-1] == z:
        a.pop()
    return a


def degree(a) -> int:
    return len(a) - 1


def add(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    if _prime(F):
        p = F.p
        out = [(x + y) % p for x, y in zip(a, b)] + a[len(b):]
    else:
        out = [F.add(x, y) for x, y in zip(a, b)] + a[len(b):]
    return strip(F, out)


def neg(F, a):
    return [F.neg(x) for x in a]


def sub(F, a, b):
    return add(F, a, neg(F, b))


def scale(F, c, a):
    if F.is_zero(c):
        return []
    if _prime(F):
        p = F.p
        return [c * x % p for x in a]
    return [F.mul(c, x) for x in a]


def _mul_p_school(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return [c % p for c in out]


def _mul_p(a, b, p):
    if not a or not b:
        return []
    if len(a) < 24 or len(b) < 24:
        return _mul_p_school(a, b, p)
    # Kronecker substitution: pack, multiply as integers, unpack
    n = len(a) + len(b) - 1
    w = (2 * p.bit_length() + min(len(a), len(b)).bit_length() + 8) // 8
    A = int.from_bytes(b"".join(c.to_bytes(w, "little") for c in a), "little")
    if a is b:
        C = A * A
    else:
        B = int.from_bytes(b"".join(c.to_bytes(w, "little") for c in b), "little")
        C = A * B
    cb = C.to_bytes(w * n, "little")
    return [int.from_bytes(cb[i * w:(i + 1) * w], "little") % p for i in range(n)]


def mul(F, a, b):
    if not a or not b:
        return []
    if _prime(F):
        return strip(F, _mul_p(a, b, F.p))
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if F.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return strip(F, out)


def _divmod_p(a, b, p):
    a = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - db, 0)
    bb = b[:-1]
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % p
        if c:
            c = c * inv % p
            q[i - db] = c
            off = i - db
            for j, y in enumerate(bb):
                a[off + j] -= c * y
    r = [x % p for x in a[:db]]
    while r and r[-1] == 0:
        r.pop()
    return q, r


def divmod_(F, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], list(a)
    if _prime(F):
        q, r = _divmod_p(a, b, F.p)
        return strip(F, q), r
    a = list(a)
    db = len(b) - 1
    inv = F.inv(b[-1])
    q = [F.zero] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if F.is_zero(c):
            continue
        c = F.mul(c, inv)
        q[i - db] = c
        off = i - db
        for j in range(db):
            if not F.is_zero(b[j]):
                a[off + j] = F.sub(a[off + j], F.mul(c, b[j]))
    return strip(F, q), strip(F, a[:db])


def rem(F, a, b):
    return divmod_(F, a, b)[1]


def quo(F, a, b):
    return divmod_(F, a, b)[0]


def exquo(F, a, b):
    q, r = divmod_(F, a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def monic(F, a):
    if not a:
        return []
    lc = a[-1]
    if F.is_one(lc):
        return list(a)
    return scale(F, F.inv(lc), a)


def gcd(F, a, b):
    """Monic gcd (``[]`` when both inputs vanish)."""
    while b:
        a, b = b, rem(F, a, b)
    return monic(F, a)


def gcdex(F, a, b):
    """``(s, t, g)`` with ``s*a + t*b = g`` and ``g`` monic."""
    r0, r1 = list(a), list(b)
    s0, s1 = [F.one], []
    t0, t1 = [], [F.one]
    while r1:
        q, r = divmod_(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(F, s0, mul(F, q, s1))
        t0, t1 = t1, sub(F, t0, mul(F, q, t1))
    if not r0:
        return [], [], []
    c = F.inv(r0[-1])
    return scale(F, c, s0), scale(F, c, t0), scale(F, c, r0)


def invmod(F, a, m):
    s, _, g = gcdex(F, a, m)
    if g != [F.one]:
        raise ZeroDivisionError("not invertible modulo m")
    return rem(F, s, m)


def mulmod(F, a, b, m):
    return rem(F, mul(F, a, b), m)


def powmod(F, a, n: int, m):
    """``a^n mod m``."""
    result = [F.one]
    a = rem(F, a, m)
    while n:
        if n & 1:
            result = mulmod(F, result, a, m)
        n >>= 1
        if n:
            a = mulmod(F, a, a, m)
    return rem(F, result, m)


def deriv(F, a):
    out = [F.mul(F.from_int(i), c) for i, c in enumerate(a)][1:]
    return strip(F, out)


def evaluate(F, a, x):
    acc = F.zero
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def resultant(F, a, b):
    """Resultant of two univariates over a field, by the Euclidean algorithm."""
    if not a or not b:
        return F.zero
    res = F.one
    while True:
        m, n = len(a) - 1, len(b) - 1
        if n == 0:
            return F.mul(res, F.pow(b[-1], m))
        r = rem(F, a, b)
        if not r:
            return F.zero
        res = F.mul(res, F.pow(b[-1], m - (len(r) - 1)))
        if (m * n) % 2:
            res = F.neg(res)
        a, b = b, r


def interpolate(F, xs, ys):
    """Newton interpolation through distinct nodes ``xs``."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            num = F.sub(coef[i], coef[i - 1])
            den = F.sub(xs[i], xs[i - j])
            coef[i] = F.div(num, den)
    poly = []
    for i in range(n - 1, -1, -1):
        # poly = poly * (x - xs[i]) + coef[i]
        shifted = [F.zero] + poly
        prod = add(F, shifted, scale(F, F.neg(xs[i]), poly)) if poly else []
        poly = add(F, prod, [coef[i]] if not F.is_zero(coef[i]) else [])
    return poly


# -- Frobenius machinery -----------------------------------------------------


def frobenius_matrix(F, g):
    """Rows ``x^(p*i) mod g`` for ``i < deg g``; ``p`` is the characteristic."""
    n = len(g) - 1
    xp = powmod(F, [F.zero, F.one], F.characteristic, g)
    rows = [[F.one]]
    for _ in range(1, n):
        rows.append(mulmod(F, rows[-1], xp, g))
    return rows


def frobenius_apply(F, a, Q):
    """``a^p mod g`` given ``Q = frobenius_matrix(F, g)``."""
    n = len(Q)
    if _prime(F):
        p = F.p
        out = [0] * n
        for ai, row in zip(a, Q):
            if ai:
                for j, c in enumerate(row):
                    out[j] += ai * c
        return strip(F, [c % p for c in out])
    out = [F.zero] * n
    for ai, row in zip(a, Q):
        if F.is_zero(ai):
            continue
        fa = F.frobenius(ai)
        for j, c in enumerate(row):
            out[j] = F.add(out[j], F.mul(fa, c))
    return strip(F, out)


def frobenius_q(F, a, Q):
    """``a^q mod g`` with ``q = |F|``."""
    for _ in range(F.degree):
        a = frobenius_apply(F, a, Q)
    return a


def _pth_root(F, c):
    # inverse of a -> a^p on GF(p^k) is a -> a^(p^(k-1))
    for _ in range(F.degree - 1):
        c = F.frobenius(c)
    return c


def sqf_list(F, f):
    """Squarefree decomposition over a finite field.

    Returns ``(lc, [(g_i, i), ...])`` with each ``g_i`` monic, squarefree,
    pairwise coprime and ``f = lc * prod g_i^i``.
    """
    if not f:
        return F.zero, []
    lc = f[-1]
    f = monic(F, f)
    p = F.characteristic
    result = []
    _sqf_rec(F, f, 1, p, result)
    merged = {}
    for g, e in result:
        key = e
        merged[key] = mul(F, merged[key], g) if key in merged else g
    out = sorted(((g, e) for e, g in merged.items() if len(g) > 1), key=lambda t: t[1])
    return lc, out


def _sqf_rec(F, f, mult, p, out):
    if len(f) <= 1:
        return
    df = deriv(F, f)
    if not df:
        # f = h(x^p)
        h = [_pth_root(F, f[i]) for i in range(0, len(f), p)]
        _sqf_rec(F, h, mult * p, p, out)
        return
    # Yun's algorithm restricted to exponents < p, then recurse on the p-th power part
    g = gcd(F, f, df)
    w = exquo(F, f, g)
    i = 1
    while len(w) > 1:
        y = gcd(F, w, g)
        z = exquo(F, w, y)
        if len(z) > 1:
            out.append((z, i * mult))
        i += 1
        w = y
        g = exquo(F, g, y)
    if len(g) > 1:
        h = [_pth_root(F, g[j]) for j in range(0, len(g), p)]
        _sqf_rec(F, h, mult * p, p, out)


def sqf_part(F, f):
    if not f:
        return []
    _, parts = sqf_list(F, f)
    out = [F.one]
    for g, _ in parts:
        out = mul(F, out, g)
    return out


def ddf(F, f, Q=None):
    """Distinct-degree factorization of a monic squarefree ``f``.

    Returns ``[(g_d, d), ...]`` where ``g_d`` is the product of the irreducible
    factors of degree ``d``.
    """
    out = []
    if len(f) <= 2:
        return [(f, 1)] if len(f) == 2 else []
    Q = Q or frobenius_matrix(F, f)
    x = [F.zero, F.one]
    h = x
    g = list(f)
    d = 0
    while 2 * (d + 1) <= len(g) - 1:
        d += 1
        h = frobenius_q(F, h, Q)
        h = rem(F, h, g) if len(h) >= len(g) else h
        c = gcd(F, g, sub(F, h, x))
        if len(c) > 1:
            out.append((c, d))
            g = exquo(F, g, c)
            h = rem(F, h, g)
    if len(g) > 1:
        out.append((g, len(g) - 1))
    return out


def edf(F, g, d, rng: random.Random, Q=None):
    """Split monic squarefree ``g`` whose irreducible factors all have degree ``d``."""
    n = len(g) - 1
    if n == d:
        return [g]
    p = F.characteristic
    Q = Q or frobenius_matrix(F, g)
    k = F.degree
    while True:
        a = strip(F, [F.random(rng) for _ in range(n)])
        if len(a) < 2:
            continue
        # norm to GF(p) of each component, then the quadratic character
        t = a
        cur = a
        for _ in range(k * d - 1):
            cur = frobenius_apply(F, cur, Q)
            t = mulmod(F, t, cur, g)
        b = powmod(F, t, (p - 1) // 2, g)
        c = gcd(F, g, sub(F, b, [F.one]))
        if 1 < len(c) < len(g):
            break
    other = exquo(F, g, c)
    Qc = [rem(F, row, c) for row in Q]
    Qo = [rem(F, row, other) for row in Q]
    return edf(F, c, d, rng, Qc) + edf(F, other, d, rng, Qo)


def factor(F, f, rng: random.Random | None = None):
    """Complete factorization: ``(lc, [(monic irreducible, multiplicity), ...])``.

    Factors are sorted by (degree, coefficients) so output is canonical.
    """
    rng = rng or random.Random(0x5EED)
    lc, parts = sqf_list(F, f)
    out = []
    for g, e in parts:
        for h, d in ddf(F, g):
            for irr in edf(F, h, d, rng):
                out.append((irr, e))
    out.sort(key=lambda t: (len(t[0]), _sort_key(F, t[0]), t[1]))
    return lc, out


def _sort_key(F, a):
    return [tuple(c) if isinstance(c, tuple) else (c,) for c in a]


def degree_pattern(F, f):
    """Multiset of irreducible-factor degrees of a squarefree ``f`` (DDF only)."""
    f = monic(F, f)
    pattern = []
    for g, d in ddf(F, f):
        pattern.extend([d] * ((len(g) - 1) // d))
    return sorted(pattern)


def is_irreducible(F, f) -> bool:
    """Ben-Or test."""
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    f = monic(F, f)
    Q = frobenius_matrix(F, f)
    x = [F.zero, F.one]
    h = x
    for _ in range(n // 2):
        h = frobenius_q(F, h, Q)
        if len(gcd(F, f, sub(F, h, x))) > 1:
            return False
    return True


def roots(F, f, rng: random.Random | None = None):
    """Distinct roots of ``f`` lying in ``F``."""
    rng = rng or random.Random(0x5EED)
    g = sqf_part(F, f)
    out = []
    if len(g) < 2:
        return out
    for h, d in ddf(F, g):
        if d == 1:
            for lin in edf(F, h, 1, rng):
                out.append(F.neg(lin[0]))
    return out


def residue_degrees(F, f):
    """Irreducible-factor degrees of a squarefree ``f``; quadratics use the square test."""
    f = monic(F, f)
    n = len(f) - 1
    if n <= 0:
        return []
    if n == 1:
        return [1]
    if n == 2 and F.characteristic != 2:
        b, c = f[1], f[0]
        disc = F.sub(F.mul(b, b), F.scale(4, c) if hasattr(F, "scale") else F.mul(F.convert(4), c))
        return [1, 1] if F.is_square(disc) else [2]
    return degree_pattern(F, f)
