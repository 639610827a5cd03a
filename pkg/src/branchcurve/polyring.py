"""Sparse multivariate polynomials over an exact coefficient domain.

A :class:`MultiPoly` is a map from exponent tuples to nonzero coefficients.
Values are treated as immutable: every operation returns a new polynomial.
Terms are reported in graded reverse lexicographic order, so two polynomials
are equal exactly when their term maps are equal.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DomainMismatch, SingularMatrix
from .fields import PrimeField

__all__ = [
    "MultiPoly",
    "grevlex_key",
    "mat_det",
    "mat_inv",
    "mat_mul",
    "mat_vec",
]

_SHIFT = 32
_MASK = (1 << _SHIFT) - 1


def grevlex_key(e: Sequence[int]):
    """Sort key; larger key means larger monomial in grevlex."""
    return (sum(e), tuple(-x for x in reversed(e)))


def _pack(e):
    k = 0
    for i, x in enumerate(e):
        k |= x << (_SHIFT * i)
    return k


def _unpack(k, n):
    return tuple((k >> (_SHIFT * i)) & _MASK for i in range(n))


class MultiPoly:
    __slots__ = ("domain", "nvars", "terms")

    def __init__(self, domain, nvars: int, terms: Mapping | None = None, *, clean: bool = False):
        self.domain = domain
        self.nvars = nvars
        if terms is None:
            self.terms = {}
        elif clean:
            self.terms = terms
        else:
            z = domain.zero
            out = {}
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
                c = domain.convert(c)
                if c != z:
                    out[e] = c
            self.terms = out

    # -- construction -------------------------------------------------------

    @classmethod
    def zero(cls, domain, nvars):
        return cls(domain, nvars, {}, clean=True)

    @classmethod
    def constant(cls, domain, nvars, c):
        return cls(domain, nvars, {(0,) * nvars: c})

    @classmethod
    def one(cls, domain, nvars):
        return cls.constant(domain, nvars, domain.one)

    @classmethod
    def var(cls, domain, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(domain, nvars, {tuple(e): domain.one}, clean=True)

    @classmethod
    def gens(cls, domain, nvars):
        return [cls.var(domain, nvars, i) for i in range(nvars)]

    @classmethod
    def monomial(cls, domain, e, c=None):
        e = tuple(e)
        return cls(domain, len(e), {e: domain.one if c is None else c})

    @classmethod
    def linear_form(cls, domain, coeffs):
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        return cls(domain, n, terms)

    def _new(self, terms):
        return MultiPoly(self.domain, self.nvars, terms, clean=True)

    def _check(self, other):
        if not isinstance(other, MultiPoly):
            raise DomainMismatch(f"expected MultiPoly, got {type(other).__name__}")
        if other.domain != self.domain or other.nvars != self.nvars:
            raise DomainMismatch(
                f"operands over {self.domain!r}/{self.nvars} vars and "
                f"{other.domain!r}/{other.nvars} vars"
            )

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.constant(self.domain, self.nvars, self.domain.convert(other))

    # -- basic queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return (
                self.nvars == other.nvars
                and self.domain == other.domain
                and self.terms == other.terms
            )
        if isinstance(other, (int, Fraction)):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_coefficient(self):
        return self.terms.get((0,) * self.nvars, self.domain.zero)

    def coefficient(self, e):
        return self.terms.get(tuple(e), self.domain.zero)

    def sorted_terms(self):
        """Terms in decreasing grevlex order."""
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def leading_term(self):
        e = max(self.terms, key=grevlex_key)
        return e, self.terms[e]

    def variables(self) -> list[int]:
        used = set()
        for e in self.terms:
            used.update(i for i, x in enumerate(e) if x)
        return sorted(used)

    def homogeneous_part(self, deg: int) -> "MultiPoly":
        return self._new({e: c for e, c in self.terms.items() if sum(e) == deg})

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        dom = self.domain
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        z = dom.zero
        add = dom.add
        for e, c in b.items():
            if e in out:
                s = add(out[e], c)
                if s == z:
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.domain.neg
        return self._new({e: neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "MultiPoly":
        dom = self.domain
        c = dom.convert(c)
        if c == dom.zero:
            return self._new({})
        mul = dom.mul
        return self._new({e: mul(c, x) for e, x in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(self.domain.convert(other))
        self._check(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return self._new({})
        if len(a) < len(b):
            a, b = b, a
        n = self.nvars
        pa = [(_pack(e), c) for e, c in a.items()]
        pb = [(_pack(e), c) for e, c in b.items()]
        acc: dict = {}
        dom = self.domain
        if isinstance(dom, PrimeField):
            get = acc.get
            for kb, cb in pb:
                for ka, ca in pa:
                    k = ka + kb
                    acc[k] = get(k, 0) + ca * cb
            p = dom.p
            out = {}
            for k, c in acc.items():
                c %= p
                if c:
                    out[_unpack(k, n)] = c
            return self._new(out)
        add, mul, z = dom.add, dom.mul, dom.zero
        for kb, cb in pb:
            for ka, ca in pa:
                k = ka + kb
                if k in acc:
                    acc[k] = add(acc[k], mul(ca, cb))
                else:
                    acc[k] = mul(ca, cb)
        return self._new({_unpack(k, n): c for k, c in acc.items() if c != z})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = MultiPoly.one(self.domain, self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_monomial(self, e, c=None) -> "MultiPoly":
        dom = self.domain
        c = dom.one if c is None else c
        mul = dom.mul
        return self._new(
            {tuple(x + y for x, y in zip(ee, e)): mul(c, v) for ee, v in self.terms.items()}
        )

    def divexact(self, other: "MultiPoly") -> "MultiPoly":
        """Exact quotient ``self / other``; raises ``ArithmeticError`` if inexact."""
        self._check(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        dom = self.domain
        n = self.nvars
        le, lc = other.leading_term()
        inv = dom.inv(lc)
        lk = _pack(le)
        rest = [(_pack(e) - lk, c) for e, c in other.terms.items() if e != le]
        # remainder keyed by packed exponents; max-heap on grevlex
        rem = {_pack(e): c for e, c in self.terms.items()}
        heap = [(_neg_key(e), _pack(e)) for e in self.terms]
        heapq.heapify(heap)
        quot = {}
        z = dom.zero
        add, mul, neg = dom.add, dom.mul, dom.neg
        while heap:
            _, k = heapq.heappop(heap)
            c = rem.pop(k, None)
            if c is None or c == z:
                continue
            qk = k - lk
            if qk < 0 or any(x < 0 for x in _signed_unpack(qk, n)):
                raise ArithmeticError("inexact multivariate division")
            qc = mul(c, inv)
            quot[qk] = qc
            nq = neg(qc)
            for dk, dc in rest:
                t = k + dk
                v = mul(nq, dc)
                if t in rem:
                    rem[t] = add(rem[t], v)
                else:
                    rem[t] = v
                    heapq.heappush(heap, (_neg_key(_unpack(t, n)), t))
        return self._new({_unpack(k, n): c for k, c in quot.items()})

    def divides(self, other: "MultiPoly") -> bool:
        try:
            other.divexact(self)
        except ArithmeticError:
            return False
        return True

    # -- calculus and substitution ------------------------------------------

    def partial_derivative(self, i: int) -> "MultiPoly":
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range")
        dom = self.domain
        out = {}
        z = dom.zero
        for e, c in self.terms.items():
            k = e[i]
            if k:
                v = dom.mul(dom.from_int(k), c)
                if v != z:
                    ne = list(e)
                    ne[i] -= 1
                    out[tuple(ne)] = v
        return self._new(out)

    diff = partial_derivative

    def evaluate(self, values: Sequence, domain=None):
        """Full evaluation at ``values``; coefficients are moved into ``domain``."""
        if len(values) != self.nvars:
            raise ValueError("evaluate needs one value per variable")
        F = domain or self.domain
        conv = F.convert if F != self.domain else (lambda c: c)
        acc = F.zero
        powers = [_PowerCache(F, v) for v in values]
        for e, c in self.terms.items():
            t = conv(c)
            for pc, k in zip(powers, e):
                if k:
                    t = F.mul(t, pc[k])
            acc = F.add(acc, t)
        return acc

    def partial_evaluate(self, assignment: Mapping[int, object]) -> "MultiPoly":
        """Substitute domain values for some variables; ``nvars`` is kept."""
        dom = self.domain
        cache = {i: _PowerCache(dom, dom.convert(v)) for i, v in assignment.items()}
        out: dict = {}
        add, mul, z = dom.add, dom.mul, dom.zero
        for e, c in self.terms.items():
            ne = list(e)
            for i, pc in cache.items():
                if e[i]:
                    c = mul(c, pc[e[i]])
                    ne[i] = 0
            ne = tuple(ne)
            out[ne] = add(out[ne], c) if ne in out else c
        return self._new({e: c for e, c in out.items() if c != z})

    def linear_substitute(self, M: Sequence[Sequence]) -> "MultiPoly":
        """Return ``x -> self(M x)``; ``M`` must be invertible."""
        n = self.nvars
        if len(M) != n or any(len(r) != n for r in M):
            raise ValueError("matrix size must equal the number of variables")
        dom = self.domain
        M = [[dom.convert(c) for c in row] for row in M]
        if dom.is_zero(mat_det(dom, M)):
            raise SingularMatrix("substitution matrix is singular")
        forms = [MultiPoly.linear_form(dom, row) for row in M]
        return _horner_substitute(self, forms, 0)

    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Compose with arbitrary polynomial images of each variable."""
        if len(images) != self.nvars:
            raise ValueError("one image per variable required")
        target = images[0]
        for g in images:
            target._check(g)
        return _horner_substitute(self, list(images), 0, target=target)

    def change_domain(self, F) -> "MultiPoly":
        """Map coefficients into ``F`` (e.g. reduce integer polynomials mod p)."""
        z = F.zero
        out = {}
        for e, c in self.terms.items():
            v = F.convert(c)
            if v != z:
                out[e] = v
        return MultiPoly(F, self.nvars, out, clean=True)

    def coefficients_in(self, i: int) -> list["MultiPoly"]:
        """Coefficients as a polynomial in variable ``i`` (index = degree)."""
        d = self.degree_in(i)
        buckets = [dict() for _ in range(d + 1)]
        for e, c in self.terms.items():
            ne = list(e)
            ne[i] = 0
            buckets[e[i]][tuple(ne)] = c
        return [self._new(b) for b in buckets]

    @classmethod
    def from_coefficients(cls, coeffs: Sequence["MultiPoly"], i: int) -> "MultiPoly":
        first = coeffs[0]
        out = {}
        for k, c in enumerate(coeffs):
            for e, v in c.terms.items():
                ne = list(e)
                ne[i] += k
                out[tuple(ne)] = v
        return cls(first.domain, first.nvars, out, clean=True)

    def content_scalar(self):
        """Leading coefficient in grevlex, used for scalar normalisation."""
        return self.leading_term()[1]

    def monic(self) -> "MultiPoly":
        if not self.terms:
            return self
        return self.scale(self.domain.inv(self.content_scalar()))

    def to_univariate(self, i: int) -> list:
        """Dense coefficient list in variable ``i`` for a polynomial in that variable only."""
        d = self.degree_in(i)
        out = [self.domain.zero] * (d + 1)
        for e, c in self.terms.items():
            if any(x for j, x in enumerate(e) if j != i):
                raise ValueError("polynomial involves other variables")
            out[e[i]] = c
        return out

    @classmethod
    def from_univariate(cls, domain, coeffs, nvars: int, i: int) -> "MultiPoly":
        out = {}
        for k, c in enumerate(coeffs):
            if c != domain.zero:
                e = [0] * nvars
                e[i] = k
                out[tuple(e)] = c
        return cls(domain, nvars, out, clean=True)

    # -- presentation -------------------------------------------------------

    def to_json(self) -> list:
        """Canonical term list ``[[exponents, coefficient], ...]`` in grevlex order."""
        F = self.domain
        return [[list(e), F.to_json(c)] for e, c in self.sorted_terms()]

    def format(self, names: Sequence[str] | None = None) -> str:
        names = names or [f"x{i}" for i in range(self.nvars)]
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            cs = _format_coeff(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"MultiPoly({self.domain!r}, {self.format()})"


def _format_coeff(c):
    if isinstance(c, tuple):
        return "(" + ",".join(map(str, c)) + ")"
    return str(c)


def _neg_key(e):
    d, rest = grevlex_key(e)
    return (-d, tuple(-x for x in rest))


def _signed_unpack(k, n):
    # exponent differences stay small, so a borrow shows up as a huge field
    out = []
    for i in range(n):
        x = (k >> (_SHIFT * i)) & _MASK
        if x >= 1 << (_SHIFT - 1):
            x -= 1 << _SHIFT
            k += 1 << (_SHIFT * (i + 1))
        out.append(x)
    return out


class _PowerCache:
    __slots__ = ("F", "pows")

    def __init__(self, F, base):
        self.F = F
        self.pows = [F.one, base]

    def __getitem__(self, k):
        pows = self.pows
        while len(pows) <= k:
            pows.append(self.F.mul(pows[-1], pows[1]))
        return pows[k]


def _horner_substitute(p: MultiPoly, images, i, target=None):
    target = target or images[0]
    if i == p.nvars:
        return MultiPoly.constant(target.domain, target.nvars, p.constant_coefficient()) if p else MultiPoly.zero(target.domain, target.nvars)
    if not p.terms:
        return MultiPoly.zero(target.domain, target.nvars)
    coeffs = p.coefficients_in(i)
    acc = None
    for c in reversed(coeffs):
        sub = _horner_substitute(c, images, i + 1, target)
        acc = sub if acc is None else acc * images[i] + sub
    return acc


# -- tiny dense linear algebra over a field domain ---------------------------


def mat_mul(F, A, B):
    return [
        [_dot(F, row, col) for col in zip(*B)]
        for row in A
    ]


def mat_vec(F, A, v):
    return [_dot(F, row, v) for row in A]


def _dot(F, a, b):
    acc = F.zero
    for x, y in zip(a, b):
        acc = F.add(acc, F.mul(x, y))
    return acc


def mat_det(F, A) -> object:
    """Determinant by Gaussian elimination over a field."""
    n = len(A)
    M = [list(r) for r in A]
    det = F.one
    for c in range(n):
        piv = next((r for r in range(c, n) if not F.is_zero(M[r][c])), None)
        if piv is None:
            return F.zero
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = F.neg(det)
        det = F.mul(det, M[c][c])
        inv = F.inv(M[c][c])
        for r in range(c + 1, n):
            f = F.mul(M[r][c], inv)
            if not F.is_zero(f):
                M[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[r], M[c])]
    return det


def mat_inv(F, A):
    n = len(A)
    M = [list(r) + [F.one if i == j else F.zero for j in range(n)] for i, r in enumerate(A)]
    for c in range(n):
        piv = next((r for r in range(c, n) if not F.is_zero(M[r][c])), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        M[c], M[piv] = M[piv], M[c]
        inv = F.inv(M[c][c])
        M[c] = [F.mul(inv, x) for x in M[c]]
        for r in range(n):
            if r != c and not F.is_zero(M[r][c]):
                f = M[r][c]
                M[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[r], M[c])]
    return [row[n:] for row in M]


def identity(F, n):
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]


def as_polys(domain, nvars, items: Iterable) -> list[MultiPoly]:
    return [MultiPoly(domain, nvars, t) for t in items]
