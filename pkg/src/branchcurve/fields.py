"""Exact coefficient domains: the rationals, prime fields and their extensions.

Elements are plain Python values so they hash and compare cheaply:

* ``Rationals``       -- :class:`fractions.Fraction`
* ``PrimeField(p)``   -- ``int`` in ``range(p)``
* ``ExtensionField``  -- ``tuple`` of ``k`` ints, coefficients of ``1, t, ..., t^(k-1)``
  modulo the defining polynomial.

A domain object carries the arithmetic; elements know nothing about where they
live.  Domains compare equal when their parameters agree.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError

__all__ = [
    "Rationals",
    "PrimeField",
    "ExtensionField",
    "QQ",
    "is_prime",
    "random_prime",
    "sample_primes",
]


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for ``n < 3.3e24``."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(rng: random.Random, lo: int = 2**30, hi: int = 2**31) -> int:
    """Uniformly sampled prime in ``[lo, hi)``."""
    while True:
        n = rng.randrange(lo, hi) | 1
        if n < hi and is_prime(n):
            return n


def sample_primes(count: int, seed: int, lo: int = 2**30, hi: int = 2**31) -> list[int]:
    """``count`` distinct primes drawn deterministically from ``seed``."""
    rng = random.Random(seed)
    out: list[int] = []
    while len(out) < count:
        q = random_prime(rng, lo, hi)
        if q not in out:
            out.append(q)
    return out


class _Domain:
    characteristic: int
    is_finite: bool = False
    degree: int = 1

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        if n < 0:
            a, n = self.inv(a), -n
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            n >>= 1
            if n:
                a = self.mul(a, a)
        return result

    def is_zero(self, a) -> bool:
        return a == self.zero

    def is_one(self, a) -> bool:
        return a == self.one


class Rationals(_Domain):
    """The field of rational numbers with arbitrary precision."""

    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"

    def convert(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise DomainError(f"cannot convert {x!r} into QQ")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        return a / b

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def to_json(self, a):
        return str(a)

    def describe(self) -> dict:
        return {"kind": "QQ"}


QQ = Rationals()


@dataclass(frozen=True)
class PrimeField(_Domain):
    """GF(p) for an odd prime ``p``."""

    p: int
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        if self.p < 3 or self.p % 2 == 0 or (self.check and not is_prime(self.p)):
            raise DomainError(f"{self.p} is not an odd prime")

    characteristic = property(lambda self: self.p)
    is_finite = True
    zero = 0
    one = 1

    @property
    def order(self) -> int:
        return self.p

    def convert(self, x) -> int:
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        raise DomainError(f"cannot convert {x!r} into GF({self.p})")

    def from_int(self, n: int) -> int:
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def pow(self, a, n: int):
        return pow(a, n, self.p)

    def frobenius(self, a):
        return a

    def is_square(self, a) -> bool:
        return a == 0 or pow(a, (self.p - 1) // 2, self.p) == 1

    def random(self, rng: random.Random):
        return rng.randrange(self.p)

    def elements(self):
        return range(self.p)

    def to_json(self, a):
        return a

    def describe(self) -> dict:
        return {"kind": "GF", "p": self.p}


def _poly_mulmod_p(a, b, m, p):
    # a*b mod monic m over GF(p); lists low->high, len(m) == k+1
    k = len(m) - 1
    prod = [0] * (2 * k - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    for i in range(len(prod) - 1, k - 1, -1):
        c = prod[i] % p
        if c:
            off = i - k
            for j in range(k):
                prod[off + j] -= c * m[j]
    return [c % p for c in prod[:k]]


@dataclass(frozen=True)
class ExtensionField(_Domain):
    """GF(p^k) realised as GF(p)[t] / (modulus).

    ``modulus`` is given low-to-high and must be monic of degree ``k >= 1``.
    Irreducibility is verified unless ``check=False`` (used when the modulus is
    an irreducible factor that was already certified).
    """

    p: int
    modulus: tuple
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        m = tuple(c % self.p for c in self.modulus)
        while m and m[-1] == 0:
            m = m[:-1]
        if len(m) < 2 or m[-1] != 1:
            raise DomainError("extension modulus must be monic of degree >= 1")
        object.__setattr__(self, "modulus", m)
        if self.check:
            if not is_prime(self.p) or self.p == 2:
                raise DomainError(f"{self.p} is not an odd prime")
            from .upoly import is_irreducible

            if not is_irreducible(PrimeField(self.p, check=False), list(m)):
                raise DomainError("extension modulus is reducible")
        k = len(m) - 1
        object.__setattr__(self, "_k", k)
        object.__setattr__(self, "_zero", (0,) * k)
        object.__setattr__(self, "_one", (1,) + (0,) * (k - 1))
        object.__setattr__(self, "_frob", None)

    characteristic = property(lambda self: self.p)
    is_finite = True

    @property
    def degree(self) -> int:
        return self._k

    @property
    def order(self) -> int:
        return self.p**self._k

    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self._one

    @property
    def base(self) -> PrimeField:
        return PrimeField(self.p, check=False)

    @property
    def gen(self):
        if self._k == 1:
            return (-self.modulus[0] % self.p,)
        return (0, 1) + (0,) * (self._k - 2)

    def convert(self, x):
        if isinstance(x, tuple):
            if len(x) > self._k:
                # reduce an over-long representative
                rem = list(x)
                from .upoly import rem as urem

                rem = urem(self.base, [c % self.p for c in rem], list(self.modulus))
                x = tuple(rem)
            return tuple(c % self.p for c in x) + (0,) * (self._k - len(x))
        if isinstance(x, (int, Fraction)):
            return self.embed(PrimeField(self.p, check=False).convert(x))
        raise DomainError(f"cannot convert {x!r} into GF({self.p}^{self._k})")

    def embed(self, c: int):
        return (c % self.p,) + (0,) * (self._k - 1)

    def from_int(self, n: int):
        return self.embed(n)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def scale(self, c: int, a):
        p = self.p
        return tuple(c * x % p for x in a)

    def mul(self, a, b):
        return tuple(_poly_mulmod_p(a, b, self.modulus, self.p))

    def inv(self, a):
        if not any(a):
            raise ZeroDivisionError("inverse of zero")
        from .upoly import invmod

        F = self.base
        r = invmod(F, _strip(list(a)), list(self.modulus))
        return tuple(r) + (0,) * (self._k - len(r))

    def frobenius(self, a):
        """``a -> a^p`` via the precomputed Frobenius matrix."""
        M = self._frob
        if M is None:
            M = self._frobenius_matrix()
        p, k = self.p, self._k
        out = [0] * k
        for ai, row in zip(a, M):
            if ai:
                for j in range(k):
                    out[j] += ai * row[j]
        return tuple(c % p for c in out)

    def _frobenius_matrix(self):
        from .upoly import powmod

        F = self.base
        k = self._k
        xp = powmod(F, [0, 1], self.p, list(self.modulus))
        rows = []
        cur = [1]
        for _ in range(k):
            rows.append(tuple(cur) + (0,) * (k - len(cur)))
            cur = _strip(_poly_mulmod_p(cur + [0] * (k - len(cur)), xp + [0] * (k - len(xp)), self.modulus, self.p))
        object.__setattr__(self, "_frob", rows)
        return rows

    def norm(self, a) -> int:
        """Norm down to GF(p), computed as a resultant with the modulus."""
        from .upoly import resultant

        return resultant(self.base, list(self.modulus), _strip(list(a)))

    def is_square(self, a) -> bool:
        if not any(a):
            return True
        n = self.norm(a)
        return pow(n, (self.p - 1) // 2, self.p) == 1

    def random(self, rng: random.Random):
        return tuple(rng.randrange(self.p) for _ in range(self._k))

    def elements(self):
        import itertools

        for digits in itertools.product(range(self.p), repeat=self._k):
            yield tuple(reversed(digits))

    def to_json(self, a):
        return list(a)

    def describe(self) -> dict:
        return {"kind": "GF", "p": self.p, "k": self._k, "modulus": list(self.modulus)}


def _strip(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def random_irreducible(p: int, k: int, rng: random.Random) -> list[int]:
    """Random monic irreducible of degree ``k`` over GF(p) (low-to-high)."""
    from .upoly import is_irreducible

    F = PrimeField(p, check=False)
    while True:
        f = [rng.randrange(p) for _ in range(k)] + [1]
        if is_irreducible(F, f):
            return f


def extension(p: int, k: int, rng: random.Random | None = None) -> ExtensionField:
    """GF(p^k) with a modulus found by random search."""
    rng = rng or random.Random(p * 1000003 + k)
    return ExtensionField(p, tuple(random_irreducible(p, k, rng)), check=False)
