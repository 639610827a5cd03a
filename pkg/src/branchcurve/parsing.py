"""Text formats: polynomials, surface files and line-family files.

Polynomial grammar (whitespace ignored)::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := ('+' | '-') factor | power
    power  := atom ('^' integer)?
    atom   := integer | variable | '(' expr ')'

Coefficients are read as exact rationals.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import NonHomogeneousInput, PolynomialSyntaxError
from .fields import QQ
from .polyring import MultiPoly

__all__ = [
    "SURFACE_VARS",
    "FAMILY_VARS",
    "parse_polynomial",
    "parse_surface_text",
    "parse_family_text",
    "load_surface",
    "load_family",
]

SURFACE_VARS = ("x0", "x1", "x2", "x3")
FAMILY_VARS = ("u", "v")

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\^|\*|\+|-|\(|\)))")


def _tokenize(text):
    pos = 0
    out = []
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolynomialSyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        out.append((m.lastindex, m.group(m.lastindex), start))
        pos = m.end()
    out.append((0, "", n))
    return out


class _Parser:
    def __init__(self, text, variables, domain):
        self.toks = _tokenize(text)
        self.i = 0
        self.vars = {name: k for k, name in enumerate(variables)}
        self.F = domain
        self.n = len(variables)

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, sym):
        kind, val, pos = self.take()
        if val != sym or kind != 3:
            raise PolynomialSyntaxError(f"expected {sym!r}" + (f", found {val!r}" if val else ", found end of input"), pos)

    def parse(self):
        e = self.expr()
        kind, val, pos = self.peek()
        if kind != 0:
            raise PolynomialSyntaxError(f"unexpected {val!r}", pos)
        return e

    def expr(self):
        acc = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == 3:
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.factor()
        while self.peek()[1] == "*" and self.peek()[0] == 3:
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self):
        kind, val, pos = self.peek()
        if kind == 3 and val in ("+", "-"):
            self.take()
            f = self.factor()
            return -f if val == "-" else f
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^" and self.peek()[0] == 3:
            self.take()
            kind, val, pos = self.take()
            if kind != 1:
                raise PolynomialSyntaxError("exponent must be a non-negative integer", pos)
            return base ** int(val)
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == 1:
            return MultiPoly.constant(self.F, self.n, self.F.convert(int(val)))
        if kind == 2:
            if val not in self.vars:
                raise PolynomialSyntaxError(f"unknown variable {val!r}", pos)
            return MultiPoly.var(self.F, self.n, self.vars[val])
        if kind == 3 and val == "(":
            e = self.expr()
            self.expect(")")
            return e
        if kind == 0:
            raise PolynomialSyntaxError("unexpected end of input", pos)
        raise PolynomialSyntaxError(f"unexpected {val!r}", pos)


def parse_polynomial(text: str, variables=SURFACE_VARS, domain=QQ, homogeneous: bool = False) -> MultiPoly:
    """Parse ``text`` into a :class:`MultiPoly` in ``variables``.

    >>> str(parse_polynomial("x0^2 - (x1 + x2)*x3"))
    'x0^2 - x1*x3 - x2*x3'
    """
    p = _Parser(text, variables, domain).parse()
    if homogeneous and not p.is_homogeneous():
        raise NonHomogeneousInput("polynomial is not homogeneous")
    return p


_HEADER = re.compile(r"#\s*([A-Za-z_]+)\s*=\s*(-?\d+)\s*$")
_HEADER_KEYS = {"g": "g", "ksq": "Ksq", "chi": "chi", "deg_gamma": "deg_double_curve"}


@dataclass(frozen=True)
class SurfaceFile:
    polynomial: MultiPoly
    headers: dict
    text: str


def parse_surface_text(text: str) -> SurfaceFile:
    """Split a surface file into header invariants and the polynomial.

    Lines starting with ``#`` are comments; ``# g=3``-style lines with the keys
    ``g``, ``ksq``, ``chi`` and ``deg_gamma`` set invariants.
    """
    headers = {}
    body = []
    offset = 0
    body_offset = None
    for line in text.splitlines(keepends=True):
        stripped = line.strip()
        if stripped.startswith("#"):
            m = _HEADER.match(stripped)
            if m and m.group(1).lower() in _HEADER_KEYS:
                headers[_HEADER_KEYS[m.group(1).lower()]] = int(m.group(2))
        elif stripped:
            if body_offset is None:
                body_offset = offset
            body.append(line)
        offset += len(line)
    poly_text = "".join(body)
    if not poly_text.strip():
        raise PolynomialSyntaxError("no polynomial found", len(text))
    try:
        f = parse_polynomial(poly_text, SURFACE_VARS, homogeneous=True)
    except PolynomialSyntaxError as exc:
        # report positions relative to the whole file
        raise PolynomialSyntaxError(str(exc).rsplit(" at position", 1)[0], exc.position + (body_offset or 0)) from None
    return SurfaceFile(f, headers, poly_text.strip())


def parse_family_text(text: str):
    """Two lines of four comma-separated polynomials in ``u, v``.

    A ``parametric:`` prefix (on either line) marks the rows as two points
    spanning each line; otherwise they are two planes containing it.
    """
    from .focal import DualPair, ParametricPair

    rows = []
    parametric = False
    for line in text.splitlines():
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        if s.lower().startswith("parametric:"):
            parametric = True
            s = s[len("parametric:"):]
        parts = s.split(",")
        if len(parts) != 4:
            raise PolynomialSyntaxError(f"expected 4 comma-separated entries, got {len(parts)}", 0)
        rows.append(tuple(parse_polynomial(q, FAMILY_VARS) for q in parts))
    if len(rows) != 2:
        raise PolynomialSyntaxError(f"expected 2 rows, got {len(rows)}", 0)
    cls = ParametricPair if parametric else DualPair
    return cls(rows[0], rows[1])


def load_surface(path, smooth_claimed: bool | None = None):
    """Read a surface file into a :class:`~branchcurve.surface.SurfaceModel`.

    Without an explicit ``smooth_claimed`` the surface is treated as smooth
    unless the file carries ``ksq``/``chi`` headers together with ``g`` or
    ``deg_gamma`` that differ from the smooth values.
    """
    from .surface import SurfaceModel, smooth_invariants

    with open(path, encoding="utf-8") as fh:
        sf = parse_surface_text(fh.read())
    h = sf.headers
    if smooth_claimed is None:
        smooth_claimed = True
        if "deg_double_curve" in h:
            smooth_claimed = False
        elif h:
            sg, sk, sc = smooth_invariants(sf.polynomial.degree())
            smooth_claimed = (h.get("g", sg), h.get("Ksq", sk), h.get("chi", sc)) == (sg, sk, sc)
    if smooth_claimed:
        return SurfaceModel.from_polynomial(sf.polynomial, True, **h)
    return SurfaceModel.from_polynomial(sf.polynomial, False, **h)


def load_family(path):
    with open(path, encoding="utf-8") as fh:
        return parse_family_text(fh.read())
