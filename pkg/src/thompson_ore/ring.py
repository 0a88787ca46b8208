"""Sparse polynomials in the monoid ring K[M].

A :class:`Polynomial` is a field plus a mapping from normal-form monomials
to nonzero coefficients.  Values are never mutated after construction.
"""

from __future__ import annotations

import json
import random
import re
from typing import Iterable, Mapping

from . import monoid
from .fields import Field, FieldMismatchError, Rationals, parse_field
from .monoid import Monomial, format_monomial, multiply


class PolynomialParseError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


def term_key(w: Monomial):
    """Degree-lexicographic order used for all serialization."""
    return (len(w), w)


class Polynomial:
    __slots__ = ("field", "terms")

    def __init__(self, field: Field, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        zero = field.zero
        for w, c in items:
            w = tuple(w)
            if w in acc:
                acc[w] = field.add(acc[w], c)
            else:
                acc[w] = c
        self.field = field
        self.terms = {w: c for w, c in acc.items() if c != zero}

    @classmethod
    def _raw(cls, field: Field, terms: dict) -> "Polynomial":
        # terms already pruned
        p = object.__new__(cls)
        p.field = field
        p.terms = terms
        return p

    @classmethod
    def zero(cls, field: Field) -> "Polynomial":
        return cls._raw(field, {})

    @classmethod
    def one(cls, field: Field) -> "Polynomial":
        return cls._raw(field, {(): field.one})

    @classmethod
    def monomial(cls, field: Field, w, coef=None) -> "Polynomial":
        c = field.one if coef is None else coef
        return cls(field, {monoid.normalize(w): c})

    @classmethod
    def linear(cls, field: Field, coefs: Mapping) -> "Polynomial":
        """``sum coefs[i] * x_i``."""
        return cls(field, {(i,): c for i, c in coefs.items()})

    # -- basic queries --------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def coefficient(self, w) -> object:
        return self.terms.get(tuple(w), self.field.zero)

    def support(self) -> list:
        return sorted(self.terms, key=term_key)

    def items(self) -> list:
        return [(w, self.terms[w]) for w in self.support()]

    @property
    def degree(self) -> int:
        if not self.terms:
            raise ValueError("degree of the zero polynomial")
        return max(len(w) for w in self.terms)

    @property
    def min_degree(self) -> int:
        if not self.terms:
            raise ValueError("degree of the zero polynomial")
        return min(len(w) for w in self.terms)

    def is_homogeneous(self) -> bool:
        return len({len(w) for w in self.terms}) <= 1

    def max_index(self) -> int:
        return max((w[-1] for w in self.terms if w), default=-1)

    # -- arithmetic -----------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field.descriptor()} vs {other.field.descriptor()}")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        return poly_add(self, other)

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        return poly_add(self, other, negate=True)

    def __neg__(self):
        f = self.field
        return Polynomial._raw(f, {w: f.neg(c) for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return poly_mul(self, other)
        return poly_scale(self, self.field.convert(other) if isinstance(other, int) else other)

    def __rmul__(self, scalar):
        return poly_scale(self, self.field.convert(scalar) if isinstance(scalar, int) else scalar)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash((self.field, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Polynomial({self.field.descriptor()}, {format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)


def poly_add(p: Polynomial, q: Polynomial, negate: bool = False) -> Polynomial:
    f = p.field
    out = dict(p.terms)
    zero = f.zero
    for w, c in q.terms.items():
        if negate:
            c = f.neg(c)
        if w in out:
            s = f.add(out[w], c)
            if s == zero:
                del out[w]
            else:
                out[w] = s
        else:
            out[w] = c
    return Polynomial._raw(f, out)


def poly_scale(p: Polynomial, c) -> Polynomial:
    f = p.field
    if c == f.zero:
        return Polynomial.zero(f)
    return Polynomial._raw(f, {w: f.mul(a, c) for w, a in p.terms.items()})


def poly_equal(p: Polynomial, q: Polynomial) -> bool:
    p._check(q)
    return p.terms == q.terms


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    """Bilinear extension of monomial multiplication."""
    f = p.field
    acc: dict = {}
    add, mul = f.add, f.mul
    for w1, c1 in p.terms.items():
        for w2, c2 in q.terms.items():
            w = multiply(w1, w2)
            c = mul(c1, c2)
            acc[w] = add(acc[w], c) if w in acc else c
    zero = f.zero
    return Polynomial._raw(f, {w: c for w, c in acc.items() if c != zero})


def poly_sum(polys: Iterable[Polynomial], field: Field) -> Polynomial:
    out = Polynomial.zero(field)
    for p in polys:
        out = out + p
    return out


def poly_prod(polys: Iterable[Polynomial], field: Field) -> Polynomial:
    out = Polynomial.one(field)
    for p in polys:
        out = out * p
    return out


def homogeneous_components(p: Polynomial) -> list:
    """``[(degree, component), ...]`` by strictly increasing degree."""
    by_deg: dict = {}
    for w, c in p.terms.items():
        by_deg.setdefault(len(w), {})[w] = c
    return [(d, Polynomial._raw(p.field, by_deg[d])) for d in sorted(by_deg)]


def width(p: Polynomial) -> int:
    """Highest minus lowest degree of the homogeneous components."""
    if not p.terms:
        raise ValueError("width is undefined for the zero polynomial")
    return p.degree - p.min_degree


def shift_poly(p: Polynomial, k: int = 1) -> Polynomial:
    return Polynomial._raw(p.field, {monoid.shift(w, k): c for w, c in p.terms.items()})


def left_divide_poly(a: Polynomial, p: Polynomial) -> Polynomial | None:
    """``q`` with ``a * q == p`` or None.

    The candidate support is every monomial of degree ``deg p - deg a``
    with indices at most ``max_index(p)`` (normalization never lowers an
    index, so nothing outside can contribute); ``q`` is found by an exact
    linear solve.
    """
    from .linalg import SparseMatrix, solve_affine

    if not a:
        raise ZeroDivisionError("division by the zero polynomial")
    if not a.is_homogeneous():
        raise ValueError("left_divide_poly needs a homogeneous divisor")
    a._check(p)
    f = a.field
    if not p:
        return Polynomial.zero(f)
    d = p.degree - a.degree
    if d < 0 or not p.is_homogeneous():
        return None
    cands = _all_monomials(d, max(p.max_index(), 0))
    rows: dict = {}
    entries = []
    for j, y in enumerate(cands):
        for w, c in a.terms.items():
            m = multiply(w, y)
            r = rows.setdefault(m, len(rows))
            entries.append((r, j, c))
    # right-hand side entries not reachable by any product make it inconsistent
    for w in p.terms:
        if w not in rows:
            return None
    rhs = {rows[w]: c for w, c in p.terms.items()}
    M = SparseMatrix.from_entries(len(rows), len(cands), f, entries)
    x = solve_affine(M, rhs)
    if x is None:
        return None
    q = Polynomial(f, {cands[j]: c for j, c in x.items()})
    return q if poly_mul(a, q) == p else None


def _all_monomials(d: int, max_index: int) -> list:
    out = [()]
    for _ in range(d):
        out = [w + (i,) for w in out for i in range((w[-1] if w else 0), max_index + 1)]
    return out


def random_poly(support, field: Field, seed=None, nonzero: bool = True) -> Polynomial:
    """Seeded random coefficients on every monomial of ``support``.

    ``support`` is a set descriptor or an iterable of monomials.  With
    ``nonzero`` the coefficients are drawn from the nonzero elements so the
    full support is always realised.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    if isinstance(support, (monoid.Explicit, monoid.CatalanSet, monoid.CatalanSetMinus)):
        mons = monoid.enumerate_set(support)
    else:
        mons = [monoid.normalize(w) for w in support]
    return Polynomial(field, {w: field.random_element(rng, nonzero=nonzero) for w in mons})


# ---------------------------------------------------------------------------
# text and JSON


def format_poly(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    f = p.field
    out = []
    for w, c in p.items():
        s = f.format(c)
        neg = s.startswith("-")
        if neg:
            s = s[1:]
        if w:
            body = format_monomial(w) if s == "1" else f"{s}*{format_monomial(w)}"
        else:
            body = s
        if out:
            out.append(("- " if neg else "+ ") + body)
        else:
            out.append(("-" if neg else "") + body)
    return " ".join(out)


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<mono>x(?P<idx>\d+))
  | (?P<num>\d+(?:/\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*^()])
""", re.VERBOSE)


def _tokenize(text: str) -> list:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolynomialParseError(f"unexpected character {text[pos]!r}", text, pos)
        if not m.group("ws"):
            if m.group("mono"):
                toks.append(("mono", int(m.group("idx")), pos))
            elif m.group("num"):
                toks.append(("num", m.group("num"), pos))
            elif m.group("name"):
                toks.append(("name", m.group("name"), pos))
            else:
                toks.append(("op", m.group("op"), pos))
        pos = m.end()
    return toks


def parse_poly(text: str, field: Field | None = None) -> Polynomial:
    """Parse ``coef*monomial`` terms joined by ``+``/``-``.

    Coefficient factors are integers, fractions ``n/d`` or (for an
    :class:`~thompson_ore.fields.IndeterminateField`) indeterminate names,
    each optionally raised with ``^``.  Monomial factors ``x<i>[^e]`` may come
    in any order and are normalized.  Parenthesised sub-expressions are
    multiplied out, so ``(x0 + a*x1)*(x0 - x2)`` is accepted.
    """
    field = Rationals() if field is None else field
    toks = _tokenize(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def err(msg, tok=None):
        where = tok[2] if tok else len(text)
        raise PolynomialParseError(msg, text, where)

    def expect_int():
        nonlocal pos
        t = peek()
        if t is None or t[0] != "num" or "/" in t[1]:
            err("expected integer exponent", t)
        pos += 1
        return int(t[1])

    def atom() -> Polynomial:
        nonlocal pos
        t = peek()
        if t is None:
            err("unexpected end of input")
        if t[0] == "op" and t[1] == "(":
            pos += 1
            inner = expr()
            t2 = peek()
            if t2 is None or t2[1] != ")":
                err("expected ')'", t2)
            pos += 1
            base = inner
        elif t[0] == "mono":
            pos += 1
            base = Polynomial.monomial(field, (t[1],))
        elif t[0] == "num":
            pos += 1
            base = Polynomial(field, {(): field.parse(t[1])})
        elif t[0] == "name":
            pos += 1
            try:
                base = Polynomial(field, {(): field.symbol(t[1])})
            except FieldMismatchError as exc:
                err(str(exc), t)
        else:
            err(f"unexpected {t[1]!r}", t)
        t = peek()
        if t is not None and t[0] == "op" and t[1] == "^":
            pos += 1
            e = expect_int()
            out = Polynomial.one(field)
            for _ in range(e):
                out = out * base
            return out
        return base

    def term() -> Polynomial:
        nonlocal pos
        out = atom()
        while True:
            t = peek()
            if t is not None and t[0] == "op" and t[1] == "*":
                pos += 1
                out = out * atom()
            else:
                return out

    def expr() -> Polynomial:
        nonlocal pos
        t = peek()
        sign = 1
        if t is not None and t[0] == "op" and t[1] in "+-":
            sign = -1 if t[1] == "-" else 1
            pos += 1
        out = term()
        if sign < 0:
            out = -out
        while True:
            t = peek()
            if t is not None and t[0] == "op" and t[1] in "+-":
                pos += 1
                nxt = term()
                out = out - nxt if t[1] == "-" else out + nxt
            else:
                return out

    if not toks:
        err("empty polynomial")
    result = expr()
    if pos != len(toks):
        err(f"unexpected {toks[pos][1]!r}", toks[pos])
    return result


def poly_to_json(p: Polynomial) -> dict:
    return {
        "field": p.field.descriptor(),
        "terms": [{"coef": p.field.format(c), "mono": list(w)} for w, c in p.items()],
    }


def poly_from_json(obj, field: Field | None = None) -> Polynomial:
    if isinstance(obj, str):
        obj = json.loads(obj)
    f = parse_field(obj["field"]) if field is None else field
    return Polynomial(f, [(monoid.normalize(t["mono"]), f.parse(str(t["coef"])))
                          for t in obj["terms"]])
