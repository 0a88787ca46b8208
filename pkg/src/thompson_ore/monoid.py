"""Positive monoid M of Thompson's group F.

Elements are stored as tuples of generator subscripts in normal form
(weakly increasing).  The defining rewrite rule is

    x_j x_i -> x_i x_{j+1}      (j > i >= 0)

which is terminating and confluent, so every word has exactly one normal
form.  The tuple ``()`` is the identity.

Catalan sets ``S_{k,n}`` (positive diagrams over ``x = x^2`` with top
label ``x^k`` and bottom label ``x^n``) correspond to the normal forms
``x_{i_1} ... x_{i_d}`` with ``d = n - k`` and ``i_j <= k + j - 2``.
"""

from __future__ import annotations

import random
import re
from bisect import bisect_right
from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator, Sequence, Union

Monomial = tuple  # tuple[int, ...], weakly increasing

IDENTITY: Monomial = ()


class ParameterError(ValueError):
    """Invalid numeric parameter (e.g. ``k > n`` for a Catalan set)."""


class BudgetExhausted(RuntimeError):
    """A bounded search ran out of its configured budget."""


class MonomialParseError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


# ---------------------------------------------------------------------------
# normal forms


def _insert(w: list, i: int) -> None:
    # w is normal; append x_i and push it left through every larger letter.
    p = bisect_right(w, i)
    for t in range(p, len(w)):
        w[t] += 1
    w.insert(p, i)


def normalize(word: Iterable[int]) -> Monomial:
    """Normal form of a raw word.

    Letters are appended one at a time and the single new inversion is
    resolved immediately, which is the rightmost-inversion-first strategy.
    """
    w: list = []
    for i in word:
        if i < 0:
            raise ValueError(f"negative generator index {i}")
        _insert(w, i)
    return tuple(w)


def rewrite_step(word: Sequence[int], pos: int) -> list:
    """Apply ``x_j x_i -> x_i x_{j+1}`` at ``(pos, pos+1)``; requires an inversion there."""
    j, i = word[pos], word[pos + 1]
    if not j > i:
        raise ValueError(f"no inversion at position {pos}")
    w = list(word)
    w[pos], w[pos + 1] = i, j + 1
    return w


def inversions(word: Sequence[int]) -> list:
    return [t for t in range(len(word) - 1) if word[t] > word[t + 1]]


def normalize_by_strategy(word: Sequence[int], strategy: str = "rightmost",
                          rng: random.Random | None = None) -> Monomial:
    """Normalize by literal single-step rewriting.

    ``strategy`` is one of ``"rightmost"``, ``"leftmost"`` or ``"random"``
    (the last one needs ``rng``).  Used to exercise confluence; ``normalize``
    is the fast path.
    """
    w = list(word)
    while True:
        inv = inversions(w)
        if not inv:
            return tuple(w)
        if strategy == "rightmost":
            pos = inv[-1]
        elif strategy == "leftmost":
            pos = inv[0]
        elif strategy == "random":
            pos = rng.choice(inv)
        else:
            raise ValueError(f"unknown strategy {strategy!r}")
        w = rewrite_step(w, pos)


def is_normal(w: Sequence[int]) -> bool:
    return all(w[t] <= w[t + 1] for t in range(len(w) - 1)) and all(i >= 0 for i in w)


def multiply(a: Monomial, b: Monomial) -> Monomial:
    w = list(a)
    for i in b:
        _insert(w, i)
    return tuple(w)


def power(i: int, e: int) -> Monomial:
    return (i,) * e


def shift(w: Monomial, k: int = 1) -> Monomial:
    """Shift endomorphism applied ``k`` times (negative ``k`` undoes it when defined)."""
    if k < 0 and w and w[0] + k < 0:
        raise ValueError(f"cannot shift {format_monomial(w)} down by {-k}")
    return tuple(i + k for i in w)


def degree(w: Monomial) -> int:
    return len(w)


# ---------------------------------------------------------------------------
# divisibility


def generator_left_quotient(i: int, w: Monomial) -> Monomial | None:
    """``c`` with ``x_i c = w``, or None.

    Prepending ``x_i`` to a normal word ``c`` walks the letter right past
    every ``c_t < i + t``, raising it by one each time; so ``x_i`` divides
    ``w`` exactly when the first ``t`` with ``w_t >= i + t`` has equality.
    """
    for t, wt in enumerate(w):
        if wt >= i + t:
            if wt == i + t:
                return w[:t] + w[t + 1:]
            return None
    return None


def top_cells(w: Monomial) -> list:
    """Generators that left-divide ``w``, in increasing order.

    These are the strict prefix records of ``w_t - t``.
    """
    tops = []
    best = -1
    for t, wt in enumerate(w):
        if wt - t > best:
            best = wt - t
            tops.append(best)
    return tops


def left_quotient(a: Monomial, b: Monomial) -> Monomial | None:
    """The unique ``c`` with ``a c = b`` (M is cancellative), or None."""
    c = b
    for i in a:
        c = generator_left_quotient(i, c)
        if c is None:
            return None
    return c


def left_divides(a: Monomial, b: Monomial) -> bool:
    return left_quotient(a, b) is not None


def _complement(i: int, j: int) -> tuple:
    # f(x_i, x_j): x_i f(x_i, x_j) = x_j f(x_j, x_i) is the lcm of two letters
    if i == j:
        return ()
    if i < j:
        return (j + 1,)
    return (j,)


def right_complement(a: Monomial, b: Monomial) -> tuple:
    """Return ``(c, d)`` with ``a c = b d = right_lcm(a, b)``.

    Subword reversing of ``a^{-1} b``.  Every letter complement has length
    at most one, so the reversing grid is ``|a| x |b|`` and always closes.
    """
    c = list(b)
    d: list = []
    for i in a:
        # reverse x_i^{-1} c  into  c' x^{-1}  with  x_i c' = c x
        x = [i]
        nxt = []
        for j in c:
            if not x:
                nxt.append(j)
                continue
            nxt.extend(_complement(x[0], j))
            x = list(_complement(j, x[0]))
        d.extend(x)
        c = nxt
    return normalize(c), normalize(d)


def right_lcm(a: Monomial, b: Monomial, max_degree: int | None = None) -> Monomial:
    """Least common right multiple.

    ``max_degree`` (default ``deg a + deg b + 4``) bounds the answer; the
    reversing never exceeds ``deg a + deg b`` so the default cannot trip.
    """
    if max_degree is None:
        max_degree = len(a) + len(b) + 4
    c, d = right_complement(a, b)
    m = multiply(a, c)
    if len(m) > max_degree:
        raise BudgetExhausted(f"lcm degree {len(m)} exceeds budget {max_degree}")
    return m


# ---------------------------------------------------------------------------
# Catalan sets


def catalan(j: int) -> int:
    if j < 0:
        raise ParameterError(f"catalan index must be >= 0, got {j}")
    return comb(2 * j, j) // (j + 1)


def catalan_triangle(n: int, k: int) -> int:
    """``b_{nk} = k (2n-k-1)! / (n! (n-k)!)``, the size of ``S_{k,n}``."""
    if not 1 <= k <= n:
        raise ParameterError(f"need 1 <= k <= n, got n={n}, k={k}")
    # k/n * C(2n-k-1, n-1), kept integral
    return k * comb(2 * n - k - 1, n - 1) // n


def in_catalan_set(w: Monomial, k: int, n: int) -> bool:
    if len(w) != n - k:
        return False
    prev = 0
    for j, i in enumerate(w):
        if i < prev or i > k + j - 1:
            return False
        prev = i
    return True


def top_width(w: Monomial) -> int:
    """Smallest ``k >= 1`` with ``w`` in ``S_{k, k + deg w}``."""
    return max([1] + [i - j + 1 for j, i in enumerate(w)])


@dataclass(frozen=True)
class Explicit:
    monomials: tuple

    def __post_init__(self):
        object.__setattr__(self, "monomials",
                           tuple(sorted({normalize(m) for m in self.monomials})))


@dataclass(frozen=True)
class CatalanSet:
    k: int
    n: int

    def __post_init__(self):
        if not 1 <= self.k <= self.n:
            raise ParameterError(f"S_{{k,n}} needs 1 <= k <= n, got k={self.k}, n={self.n}")


@dataclass(frozen=True)
class CatalanSetMinus:
    """``S_{k,n}`` minus shapes ``(offset, k', n')`` meaning ``shift(S_{k',n'}, offset)``."""
    k: int
    n: int
    excluded: tuple = ()

    def __post_init__(self):
        if not 1 <= self.k <= self.n:
            raise ParameterError(f"S_{{k,n}} needs 1 <= k <= n, got k={self.k}, n={self.n}")
        object.__setattr__(self, "excluded", tuple(tuple(e) for e in self.excluded))


SetDescriptor = Union[Explicit, CatalanSet, CatalanSetMinus]


def _iter_catalan(k: int, n: int) -> Iterator[Monomial]:
    d = n - k
    if d == 0:
        yield ()
        return
    w = [0] * d

    def rec(j: int, lo: int):
        hi = k + j - 1
        if j == d - 1:
            for i in range(lo, hi + 1):
                w[j] = i
                yield tuple(w)
            return
        for i in range(lo, hi + 1):
            w[j] = i
            yield from rec(j + 1, i)

    yield from rec(0, 0)


def _catalan_list(k: int, n: int) -> list:
    # layered extension keeps lexicographic order and is much faster than
    # the generator for full materialization
    layer = [()]
    for j in range(n - k):
        hi = k + j - 1
        nxt = []
        for w in layer:
            lo = w[-1] if w else 0
            nxt.extend([w + (i,) for i in range(lo, hi + 1)])
        layer = nxt
    return layer


def iter_set(d: SetDescriptor) -> Iterator[Monomial]:
    """Stream the elements of a set descriptor in lexicographic order."""
    if isinstance(d, Explicit):
        yield from d.monomials
    elif isinstance(d, CatalanSet):
        yield from _iter_catalan(d.k, d.n)
    elif isinstance(d, CatalanSetMinus):
        excl = _excluded(d)
        for w in _iter_catalan(d.k, d.n):
            if w not in excl:
                yield w
    else:
        raise TypeError(f"not a set descriptor: {d!r}")


def _excluded(d: CatalanSetMinus) -> set:
    out = set()
    for off, k, n in d.excluded:
        out.update(shift(w, off) for w in _catalan_list(k, n))
    return out


def enumerate_set(d: SetDescriptor) -> list:
    """All elements of ``d``: exact, duplicate-free, lexicographically ordered."""
    if isinstance(d, CatalanSet):
        return _catalan_list(d.k, d.n)
    if isinstance(d, CatalanSetMinus):
        excl = _excluded(d)
        return [w for w in _catalan_list(d.k, d.n) if w not in excl]
    return list(iter_set(d))


def set_size(d: SetDescriptor) -> int:
    if isinstance(d, CatalanSet):
        return catalan_triangle(d.n, d.k)
    return len(enumerate_set(d))


def product_set(s: Iterable[Monomial], y: Iterable[Monomial]) -> set:
    ys = list(y)
    return {multiply(a, b) for a in s for b in ys}


# ---------------------------------------------------------------------------
# text format

_FACTOR = re.compile(r"\s*x(\d+)(?:\s*\^\s*(\d+))?\s*")


def parse_monomial(text: str) -> Monomial:
    """Parse ``1`` or ``x<i>[^e]`` factors joined by ``*`` (any order)."""
    s = text.strip()
    if s == "1":
        return ()
    if not s:
        raise MonomialParseError("empty monomial", text, 0)
    word = []
    pos = 0
    offset = len(text) - len(text.lstrip())
    while True:
        m = _FACTOR.match(s, pos)
        if not m:
            raise MonomialParseError("expected factor x<index>", text, offset + pos)
        word.extend([int(m.group(1))] * int(m.group(2) or 1))
        pos = m.end()
        if pos == len(s):
            break
        if s[pos] != "*":
            raise MonomialParseError(f"unexpected {s[pos]!r}", text, offset + pos)
        pos += 1
    return normalize(word)


def format_monomial(w: Monomial) -> str:
    if not w:
        return "1"
    parts = []
    t = 0
    while t < len(w):
        e = 1
        while t + e < len(w) and w[t + e] == w[t]:
            e += 1
        parts.append(f"x{w[t]}" + (f"^{e}" if e > 1 else ""))
        t += e
    return "*".join(parts)


def parse_set_descriptor(text: str) -> SetDescriptor:
    """``S:k:n``, ``S:k:n/o:k':n'/...`` (exclusions) or comma-separated monomials."""
    s = text.strip()
    if s.startswith("S:"):
        head, *excl = s.split("/")
        try:
            _, k, n = head.split(":")
            if not excl:
                return CatalanSet(int(k), int(n))
            shapes = []
            for e in excl:
                o, kk, nn = e.split(":")
                shapes.append((int(o), int(kk), int(nn)))
        except ValueError:
            raise MonomialParseError("malformed set descriptor", text, 0) from None
        return CatalanSetMinus(int(k), int(n), tuple(shapes))
    return Explicit(tuple(parse_monomial(t) for t in s.split(",")))


def format_set_descriptor(d: SetDescriptor) -> str:
    if isinstance(d, CatalanSet):
        return f"S:{d.k}:{d.n}"
    if isinstance(d, CatalanSetMinus):
        return "/".join([f"S:{d.k}:{d.n}"] + [f"{o}:{k}:{n}" for o, k, n in d.excluded])
    return ",".join(format_monomial(m) for m in d.monomials)
