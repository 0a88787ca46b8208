"""Exact sparse Gaussian elimination over Q and GF(p).

Rows are dicts ``col -> value``.  Pivots are picked Markowitz-style: the
active column with the fewest entries, then the shortest row in it, ties
broken by index so results are reproducible.  Over GF(p) rows hold ints in
``range(p)``; over Q each row is kept as a primitive integer vector
(denominators cleared, content divided out) and fractions only appear in
back substitution.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable

from .fields import Field, PrimeField, Rationals, parse_field


class SparseMatrix:
    __slots__ = ("nrows", "ncols", "field", "rows")

    def __init__(self, nrows: int, ncols: int, field: Field, rows: list | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.field = field
        self.rows = rows if rows is not None else [dict() for _ in range(nrows)]

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, field: Field,
                     entries: Iterable) -> "SparseMatrix":
        """Build from ``(row, col, value)`` triples; duplicates are summed."""
        rows = [dict() for _ in range(nrows)]
        zero = field.zero
        for r, c, v in entries:
            if not (0 <= r < nrows and 0 <= c < ncols):
                raise IndexError(f"entry ({r}, {c}) outside {nrows}x{ncols}")
            row = rows[r]
            row[c] = field.add(row[c], v) if c in row else v
        for row in rows:
            for c in [c for c, v in row.items() if v == zero]:
                del row[c]
        return cls(nrows, ncols, field, rows)

    @classmethod
    def from_dense(cls, data, field: Field) -> "SparseMatrix":
        data = [list(r) for r in data]
        ncols = len(data[0]) if data else 0
        ents = [(i, j, field.convert(v)) for i, r in enumerate(data) for j, v in enumerate(r)]
        return cls.from_entries(len(data), ncols, field, ents)

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def to_dense(self) -> list:
        out = [[self.field.zero] * self.ncols for _ in range(self.nrows)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                out[i][j] = v
        return out

    def transpose(self) -> "SparseMatrix":
        ents = [(j, i, v) for i, r in enumerate(self.rows) for j, v in r.items()]
        return SparseMatrix.from_entries(self.ncols, self.nrows, self.field, ents)

    def matvec(self, x: dict) -> dict:
        """``M x`` for a sparse vector ``x`` (dict col -> value)."""
        f = self.field
        out = {}
        for i, r in enumerate(self.rows):
            s = f.zero
            for j, v in r.items():
                if j in x:
                    s = f.add(s, f.mul(v, x[j]))
            if s != f.zero:
                out[i] = s
        return out

    # triplet text format: header "rows cols field", then "row col value" lines
    def dumps(self) -> str:
        lines = [f"{self.nrows} {self.ncols} {self.field.descriptor()}"]
        for i, r in enumerate(self.rows):
            for j in sorted(r):
                lines.append(f"{i} {j} {self.field.format(r[j])}")
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "SparseMatrix":
        lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        nr, nc, fd = lines[0].split()
        f = parse_field(fd)
        ents = []
        for ln in lines[1:]:
            i, j, v = ln.split()
            ents.append((int(i), int(j), f.parse(v)))
        return cls.from_entries(int(nr), int(nc), f, ents)


# ---------------------------------------------------------------------------
# elimination kernels


def _combine_mod(p):
    def combine(row: dict, prow: dict, c: int) -> None:
        # prow is normalized so prow[c] == 1
        f = row[c]
        for k, v in prow.items():
            nv = (row.get(k, 0) - f * v) % p
            if nv:
                row[k] = nv
            else:
                row.pop(k, None)
    return combine


def _combine_int(row: dict, prow: dict, c: int) -> None:
    a = prow[c]
    b = row[c]
    g = gcd(a, b)
    a //= g
    b //= g
    for k in row:
        row[k] *= a
    for k, v in prow.items():
        nv = row.get(k, 0) - b * v
        if nv:
            row[k] = nv
        else:
            row.pop(k, None)
    _make_primitive(row)


def _make_primitive(row: dict) -> None:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return
    if g > 1:
        for k in row:
            row[k] //= g


def _integer_row(row: dict) -> dict:
    den = 1
    for v in row.values():
        den = lcm(den, Fraction(v).denominator)
    out = {k: int(Fraction(v) * den) for k, v in row.items() if v}
    _make_primitive(out)
    return out


class Echelon:
    """Result of elimination: pivots in elimination order.

    ``pivots`` is a list of ``(col, row)``; each row contains its pivot
    column, free columns and pivot columns chosen later.  ``leftover``
    holds the right-hand-side residue of rows that became zero on the
    coefficient part (only used for affine solves).
    """

    def __init__(self, field: Field, ncols: int, pivots: list, leftover: list):
        self.field = field
        self.ncols = ncols
        self.pivots = pivots
        self.leftover = leftover

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def free_columns(self) -> list:
        piv = {c for c, _ in self.pivots}
        return [j for j in range(self.ncols) if j not in piv]

    def back_substitute(self, x: dict, rhs_col: int | None = None) -> dict:
        """Fill pivot variables given free variables in ``x`` (modified and returned)."""
        f = self.field
        exact = isinstance(f, Rationals)
        for c, row in reversed(self.pivots):
            s = Fraction(0) if exact else 0
            for k, v in row.items():
                if k == c:
                    continue
                if k == rhs_col:
                    s -= v
                elif k in x:
                    s += v * x[k]
            if exact:
                val = -s / row[c]
            else:
                p = f.p
                val = -s * pow(row[c], -1, p) % p
            if val:
                x[c] = val
            else:
                x.pop(c, None)
        return x


def eliminate(M: SparseMatrix, rhs: dict | None = None) -> Echelon:
    """Markowitz elimination of ``M`` (optionally augmented by ``rhs``)."""
    f = M.field
    ncols = M.ncols
    rhs_col = ncols  # never chosen as a pivot
    if isinstance(f, PrimeField):
        p = f.p
        rows = {i: {k: v % p for k, v in r.items() if v % p} for i, r in enumerate(M.rows)}
        if rhs:
            for i, v in rhs.items():
                if v % p:
                    rows[i][rhs_col] = v % p
        combine = _combine_mod(p)

        def prepare(row, c):
            inv = pow(row[c], -1, p)
            if inv != 1:
                for k in row:
                    row[k] = row[k] * inv % p
    elif isinstance(f, Rationals):
        rows = {}
        for i, r in enumerate(M.rows):
            rr = dict(r)
            if rhs and i in rhs:
                rr[rhs_col] = rhs[i]
            rows[i] = _integer_row(rr)
        combine = _combine_int

        def prepare(row, c):
            pass
    else:
        raise TypeError(f"unsupported field {f!r}")

    rows = {i: r for i, r in rows.items() if r}
    col_rows: dict = {}
    for i, r in rows.items():
        for k in r:
            if k != rhs_col:
                col_rows.setdefault(k, set()).add(i)
    heap = [(len(s), c) for c, s in col_rows.items()]
    heapq.heapify(heap)
    pivots = []

    while heap:
        cnt, c = heapq.heappop(heap)
        s = col_rows.get(c)
        if s is None:
            continue
        if len(s) != cnt:
            heapq.heappush(heap, (len(s), c))
            continue
        if cnt == 0:
            del col_rows[c]
            continue
        pr = min(s, key=lambda r: (len(rows[r]), r))
        prow = rows.pop(pr)
        touched = set()
        for k in prow:
            if k != rhs_col:
                col_rows[k].discard(pr)
                touched.add(k)
        prepare(prow, c)
        for r in list(s):
            row = rows[r]
            combine(row, prow, c)
            for k in prow:
                if k == rhs_col:
                    continue
                if k in row:
                    col_rows[k].add(r)
                else:
                    col_rows[k].discard(r)
            if not row:
                del rows[r]
        del col_rows[c]
        touched.discard(c)
        for k in touched:
            heapq.heappush(heap, (len(col_rows[k]), k))
        pivots.append((c, prow))

    leftover = [r[rhs_col] for r in rows.values() if rhs_col in r]
    return Echelon(f, ncols, pivots, leftover)


def rank(M: SparseMatrix) -> int:
    return eliminate(M).rank


def nullspace(M: SparseMatrix, limit: int | None = None) -> list:
    """Basis of the right kernel as sparse vectors (dicts col -> value).

    Basis vector ``t`` has a one in the ``t``-th free column (in increasing
    column order) and zeros in the other free columns.  ``limit`` caps the
    number of vectors returned.
    """
    ech = eliminate(M)
    free = ech.free_columns()
    if limit is not None:
        free = free[:limit]
    one = M.field.one
    return [ech.back_substitute({j: one}) for j in free]


def nullity(M: SparseMatrix) -> int:
    return M.ncols - rank(M)


def solve_affine(M: SparseMatrix, rhs: dict) -> dict | None:
    """One solution of ``M x = rhs`` (free variables zero), or None."""
    ech = eliminate(M, rhs)
    if any(v != 0 for v in ech.leftover):
        return None
    return ech.back_substitute({}, rhs_col=M.ncols)


def vector_to_dense(v: dict, n: int, field: Field) -> list:
    return [v.get(j, field.zero) for j in range(n)]
