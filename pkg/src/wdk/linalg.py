"""Exact sparse linear algebra over the rationals.

Vectors are dicts ``coordinate -> coefficient``.  Elimination is fraction
free: rows are scaled to integers on entry and every combination step is
followed by division by the row content, which keeps entries small.  Pivots
are chosen deterministically as the smallest column index present.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence


def _integral(row: Mapping) -> dict:
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = den * v.denominator // math.gcd(den, v.denominator)
    if den == 1:
        out = {k: int(v) for k, v in row.items() if v}
    else:
        out = {k: int(v * den) for k, v in row.items() if v}
    return _primitive(out)


def _primitive(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = math.gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {k: v // g for k, v in row.items()}
    return row


class Echelon:
    """Incrementally maintained reduced row echelon form over integer rows.

    Columns are integers; the pivot of a row is its smallest column.  Each
    inserted row reports whether it enlarged the span and, when it did not,
    the reduction leaves a zero row.
    """

    def __init__(self):
        self.rows: dict[int, dict[int, int]] = {}  # pivot column -> row

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, row: Mapping[int, int]) -> dict[int, int]:
        row = dict(row)
        for c in sorted(k for k in row if k in self.rows):
            v = row.get(c)
            if not v:
                continue
            prow = self.rows[c]
            p = prow[c]
            g = math.gcd(p, v)
            a, b = p // g, v // g
            if a != 1:
                row = {k: a * x for k, x in row.items()}
            for k, x in prow.items():
                nv = row.get(k, 0) - b * x
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
            row = _primitive(row)
        return row

    def insert(self, row: Mapping) -> bool:
        row = self.reduce(_integral(row))
        if not row:
            return False
        piv = min(row)
        if row[piv] < 0:
            row = {k: -v for k, v in row.items()}
        # keep the form reduced: clear the new pivot column from older rows
        for c, other in list(self.rows.items()):
            v = other.get(piv)
            if v:
                p = row[piv]
                g = math.gcd(p, v)
                a, b = p // g, v // g
                new = {k: a * x for k, x in other.items()}
                for k, x in row.items():
                    nv = new.get(k, 0) - b * x
                    if nv:
                        new[k] = nv
                    else:
                        new.pop(k, None)
                new = _primitive(new)
                if new[c] < 0:
                    new = {k: -x for k, x in new.items()}
                self.rows[c] = new
        self.rows[piv] = row
        return True

    def contains(self, row: Mapping) -> bool:
        return not self.reduce(_integral(row))

    def nullspace(self, ncols: int) -> list[dict[int, int]]:
        """Basis of ``{v : row . v = 0 for all rows}`` in ``range(ncols)``.

        One vector per free column ``f`` with ``v[f] > 0``, zero on the other
        free columns; vectors are primitive integer vectors.
        """
        pivots = set(self.rows)
        by_free: dict[int, list[int]] = {}
        for c, row in self.rows.items():
            for k in row:
                if k != c:
                    by_free.setdefault(k, []).append(c)
        basis = []
        for f in range(ncols):
            if f in pivots:
                continue
            users = by_free.get(f, [])
            lcm = 1
            for c in users:
                p = self.rows[c][c]
                lcm = lcm * p // math.gcd(lcm, p)
            vec = {f: lcm}
            for c in users:
                row = self.rows[c]
                vec[c] = -row[f] * (lcm // row[c])
            basis.append(_primitive(vec))
        return basis


def rank(vectors: Iterable[Mapping]) -> int:
    e = Echelon()
    for v in vectors:
        e.insert(v)
    return e.rank


def index_coordinates(vectors: Sequence[Mapping[Hashable, object]]) -> tuple[list[dict[int, object]], list]:
    """Relabel arbitrary hashable coordinates as integers in first-seen order."""
    index: dict = {}
    out = []
    for v in vectors:
        row = {}
        for k, x in v.items():
            if x:
                if k not in index:
                    index[k] = len(index)
                row[index[k]] = x
        out.append(row)
    return out, list(index)


def dependencies(vectors: Sequence[Mapping[Hashable, object]]) -> list[dict[int, int]]:
    """Basis of linear relations ``sum c_i v_i = 0`` among ``vectors``.

    Returned as primitive integer dicts ``i -> c_i``.  The computation works on
    the transposed system: rows are coordinates, columns are the vectors.
    """
    n = len(vectors)
    columns: dict = {}
    for j, v in enumerate(vectors):
        for k, x in v.items():
            if x:
                columns.setdefault(k, {})[j] = x
    e = Echelon()
    for row in columns.values():
        e.insert(row)
    return e.nullspace(n)


class CoordinateIndex(dict):
    """Assigns consecutive integers to hashable coordinates on first use."""

    def row(self, v: Mapping[Hashable, object]) -> dict[int, object]:
        out = {}
        for k, x in v.items():
            if x:
                if k not in self:
                    self[k] = len(self)
                out[self[k]] = x
        return out
