"""Sparse exact row echelon over :class:`~ospq.scalars.Scalar`.

Vectors are dicts ``column -> Scalar`` with no zero entries.  Each stored
row is normalized so that its pivot (the column of largest ``key``) has
coefficient 1.  Reduction eliminates pivot columns from the top down, so the
remainder of a vector modulo the span is supported on non-leading columns
only and is therefore independent of which basis of the span was inserted.
"""

from __future__ import annotations

from .scalars import ONE, ZERO, Scalar


def add_scaled(target: dict, source: dict, c: Scalar) -> None:
    """target += c * source, in place, dropping zeros."""
    for k, x in source.items():
        y = target.get(k)
        s = x * c if y is None else y + x * c
        if s.is_zero():
            target.pop(k, None)
        else:
            target[k] = s


def scale(vec: dict, c: Scalar) -> dict:
    if c.is_zero():
        return {}
    return {k: x * c for k, x in vec.items()}


class Echelon:
    """Incrementally built echelon basis of a subspace.

    With ``track=True`` every row also records which inserted vectors (by
    tag) it is a combination of, and insertions that reduce to zero are kept
    as linear dependencies in :attr:`relations`.
    """

    def __init__(self, key=None, track: bool = False):
        self.key = key if key is not None else (lambda c: c)
        self.rows: dict = {}
        self.track = track
        self.combos: dict = {}
        self.relations: list[dict] = []

    def __len__(self):
        return len(self.rows)

    def _leading(self, vec: dict):
        return max(vec, key=self.key)

    def reduce(self, vec: dict, combo: dict | None = None):
        """Return ``(remainder, combo)`` with remainder free of pivot columns."""
        vec = dict(vec)
        combo = dict(combo) if combo is not None else None
        while True:
            hits = [c for c in vec if c in self.rows]
            if not hits:
                return vec, combo
            col = max(hits, key=self.key)
            c = vec[col]
            add_scaled(vec, self.rows[col], -c)
            if combo is not None:
                add_scaled(combo, self.combos[col], -c)

    def add(self, vec: dict, tag=None) -> bool:
        """Insert ``vec``; returns True when it enlarged the span."""
        combo = {tag: ONE} if self.track else None
        rem, combo = self.reduce(vec, combo)
        if not rem:
            if self.track:
                self.relations.append(combo)
            return False
        piv = self._leading(rem)
        inv = rem[piv].inverse()
        self.rows[piv] = scale(rem, inv)
        if self.track:
            self.combos[piv] = scale(combo, inv)
        return True

    def contains(self, vec: dict) -> bool:
        rem, _ = self.reduce(vec)
        return not rem

    def basis(self) -> list[dict]:
        """Rows ordered by decreasing pivot."""
        return [self.rows[p] for p in sorted(self.rows, key=self.key, reverse=True)]

    def reduced_basis(self) -> list[dict]:
        """Fully back-substituted rows, ordered by decreasing pivot."""
        order = sorted(self.rows, key=self.key)
        done: dict = {}
        for p in order:
            row = dict(self.rows[p])
            for q in [c for c in row if c in done and c != p]:
                add_scaled(row, done[q], -row[q])
            done[p] = row
        return [done[p] for p in reversed(order)]


def kernel(vectors: list[dict]) -> list[dict]:
    """Basis of ``{c : sum_j c[j] * vectors[j] = 0}`` as dicts index -> Scalar."""
    ech = Echelon(track=True, key=_mixed_key)
    for j, v in enumerate(vectors):
        ech.add(v, tag=j)
    return [r for r in ech.relations if r]


def rank(vectors: list[dict]) -> int:
    ech = Echelon(key=_mixed_key)
    for v in vectors:
        ech.add(v)
    return len(ech)


def _mixed_key(col):
    # columns from different sources may not be mutually comparable
    return (type(col).__name__, repr(col))


def solve_unique(columns: list[dict], target: dict):
    """Coefficients x with sum_j x[j] columns[j] = target, or None."""
    ech = Echelon(track=True, key=_mixed_key)
    for j, v in enumerate(columns):
        ech.add(v, tag=j)
    rem, combo = ech.reduce(target, {})
    if rem:
        return None
    return {j: -c for j, c in combo.items()} if combo else {}


__all__ = ["Echelon", "kernel", "rank", "solve_unique", "add_scaled", "scale", "ZERO"]
