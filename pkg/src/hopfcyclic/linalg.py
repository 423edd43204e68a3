"""Sparse exact elimination over Q(q) (or over Fraction for specializations).

Vectors are dicts ``column -> scalar``.  Columns are integers ordered by the
basis order; pivots are always the smallest live column, so reduction is
deterministic.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional

from .scalars import ONE, specialize


class Echelon:
    """Incrementally built row-echelon basis of a span.

    Each stored row remembers how it was combined from the inserted vectors,
    so inserting the images of a basis yields kernel vectors for free.
    """

    def __init__(self, one=ONE):
        self.one = one
        self.rows: dict = {}      # pivot -> (row, combo)
        self.inserted = 0

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _pivot(self, v: dict):
        best = None
        for k in v:
            if k in self.rows and (best is None or k < best):
                best = k
        return best

    def reduce(self, v: dict, combo: Optional[dict] = None):
        """Reduce ``v`` against the stored rows; returns (remainder, combo)."""
        v = dict(v)
        combo = dict(combo) if combo is not None else None
        while True:
            k = self._pivot(v)
            if k is None:
                return v, combo
            c = v[k]
            row, rcombo = self.rows[k]
            for j, x in row.items():
                nv = v.get(j)
                nv = -c * x if nv is None else nv - c * x
                if nv:
                    v[j] = nv
                else:
                    v.pop(j, None)
            if combo is not None:
                for j, x in rcombo.items():
                    nv = combo.get(j)
                    nv = -c * x if nv is None else nv - c * x
                    if nv:
                        combo[j] = nv
                    else:
                        combo.pop(j, None)

    def insert(self, v: dict, tag=None):
        """Add ``v`` to the span.  Returns None if independent, otherwise the
        dependency (a combo over tags) showing the reduction to zero."""
        tag = self.inserted if tag is None else tag
        self.inserted += 1
        rem, combo = self.reduce(v, {tag: self.one})
        if not rem:
            return combo
        k = min(rem)
        inv = self.one / rem[k]
        row = {j: x * inv for j, x in rem.items()}
        combo = {j: x * inv for j, x in combo.items()}
        self.rows[k] = (row, combo)
        return None

    def contains(self, v: dict) -> bool:
        rem, _ = self.reduce(v)
        return not rem


def rank(vectors: Iterable[dict], one=ONE) -> int:
    e = Echelon(one)
    for v in vectors:
        e.insert(v)
    return e.rank


def kernel(images: list, one=ONE) -> list:
    """Kernel basis of the map sending basis vector i to ``images[i]``."""
    e = Echelon(one)
    out = []
    for i, v in enumerate(images):
        dep = e.insert(v, tag=i)
        if dep is not None:
            out.append(dep)
    return out


def solve(images: list, target: dict, one=ONE) -> Optional[dict]:
    """Some x with sum x_i images[i] = target, or None."""
    e = Echelon(one)
    for i, v in enumerate(images):
        e.insert(v, tag=i)
    rem, combo = e.reduce(target, {})
    if rem:
        return None
    return {i: -c for i, c in combo.items()}


def specialize_vectors(vectors: list, q0) -> list:
    return [{k: specialize(c, q0) for k, c in v.items() if specialize(c, q0)} for v in vectors]


def specialized_rank(vectors: list, q0) -> int:
    return rank(specialize_vectors(vectors, q0), Fraction(1))


class RankMismatch(ArithmeticError):
    pass


def checked_rank(vectors: list, points=(2, 3)) -> int:
    """Symbolic rank, cross-checked against the ranks at q = 2 and q = 3."""
    vectors = list(vectors)
    r = rank(vectors)
    symbolic = any(not c.is_laurent() or c.num[1] and (len(c.num[1]) > 1 or c.num[0] != 0)
                   for v in vectors for c in v.values())
    if symbolic:
        for q0 in points:
            rs = specialized_rank(vectors, q0)
            if rs != r:
                raise RankMismatch(f"rank {r} over Q(q) but {rs} at q={q0}")
    return r
