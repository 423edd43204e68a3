"""Chains in V (x) C^{(x) n} with V one-dimensional, and finite windows of them.

A chain of degree n is a dict from n-tuples of slot keys to scalars.  For a
presented algebra the slot keys are normal-form words; the auxiliary
coalgebra of a coextension uses tagged keys instead, so nothing here
assumes a particular key type.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .presentation import UNIT, HopfPresentation, graded_basis, lin_add
from .scalars import ONE, format_scalar


class ClosureError(RuntimeError):
    """An operator left the declared window."""

    def __init__(self, what: str, residue_size: int, sample=None):
        super().__init__(f"{what}: {residue_size} term(s) outside the window" +
                         (f", e.g. {sample}" if sample is not None else ""))
        self.what = what
        self.residue_size = residue_size


@dataclass
class ChainElement:
    degree: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {tuple(k): v for k, v in self.terms.items() if v}
        for k in self.terms:
            if len(k) != self.degree:
                raise ValueError(f"tensor {k} does not have degree {self.degree}")

    @classmethod
    def basis(cls, key) -> "ChainElement":
        return cls(len(key), {tuple(key): ONE})

    def __add__(self, other: "ChainElement") -> "ChainElement":
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        out = dict(self.terms)
        for k, c in other.terms.items():
            lin_add(out, k, c)
        return ChainElement(self.degree, out)

    def __neg__(self):
        return ChainElement(self.degree, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "ChainElement":
        return ChainElement(self.degree, {k: c * v for k, v in self.terms.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, ChainElement) and self.degree == other.degree and self.terms == other.terms


def format_chain(x: ChainElement, fmt_slot: Callable) -> str:
    """``c · m1 ⊗ m2 ⊗ … ⊗ mn`` summed; the empty tensor (degree 0) is ``()``."""
    if not x.terms:
        return "0"
    parts = []
    for key in sorted(x.terms, key=lambda k: [str(s) for s in k]):
        c = x.terms[key]
        body = " ⊗ ".join(fmt_slot(s) for s in key) if key else "()"
        cs = format_scalar(c)
        parts.append(f"({cs}) · {body}" if " " in cs else f"{cs} · {body}")
    return " + ".join(parts)


def word_formatter(p: HopfPresentation) -> Callable:
    return p.format_word


def parse_chain(p: HopfPresentation, text: str) -> ChainElement:
    """Inverse of :func:`format_chain` for presented algebras."""
    from .scalars import parse_scalar

    text = text.strip()
    if text == "0":
        raise ValueError("cannot infer the degree of the zero chain")
    terms: dict = {}
    degree = None
    for part in _split_top(text):
        coef, _, body = part.partition(" · ")
        coef = coef.strip()
        if coef.startswith("(") and coef.endswith(")"):
            coef = coef[1:-1]
        body = body.strip()
        slots = () if body == "()" else tuple(p.parse_word(s.strip()) for s in body.split(" ⊗ "))
        if degree is None:
            degree = len(slots)
        lin_add(terms, slots, parse_scalar(coef))
    return ChainElement(degree, terms)


def _split_top(text: str) -> list:
    out, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        depth += (ch == "(") - (ch == ")")
        if depth == 0 and text.startswith(" + ", i):
            out.append(text[start:i])
            start = i + 3
    out.append(text[start:])
    return out


# --- windows ---------------------------------------------------------------------

@dataclass(frozen=True)
class Window:
    """Finite slice of V (x) C^{(x) n}.

    ``caps`` bound generator exponents per slot; ``grade`` filters the total
    multigrade (summed over slots); ``filtration`` = (letters, c) bounds the
    total number of those letters over all slots; ``normalized`` drops
    tensors with a slot equal to the unit.
    """

    degree: int
    caps: tuple = ()
    grade: Optional[tuple] = None
    normalized: bool = False
    filtration: Optional[tuple] = None

    @classmethod
    def make(cls, degree, caps: dict, grade=None, normalized=False, filtration=None) -> "Window":
        filt = None
        if filtration is not None:
            letters, c = filtration
            filt = (tuple(letters), int(c))
        return cls(degree, tuple(sorted(caps.items())), None if grade is None else tuple(grade),
                   normalized, filt)

    @property
    def cap_dict(self) -> dict:
        return dict(self.caps)

    def with_degree(self, n: int) -> "Window":
        return Window(n, self.caps, self.grade, self.normalized, self.filtration)


def tensor_basis(
    slot_keys: list,
    n: int,
    grade_of: Callable,
    grade=None,
    count_of: Optional[Callable] = None,
    count_cap: Optional[int] = None,
    exclude=(),
    nonnegative: bool = False,
) -> list:
    """All n-tuples of ``slot_keys`` (in order) with total grade ``grade`` and
    total count at most ``count_cap``; lexicographic in the slot order."""
    keys = [k for k in slot_keys if k not in set(exclude)]
    gr = {k: tuple(grade_of(k)) for k in keys}
    cnt = {k: (count_of(k) if count_of else 0) for k in keys}
    dim = len(next(iter(gr.values()))) if gr else 0
    target = tuple(grade) if grade is not None else None
    out = []

    def rec(prefix, g, c):
        if len(prefix) == n:
            if target is None or g == target:
                out.append(tuple(prefix))
            return
        for k in keys:
            c2 = c + cnt[k]
            if count_cap is not None and c2 > count_cap:
                continue
            g2 = tuple(a + b for a, b in zip(g, gr[k]))
            if nonnegative and target is not None and any(a > b for a, b in zip(g2, target)):
                continue
            prefix.append(k)
            rec(prefix, g2, c2)
            prefix.pop()

    rec([], (0,) * dim, 0)
    return out


def _nonnegative(p: HopfPresentation) -> bool:
    return all(x >= 0 for g in p.generators for x in g.grading)


def basis(w: Window, p: HopfPresentation) -> list:
    slot = graded_basis(p, w.cap_dict)
    count_of = None
    cap = None
    if w.filtration is not None:
        letters, cap = w.filtration
        letters = set(letters)
        count_of = lambda m: sum(1 for x in m if x in letters)
    grade = w.grade
    if grade is not None and len(grade) != p.grade_dim:
        raise ValueError("grade filter has the wrong dimension")
    return tensor_basis(slot, w.degree, p.monomial_grade, grade, count_of, cap,
                        exclude=(UNIT,) if w.normalized else (), nonnegative=_nonnegative(p))


class Indexed:
    """A basis with a position index, for coordinates."""

    def __init__(self, keys: list):
        self.keys = list(keys)
        self.pos = {k: i for i, k in enumerate(self.keys)}

    def __len__(self):
        return len(self.keys)

    def coordinates(self, terms: dict):
        """Split ``terms`` into (in-window coordinate dict, residue terms)."""
        vec, res = {}, {}
        for k, c in terms.items():
            i = self.pos.get(k)
            if i is None:
                res[k] = c
            else:
                vec[i] = c
        return vec, res

    def element(self, vec: dict) -> dict:
        return {self.keys[i]: c for i, c in vec.items() if c}


def coordinates(x: ChainElement, w: Window, p: HopfPresentation):
    """(coordinate vector over basis(w, p), residue chain)."""
    if x.degree != w.degree:
        raise ValueError("degree mismatch")
    idx = Indexed(basis(w, p))
    vec, res = idx.coordinates(x.terms)
    return vec, ChainElement(x.degree, res)
