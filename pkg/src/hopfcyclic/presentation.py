"""Presented Hopf algebras: string rewriting to normal forms, and the
structure maps extended from generators.

A monomial is a tuple of letters (generator names).  Invertible generators
come in pairs of letters (``K1`` and ``iK1``); the pairing is declared on the
generator.  Rules are oriented ``lhs word -> linear combination of words``;
a word is in normal form when it contains no left-hand side as a subword.
"""
from __future__ import annotations

import itertools
import random
import sys
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .scalars import ONE, ZERO, QScalar, as_scalar, format_scalar, parse_scalar

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

Monomial = tuple  # tuple[str, ...]
UNIT: Monomial = ()


class RewriteError(Exception):
    pass


class BudgetExceeded(RewriteError):
    def __init__(self, word, steps):
        super().__init__(f"rewriting budget of {steps} steps exceeded on word {format_word(word)}")
        self.word = word


class OutOfWindowError(RewriteError):
    """A rule needs a generator beyond the instantiated range (e.g. delta_{max+1})."""

    def __init__(self, word):
        super().__init__(f"word {format_word(word)} leaves the instantiated generator range")
        self.word = word


class UnsupportedOperation(Exception):
    pass


@dataclass(frozen=True)
class Generator:
    name: str
    grading: tuple = ()
    inverse_of: Optional[str] = None
    display: Optional[str] = None


# --- linear combinations ---------------------------------------------------

def lin_add(acc: dict, key, c: QScalar) -> None:
    """acc[key] += c, dropping zeros."""
    if not c:
        return
    old = acc.get(key)
    if old is None:
        acc[key] = c
    else:
        new = old + c
        if new:
            acc[key] = new
        else:
            del acc[key]


def lin_combine(*pairs) -> dict:
    """Sum of ``coefficient * dict`` pairs."""
    out: dict = {}
    for c, d in pairs:
        c = as_scalar(c)
        if not c:
            continue
        for k, v in d.items():
            lin_add(out, k, c * v)
    return out


def format_word(word: Monomial, names: Optional[dict] = None) -> str:
    """Compact display: runs merged into powers, inverse letters as negative powers."""
    if not word:
        return "1"
    parts = []
    for letter, grp in itertools.groupby(word):
        n = len(list(grp))
        shown = letter
        sign = 1
        if names is not None and letter in names:
            shown, sign = names[letter]
        e = n * sign
        parts.append(shown if e == 1 else f"{shown}^{e}")
    return " ".join(parts)


class AlgebraElement:
    """Finite combination of normal-form monomials with QScalar coefficients."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: "HopfPresentation", terms: dict):
        self.alg = alg
        self.terms = {m: as_scalar(c) for m, c in terms.items() if c}

    def __add__(self, other):
        other = self.alg.element(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            lin_add(out, m, c)
        return AlgebraElement(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.alg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self.alg.element(other))

    def __rsub__(self, other):
        return self.alg.element(other) - self

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return self.alg.multiply(self, other)
        c = as_scalar(other)
        return AlgebraElement(self.alg, {m: c * v for m, v in self.terms.items()})

    def __rmul__(self, other):
        if isinstance(other, AlgebraElement):
            return self.alg.multiply(other, self)
        return self * other

    def __pow__(self, n: int):
        out = self.alg.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            try:
                other = self.alg.element(other)
            except TypeError:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        return f"<{self.alg.name}: {self}>"

    def __str__(self):
        return self.alg.format_element(self.terms)


class HopfPresentation:
    """Generators, oriented rewrite rules and Hopf structure on generators."""

    def __init__(
        self,
        name: str,
        generators: Iterable[Generator],
        rules: dict,
        coproduct: dict,
        counit: dict,
        antipode: dict,
        order: Optional[list] = None,
        grading_label: str = "",
        max_steps: int = 100_000,
        counting_only: bool = False,
        notes: Optional[list] = None,
    ):
        self.name = name
        self.generators = list(generators)
        self.gen = {g.name: g for g in self.generators}
        if len(self.gen) != len(self.generators):
            raise ValueError("generator names must be unique")
        for g in self.generators:
            if g.inverse_of is not None:
                partner = self.gen.get(g.inverse_of)
                if partner is None or partner.inverse_of != g.name:
                    raise ValueError(f"inverse pairing of {g.name} is not symmetric")
        self.order = list(order) if order else [g.name for g in self.generators]
        self.rank = {n: i for i, n in enumerate(self.order)}
        # rules: lhs tuple -> dict(word -> QScalar) or None (out of window)
        self.rules = {tuple(l): (None if r is None else {tuple(w): as_scalar(c) for w, c in r.items() if c})
                      for l, r in rules.items()}
        self._lhs_lengths = sorted({len(l) for l in self.rules})
        self.coproduct_gen = {k: [(as_scalar(c), tuple(a), tuple(b)) for c, a, b in v] for k, v in coproduct.items()}
        self.counit_gen = {k: as_scalar(v) for k, v in counit.items()}
        self.antipode_gen = {k: {tuple(w): as_scalar(c) for w, c in v.items()} for k, v in antipode.items()}
        self.grading_label = grading_label
        self.max_steps = max_steps
        self.counting_only = counting_only
        self.notes = list(notes or [])
        self._nf_cache: dict = {}
        self._delta_cache: dict = {}
        self._anti_cache: dict = {}
        self._eps_cache: dict = {}
        self._steps = 0
        dim = {len(g.grading) for g in self.generators}
        self.grade_dim = dim.pop() if len(dim) == 1 else 0
        self._names = {}
        for g in self.generators:
            if g.inverse_of is not None and self._is_inverse_letter(g):
                self._names[g.name] = (self.gen[g.inverse_of].display or g.inverse_of, -1)
            elif g.display:
                self._names[g.name] = (g.display, 1)

    def _is_inverse_letter(self, g: Generator) -> bool:
        # by convention the second-declared member of a pair is the inverse letter
        return self.generators.index(g) > self.generators.index(self.gen[g.inverse_of])

    # --- elements --------------------------------------------------------
    def one(self) -> AlgebraElement:
        return AlgebraElement(self, {UNIT: ONE})

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, {})

    def element(self, x) -> AlgebraElement:
        if isinstance(x, AlgebraElement):
            return x
        if isinstance(x, str):
            return self.reduce(self.parse_word(x))
        if isinstance(x, tuple):
            return self.reduce(x)
        if isinstance(x, dict):
            return AlgebraElement(self, self.reduce_terms(x))
        c = as_scalar(x)
        return AlgebraElement(self, {UNIT: c})

    def gens(self, *names) -> list:
        return [self.element((n,)) for n in names]

    def monomial_grade(self, word: Monomial) -> tuple:
        out = [0] * self.grade_dim
        for letter in word:
            for k, v in enumerate(self.gen[letter].grading):
                out[k] += v
        return tuple(out)

    # --- rewriting -------------------------------------------------------
    def _find_redex(self, word: Monomial, rightmost: bool = False):
        positions = range(len(word) - 1, -1, -1) if rightmost else range(len(word))
        for i in positions:
            for L in self._lhs_lengths:
                if i + L > len(word):
                    break
                lhs = word[i:i + L]
                if lhs in self.rules:
                    return i, L, self.rules[lhs]
        return None

    def is_normal(self, word: Monomial) -> bool:
        return self._find_redex(word) is None

    def _nf(self, word: Monomial) -> dict:
        cached = self._nf_cache.get(word)
        if cached is not None:
            return cached
        redex = self._find_redex(word)
        if redex is None:
            result = {word: ONE}
        else:
            self._steps += 1
            if self._steps > self.max_steps:
                raise BudgetExceeded(word, self.max_steps)
            i, L, rhs = redex
            if rhs is None:
                raise OutOfWindowError(word)
            prefix, suffix = word[:i], word[i + L:]
            result = {}
            for w, c in rhs.items():
                for w2, c2 in self._nf(prefix + w + suffix).items():
                    lin_add(result, w2, c * c2)
        self._nf_cache[word] = result
        return result

    def normal_form(self, word: Monomial) -> dict:
        if self.counting_only:
            raise UnsupportedOperation(f"{self.name} is a dimension-counting preset; multiplication is disabled")
        self._steps = 0
        return self._nf(tuple(word))

    def normal_form_rightmost(self, word: Monomial) -> dict:
        """Independent strategy (rightmost redex, no memo) for confluence probes."""
        steps = [0]

        def go(w):
            redex = self._find_redex(w, rightmost=True)
            if redex is None:
                return {w: ONE}
            steps[0] += 1
            if steps[0] > self.max_steps:
                raise BudgetExceeded(w, self.max_steps)
            i, L, rhs = redex
            if rhs is None:
                raise OutOfWindowError(w)
            out = {}
            for v, c in rhs.items():
                for v2, c2 in go(w[:i] + v + w[i + L:]).items():
                    lin_add(out, v2, c * c2)
            return out

        return go(tuple(word))

    def reduce(self, word) -> AlgebraElement:
        if isinstance(word, str):
            word = self.parse_word(word)
        for letter in word:
            if letter not in self.gen:
                raise KeyError(f"unknown generator {letter!r} in {self.name}")
        return AlgebraElement(self, self.normal_form(tuple(word)))

    def reduce_terms(self, terms: dict) -> dict:
        out: dict = {}
        for w, c in terms.items():
            for w2, c2 in self.normal_form(w).items():
                lin_add(out, w2, c * c2)
        return out

    def mul_words(self, a: Monomial, b: Monomial) -> dict:
        return self.normal_form(a + b)

    def multiply(self, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
        out: dict = {}
        for wa, ca in a.terms.items():
            for wb, cb in b.terms.items():
                c = ca * cb
                for w, c2 in self.mul_words(wa, wb).items():
                    lin_add(out, w, c * c2)
        return AlgebraElement(self, out)

    # --- structure maps on monomials ---------------------------------------
    def counit_word(self, word: Monomial) -> QScalar:
        cached = self._eps_cache.get(word)
        if cached is None:
            cached = ONE
            for letter in word:
                cached = cached * self.counit_gen[letter]
                if not cached:
                    break
            self._eps_cache[word] = cached
        return cached

    def _tensor_mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for (a1, a2), c in x.items():
            for (b1, b2), d in y.items():
                cd = c * d
                left = self.mul_words(a1, b1)
                right = self.mul_words(a2, b2)
                for l, cl in left.items():
                    for r, cr in right.items():
                        lin_add(out, (l, r), cd * cl * cr)
        return out

    def coproduct_word(self, word: Monomial) -> dict:
        """Delta(word) as {(w1, w2): c}, computed letterwise as an algebra map."""
        word = tuple(word)
        cached = self._delta_cache.get(word)
        if cached is not None:
            return cached
        if not word:
            result = {(UNIT, UNIT): ONE}
        elif len(word) == 1:
            result = {}
            for c, a, b in self.coproduct_gen[word[0]]:
                for l, cl in self.normal_form(a).items():
                    for r, cr in self.normal_form(b).items():
                        lin_add(result, (l, r), c * cl * cr)
        else:
            result = self._tensor_mul(self.coproduct_word(word[:-1]), self.coproduct_word(word[-1:]))
        self._delta_cache[word] = result
        return result

    def antipode_word(self, word: Monomial) -> dict:
        word = tuple(word)
        cached = self._anti_cache.get(word)
        if cached is not None:
            return cached
        if not word:
            result = {UNIT: ONE}
        elif len(word) == 1:
            result = self.reduce_terms(self.antipode_gen[word[0]])
        else:
            # S(ab) = S(b) S(a)
            first = self.antipode_word(word[1:])
            last = self.antipode_word(word[:1])
            result = {}
            for w1, c1 in first.items():
                for w2, c2 in last.items():
                    for w, c in self.mul_words(w1, w2).items():
                        lin_add(result, w, c1 * c2 * c)
        self._anti_cache[word] = result
        return result

    def coproduct(self, a) -> dict:
        a = self.element(a)
        return lin_combine(*[(c, self.coproduct_word(w)) for w, c in a.terms.items()])

    def counit(self, a) -> QScalar:
        a = self.element(a)
        out = ZERO
        for w, c in a.terms.items():
            out = out + c * self.counit_word(w)
        return out

    def antipode(self, a) -> AlgebraElement:
        a = self.element(a)
        return AlgebraElement(self, lin_combine(*[(c, self.antipode_word(w)) for w, c in a.terms.items()]))

    def iterated_coproduct_word(self, word: Monomial, n: int) -> dict:
        """Delta^(n-1)(word) in the n-fold tensor power, keys are n-tuples."""
        if n == 1:
            return {(tuple(word),): ONE}
        out: dict = {}
        for (a, b), c in self.coproduct_word(word).items():
            for rest, d in self.iterated_coproduct_word(b, n - 1).items():
                lin_add(out, (a,) + rest, c * d)
        return out

    # --- text ------------------------------------------------------------
    def parse_word(self, text: str) -> Monomial:
        """``"K1^-2 E1 F1^3"`` -> letters; ``"1"`` or ``""`` is the empty word."""
        text = text.replace("*", " ").strip()
        if text in ("", "1"):
            return UNIT
        out = []
        for tok in text.split():
            base, _, exp = tok.partition("^")
            e = int(exp) if exp else 1
            if base not in self.gen:
                raise KeyError(f"unknown generator {base!r}")
            letter = base
            if e < 0:
                inv = self.gen[base].inverse_of
                if inv is None:
                    raise ValueError(f"negative exponent on non-invertible generator {base}")
                letter, e = inv, -e
            out.extend([letter] * e)
        return tuple(out)

    def format_word(self, word: Monomial) -> str:
        return format_word(word, self._names)

    def format_element(self, terms: dict) -> str:
        if not terms:
            return "0"
        parts = []
        for w in sorted(terms, key=self.sort_key):
            c = terms[w]
            ws = self.format_word(w)
            cs = format_scalar(c)
            if ws == "1":
                parts.append(cs if " " not in cs else f"({cs})")
            elif c == ONE:
                parts.append(ws)
            elif c == -ONE:
                parts.append(f"-{ws}")
            else:
                parts.append(f"({cs})*{ws}" if " " in cs or "/" in cs else f"{cs}*{ws}")
        return " + ".join(parts).replace("+ -", "- ")

    def sort_key(self, word: Monomial):
        return (len(word), tuple(self.rank.get(l, len(self.rank)) for l in word))


# --- axiom audit -------------------------------------------------------------

def _reduce_pair_terms(p: HopfPresentation, terms: dict) -> dict:
    out: dict = {}
    for (a, b), c in terms.items():
        for l, cl in p.normal_form(a).items():
            for r, cr in p.normal_form(b).items():
                lin_add(out, (l, r), c * cl * cr)
    return out


def _native(c: QScalar):
    """q-free scalars as int/Fraction for fast bulk accumulation, else unchanged."""
    if c.den == (0, (1,)) and len(c.num[1]) == 1 and c.num[0] == 0:
        return c.num[1][0]
    f = c.constant_value()
    return c if f is None else f


def _native_delta(p: HopfPresentation, word: Monomial) -> dict:
    cache = p.__dict__.setdefault("_native_delta_cache", {})
    out = cache.get(word)
    if out is None:
        out = cache[word] = {k: _native(v) for k, v in p.coproduct_word(word).items()}
    return out


def _coassoc_sides(p: HopfPresentation, delta: dict):
    left: dict = {}
    right: dict = {}
    for (a, b), c in delta.items():
        c = _native(c)
        for (a1, a2), d in _native_delta(p, a).items():
            k = (a1, a2, b)
            left[k] = left.get(k, 0) + c * d
        for (b1, b2), d in _native_delta(p, b).items():
            k = (a, b1, b2)
            right[k] = right.get(k, 0) + c * d
    return ({k: v for k, v in left.items() if v != 0}, {k: v for k, v in right.items() if v != 0})


@dataclass
class HopfReport:
    preset: str
    length: int
    words_checked: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {
            "preset": self.preset,
            "length": self.length,
            "words_checked": self.words_checked,
            "skipped_out_of_window": self.skipped,
            "passed": self.passed,
            "failures": self.failures,
        }


def generator_words(p: HopfPresentation, L: int, letters: Optional[list] = None):
    letters = letters or [g.name for g in p.generators]
    yield UNIT
    for n in range(1, L + 1):
        for w in itertools.product(letters, repeat=n):
            yield w


def verify_hopf(p: HopfPresentation, L: int = 3, letters: Optional[list] = None, max_failures: int = 20) -> HopfReport:
    """Check coassociativity, counit laws, multiplicativity of Delta and eps,
    and both antipode identities on every word of at most ``L`` letters."""
    if L < 2:
        raise ValueError("length bound must be at least 2")
    rep = HopfReport(p.name, L)
    for w in generator_words(p, L, letters):
        try:
            _check_word(p, w, rep)
        except OutOfWindowError:
            rep.skipped += 1
            continue
        rep.words_checked += 1
        if len(rep.failures) >= max_failures:
            break
    return rep


def _check_word(p: HopfPresentation, w: Monomial, rep: HopfReport) -> None:
    ws = p.format_word(w)
    nf = p.normal_form(w)

    def fail(identity):
        rep.failures.append({"identity": identity, "witness": ws})

    # Delta is an algebra map: Delta(nf(w)) == prod Delta(letters)
    delta = lin_combine(*[(c, p.coproduct_word(m)) for m, c in nf.items()])
    prod = {(UNIT, UNIT): ONE}
    for letter in w:
        prod = p._tensor_mul(prod, p.coproduct_word((letter,)))
    if delta != prod:
        fail("Delta(ab) = Delta(a)Delta(b)")
    eps = ZERO
    for m, c in nf.items():
        eps = eps + c * p.counit_word(m)
    eps_prod = ONE
    for letter in w:
        eps_prod = eps_prod * p.counit_gen[letter]
    if eps != eps_prod:
        fail("eps(ab) = eps(a)eps(b)")
    left, right = _coassoc_sides(p, delta)
    if left != right:
        fail("(Delta x id)Delta = (id x Delta)Delta")
    l_counit: dict = {}
    r_counit: dict = {}
    for (a, b), c in delta.items():
        lin_add(l_counit, b, c * p.counit_word(a))
        lin_add(r_counit, a, c * p.counit_word(b))
    if l_counit != nf or r_counit != nf:
        fail("(eps x id)Delta = id = (id x eps)Delta")
    # S well defined: S(nf(w)) == S(w_n)...S(w_1)
    s_nf = lin_combine(*[(c, p.antipode_word(m)) for m, c in nf.items()])
    s_letters = {UNIT: ONE}
    for letter in w:
        s_letters = _mul_terms(p, p.antipode_word((letter,)), s_letters)
    if s_nf != s_letters:
        fail("S(ab) = S(b)S(a)")
    m_left: dict = {}
    m_right: dict = {}
    for (a, b), c in delta.items():
        for sa, ca in p.antipode_word(a).items():
            for m, cm in p.mul_words(sa, b).items():
                lin_add(m_left, m, c * ca * cm)
        for sb, cb in p.antipode_word(b).items():
            for m, cm in p.mul_words(a, sb).items():
                lin_add(m_right, m, c * cb * cm)
    unit = {UNIT: eps} if eps else {}
    if m_left != unit:
        fail("m(S x id)Delta = eta eps")
    if m_right != unit:
        fail("m(id x S)Delta = eta eps")


def _mul_terms(p: HopfPresentation, x: dict, y: dict) -> dict:
    out: dict = {}
    for a, ca in x.items():
        for b, cb in y.items():
            for m, c in p.mul_words(a, b).items():
                lin_add(out, m, ca * cb * c)
    return out


# --- enumeration -------------------------------------------------------------

def graded_basis(
    p: HopfPresentation,
    caps: dict,
    grade=None,
    normalized: bool = False,
    default_cap: int = 0,
) -> list:
    """All normal-form monomials whose exponent of each generator is within
    ``caps`` (absolute value, an inverse letter counts against its partner),
    optionally restricted to one multigrade.  Deterministic order."""
    base_of = {}
    for g in p.generators:
        if g.inverse_of is not None and p._is_inverse_letter(g):
            base_of[g.name] = g.inverse_of
        else:
            base_of[g.name] = g.name
    cap = {g.name: caps.get(base_of[g.name], default_cap) for g in p.generators}
    letters = [g for g in p.order if cap.get(g, 0) > 0]
    max_lhs = max(p._lhs_lengths) if p._lhs_lengths else 1
    grade = tuple(grade) if grade is not None else None
    out = []

    def extend(word, counts):
        if not (normalized and not word):
            if grade is None or p.monomial_grade(word) == grade:
                out.append(word)
        for letter in letters:
            b = base_of[letter]
            if counts.get(b, 0) + 1 > cap[letter]:
                continue
            w = word + (letter,)
            tail = w[-max_lhs:]
            bad = False
            for L in p._lhs_lengths:
                if L <= len(tail) and tail[-L:] in p.rules:
                    bad = True
                    break
            if bad:
                continue
            counts[b] = counts.get(b, 0) + 1
            extend(w, counts)
            counts[b] -= 1

    extend(UNIT, {})
    out.sort(key=p.sort_key)
    return out


def random_word(p: HopfPresentation, rng: random.Random, max_len: int, letters: Optional[list] = None) -> Monomial:
    letters = letters or [g.name for g in p.generators]
    n = rng.randint(0, max_len)
    return tuple(rng.choice(letters) for _ in range(n))


def confluence_probe(p: HopfPresentation, samples: int = 500, max_len: int = 6, seed: int = 0,
                     letters: Optional[list] = None) -> list:
    """Words on which leftmost-memoized and rightmost reduction disagree."""
    rng = random.Random(seed)
    bad = []
    for _ in range(samples):
        w = random_word(p, rng, max_len, letters)
        try:
            a = p.normal_form(w)
            b = p.normal_form_rightmost(w)
        except OutOfWindowError:
            continue
        if a != b:
            bad.append(w)
    return bad


# --- interchange format -----------------------------------------------------------

def _fmt_terms(terms: dict, p: Optional[HopfPresentation] = None) -> str:
    if not terms:
        return "0"
    items = sorted(terms.items(), key=lambda kv: (len(kv[0]), kv[0]))
    return " + ".join(f"[{format_scalar(c)}] {' '.join(w) if w else '1'}" for w, c in items)


def _fmt_pairs(pairs: list) -> str:
    return " + ".join(
        f"[{format_scalar(c)}] {' '.join(a) if a else '1'} (x) {' '.join(b) if b else '1'}" for c, a, b in pairs
    )


def _parse_bracket_terms(text: str) -> list:
    """Split ``[c] body + [c] body`` into (scalar, body) pairs."""
    out = []
    i = 0
    text = text.strip()
    if text == "0":
        return out
    while i < len(text):
        if text[i] != "[":
            raise ValueError(f"expected '[' at {text[i:]!r}")
        depth, j = 0, i
        while True:
            if text[j] == "[":
                depth += 1
            elif text[j] == "]":
                depth -= 1
                if depth == 0:
                    break
            j += 1
        coef = parse_scalar(text[i + 1:j])
        k = text.find(" + [", j)
        body = text[j + 1:k if k >= 0 else len(text)].strip()
        out.append((coef, body))
        if k < 0:
            break
        i = k + 3
    return out


def _word_from(body: str) -> Monomial:
    return UNIT if body in ("1", "") else tuple(body.split())


def serialize_presentation(p: HopfPresentation) -> str:
    lines = [f"name: {p.name}", "[generators]"]
    for g in p.generators:
        extra = f" inverse={g.inverse_of}" if g.inverse_of else ""
        disp = f" display={g.display}" if g.display else ""
        lines.append(f"{g.name} grade=({','.join(str(x) for x in g.grading)}){extra}{disp}")
    lines.append("[order]")
    lines.append(" ".join(p.order))
    lines.append("[grading]")
    lines.append(p.grading_label or "none")
    lines.append("[rules]")
    for lhs in sorted(p.rules, key=lambda w: (len(w), w)):
        rhs = p.rules[lhs]
        lines.append(f"{' '.join(lhs)} -> {'!out-of-window' if rhs is None else _fmt_terms(rhs)}")
    lines.append("[coproduct]")
    for g in p.generators:
        lines.append(f"{g.name} = {_fmt_pairs(p.coproduct_gen[g.name])}")
    lines.append("[counit]")
    for g in p.generators:
        lines.append(f"{g.name} = [{format_scalar(p.counit_gen[g.name])}]")
    lines.append("[antipode]")
    for g in p.generators:
        lines.append(f"{g.name} = {_fmt_terms(p.antipode_gen[g.name])}")
    return "\n".join(lines) + "\n"


def parse_presentation(text: str) -> HopfPresentation:
    section = None
    name = ""
    gens, order, rules, cop, eps, anti = [], [], {}, {}, {}, {}
    grading = ""
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("name:"):
            name = line[5:].strip()
            continue
        if line.startswith("[") and line.endswith("]") and " " not in line:
            section = line[1:-1]
            continue
        if section == "generators":
            parts = line.split()
            kw = dict(x.split("=", 1) for x in parts[1:])
            grade = tuple(int(x) for x in kw["grade"].strip("()").split(",") if x)
            gens.append(Generator(parts[0], grade, kw.get("inverse"), kw.get("display")))
        elif section == "order":
            order = line.split()
        elif section == "grading":
            grading = "" if line == "none" else line
        elif section == "rules":
            lhs, rhs = line.split(" -> ")
            rules[tuple(lhs.split())] = None if rhs.strip() == "!out-of-window" else {
                _word_from(b): c for c, b in _parse_bracket_terms(rhs)}
        elif section == "coproduct":
            g, rhs = line.split(" = ", 1)
            pairs = []
            for c, body in _parse_bracket_terms(rhs):
                a, b = body.split(" (x) ")
                pairs.append((c, _word_from(a.strip()), _word_from(b.strip())))
            cop[g] = pairs
        elif section == "counit":
            g, rhs = line.split(" = ", 1)
            eps[g] = parse_scalar(rhs.strip()[1:-1])
        elif section == "antipode":
            g, rhs = line.split(" = ", 1)
            anti[g] = {_word_from(b): c for c, b in _parse_bracket_terms(rhs)}
    return HopfPresentation(name, gens, rules, cop, eps, anti, order=order, grading_label=grading)
