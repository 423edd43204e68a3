"""Curated presentations: the Connes-Moscovici Hopf algebra and its relatives,
Drinfeld-Jimbo quantum groups from a Cartan matrix, their Borel parts, the
group-like algebra of the K's, and modular pairs in involution."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .presentation import (
    UNIT,
    Generator,
    HopfPresentation,
    OutOfWindowError,
    _mul_terms,
    lin_add,
    lin_combine,
    random_word,
)
from .scalars import ONE, ZERO, QScalar, q_binomial, qpow

HALF = QScalar.from_fraction(Fraction(1, 2))


@dataclass(frozen=True)
class CartanDatum:
    name: str
    A: tuple
    d: tuple
    two_rho: tuple

    @property
    def rank(self) -> int:
        return len(self.A)

    def validate(self) -> None:
        l = self.rank
        if l == 0 or any(len(row) != l for row in self.A):
            raise ValueError("Cartan matrix must be square and nonempty")
        for i in range(l):
            if self.A[i][i] != 2:
                raise ValueError("Cartan matrix needs 2 on the diagonal")
            for j in range(l):
                if i != j and self.A[i][j] > 0:
                    raise ValueError("off-diagonal Cartan entries must be non-positive")
                if self.d[i] * self.A[i][j] != self.d[j] * self.A[j][i]:
                    raise ValueError("d does not symmetrize A")
        if len(self.two_rho) != l or any(x <= 0 for x in self.two_rho):
            raise ValueError("two_rho must have positive entries")


# 2rho in simple-root coordinates, pinned per type (checked in the tests
# against an enumeration of positive roots).
CARTAN_TYPES = {
    "A1": CartanDatum("A1", ((2,),), (1,), (1,)),
    "A2": CartanDatum("A2", ((2, -1), (-1, 2)), (1, 1), (2, 2)),
    "A3": CartanDatum("A3", ((2, -1, 0), (-1, 2, -1), (0, -1, 2)), (1, 1, 1), (3, 4, 3)),
}


def positive_roots(A) -> list:
    """Positive roots in simple-root coordinates, by closing the simple roots
    under simple reflections (finite type only)."""
    l = len(A)
    simple = [tuple(1 if k == i else 0 for k in range(l)) for i in range(l)]
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        new = []
        for r in frontier:
            for i in range(l):
                # <r, alpha_i^vee> = sum_j r_j a_ji
                pair = sum(r[j] * A[j][i] for j in range(l))
                s = tuple(r[k] - (pair if k == i else 0) for k in range(l))
                if all(x >= 0 for x in s) and any(s) and s not in roots:
                    roots.add(s)
                    new.append(s)
        frontier = new
    return sorted(roots)


# --- Connes-Moscovici family -----------------------------------------------------

def _delta(n: int) -> str:
    return f"d{n}"


def build_h1(max_index: int = 6, drop_delta1_Y: bool = False) -> HopfPresentation:
    """H_1 with delta_1..delta_max instantiated; weight grading w(X)=1, w(Y)=0, w(d_n)=n."""
    if max_index < 2:
        raise ValueError("max_index must be at least 2")
    ds = [_delta(n) for n in range(1, max_index + 1)]
    gens = [Generator(d, (n,)) for n, d in enumerate(ds, 1)]
    gens += [Generator("X", (1,)), Generator("Y", (0,))]
    rules: dict = {}
    for m in range(1, max_index + 1):
        for n in range(1, m):
            rules[(_delta(m), _delta(n))] = {(_delta(n), _delta(m)): ONE}
        if m < max_index:
            rules[("X", _delta(m))] = {(_delta(m), "X"): ONE, (_delta(m + 1),): ONE}
        else:
            rules[("X", _delta(m))] = None
        rules[("Y", _delta(m))] = {(_delta(m), "Y"): ONE, (_delta(m),): QScalar.from_int(m)}
    rules[("Y", "X")] = {("X", "Y"): ONE, ("X",): ONE}
    cop = {
        "Y": [(ONE, ("Y",), UNIT), (ONE, UNIT, ("Y",))],
        "d1": [(ONE, ("d1",), UNIT), (ONE, UNIT, ("d1",))],
        "X": [(ONE, ("X",), UNIT), (ONE, UNIT, ("X",)), (ONE, ("d1",), ("Y",))],
    }
    anti = {"X": {("X",): -ONE, ("d1", "Y"): ONE}, "Y": {("Y",): -ONE}, "d1": {("d1",): -ONE}}
    for d in ds[1:]:
        cop[d] = []
        anti[d] = {}
    eps = {g.name: ZERO for g in gens}
    p = HopfPresentation("h1", gens, rules, cop, eps, anti, order=ds + ["X", "Y"], grading_label="weight")
    # Delta(d_{n+1}) = [Delta(X), Delta(d_n)],  S(d_{n+1}) = [S(d_n), S(X)]
    for n in range(1, max_index):
        dn, dn1 = _delta(n), _delta(n + 1)
        dx = p.coproduct_word(("X",))
        dd = p.coproduct_word((dn,))
        comm = lin_combine((ONE, p._tensor_mul(dx, dd)), (-ONE, p._tensor_mul(dd, dx)))
        p.coproduct_gen[dn1] = [(c, a, b) for (a, b), c in sorted(comm.items())]
        sx = p.antipode_word(("X",))
        sd = p.antipode_word((dn,))
        p.antipode_gen[dn1] = lin_combine((ONE, _mul_terms(p, sd, sx)), (-ONE, _mul_terms(p, sx, sd)))
        p._delta_cache.clear()
        p._anti_cache.clear()
    p.kind = "h1"
    if drop_delta1_Y:
        # negative control: only Delta(X) changes, every other structure map is kept
        p.coproduct_gen["X"] = [(ONE, ("X",), UNIT), (ONE, UNIT, ("X",))]
        p._delta_cache.clear()
        p.name = "h1[mutated:drop-delta1Y]"
    return p


def build_h1s() -> HopfPresentation:
    """Schwarzian quotient: generators Z (image of delta_1), X, Y; [X, Z] = Z^2/2."""
    gens = [Generator("Z", (1,)), Generator("X", (1,)), Generator("Y", (0,))]
    rules = {
        ("X", "Z"): {("Z", "X"): ONE, ("Z", "Z"): HALF},
        ("Y", "Z"): {("Z", "Y"): ONE, ("Z",): ONE},
        ("Y", "X"): {("X", "Y"): ONE, ("X",): ONE},
    }
    cop = {
        "Z": [(ONE, ("Z",), UNIT), (ONE, UNIT, ("Z",))],
        "Y": [(ONE, ("Y",), UNIT), (ONE, UNIT, ("Y",))],
        "X": [(ONE, ("X",), UNIT), (ONE, UNIT, ("X",)), (ONE, ("Z",), ("Y",))],
    }
    anti = {"X": {("X",): -ONE, ("Z", "Y"): ONE}, "Y": {("Y",): -ONE}, "Z": {("Z",): -ONE}}
    eps = {g.name: ZERO for g in gens}
    p = HopfPresentation("h1s", gens, rules, cop, eps, anti, order=["Z", "X", "Y"], grading_label="weight")
    p.kind = "h1s"
    return p


def build_F(max_index: int = 6) -> HopfPresentation:
    """The commutative Hopf subalgebra of H_1 generated by the deltas."""
    h = build_h1(max_index)
    ds = [_delta(n) for n in range(1, max_index + 1)]
    gens = [h.gen[d] for d in ds]
    rules = {l: r for l, r in h.rules.items() if all(x in ds for x in l)}
    cop = {d: h.coproduct_gen[d] for d in ds}
    anti = {d: h.antipode_gen[d] for d in ds}
    p = HopfPresentation("f", gens, rules, cop, {d: ZERO for d in ds}, anti, order=ds, grading_label="weight")
    p.kind = "f"
    return p


def build_gl1aff() -> HopfPresentation:
    """U(gl_1^aff): [Y, X] = X, primitive generators."""
    gens = [Generator("X", (1,)), Generator("Y", (0,))]
    rules = {("Y", "X"): {("X", "Y"): ONE, ("X",): ONE}}
    cop = {g: [(ONE, (g,), UNIT), (ONE, UNIT, (g,))] for g in ("X", "Y")}
    anti = {g: {(g,): -ONE} for g in ("X", "Y")}
    p = HopfPresentation("gl1aff", gens, rules, cop, {"X": ZERO, "Y": ZERO}, anti, order=["X", "Y"],
                         grading_label="weight")
    p.kind = "gl1aff"
    return p


# --- quantum groups ----------------------------------------------------------------

def _k(i):
    return f"K{i}"


def _ki(i):
    return f"iK{i}"


def _k_block_rules(l: int) -> dict:
    rules: dict = {}
    for i in range(1, l + 1):
        rules[(_ki(i), _k(i))] = {UNIT: ONE}
        rules[(_k(i), _ki(i))] = {UNIT: ONE}
        for j in range(i + 1, l + 1):
            for a in (_k(j), _ki(j)):
                for b in (_k(i), _ki(i)):
                    rules[(a, b)] = {(b, a): ONE}
    return rules


def _k_generators(l: int) -> list:
    out = []
    for i in range(1, l + 1):
        out.append(Generator(_k(i), (0,) * l, _ki(i)))
        out.append(Generator(_ki(i), (0,) * l, _k(i)))
    return out


def _serre_rules(letter: str, c: CartanDatum) -> dict:
    """q-Serre relations in the letters E_i (or F_i), oriented to rewrite the
    lexicographically largest word downward."""
    rules: dict = {}
    l = c.rank
    for i in range(1, l + 1):
        for j in range(1, l + 1):
            if i == j:
                continue
            n = 1 - c.A[i - 1][j - 1]
            qi = c.d[i - 1]
            ei, ej = f"{letter}{i}", f"{letter}{j}"
            terms = []
            for r in range(n + 1):
                coeff = q_binomial(n, r)
                if qi != 1:
                    coeff = _rescale(coeff, qi)
                coeff = coeff if r % 2 == 0 else -coeff
                terms.append((coeff, (ei,) * (n - r) + (ej,) + (ei,) * r))
            # letter order: index order, so compare words by index tuples
            key = lambda w: tuple(int(x[1:]) for x in w)
            lead_c, lead_w = max(terms, key=lambda t: key(t[1]))
            rules[lead_w] = {w: -cf / lead_c for cf, w in terms if w != lead_w}
    return rules


def _rescale(s: QScalar, k: int) -> QScalar:
    """Substitute q -> q^k in a Laurent polynomial."""
    assert s.is_laurent()
    low, coeffs = s.num
    return QScalar.laurent({(low + i) * k: c for i, c in enumerate(coeffs) if c})


def build_uq(c: CartanDatum, part: str = "full") -> HopfPresentation:
    """U_q(g) (``part="full"``) or a Borel part (``"plus"``: E, K; ``"minus"``: F, K)."""
    c.validate()
    l = c.rank
    counting_only = l > 2
    E = [f"E{i}" for i in range(1, l + 1)]
    F = [f"F{i}" for i in range(1, l + 1)]
    unit = lambda i, s: tuple(s if k == i else 0 for k in range(l))
    gens = []
    if part in ("full", "minus"):
        gens += [Generator(F[i], unit(i, -1)) for i in range(l)]
    gens += _k_generators(l)
    if part in ("full", "plus"):
        gens += [Generator(E[i], unit(i, 1)) for i in range(l)]
    names = {g.name for g in gens}
    rules = _k_block_rules(l)
    for i in range(1, l + 1):
        for j in range(1, l + 1):
            a = c.A[i - 1][j - 1] * c.d[i - 1]
            if part in ("full", "plus"):
                rules[(f"E{j}", _k(i))] = {(_k(i), f"E{j}"): qpow(-a)}
                rules[(f"E{j}", _ki(i))] = {(_ki(i), f"E{j}"): qpow(a)}
            if part in ("full", "minus"):
                rules[(_k(i), f"F{j}")] = {(f"F{j}", _k(i)): qpow(-a)}
                rules[(_ki(i), f"F{j}")] = {(f"F{j}", _ki(i)): qpow(a)}
            if part == "full":
                rhs = {(f"F{j}", f"E{i}"): ONE}
                if i == j:
                    den = qpow(c.d[i - 1]) - qpow(-c.d[i - 1])
                    rhs[(_k(i),)] = ONE / den
                    rhs[(_ki(i),)] = -ONE / den
                rules[(f"E{i}", f"F{j}")] = rhs
    if part in ("full", "plus"):
        rules.update(_serre_rules("E", c))
    if part in ("full", "minus"):
        rules.update(_serre_rules("F", c))
    cop, eps, anti = {}, {}, {}
    for i in range(1, l + 1):
        k, ki = _k(i), _ki(i)
        cop[k] = [(ONE, (k,), (k,))]
        cop[ki] = [(ONE, (ki,), (ki,))]
        eps[k] = eps[ki] = ONE
        anti[k] = {(ki,): ONE}
        anti[ki] = {(k,): ONE}
        if f"E{i}" in names:
            cop[f"E{i}"] = [(ONE, (f"E{i}",), (k,)), (ONE, UNIT, (f"E{i}",))]
            eps[f"E{i}"] = ZERO
            anti[f"E{i}"] = {(f"E{i}", ki): -ONE}
        if f"F{i}" in names:
            cop[f"F{i}"] = [(ONE, (f"F{i}",), UNIT), (ONE, (ki,), (f"F{i}",))]
            eps[f"F{i}"] = ZERO
            anti[f"F{i}"] = {(k, f"F{i}"): -ONE}
    order = [g for g in F if g in names] + [x for i in range(1, l + 1) for x in (_k(i), _ki(i))] + \
        [g for g in E if g in names]
    label = {"full": "uq", "plus": "uq-borel-plus", "minus": "uq-borel-minus"}[part]
    notes = ["dimension-counting preset: multiplication disabled"] if counting_only else []
    p = HopfPresentation(f"{label}:{c.name}", gens, rules, cop, eps, anti, order=order,
                         grading_label="root", counting_only=counting_only, notes=notes)
    p.kind = label
    p.cartan = c
    return p


def build_W(l: int) -> HopfPresentation:
    """Group algebra of Z^l spanned by K-monomials; every basis element is group-like."""
    gens = _k_generators(l)
    cop, eps, anti = {}, {}, {}
    for i in range(1, l + 1):
        k, ki = _k(i), _ki(i)
        cop[k] = [(ONE, (k,), (k,))]
        cop[ki] = [(ONE, (ki,), (ki,))]
        eps[k] = eps[ki] = ONE
        anti[k] = {(ki,): ONE}
        anti[ki] = {(k,): ONE}
    p = HopfPresentation(f"w:{l}", gens, _k_block_rules(l), cop, eps, anti, grading_label="root")
    p.kind = "w"
    p.cartan = CartanDatum(f"W{l}", tuple(tuple(2 if i == j else 0 for j in range(l)) for i in range(l)),
                           (1,) * l, (1,) * l)
    return p


def k_word(exps) -> tuple:
    """K_1^{m_1} ... K_l^{m_l} as a normal-form word."""
    out = []
    for i, m in enumerate(exps, 1):
        out += [_k(i) if m > 0 else _ki(i)] * abs(m)
    return tuple(out)


def k_exponents(word, l: int) -> tuple:
    out = [0] * l
    for x in word:
        if x.startswith("iK"):
            out[int(x[2:]) - 1] -= 1
        elif x.startswith("K"):
            out[int(x[1:]) - 1] += 1
    return tuple(out)


# --- registry ---------------------------------------------------------------------

PRESET_NAMES = ["h1", "h1s", "f", "gl1aff", "w:<l>", "uq:A1", "uq:A2", "uq:A3",
                "uq-borel-plus:<type>", "uq-borel-minus:<type>"]


class UnknownPreset(KeyError):
    pass


@lru_cache(maxsize=None)
def get_preset(name: str) -> HopfPresentation:
    if name == "h1":
        return build_h1()
    if name == "h1s":
        return build_h1s()
    if name == "f":
        return build_F()
    if name == "gl1aff":
        return build_gl1aff()
    if name.startswith("w:"):
        try:
            l = int(name[2:])
        except ValueError:
            raise UnknownPreset(name) from None
        if l < 1:
            raise UnknownPreset(name)
        return build_W(l)
    head, _, typ = name.partition(":")
    if typ in CARTAN_TYPES:
        if head == "uq":
            return build_uq(CARTAN_TYPES[typ])
        if head == "uq-borel-plus":
            return build_uq(CARTAN_TYPES[typ], "plus")
        if head == "uq-borel-minus":
            return build_uq(CARTAN_TYPES[typ], "minus")
    raise UnknownPreset(name)


# --- modular pairs in involution -----------------------------------------------------

@dataclass(frozen=True)
class MPI:
    delta: dict = field(hash=False)
    sigma: tuple = ()
    label: str = ""

    def character(self, word) -> QScalar:
        out = ONE
        for x in word:
            out = out * self.delta[x]
            if not out:
                return ZERO
        return out


def mpi_of(p: HopfPresentation) -> MPI:
    kind = getattr(p, "kind", None)
    if kind == "uq":
        c = p.cartan
        return MPI(dict(p.counit_gen), k_word(c.two_rho), f"(eps, K_2rho) = (eps, {p.format_word(k_word(c.two_rho))})")
    if kind in ("h1", "h1s"):
        # trace of the adjoint action of gl_1^aff: tr ad_Y = 1, tr ad_X = 0
        delta = {g.name: ZERO for g in p.generators}
        delta["Y"] = ONE
        return MPI(delta, UNIT, "(delta, 1)")
    raise ValueError(f"no modular pair in involution shipped for {p.name}")


def trivial_mpi(p: HopfPresentation, sigma=UNIT) -> MPI:
    return MPI(dict(p.counit_gen), tuple(sigma), f"(eps, {p.format_word(tuple(sigma))})")


def twisted_antipode_word(p: HopfPresentation, m: MPI, word) -> dict:
    """S_delta(h) = delta(h_(1)) S(h_(2))."""
    out: dict = {}
    for (a, b), c in p.coproduct_word(word).items():
        d = m.character(a)
        if not d:
            continue
        for w, cw in p.antipode_word(b).items():
            lin_add(out, w, c * d * cw)
    return out


def _apply_twisted(p, m, terms):
    out: dict = {}
    for w, c in terms.items():
        for w2, c2 in twisted_antipode_word(p, m, w).items():
            lin_add(out, w2, c * c2)
    return out


def mpi_verify(p: HopfPresentation, m: MPI, samples: int = 100, seed: int = 0, max_len: int = 4) -> dict:
    failures = []
    sigma = m.sigma
    if m.character(sigma) != ONE:
        failures.append({"identity": "delta(sigma) = 1", "witness": p.format_word(sigma)})
    if p.coproduct_word(sigma) != {(sigma, sigma): ONE}:
        failures.append({"identity": "Delta(sigma) = sigma (x) sigma", "witness": p.format_word(sigma)})
    sigma_inv = p.antipode_word(sigma)
    rng = random.Random(seed)
    gens = [(g.name,) for g in p.generators]

    def words():
        # generators, then random words until ``samples`` of them were checked in-window
        yield from ((w, False) for w in gens)
        for _ in range(20 * samples):
            if random_checked >= samples:
                return
            yield random_word(p, rng, max_len), True

    checked = random_checked = 0
    for w, is_random in words():
        try:
            nf = p.normal_form(w)
            # delta is a character: well defined on the relations
            lhs = ZERO
            for mono, c in nf.items():
                lhs = lhs + c * m.character(mono)
            if lhs != m.character(w):
                failures.append({"identity": "delta multiplicative", "witness": p.format_word(w)})
            s2 = _apply_twisted(p, m, _apply_twisted(p, m, nf))
            ad: dict = {}
            for mono, c in nf.items():
                for w2, c2 in p.normal_form(sigma + mono).items():
                    for si, cs in sigma_inv.items():
                        for w3, c3 in p.mul_words(w2, si).items():
                            lin_add(ad, w3, c * c2 * cs * c3)
        except OutOfWindowError:
            continue
        checked += 1
        random_checked += is_random
        if s2 != ad:
            failures.append({"identity": "S_delta^2 = Ad_sigma", "witness": p.format_word(w)})
    return {
        "preset": p.name,
        "mpi": m.label,
        "words_checked": checked,
        "random_words_checked": random_checked,
        "passed": not failures,
        "failures": failures[:20],
    }


# --- negative controls --------------------------------------------------------------

def _primitive_e(base: str) -> HopfPresentation:
    c = CARTAN_TYPES[base.split(":")[1]]
    p = build_uq(c)
    for i in range(1, c.rank + 1):
        p.coproduct_gen[f"E{i}"] = [(ONE, (f"E{i}",), UNIT), (ONE, UNIT, (f"E{i}",))]
    p._delta_cache.clear()
    p.name = f"{base}[mutated:primitive-E]"
    return p


MUTATIONS = {
    "drop-delta1Y": ("h1", lambda base: build_h1(drop_delta1_Y=True)),
    "primitive-E": ("uq:", _primitive_e),
}


def mutated_preset(name: str, mutation: str) -> HopfPresentation:
    """A deliberately broken copy of a preset (only one structure map changed)."""
    if mutation not in MUTATIONS:
        raise UnknownPreset(f"mutation {mutation}")
    applies, build = MUTATIONS[mutation]
    if not (name == applies or (applies.endswith(":") and name.startswith(applies))):
        raise UnknownPreset(f"mutation {mutation} does not apply to {name}")
    get_preset(name)
    return build(name)
