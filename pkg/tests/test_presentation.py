import random

import pytest
from hypothesis import given, settings, strategies as st

from hopfcyclic.presentation import (UNIT, OutOfWindowError, confluence_probe, graded_basis,
                                     parse_presentation, serialize_presentation, verify_hopf)
from hopfcyclic.presets import get_preset
from hopfcyclic.scalars import ONE, Q, qpow


def nf(p, text):
    return p.format_element(p.normal_form(p.parse_word(text)))


def test_h1_commutators():
    p = get_preset("h1")
    assert nf(p, "Y X") == "X + X Y"
    assert nf(p, "X d1") == "d2 + d1 X"
    assert nf(p, "X d2") == "d3 + d2 X"
    assert nf(p, "Y d1") == "d1 + d1 Y"
    assert nf(p, "d2 d1") == "d1 d2"


def test_h1_out_of_window():
    p = get_preset("h1")
    with pytest.raises(OutOfWindowError):
        p.normal_form(p.parse_word("X d6"))


def test_h1_structure_maps():
    p = get_preset("h1")
    X, d1, d2 = (p.parse_word(s) for s in ("X", "d1", "d2"))
    assert p.coproduct_word(X) == {(X, UNIT): ONE, (UNIT, X): ONE, (d1, ("Y",)): ONE}
    assert p.coproduct_word(d2) == {(d2, UNIT): ONE, (UNIT, d2): ONE, (d1, d1): ONE}
    assert p.format_element(p.antipode_word(X)) == "-X + d1 Y"
    assert p.format_element(p.antipode_word(d2)) == "-d2 + d1^2"


def test_uq_relations():
    p = get_preset("uq:A1")
    assert nf(p, "E1 K1") == "q^-2*K1 E1"
    assert nf(p, "iK1 K1") == "1"
    ef = p.normal_form(p.parse_word("E1 F1"))
    k, ki = p.parse_word("K1"), p.parse_word("iK1")
    assert ef[k] == Q / (qpow(2) - ONE)
    assert ef[ki] == -Q / (qpow(2) - ONE)
    assert ef[p.parse_word("F1 E1")] == ONE


def test_uq_coproduct_convention():
    p = get_preset("uq:A1")
    E, F, K, Ki = (p.parse_word(s) for s in ("E1", "F1", "K1", "iK1"))
    assert p.coproduct_word(E) == {(E, K): ONE, (UNIT, E): ONE}
    assert p.coproduct_word(F) == {(F, UNIT): ONE, (Ki, F): ONE}


def test_serre_relation_a2():
    p = get_preset("uq:A2")
    # E1^2 E2 - (q + q^-1) E1 E2 E1 + E2 E1^2 = 0
    a = p.element(p.parse_word("E1 E1 E2"))
    b = p.element(p.parse_word("E1 E2 E1"))
    c = p.element(p.parse_word("E2 E1 E1"))
    assert (a - (Q + Q.inverse()) * b + c).is_zero()


@pytest.mark.parametrize("name", ["h1", "h1s", "gl1aff", "uq:A1", "uq:A2", "w:2"])
def test_confluence(name):
    p = get_preset(name)
    letters = None if name != "h1" else ["d1", "d2", "X", "Y"]
    assert confluence_probe(p, samples=150, max_len=5, seed=3, letters=letters) == []


@pytest.mark.parametrize("name", ["h1s", "gl1aff", "w:1", "f"])
def test_verify_hopf_short(name):
    assert verify_hopf(get_preset(name), L=2).passed


def test_serialize_roundtrip():
    for name in ("h1s", "uq:A1"):
        p = get_preset(name)
        text = serialize_presentation(p)
        q = parse_presentation(text)
        assert serialize_presentation(q) == text
        w = p.parse_word("X Y X" if name == "h1s" else "E1 F1 K1 E1")
        assert q.normal_form(w) == p.normal_form(w)


def test_graded_basis_counts():
    p = get_preset("gl1aff")
    # X^a Y^b with a, b <= 2
    assert len(graded_basis(p, {"X": 2, "Y": 2})) == 9
    assert len(graded_basis(p, {"X": 2, "Y": 2}, normalized=True)) == 8
    u = get_preset("uq:A1")
    ks = graded_basis(u, {"K1": 1})
    assert sorted(u.format_word(w) for w in ks) == sorted(["1", "K1", "K1^-1"])


WORDS = {
    "h1s": ["Z", "X", "Y"],
    "uq:A1": ["E1", "F1", "K1", "iK1"],
    "uq:A2": ["E1", "E2", "F1", "F2", "K1", "iK2"],
}


@st.composite
def preset_words(draw):
    name = draw(st.sampled_from(sorted(WORDS)))
    letters = WORDS[name]
    w = lambda: tuple(draw(st.lists(st.sampled_from(letters), max_size=3)))
    return name, w(), w(), w()


def _mul(p, x, y):
    out = {}
    for a, ca in x.items():
        for b, cb in y.items():
            for m, c in p.mul_words(a, b).items():
                out[m] = out.get(m, 0) + ca * cb * c
    return {k: v for k, v in out.items() if v}


@given(preset_words())
@settings(max_examples=60, deadline=None)
def test_multiplication_associative(args):
    name, a, b, c = args
    p = get_preset(name)
    na, nb, nc = (p.normal_form(w) for w in (a, b, c))
    assert _mul(p, _mul(p, na, nb), nc) == _mul(p, na, _mul(p, nb, nc))
    assert p.normal_form(a + b + c) == _mul(p, _mul(p, na, nb), nc)


@given(preset_words())
@settings(max_examples=40, deadline=None)
def test_counit_multiplicative(args):
    name, a, b, _ = args
    p = get_preset(name)
    assert p.counit_word(a + b) == p.counit_word(a) * p.counit_word(b)


def test_random_words_normal_forms_are_normal():
    p = get_preset("uq:A2")
    rng = random.Random(7)
    for _ in range(50):
        w = tuple(rng.choice(WORDS["uq:A2"]) for _ in range(rng.randint(0, 5)))
        for m in p.normal_form(w):
            assert p.is_normal(m)
