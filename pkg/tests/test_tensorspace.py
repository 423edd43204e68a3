import pytest
from hypothesis import given, settings, strategies as st

from hopfcyclic.homology import SliceComplex
from hopfcyclic.presentation import UNIT, graded_basis
from hopfcyclic.presets import get_preset
from hopfcyclic.scalars import ONE, Q, QScalar
from hopfcyclic.complexes import coboundary
from hopfcyclic.tensorspace import (ChainElement, ClosureError, Indexed, Window, basis, coordinates,
                                    format_chain, parse_chain, tensor_basis)

coeffs = st.sampled_from([ONE, -ONE, QScalar.from_int(3), Q, Q + Q.inverse(), ONE / (Q + ONE)])


@st.composite
def chains(draw):
    name = draw(st.sampled_from(["h1", "uq:A1", "h1s"]))
    p = get_preset(name)
    caps = {g.name: 1 for g in p.generators if g.grading and g.grading[0] <= 2} if name == "h1" else \
        {g.name: 1 for g in p.generators}
    pool = graded_basis(p, caps)
    n = draw(st.integers(0, 3))
    terms = {tuple(draw(st.sampled_from(pool)) for _ in range(n)): draw(coeffs) for _ in range(draw(st.integers(1, 3)))}
    return p, ChainElement(n, terms)


@given(chains())
@settings(max_examples=60, deadline=None)
def test_format_parse_roundtrip(arg):
    p, x = arg
    if not x:
        return
    assert parse_chain(p, format_chain(x, p.format_word)) == x


def test_format_examples():
    p = get_preset("h1")
    x = parse_chain(p, "1 · X ⊗ Y + -1 · Y ⊗ X + -1 · d1 Y ⊗ Y")
    assert format_chain(x, p.format_word) == "1 · X ⊗ Y + -1 · Y ⊗ X + -1 · d1 Y ⊗ Y"
    assert format_chain(ChainElement(0, {(): ONE}), p.format_word) == "1 · ()"
    assert format_chain(ChainElement(2, {}), p.format_word) == "0"


def test_chain_arithmetic():
    a = ChainElement(1, {(("X",),): ONE})
    assert not (a - a)
    assert (2 * a).terms[(("X",),)] == QScalar.from_int(2)
    with pytest.raises(ValueError):
        a + ChainElement(2, {})
    with pytest.raises(ValueError):
        ChainElement(2, {(("X",),): ONE})


def test_tensor_basis_count():
    keys = tensor_basis(["a", "b", "c"], 3, lambda k: (0,))
    assert len(keys) == 27
    graded = tensor_basis(["a", "b"], 2, lambda k: (1 if k == "a" else 0,), grade=(1,))
    assert graded == [("a", "b"), ("b", "a")]


def test_window_basis_normalized():
    p = get_preset("gl1aff")
    w = Window.make(2, {"X": 1, "Y": 1})
    full = basis(w, p)
    norm = basis(Window.make(2, {"X": 1, "Y": 1}, normalized=True), p)
    assert len(full) == 16 and len(norm) == 9
    assert all(UNIT not in k for k in norm)


def test_window_filtration_and_grade():
    p = get_preset("h1")
    w = Window.make(2, {"X": 2, "Y": 2, "d1": 1}, grade=(1,), filtration=(("X", "Y"), 1), normalized=True)
    for key in basis(w, p):
        assert p.monomial_grade(sum(key, ())) == (1,)
        assert sum(1 for s in key for x in s if x in "XY") <= 1


def test_coordinates_residue():
    p = get_preset("gl1aff")
    w = Window.make(1, {"X": 1})
    vec, res = coordinates(ChainElement(1, {(("X",),): ONE, (("Y",),): ONE}), w, p)
    assert len(vec) == 1 and list(res.terms) == [(("Y",),)]
    idx = Indexed([("a",), ("b",)])
    assert idx.element({1: ONE}) == {("b",): ONE}


def test_closure_violation_aborts():
    p = get_preset("h1s")
    # X has a Z (x) Y term in its coproduct; a window without Z is not closed under b
    caps = {"X": 1, "Y": 1}

    def apply(key):
        return coboundary(p, ChainElement(len(key), {key: ONE}), {UNIT: ONE}, {UNIT: ONE}).terms

    with pytest.raises(ClosureError) as err:
        SliceComplex.build([0, 1], lambda n: basis(Window.make(n, caps), p), apply)
    assert err.value.residue_size >= 1
