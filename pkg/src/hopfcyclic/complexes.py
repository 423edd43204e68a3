"""Coboundaries and cocyclic operators on V (x) C^{(x) n}, V = ^sigma k_delta.

The coalgebra argument only needs ``coproduct_word`` and ``counit_word``;
the cyclic operator additionally needs the antipode and multiplication of
a presented Hopf algebra.
"""
from __future__ import annotations

from dataclasses import dataclass

from .presentation import UNIT, HopfPresentation, lin_add
from .presets import MPI
from .scalars import ONE, as_scalar
from .presentation import _native
from .tensorspace import ChainElement


@dataclass(frozen=True)
class Coefficients:
    """^sigma k_delta: left coaction v -> sigma (x) v, right coaction v -> v (x) 1,
    module action by the character delta."""

    mpi: MPI

    @property
    def sigma(self):
        return self.mpi.sigma

    def front(self) -> dict:
        return {UNIT: ONE}

    def end(self) -> dict:
        return {self.mpi.sigma: ONE}


def coboundary(coalg, x: ChainElement, front: dict, end: dict) -> ChainElement:
    """front (x) c + sum_k (-1)^k Delta_k(c) + (-1)^{n+1} c (x) end.

    With front = 1 and end = sigma this is the Hochschild coboundary b; with
    front/end the coaction elements of two one-dimensional comodules it is
    the two-sided cobar differential."""
    n = x.degree
    out: dict = {}
    for key, c in x.terms.items():
        for f, cf in front.items():
            lin_add(out, (f,) + key, c * cf)
        for k in range(n):
            sign = -c if k % 2 == 0 else c
            pre, post = key[:k], key[k + 1:]
            for (a, b), d in coalg.coproduct_word(key[k]).items():
                lin_add(out, pre + (a, b) + post, sign * d)
        last = c if (n + 1) % 2 == 0 else -c
        for e, ce in end.items():
            lin_add(out, key + (e,), last * ce)
    return ChainElement(n + 1, out)


def hochschild_b(p, x: ChainElement, coeff: Coefficients) -> ChainElement:
    return coboundary(p, x, coeff.front(), coeff.end())


def cobar_d(coalg, x: ChainElement, left_coaction: dict, right_coaction: dict) -> ChainElement:
    """Cobar differential of V (x) CB^n (x) W for one-dimensional V, W.

    ``left_coaction`` is the element inserted in front (the coaction of V),
    ``right_coaction`` the one appended at the end (the coaction of W)."""
    return coboundary(coalg, x, left_coaction, right_coaction)


# --- cocyclic structure ---------------------------------------------------------------

def face_d(i: int, x: ChainElement, coeff: Coefficients, p) -> ChainElement:
    n = x.degree
    if not 0 <= i <= n + 1:
        raise IndexError(f"face index {i} out of range 0..{n + 1}")
    out: dict = {}
    for key, c in x.terms.items():
        if i == 0:
            lin_add(out, (UNIT,) + key, c)
        elif i == n + 1:
            lin_add(out, key + (coeff.sigma,), c)
        else:
            pre, post = key[:i - 1], key[i:]
            for (a, b), d in p.coproduct_word(key[i - 1]).items():
                lin_add(out, pre + (a, b) + post, c * d)
    return ChainElement(n + 1, out)


def degeneracy_s(j: int, x: ChainElement, p) -> ChainElement:
    n = x.degree
    if not 0 <= j <= n - 1:
        raise IndexError(f"degeneracy index {j} out of range 0..{n - 1}")
    out: dict = {}
    for key, c in x.terms.items():
        e = p.counit_word(key[j])
        if e:
            lin_add(out, key[:j] + key[j + 1:], c * e)
    return ChainElement(n - 1, out)


def _native_map(p, name: str, compute):
    """Cache of ``compute(key)`` with q-free coefficients turned into int/Fraction."""
    cache = p.__dict__.setdefault(name, {})

    def get(key):
        hit = cache.get(key)
        if hit is None:
            hit = cache[key] = {k: _native(v) for k, v in compute(key).items()}
        return hit

    return get


def _finish(acc: dict) -> dict:
    return {k: as_scalar(v) for k, v in acc.items() if v != 0}


def _iterated(p: HopfPresentation):
    """Memoized iterated coproduct, cached on the presentation."""
    cache = p.__dict__.setdefault("_iterated_cache", {})

    def get(word, n):
        hit = cache.get((word, n))
        if hit is None:
            hit = cache[(word, n)] = p.iterated_coproduct_word(word, n)
        return hit

    return get


def _twisted_antipode(p: HopfPresentation, mpi: MPI, word) -> dict:
    """S_delta(h) = delta(h_(1)) S(h_(2)), cached per (sigma, delta) pair."""
    cache = p.__dict__.setdefault("_twisted_cache", {})
    key = (mpi.label, mpi.sigma, word)
    hit = cache.get(key)
    if hit is None:
        hit = {}
        for (a, b), d in p.coproduct_word(word).items():
            da = mpi.character(a)
            if da:
                for s, cs in p.antipode_word(b).items():
                    lin_add(hit, s, d * da * cs)
        cache[key] = hit
    return hit


def _act(p, acting: dict, rest: tuple, c, out: dict) -> None:
    """out += c * sum_parts coef * (parts[0] h_1 (x) parts[1] h_2 (x) ...)."""
    mul = _native_map(p, "_native_mul", lambda ab: p.mul_words(*ab))
    for parts, cp in acting.items():
        acc = {(): c * cp}
        for part, h in zip(parts, rest):
            nxt: dict = {}
            prod = mul((part, h))
            for prefix, cc in acc.items():
                for w, cw in prod.items():
                    k = prefix + (w,)
                    nxt[k] = nxt.get(k, 0) + cc * cw
            acc = nxt
        for k, v in acc.items():
            out[k] = out.get(k, 0) + v


def cyclic_t(x: ChainElement, coeff: Coefficients, p: HopfPresentation) -> ChainElement:
    """t(h1 (x) ... (x) hn) = S_delta(h1) . (h2 (x) ... (x) hn (x) sigma), where the
    action is diagonal through the iterated coproduct."""
    n = x.degree
    if n == 0:
        return x
    it = _iterated(p)
    sigma = coeff.sigma
    by_first: dict = {}
    for key, c in x.terms.items():
        by_first.setdefault(key[0], []).append((key[1:] + (sigma,), _native(c)))
    out: dict = {}
    for first, items in by_first.items():
        acting: dict = {}
        for s, cs in _twisted_antipode(p, coeff.mpi, first).items():
            cs = _native(cs)
            for parts, cp in it(s, n).items():
                acting[parts] = acting.get(parts, 0) + cs * _native(cp)
        acting = {k: v for k, v in acting.items() if v != 0}
        for rest, c in items:
            _act(p, acting, rest, c, out)
    return ChainElement(n, _finish(out))


def cyclic_power(x, k, coeff, p):
    for _ in range(k):
        x = cyclic_t(x, coeff, p)
    return x


def _norm(x: ChainElement, coeff, p) -> ChainElement:
    """N = sum_{i=0}^{m} (-1)^{m i} t^i on degree m."""
    m = x.degree
    total = ChainElement(m, {})
    y = x
    for i in range(m + 1):
        total = total + (y if (m * i) % 2 == 0 else -y)
        if i < m:
            y = cyclic_t(y, coeff, p)
    return total


def extra_degeneracy(x: ChainElement, coeff: Coefficients, p: HopfPresentation) -> ChainElement:
    """s_{n-1} t, fused: S_delta(h1) acts on h2 (x) ... (x) hn through the
    (n-1)-fold coproduct, and the last factor meets sigma under eps."""
    n = x.degree
    if n < 1:
        raise ValueError("needs degree at least 1")
    it = _iterated(p)
    out: dict = {}
    for key, c in x.terms.items():
        c = _native(c)
        acting: dict = {}
        for s, cs in _twisted_antipode(p, coeff.mpi, key[0]).items():
            cs = _native(cs)
            if n == 1:
                acting[()] = acting.get((), 0) + cs * _native(p.counit_word(s))
                continue
            for parts, cp in it(s, n).items():
                e = p.counit_word(parts[-1])
                if e:
                    acting[parts[:-1]] = acting.get(parts[:-1], 0) + cs * _native(cp * e)
        _act(p, {k: v for k, v in acting.items() if v != 0}, key[1:], c, out)
    return ChainElement(n - 1, _finish(out))


def connes_B(x: ChainElement, coeff: Coefficients, p: HopfPresentation) -> ChainElement:
    """B = N s_{n-1} t (1 - (-1)^n t) from degree n to n-1.

    Uses s_{n-1} t^2 = t s_0, so only one cyclic rotation of x is needed.
    The factor (1 - (-1)^n t) makes bB + Bb = 0 and B^2 = 0 hold on all
    cochains, not only on normalized ones."""
    n = x.degree
    if n < 1:
        raise ValueError("B needs degree at least 1")
    y = extra_degeneracy(x, coeff, p)
    z = cyclic_t(degeneracy_s(0, x, p), coeff, p)
    y = y - z if n % 2 == 0 else y + z
    return _norm(y, coeff, p)


def connes_B_plain(x: ChainElement, coeff: Coefficients, p: HopfPresentation) -> ChainElement:
    """N s_{n-1} t, without the (1 - (-1)^n t) factor."""
    return _norm(extra_degeneracy(x, coeff, p), coeff, p)


def connes_B_literal(x: ChainElement, coeff: Coefficients, p: HopfPresentation) -> ChainElement:
    """Reference composite N s_{n-1} t (1 - (-1)^n t) with no shortcuts (slow)."""
    n = x.degree
    tx = cyclic_t(x, coeff, p)
    y = x - tx if n % 2 == 0 else x + tx
    return _norm(degeneracy_s(n - 1, cyclic_t(y, coeff, p), p), coeff, p)


def coboundary_matrix(coalg, src_keys: list, tgt_index, front: dict, end: dict, what: str = "b"):
    """Images of the source basis as coordinate dicts over ``tgt_index``;
    raises ClosureError when an image leaves the target window."""
    from .tensorspace import ClosureError

    rows = []
    for key in src_keys:
        img = coboundary(coalg, ChainElement(len(key), {key: ONE}), front, end)
        vec, res = tgt_index.coordinates(img.terms)
        if res:
            raise ClosureError(f"{what} on {key}", len(res), next(iter(res)))
        rows.append(vec)
    return rows


def cocyclic_relation_defects(x: ChainElement, coeff: Coefficients, p: HopfPresentation) -> list:
    """Labels of the cosimplicial and cyclic relations that fail on x.

    x has degree m.  Checked: every face/face, degeneracy/degeneracy and
    degeneracy/face relation whose source is x, t d_i = d_{i-1} t,
    t d_0 = d_{m+1}, t s_i = s_{i-1} t, t s_0 = s_{m-1} t^2 and t^{m+1} = id."""
    m = x.degree
    d = lambda i, y: face_d(i, y, coeff, p)
    s = lambda j, y: degeneracy_s(j, y, p)
    t = lambda y: cyclic_t(y, coeff, p)
    bad = []

    def check(label, lhs, rhs):
        if lhs != rhs:
            bad.append(label)

    for j in range(m + 3):
        for i in range(j):
            check(f"d{j}d{i}", d(j, d(i, x)), d(i, d(j - 1, x)))
    for j in range(m - 1):
        for i in range(j + 1):
            check(f"s{j}s{i}", s(j, s(i, x)), s(i, s(j + 1, x)))
    for i in range(m + 2):
        for j in range(m + 1):
            lhs = s(j, d(i, x))
            if i < j:
                rhs = d(i, s(j - 1, x))
            elif i in (j, j + 1):
                rhs = x
            else:
                rhs = d(i - 1, s(j, x))
            check(f"s{j}d{i}", lhs, rhs)
    tx = t(x)
    check("t d0", t(d(0, x)), d(m + 1, x))
    for i in range(1, m + 2):
        check(f"t d{i}", t(d(i, x)), d(i - 1, tx))
    if m >= 1:
        check("t s0", t(s(0, x)), s(m - 1, t(tx)))
        for i in range(1, m):
            check(f"t s{i}", t(s(i, x)), s(i - 1, tx))
    check("t^(m+1)", cyclic_power(x, m + 1, coeff, p), x)
    return bad
