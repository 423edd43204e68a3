"""Finite cochain slices, their cohomology, spectral-sequence pages, and the
assembly of periodic cyclic cohomology from Hochschild data."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from .coextension import (AuxiliaryZ, Coextension, build_Z, ZWindow, borel_cotor_count, get_coextension,
                          borel_coextension, root_vector_chain, left_grouplike, membership_check,
                          sector_basis, sector_dimensions, z_split_coboundary)
from .complexes import coboundary
from .linalg import Echelon, RankMismatch, checked_rank, kernel, solve
from .presentation import UNIT, HopfPresentation, lin_add
from .presets import CARTAN_TYPES, get_preset, k_exponents, k_word
from .scalars import ONE, parse_scalar
from .tensorspace import ChainElement, ClosureError, Indexed, Window, basis, format_chain

PROVENANCE = ("computed", "shortcut:cosemisimple", "shortcut:exterior", "imported:corollary-4.2",
              "imported:sbi-pattern")


class MissingCertificate(RuntimeError):
    pass


# --- slices -------------------------------------------------------------------------

@dataclass
class SliceComplex:
    """Bases ``bases[n]`` for n in ``degrees`` (plus the top target), and
    ``rows[n][k]`` = image of ``bases[n][k]`` in coordinates of ``bases[n+1]``."""

    degrees: list
    bases: dict
    rows: dict
    certificates: dict = field(default_factory=dict)

    @classmethod
    def build(cls, degrees, basis_of: Callable, apply: Callable, what: str = "d") -> "SliceComplex":
        """``apply(key)`` returns the image terms; any term outside the next
        basis raises :class:`ClosureError`."""
        degrees = list(degrees)
        bases = {n: list(basis_of(n)) for n in degrees + [degrees[-1] + 1]}
        rows, certs = {}, {}
        for n in degrees:
            tgt = Indexed(bases[n + 1])
            rows[n] = []
            for key in bases[n]:
                vec, res = tgt.coordinates(apply(key))
                if res:
                    raise ClosureError(f"{what} on {key} (degree {n})", len(res), next(iter(res)))
                rows[n].append(vec)
            certs[n] = f"{what}: {len(bases[n])} basis images land in the degree-{n + 1} window"
        return cls(degrees, bases, rows, certs)

    def compose_defects(self) -> list:
        """Degrees n where d_{n+1} d_n is not exactly zero."""
        bad = []
        for n in self.degrees:
            nxt = self.rows.get(n + 1)
            if nxt is None:
                continue
            for v in self.rows[n]:
                acc: dict = {}
                for j, c in v.items():
                    for k, d in nxt[j].items():
                        lin_add(acc, k, c * d)
                if acc:
                    bad.append(n)
                    break
        return bad


@dataclass
class Cohomology:
    dims: dict
    reps: dict
    ranks: dict


def _in_degree(slice_: SliceComplex, n):
    return slice_.bases.get(n, [])


def cohomology(slice_: SliceComplex, check_points=(2, 3)) -> Cohomology:
    """Exact dims and representatives (kernel vectors independent modulo the image)."""
    if any(n not in slice_.certificates for n in slice_.degrees):
        raise MissingCertificate("slice lacks closure certificates")
    ranks = {}
    for n in slice_.degrees:
        ranks[n] = checked_rank(slice_.rows[n], check_points)
    dims, reps = {}, {}
    for n in slice_.degrees:
        keys = slice_.bases[n]
        ker = kernel(slice_.rows[n])
        ech = Echelon()
        if n - 1 in slice_.rows:
            for v in slice_.rows[n - 1]:
                ech.insert(v)
        out = []
        for combo in ker:
            if ech.insert(combo) is None:
                out.append(ChainElement(n, {keys[i]: c for i, c in combo.items()}))
        dims[n] = len(out)
        reps[n] = out
        expected = len(keys) - ranks[n] - ranks.get(n - 1, 0)
        if n - 1 not in slice_.rows and n - 1 >= 0 and slice_.bases.get(n - 1):
            expected = None
        if expected is not None and expected != dims[n]:
            raise RankMismatch(f"degree {n}: {dims[n]} representatives but rank count gives {expected}")
    return Cohomology(dims, reps, ranks)


def in_image(slice_: SliceComplex, n: int, x: ChainElement) -> bool:
    """Whether x (degree n) is a coboundary inside the slice."""
    if n - 1 not in slice_.rows:
        return not x.terms
    vec, res = Indexed(slice_.bases[n]).coordinates(x.terms)
    if res:
        raise ClosureError("element outside the window", len(res), next(iter(res)))
    return solve(slice_.rows[n - 1], vec) is not None


# --- Hochschild slices of presented Hopf algebras ----------------------------------------

def hochschild_slice(p: HopfPresentation, sigma, caps: dict, degrees, grade=None,
                     filtration=None, normalized=True) -> SliceComplex:
    """Slice of V (x) C^n; ``normalized`` passes to the quotient by tensors with a unit slot."""
    front, end = {UNIT: ONE}, {tuple(sigma): ONE}
    w0 = Window.make(0, caps, grade, normalized, filtration)

    def apply(key):
        img = coboundary(p, ChainElement(len(key), {key: ONE}), front, end)
        if normalized:
            return {k: v for k, v in img.terms.items() if UNIT not in k}
        return img.terms

    return SliceComplex.build(degrees, lambda n: basis(w0.with_degree(n), p), apply, "b")


def weight1_hochschild(preset: str = "h1", cap: int = 2, degrees=range(0, 4), normalized=True) -> Cohomology:
    """Weight-1 Hochschild cohomology of H_1 (or H_1S) with trivial coefficients,
    filtered by the total number of X and Y letters (Delta never raises it)."""
    p = get_preset(preset)
    caps = {g.name: cap for g in p.generators if g.name in ("X", "Y")}
    caps.update({g.name: 2 for g in p.generators if g.name not in ("X", "Y") and g.grading[0] <= 2})
    sl = hochschild_slice(p, UNIT, caps, degrees, grade=(1,), filtration=(("X", "Y"), cap), normalized=normalized)
    out = cohomology(sl)
    out.slice = sl
    return out


def weight1_cocycles(preset: str = "h1") -> dict:
    """The degree-1 and degree-2 weight-1 cocycles for H_1 / H_1S."""
    p = get_preset(preset)
    d = "d1" if preset == "h1" else "Z"
    from .tensorspace import parse_chain

    return {
        1: parse_chain(p, f"1 · {d}"),
        2: parse_chain(p, f"1 · X ⊗ Y + -1 · Y ⊗ X + -1 · {d} Y ⊗ Y"),
    }


# --- spectral pages -----------------------------------------------------------------

@dataclass
class SpectralPage:
    r: int
    grid: dict                       # (i, j) -> dim
    reps: dict = field(default_factory=dict)        # (i, j) -> list of chains
    provenance: dict = field(default_factory=dict)  # (i, j) -> tag
    collapsed: bool = False
    notes: list = field(default_factory=list)

    def support(self) -> list:
        return sorted(k for k, v in self.grid.items() if v)

    def antidiagonals(self) -> set:
        return {i + j for (i, j) in self.support()}


@dataclass
class ZPipeline:
    """E_0 data of the coextension spectral sequence realized on Z-tensors."""

    e: Coextension
    z: AuxiliaryZ
    sigma: tuple
    grade: tuple
    letters: tuple
    cap: int
    slot_caps: dict
    normalization: str = "D"

    def window(self, i, j) -> list:
        if i < 0 or j < 0:
            return []
        return ZWindow(self.z, i, j, self.grade, self.letters, self.cap, self.slot_caps, self.normalization).keys()

    def split(self, key):
        cache = self.z.__dict__.setdefault("_split_cache", {})
        ck = (key, self.sigma, self.normalization)
        if ck not in cache:
            cache[ck] = z_split_coboundary(self.z, key, self.sigma, self.normalization)
        return cache[ck]

    def d0(self, x: ChainElement) -> ChainElement:
        out = ChainElement(x.degree + 1, {})
        for k, c in x.terms.items():
            out = out + self.split(k)[0].scale(c)
        return out

    def d1(self, x: ChainElement) -> ChainElement:
        out = ChainElement(x.degree + 1, {})
        for k, c in x.terms.items():
            out = out + self.split(k)[1].scale(c)
        return out

    def d0_rows(self, i, j) -> list:
        tgt = Indexed(self.window(i, j + 1))
        rows = []
        for key in self.window(i, j):
            vec, res = tgt.coordinates(self.split(key)[0].terms)
            if res:
                raise ClosureError(f"d0 on {key}", len(res), next(iter(res)))
            rows.append(vec)
        return rows

    def coords(self, i, j, x: ChainElement) -> dict:
        vec, res = Indexed(self.window(i, j)).coordinates(x.terms)
        if res:
            raise ClosureError(f"element outside window ({i},{j})", len(res), next(iter(res)))
        return vec


def h1_pipeline(preset: str = "h1", cap: int = 2, normalization: str = "D") -> ZPipeline:
    e = get_coextension(f"{preset}->gl1aff")
    caps = {"X": cap, "Y": cap}
    caps.update({g.name: 1 for g in e.source.generators if g.name not in ("X", "Y") and g.grading[0] == 1})
    return ZPipeline(e, build_Z(e), UNIT, (1,), ("X", "Y"), cap, caps, normalization)


def assemble_E1(pipe: ZPipeline, max_total: int = 2) -> SpectralPage:
    """E_1^{i,j} = H^j(d_0) on Z-tensors with i C-slots and j D-slots."""
    grid, reps, prov = {}, {}, {}
    for i in range(0, max_total + 1):
        for j in range(0, max_total + 1 - i):
            keys = pipe.window(i, j)
            out_rows = pipe.d0_rows(i, j)
            in_rows = pipe.d0_rows(i, j - 1) if j > 0 else []
            checked_rank(out_rows)
            ech = Echelon()
            for v in in_rows:
                ech.insert(v)
            found = []
            for combo in kernel(out_rows):
                if ech.insert(combo) is None:
                    found.append(ChainElement(i + j, {keys[k]: c for k, c in combo.items()}))
            grid[(i, j)] = len(found)
            reps[(i, j)] = found
            prov[(i, j)] = "computed"
    return SpectralPage(1, grid, reps, prov)


@dataclass
class D1Result:
    coords: dict          # coordinates in the E_1^{i+1,j} representative list
    witness: ChainElement  # d1(x) - sum coords * reps = d0(witness)
    image: ChainElement


def compute_d1(pipe: ZPipeline, page: SpectralPage, i: int, j: int, x: ChainElement) -> D1Result:
    """Class of d_1 x in E_1^{i+1,j}, with the d_0-correction that exhibits it."""
    y = pipe.d1(x)
    target_reps = page.reps.get((i + 1, j), [])
    cols = [pipe.coords(i + 1, j, r) for r in target_reps]
    src = pipe.window(i + 1, j - 1) if j > 0 else []
    d0s = pipe.d0_rows(i + 1, j - 1) if j > 0 else []
    sol = solve(cols + d0s, pipe.coords(i + 1, j, y))
    if sol is None:
        raise ClosureError(f"d1 image of a class at ({i},{j}) is not a d0-cocycle in the window", 1)
    coords = {k: c for k, c in sol.items() if k < len(cols)}
    w = {src[k - len(cols)]: c for k, c in sol.items() if k >= len(cols)}
    return D1Result(coords, ChainElement(i + j, w), y)


def page_advance(pipe: Optional[ZPipeline], page: SpectralPage) -> SpectralPage:
    """E_{r+1} from E_r.  Pages supported on one antidiagonal (or empty) are
    returned unchanged and marked collapsed; otherwise d_1 is computed and the
    new page covers total degrees below the top one of ``page``."""
    if len(page.antidiagonals()) <= 1:
        return SpectralPage(page.r + 1, dict(page.grid), dict(page.reps), dict(page.provenance), True,
                            page.notes + ["support on a single antidiagonal"])
    if page.r != 1 or pipe is None:
        raise NotImplementedError("only d_1 is implemented")
    top = max(i + j for (i, j) in page.grid)
    mats = {}
    for (i, j), reps in page.reps.items():
        if (i + 1, j) in page.grid:
            mats[(i, j)] = [compute_d1(pipe, page, i, j, x).coords for x in reps]
    grid, reps_out, prov = {}, {}, {}
    for (i, j), reps in page.reps.items():
        if i + j >= top:
            continue  # outgoing d_1 leaves the computed range
        out_rows = mats.get((i, j), [{} for _ in reps])
        ech = Echelon()
        for v in mats.get((i - 1, j), []):
            ech.insert(v)
        found = []
        for combo in kernel(out_rows):
            if ech.insert(combo) is None:
                acc = ChainElement(i + j, {})
                for k, c in combo.items():
                    acc = acc + reps[k].scale(c)
                found.append(acc)
        grid[(i, j)] = len(found)
        reps_out[(i, j)] = found
        prov[(i, j)] = page.provenance.get((i, j), "computed")
    zero_d = all(not v for rows in mats.values() for v in rows)
    out = SpectralPage(page.r + 1, grid, reps_out, prov, False, list(page.notes))
    out.collapsed = len(out.antidiagonals()) <= 1 or zero_d
    return out


def total_HH(page: SpectralPage, degrees=None) -> dict:
    if not page.collapsed and page.r < 2:
        raise ValueError("page has not been shown to collapse")
    out: dict = {}
    for (i, j), d in page.grid.items():
        out[i + j] = out.get(i + j, 0) + d
    if degrees is not None:
        return {n: out.get(n, 0) for n in degrees}
    return dict(sorted(out.items()))


# --- enveloping coalgebras -----------------------------------------------------------------

@dataclass
class LieDatum:
    name: str
    basis: tuple
    weights: tuple


LIE_DATA = {
    "gl1aff": LieDatum("gl1aff", ("X", "Y"), (1, 0)),
    "abelian1": LieDatum("abelian1", ("X",), (0,)),
}


def cotor_env(g: LieDatum) -> dict:
    """Cotor_{U(g)}(k, k) = exterior powers of g, with wedge bases and weights."""
    import itertools

    if len(g.basis) > 4:
        raise ValueError("dim g must be at most 4")
    out = {}
    for j in range(len(g.basis) + 1):
        wedges = []
        for combo in itertools.combinations(range(len(g.basis)), j):
            wedges.append(("∧".join(g.basis[k] for k in combo) or "1", sum(g.weights[k] for k in combo)))
        out[j] = wedges
    return out


def cotor_oracle(preset: str = "gl1aff", cap: int = 2, degrees=range(0, 3)) -> dict:
    """Cobar cohomology of U(g) with trivial coefficients on a normalized,
    letter-filtered slice (the filtration is preserved by Delta)."""
    p = get_preset(preset)
    letters = tuple(g.name for g in p.generators)
    caps = {x: cap for x in letters}
    sl = hochschild_slice(p, UNIT, caps, degrees, filtration=(letters, len(degrees) - 1), normalized=True)
    return cohomology(sl).dims


# --- quantum groups -------------------------------------------------------------------------

def uq_sector_slice(cartan_name: str, part: str = "full", sigma_exps=None, degrees=None,
                    normalized: bool = True) -> SliceComplex:
    """The zero-mismatch sector of the Hochschild complex of U_q (or a Borel
    part) with coefficients ^{K^sigma}k.

    This is the E_1 row of the spectral sequence for the coextension onto the
    group-like part W: W is cosemisimple, so E_1^{i,j} = 0 for j > 0 and
    E_1^{i,0} consists of the W-coinvariant tensors, which are exactly the
    tensors with no mismatches.  ``normalized`` drops tensors with a slot in W."""
    name = {"full": "uq", "minus": "uq-borel-minus", "plus": "uq-borel-plus"}[part]
    p = get_preset(f"{name}:{cartan_name}")
    if p.counting_only:
        raise NotImplementedError(f"{p.name} is a counting preset; use sector_dimensions")
    c = CARTAN_TYPES[cartan_name]
    sigma = tuple(c.two_rho if sigma_exps is None else sigma_exps)
    top = sum(abs(x) for x in sigma)
    degrees = list(range(0, top + 1)) if degrees is None else list(degrees)
    front, end = {UNIT: ONE}, {k_word(sigma): ONE}

    def in_w(w):
        return all(x.startswith("K") or x.startswith("iK") for x in w)

    def apply(key):
        img = coboundary(p, ChainElement(len(key), {key: ONE}), front, end)
        if normalized:
            return {k: v for k, v in img.terms.items() if not any(in_w(s) for s in k)}
        return img.terms

    return SliceComplex.build(degrees, lambda n: sector_basis(p, sigma, n, normalized), apply, "b")


def uq_hochschild(cartan_name: str, degrees=range(0, 4), normalized=True) -> Cohomology:
    """HH^n(U_q(g), ^{K_2rho}k) for the requested degrees (all higher degrees of
    the normalized sector vanish)."""
    c = CARTAN_TYPES[cartan_name]
    top = sum(c.two_rho)
    want = list(degrees)
    span = list(range(0, max(max(want), top) + 1))
    out = cohomology(uq_sector_slice(cartan_name, degrees=span, normalized=normalized))
    return Cohomology({n: out.dims.get(n, 0) for n in want}, {n: out.reps.get(n, []) for n in want},
                      out.ranks)


def uq_w_page(cartan_name: str) -> SpectralPage:
    """E_1 row (sizes) and E_2 = HH of the W-coextension spectral sequence."""
    sl = uq_sector_slice(cartan_name)
    co = cohomology(sl)
    e1 = SpectralPage(1, {(n, 0): len(sl.bases[n]) for n in sl.degrees},
                      provenance={(n, 0): "computed" for n in sl.degrees})
    e2 = SpectralPage(2, {(n, 0): co.dims[n] for n in sl.degrees}, {(n, 0): co.reps[n] for n in sl.degrees},
                      {(n, 0): "computed" for n in sl.degrees}, True, ["single row: collapses at E_2"])
    return e1, e2


def euler_characteristic(cartan_name: str) -> tuple:
    dims = sector_dimensions(cartan_name)
    return dims, sum((-1) ** n * d for n, d in enumerate(dims))


def spanning_E1(cartan_name: str, variant: str = "kill-F", max_i=None) -> SpectralPage:
    """E_1 over D = a Borel part, assembled from one-root-vector-per-slot
    spanning elements with distinct indices.

    Each element is checked with membership_check, its left D-coaction is
    read off by the engine, and its contribution is the Borel Cotor count for
    that coaction (one-generator-per-slot counting over W)."""
    import itertools

    c = CARTAN_TYPES[cartan_name]
    l = c.rank
    e = borel_coextension(cartan_name, variant)
    sigma = tuple(c.two_rho)
    part = "plus" if variant == "kill-F" else "minus"
    grid: dict = {}
    prov: dict = {}
    notes = []
    all_members = True
    top_i = l if max_i is None else max_i
    for i in range(0, top_i + 1):
        for seq in itertools.permutations(range(1, l + 1), i):
            if i == 0:
                mu = sigma
            else:
                x = root_vector_chain(cartan_name, seq, variant)
                ok, _ = membership_check(e, x, k_word(sigma))
                all_members = all_members and ok
                g = left_grouplike(e, x)
                if g is None:
                    raise AssertionError(f"spanning element {seq} has no group-like left coaction")
                mu = k_exponents(g, l)
            counts = borel_cotor_count(cartan_name, mu, "minus" if part == "minus" else "plus")
            for j, d in counts.dims.items():
                if d:
                    grid[(i, j)] = grid.get((i, j), 0) + d
                    prov[(i, j)] = "shortcut:cosemisimple"
    page = SpectralPage(1, grid, {}, prov, notes=notes)
    page.memberships_ok = all_members
    return page


def binomial_grid(l: int) -> dict:
    return {(i, l - i): math.comb(l, i) for i in range(l + 1)}


# --- cyclic assembly -----------------------------------------------------------------------

class NotConcentrated(ValueError):
    pass


@dataclass
class CyclicResult:
    hc: list
    hp_even: int
    hp_odd: int
    provenance: str = "imported:sbi-pattern"


def sbi_assemble(hh: list, N: int = 8) -> CyclicResult:
    """HC and HP from Hochschild dims concentrated in one degree l:
    HC^{l+2k} = m, every other HC vanishes, HP^{l mod 2} = m."""
    support = [n for n, d in enumerate(hh) if d]
    if len(support) != 1:
        raise NotConcentrated(f"Hochschild dims {list(hh)} are not concentrated in one degree")
    l = support[0]
    m = hh[l]
    hc = [m if n >= l and (n - l) % 2 == 0 else 0 for n in range(N + 1)]
    return CyclicResult(hc, m if l % 2 == 0 else 0, m if l % 2 else 0)


@dataclass
class HPClasses:
    odd: list
    even: list
    provenance: list
    checks: dict


def hp_weight1_assemble(preset: str, e2: SpectralPage, cap: int = 2) -> HPClasses:
    """HP generators for H_1 / H_1S from weight-1 data.

    E_2 classes of total degree 1 and 2 are matched with Hochschild classes of
    the weight-1 slice in the same degree; the emitted generators are the
    explicit cocycles, each checked to be a cocycle with nonzero class, and
    the count in each degree must equal the E_2 total.  Passing from weight-1
    Hochschild classes to HP uses an imported theorem, recorded in
    ``provenance``."""
    if not any(e2.grid.values()):
        return HPClasses([], [], [], {})
    p = get_preset(preset)
    hh = weight1_hochschild(preset, cap)
    sl = hh.slice
    cocycles = weight1_cocycles(preset)
    totals: dict = {}
    for (i, j), d in e2.grid.items():
        totals[i + j] = totals.get(i + j, 0) + d
    checks = {}
    for n, x in cocycles.items():
        bx = coboundary(p, x, {UNIT: ONE}, {UNIT: ONE})
        checks[n] = {
            "coboundary_zero": not bx.terms,
            "nonzero_class": not in_image(sl, n, _normalized(x)),
            "hh_dim": hh.dims.get(n, 0),
            "e2_total": totals.get(n, 0),
        }
    fmt = lambda x: format_chain(x, p.format_word)
    odd = [fmt(cocycles[1])] if checks[1]["hh_dim"] == checks[1]["e2_total"] == 1 else []
    even = [fmt(cocycles[2])] if checks[2]["hh_dim"] == checks[2]["e2_total"] == 1 else []
    return HPClasses(odd, even, ["imported:corollary-4.2"], checks)


def _normalized(x: ChainElement) -> ChainElement:
    return ChainElement(x.degree, {k: v for k, v in x.terms.items() if UNIT not in k})


# --- the weight-1 zig-zag identities ---------------------------------------------------------

def parse_z_chain(z: AuxiliaryZ, text: str) -> ChainElement:
    from .tensorspace import _split_top

    terms: dict = {}
    degree = None
    for part in _split_top(text.strip()):
        coef, _, body = part.partition(" · ")
        coef = coef.strip()
        if coef.startswith("(") and coef.endswith(")"):
            coef = coef[1:-1]
        key = tuple(z.parse_key(s) for s in body.split(" ⊗ "))
        degree = len(key)
        lin_add(terms, key, parse_scalar(coef))
    return ChainElement(degree, terms)


@dataclass
class Identity:
    label: str
    statement: str
    holds: bool
    detail: str = ""


def weight1_identities(pipe: ZPipeline) -> list:
    """The d_0 / d_1 relations linking the weight-1 E_1 classes to E_2."""
    d = "d1" if "d1" in pipe.e.source.gen else "Z"
    z = pipe.z
    P = lambda t: parse_z_chain(z, t.replace("δ", d))
    fmt = lambda x: format_chain(x, z.format_key)
    out = []

    def eq(label, op, src, rhs):
        x = P(src)
        lhs = (pipe.d0 if op == "d0" else pipe.d1)(x)
        r = P(rhs) if rhs != "0" else ChainElement(x.degree + 1, {})
        ok = lhs == r
        out.append(Identity(label, f"{op}({src}) = {rhs}", ok, "" if ok else f"got {fmt(lhs)}"))

    eq("d1-delta", "d1", "1 · δ", "0")
    eq("d1-XY", "d1", "1 · bar(X) ⊗ bar(Y)", "1 · 1_C ⊗ bar(X) ⊗ bar(Y) + -1 · bar(X) ⊗ bar(Y) ⊗ 1_C")
    eq("d0-XY-correction", "d0", "1 · X ⊗ bar(Y) + 1 · bar(X) ⊗ Y + 1/2 · δ ⊗ bar(Y^2)",
       "1 · bar(X) ⊗ bar(Y) ⊗ 1_C + -1 · 1_C ⊗ bar(X) ⊗ bar(Y)")
    eq("d1-YX", "d1", "1 · bar(Y) ⊗ bar(X)", "1 · 1_C ⊗ bar(Y) ⊗ bar(X) + -1 · bar(Y) ⊗ bar(X) ⊗ 1_C")
    eq("d0-YX-correction", "d0",
       "1 · Y ⊗ bar(X) + 1 · bar(Y) ⊗ X + -1/2 · bar(Y^2) ⊗ δ + -1 · bar(Y) ⊗ δ Y",
       "1 · bar(Y) ⊗ bar(X) ⊗ 1_C + -1 · 1_C ⊗ bar(Y) ⊗ bar(X)")
    wedge = P("1 · bar(X) ⊗ bar(Y) + -1 · bar(Y) ⊗ bar(X)")
    img = pipe.d1(wedge)
    keys = pipe.window(1, 1)
    sol = solve(pipe.d0_rows(1, 1), pipe.coords(1, 2, img))
    out.append(Identity("d1-wedge-exact", f"d1({fmt(wedge)}) lies in the image of d0", sol is not None,
                        "" if sol is None else "witness " + fmt(ChainElement(2, {keys[k]: c for k, c in sol.items()}))))
    eq("d1-X", "d1", "1 · bar(X)", "1 · 1_C ⊗ bar(X) + 1 · bar(X) ⊗ 1_C")
    eq("d0-X", "d0", "1 · X", "-1 · bar(X) ⊗ 1_C + -1 · 1_C ⊗ bar(X) + -1 · δ ⊗ bar(Y)")
    eq("d0-deltaY", "d0", "1 · δ Y", "-1 · bar(Y) ⊗ δ + -1 · δ ⊗ bar(Y)")
    lhs = pipe.d1(P("1 · bar(X)")) + pipe.d0(P("1 · X + -1 · δ Y"))
    ok = lhs == P("1 · bar(Y) ⊗ δ")
    out.append(Identity("Ydelta-boundary", "bar(Y) ⊗ δ = d1(bar(X)) + d0(X - δ Y)".replace("δ", d), ok,
                        "" if ok else f"got {fmt(lhs)}"))
    for idn in out:
        idn.statement = idn.statement.replace("δ", d)
    return out
