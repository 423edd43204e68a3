"""Batch command line: one subcommand per pipeline, reports on stdout.

Exit codes: 0 pass, 1 mathematical failure, 2 usage error, 3 window/closure error.
"""
from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor

from . import reports
from .presets import CARTAN_TYPES, UnknownPreset, get_preset, mpi_of, mutated_preset, mpi_verify, trivial_mpi
from .tensorspace import ClosureError, format_chain

EXIT_OK, EXIT_MATH, EXIT_USAGE, EXIT_CLOSURE = 0, 1, 2, 3


class UsageError(ValueError):
    pass


# --- argument parsing helpers ---------------------------------------------------------

def parse_caps(text):
    if not text:
        return {}
    out = {}
    for part in text.split(","):
        k, sep, v = part.partition("=")
        if not sep or not k.strip():
            raise UsageError(f"bad cap {part!r}; expected name=value")
        try:
            n = int(v)
        except ValueError:
            raise UsageError(f"cap {k} is not an integer") from None
        if n <= 0:
            raise UsageError(f"cap {k} must be positive")
        out[k.strip()] = n
    return out


def parse_degrees(text, default):
    if not text:
        return list(default)
    a, sep, b = text.partition("..")
    try:
        lo, hi = (int(a), int(b)) if sep else (int(a), int(a))
    except ValueError:
        raise UsageError(f"bad degree range {text!r}; expected a..b") from None
    if lo < 0 or hi < lo:
        raise UsageError(f"bad degree range {text!r}")
    return list(range(lo, hi + 1))


def resolve_cartan(text):
    """A type name (A1, A2, A3) or a matrix "2,-1;-1,2" matching a shipped type."""
    if text in CARTAN_TYPES:
        return text
    try:
        rows = tuple(tuple(int(x) for x in r.split(",")) for r in text.split(";"))
    except ValueError:
        raise UsageError(f"bad Cartan matrix {text!r}") from None
    for name, c in CARTAN_TYPES.items():
        if tuple(map(tuple, c.A)) == rows:
            return name
    raise UsageError(f"Cartan matrix {text!r} is not one of the shipped types {sorted(CARTAN_TYPES)}")


def preset_names(args):
    names = []
    for chunk in args.preset or []:
        names += [x for x in chunk.split(",") if x]
    if args.cartan:
        names.append(f"uq:{resolve_cartan(args.cartan)}")
    if not names:
        raise UsageError("--preset (or --cartan) is required")
    for n in names:
        try:
            get_preset(n)
        except UnknownPreset:
            raise UsageError(f"unknown preset {n!r}") from None
    return names


def _config(args, **extra):
    cfg = {k: v for k, v in vars(args).items() if k not in ("func", "format") and v is not None}
    cfg.update(extra)
    return cfg


def _uq_type(name):
    if name.startswith("uq:"):
        return name[3:]
    return None


def _pool_map(fn, items, jobs):
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))


# --- commands ---------------------------------------------------------------------------

def _hopf_one(job):
    from .presentation import verify_hopf

    name, mutation, length = job
    p = mutated_preset(name, mutation) if mutation else get_preset(name)
    return verify_hopf(p, length).as_dict()


def cmd_verify_hopf(args):
    names = preset_names(args)
    if args.mutate:
        for n in names:
            try:
                mutated_preset(n, args.mutate)
            except UnknownPreset as e:
                raise UsageError(str(e)) from None
    out = _pool_map(_hopf_one, [(n, args.mutate, args.length) for n in names], args.jobs)
    ok = all(r["passed"] for r in out)
    return reports.report("verify-hopf", _config(args), {r["preset"]: r for r in out}, ok, ["computed"])


def cmd_mpi_check(args):
    names = preset_names(args)
    results = {}
    for n in names:
        p = get_preset(n)
        try:
            m = mpi_of(p) if args.coeff == "mpi" else trivial_mpi(p)
        except ValueError as e:
            raise UsageError(str(e)) from None
        results[n] = mpi_verify(p, m, samples=100, seed=args.seed, max_len=4)
    ok = all(r["passed"] for r in results.values())
    return reports.report("mpi-check", _config(args), results, ok, ["computed"])


def cmd_cocycle_check(args):
    from .homology import in_image, weight1_cocycles, weight1_hochschild, _normalized
    from .complexes import coboundary
    from .presentation import UNIT
    from .scalars import ONE

    names = preset_names(args)
    results, ok = {}, True
    cap = max(parse_caps(args.caps).values(), default=2)
    for n in names:
        if n not in ("h1", "h1s"):
            raise UsageError("cocycle-check supports h1 and h1s")
        p = get_preset(n)
        hh = weight1_hochschild(n, cap)
        entry = {}
        for deg, x in weight1_cocycles(n).items():
            bx = coboundary(p, x, {UNIT: ONE}, {UNIT: ONE})
            nonzero = not in_image(hh.slice, deg, _normalized(x))
            entry[format_chain(x, p.format_word)] = {"degree": deg, "coboundary_zero": not bx.terms,
                                                     "nonzero_class": nonzero}
            ok = ok and not bx.terms and nonzero
        results[n] = {"cocycles": entry, "weight1_dims": hh.dims, "coefficients": mpi_of(p).label}
    return reports.report("cocycle-check", _config(args, cap=cap), results, ok, ["computed"])


def _grid_dict(page):
    return {f"{i},{j}": d for (i, j), d in sorted(page.grid.items()) if d}


def cmd_e1(args):
    from .homology import (assemble_E1, binomial_grid, h1_pipeline, spanning_E1, page_advance,
                           uq_w_page, weight1_identities)

    names = preset_names(args)
    results, ok, prov = {}, True, set()
    for n in names:
        typ = _uq_type(n)
        if n in ("h1", "h1s"):
            cap = max(parse_caps(args.caps).values(), default=2)
            pipe = h1_pipeline(n, cap, args.normalization)
            degs = parse_degrees(args.degrees, range(0, 3))
            e1 = assemble_E1(pipe, max(degs) + 1)
            e2 = page_advance(pipe, e1)
            fmt = lambda x: format_chain(x, pipe.z.format_key)
            ids = weight1_identities(pipe)
            expected = {(1, 0): 1, (0, 2): 1}
            e2_low = {k: v for k, v in e2.grid.items() if v and sum(k) <= max(degs)}
            match = e2_low == {k: v for k, v in expected.items() if sum(k) <= max(degs)}
            ids_ok = all(i.holds for i in ids)
            ok = ok and match and ids_ok
            prov.add("computed")
            results[n] = {
                "E1": {"grid": {f"{i},{j}": d for (i, j), d in sorted(e1.grid.items()) if i + j <= max(degs) and d},
                       "representatives": {f"{i},{j}": [fmt(x) for x in r]
                                           for (i, j), r in sorted(e1.reps.items()) if r and i + j <= max(degs)}},
                "E2": {"grid": {f"{i},{j}": d for (i, j), d in sorted(e2_low.items())},
                       "representatives": {f"{i},{j}": [fmt(x) for x in e2.reps[(i, j)]] for (i, j) in sorted(e2_low)}},
                "identities": {i.label: {"statement": i.statement, "holds": i.holds, "detail": i.detail} for i in ids},
                "normalization": args.normalization,
                "matches_expected_E2": match,
            }
        elif typ:
            l = CARTAN_TYPES[typ].rank
            span = spanning_E1(typ)
            expected = binomial_grid(l)
            in_range = {k: v for k, v in span.grid.items() if k[0] <= l + 1 and k[1] <= l + 1}
            match = in_range == expected and span.grid == expected
            entry = {
                "spanning_route": {"grid": _grid_dict(span), "memberships_ok": span.memberships_ok,
                                "expected_grid": {f"{i},{j}": d for (i, j), d in expected.items()},
                                "matches_expected": match},
            }
            prov.add("shortcut:cosemisimple")
            if not get_preset(n).counting_only:
                w1, w2 = uq_w_page(typ)
                entry["w_coextension"] = {"E1_row_sizes": {str(i): d for (i, j), d in sorted(w1.grid.items())},
                                          "E2": {str(i): d for (i, j), d in sorted(w2.grid.items())}}
                prov.add("computed")
            ok = ok and match and span.memberships_ok
            results[n] = entry
        else:
            raise UsageError(f"e1 supports h1, h1s and uq presets, not {n}")
    return reports.report("e1", _config(args), results, ok, prov)


def cmd_hochschild(args):
    from .homology import euler_characteristic, uq_hochschild, weight1_hochschild

    names = preset_names(args)
    results, ok, prov = {}, True, set()
    for n in names:
        typ = _uq_type(n)
        if n in ("h1", "h1s"):
            cap = max(parse_caps(args.caps).values(), default=2)
            degs = parse_degrees(args.degrees, range(0, 4))
            if args.weight != 1:
                raise UsageError("the Hochschild slice for h1/h1s is implemented in weight 1")
            hh = weight1_hochschild(n, cap, degrees=degs)
            hh2 = weight1_hochschild(n, cap + 1, degrees=degs)
            p = get_preset(n)
            expected = {d: (1 if d in (1, 2) else 0) for d in degs}
            stable = hh.dims == hh2.dims
            match = hh.dims == expected
            ok = ok and stable and match
            results[n] = {"dims": hh.dims, "stable_at_cap_plus_one": stable, "expected": expected,
                          "matches_expected": match, "cap": cap,
                          "representatives": {str(d): [format_chain(x, p.format_word) for x in r]
                                              for d, r in hh.reps.items() if r}}
            prov.add("computed")
        elif typ:
            l = CARTAN_TYPES[typ].rank
            degs = parse_degrees(args.degrees, range(0, l + 3))
            expected = {d: (2 ** l if d == l else 0) for d in degs}
            if get_preset(n).counting_only:
                dims, chi = euler_characteristic(typ)
                results[n] = {"mode": "counting", "sector_sizes": {str(i): d for i, d in enumerate(dims)},
                              "euler_characteristic": chi, "expected": expected,
                              "consistent_with_expected": chi == (-1) ** l * 2 ** l}
                ok = ok and chi == (-1) ** l * 2 ** l
            else:
                hh = uq_hochschild(typ, degs)
                p = get_preset(n)
                match = hh.dims == expected
                results[n] = {"dims": hh.dims, "expected": expected, "matches_expected": match,
                              "representatives": {str(d): [format_chain(x, p.format_word) for x in r]
                                                  for d, r in hh.reps.items() if r}}
                ok = ok and match
            prov.add("computed")
        else:
            raise UsageError(f"hochschild supports h1, h1s and uq presets, not {n}")
    return reports.report("hochschild", _config(args), results, ok, prov)


def cmd_hp(args):
    from .homology import (assemble_E1, euler_characteristic, h1_pipeline, hp_weight1_assemble,
                           page_advance, sbi_assemble, uq_hochschild, NotConcentrated)

    names = preset_names(args)
    results, ok, prov = {}, True, set()
    for n in names:
        typ = _uq_type(n)
        if n in ("h1", "h1s"):
            pipe = h1_pipeline(n, 2, "D")
            e2 = page_advance(pipe, assemble_E1(pipe, 3))
            hp = hp_weight1_assemble(n, e2)
            d = "d1" if n == "h1" else "Z"
            want_odd = [f"1 · {d}"]
            want_even = [f"1 · X ⊗ Y + -1 · Y ⊗ X + -1 · {d} Y ⊗ Y"]
            match = hp.odd == want_odd and hp.even == want_even
            ok = ok and match
            results[n] = {"HP_odd": hp.odd, "HP_even": hp.even, "checks": hp.checks,
                          "coefficients": mpi_of(get_preset(n)).label}
            prov.update(hp.provenance)
            prov.add("computed")
        elif typ:
            l = CARTAN_TYPES[typ].rank
            expected = {"HP_even": 2 ** l if l % 2 == 0 else 0, "HP_odd": 2 ** l if l % 2 else 0}
            if get_preset(n).counting_only:
                dims, chi = euler_characteristic(typ)
                parity = "even" if chi > 0 else "odd"
                results[n] = {"mode": "counting", "euler_characteristic": chi,
                              "if_concentrated": {f"HP_{parity}": abs(chi),
                                                  f"HP_{'odd' if parity == 'even' else 'even'}": 0},
                              "expected": expected}
                ok = ok and results[n]["if_concentrated"] == expected
            else:
                hh = uq_hochschild(typ, range(0, sum(CARTAN_TYPES[typ].two_rho) + 1))
                seq = [hh.dims[d] for d in sorted(hh.dims)]
                try:
                    cyc = sbi_assemble(seq)
                    got = {"HP_even": cyc.hp_even, "HP_odd": cyc.hp_odd}
                    results[n] = {"HH": hh.dims, "HC": cyc.hc, **got, "expected": expected}
                    ok = ok and got == expected
                except NotConcentrated as e:
                    results[n] = {"HH": hh.dims, "error": str(e), "expected": expected}
                    ok = False
            prov.update(["computed", "imported:sbi-pattern"])
        else:
            raise UsageError(f"hp supports h1, h1s and uq presets, not {n}")
    return reports.report("hp", _config(args), results, ok, prov)


# --- entry point -------------------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(prog="hopfcyclic", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--preset", action="append", help="preset id (repeat or comma-separate)")
        p.add_argument("--cartan", help="Cartan type (A1, A2, A3) or matrix like '2,-1;-1,2'")
        p.add_argument("--coeff", choices=["mpi", "trivial"], default="mpi")
        p.add_argument("--caps", help="window caps, e.g. X=2,Y=2")
        p.add_argument("--degrees", help="degree range a..b")
        p.add_argument("--weight", type=int, default=1)
        p.add_argument("--format", choices=["json", "csv", "text"], default="json")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--jobs", type=int, default=1)

    for name, fn, extra in [
        ("verify-hopf", cmd_verify_hopf, "hopf"),
        ("mpi-check", cmd_mpi_check, None),
        ("cocycle-check", cmd_cocycle_check, None),
        ("e1", cmd_e1, "e1"),
        ("hochschild", cmd_hochschild, None),
        ("hp", cmd_hp, None),
    ]:
        p = sub.add_parser(name)
        common(p)
        if extra == "hopf":
            p.add_argument("--mutate", help="negative control: drop-delta1Y (h1) or primitive-E (uq)")
            p.add_argument("--length", type=int, default=3)
        if extra == "e1":
            p.add_argument("--normalization", choices=["D", "none", "CD"], default="D")
        p.set_defaults(func=fn)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    if args.jobs < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        doc = args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ClosureError as e:
        print(f"closure error: {e}", file=sys.stderr)
        return EXIT_CLOSURE
    sys.stdout.write(reports.render(doc, args.format))
    return EXIT_OK if doc["passed"] else EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
