"""Command-line front end: ``arrtool <subcommand> -i arrangement.json ...``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .arrangement import ArrangementError, dense_flats, esv_check, intersection_lattice, load_arrangement
from .orlik_solomon import build_os, format_os
from .scalar import ScalarSyntaxError, format_scalar, scalar_parse
from .weights import WindowBox, load_weight_matrix

SUBCOMMANDS = (
    "flats", "dense", "esv", "os-basis", "betti", "aomoto", "profile",
    "laurent-h", "massey", "holonomy", "bar-pages", "itint",
)


class UsageError(Exception):
    pass


def _key(k) -> str:
    return "(" + ",".join(str(x) for x in k) + ")"


def _weights(args, n: int):
    if args.weights is None:
        raise UsageError("--weights is required")
    parts = [p for p in args.weights.replace(",", " ").split() if p]
    w = [scalar_parse(p) for p in parts]
    if len(w) != n:
        raise ValueError(f"--weights has {len(w)} entries, expected {n}")
    return w


def _matrix(args):
    if args.a is None:
        raise UsageError("--a is required")
    return load_weight_matrix(args.a)


def _window(args, N: int, default: Optional[int] = None) -> WindowBox:
    R = args.window if args.window is not None else default
    if R is None:
        raise UsageError("--window is required")
    if R < 0:
        raise UsageError("--window must be non-negative")
    return WindowBox.radius(N, R)


# --- subcommands: each returns (json-able dict, text lines)

def cmd_flats(arr, args):
    lat = intersection_lattice(arr, projective=args.projective)
    data = {
        "projective": lat.projective,
        "whitney": lat.whitney(),
        "flats": [{"rank": f.rank, "hyperplanes": sorted(f.hyperplanes), "moebius": f.moebius} for f in lat.flats()],
    }
    lines = [f"rank {f.rank} {f.label()} mu={f.moebius}" for f in lat.flats()]
    lines.append("whitney " + " ".join(map(str, lat.whitney())))
    return data, lines


def cmd_dense(arr, args):
    flats = dense_flats(arr)
    data = {"dense": [{"hyperplanes": sorted(f.hyperplanes), "rank": f.rank} for f in flats]}
    return data, [f"{f.label()} rank {f.rank}" for f in flats]


def cmd_esv(arr, args):
    rep = esv_check(arr, _weights(args, arr.n))
    lines = ["valid" if rep.valid else "invalid"]
    lines += [f"violation {f.label()} sum {format_scalar(s)}" for f, s in rep.violations]
    return rep.to_dict(), lines


def cmd_os_basis(arr, args):
    alg = build_os(arr)
    degrees = range(len(alg.dims())) if args.degree is None else [args.degree]
    data, lines = {}, []
    for p in degrees:
        if not 0 <= p < len(alg.dims()):
            raise ValueError(f"degree {p} outside 0..{len(alg.dims()) - 1}")
        names = [("w" + "^w".join(map(str, m))) if m else "1" for m in alg.basis(p)]
        data[str(p)] = names
        lines.append(f"A^{p} ({len(names)}): " + " ".join(names))
    return {"basis": data}, lines


def cmd_betti(arr, args):
    dims = build_os(arr).dims()
    return {"betti": dims}, [" ".join(map(str, dims))]


def cmd_aomoto(arr, args):
    from .aomoto import aomoto_cohomology

    alg = build_os(arr)
    rep = aomoto_cohomology(alg, _weights(args, arr.n))
    reps = {str(p): [format_os(x) for x in xs] for p, xs in sorted(rep.representatives.items())}
    data = {"dims": rep.dims, "esv_valid": rep.esv_valid, "euler": rep.euler_characteristic(), "representatives": reps}
    lines = ["dims " + " ".join(map(str, rep.dims)), f"esv_valid {str(rep.esv_valid).lower()}"]
    for p, xs in reps.items():
        for x in xs:
            lines.append(f"H^{p} {x}")
    return data, lines


def cmd_profile(arr, args):
    from .aomoto import h1_completion_profile

    alg = build_os(arr)
    a = _matrix(args)
    prof = h1_completion_profile(alg, a, _window(args, a.N, 3))
    data = {_key(k): {"h1": h1, "h2": h2, "esv_valid": v} for k, (h1, h2, v) in sorted(prof.items())}
    lines = [f"{_key(k)} h1={h1} h2={h2} esv={'valid' if v else 'invalid'}" for k, (h1, h2, v) in sorted(prof.items())]
    return {"profile": data}, lines


def cmd_laurent_h(arr, args):
    from .laurent import laurent_cohomology

    alg = build_os(arr)
    a = _matrix(args)
    reports = laurent_cohomology(alg, a, _window(args, a.N, 2))
    data, lines = {}, []
    for k, rep in sorted(reports.items()):
        dims = rep.dims if args.degree is None else [rep.dims[args.degree]]
        if not any(dims):
            continue
        data[_key(k)] = {"dims": rep.dims, "esv_valid": rep.esv_valid}
        lines.append(f"{_key(k)} dims {' '.join(map(str, rep.dims))}")
    return {"nonzero_components": data}, lines or ["all components vanish"]


def cmd_massey(arr, args):
    from .laurent import format_laurent
    from .massey import massey_triple
    from .textio import parse_laurent

    alg = build_os(arr)
    a = _matrix(args)
    if args.classes is None:
        raise UsageError("--classes is required")
    texts = [t.strip() for t in args.classes.split(",")]
    if len(texts) != 3:
        raise UsageError("--classes takes three comma-separated Laurent elements")
    xs = [parse_laurent(alg, a.N, t) for t in texts]
    res = massey_triple(alg, a, *xs, _window(args, a.N, 4))
    data = res.to_dict()
    lines = [f"verdict {res.verdict}"]
    if res.defined:
        lines.append(f"target {_key(res.target)}")
        lines.append(f"representative {format_laurent(res.representative)}")
        lines.append(f"indeterminacy_dim {res.indeterminacy_dim}")
        lines += [f"indeterminacy {format_laurent(x)}" for x in res.indeterminacy_basis]
    else:
        lines.append(f"obstruction {res.obstruction}")
    return data, lines


def cmd_holonomy(arr, args):
    from .holonomy import holonomy_presentation, lcs_dims

    alg = build_os(arr)
    pres = holonomy_presentation(alg)
    dims = lcs_dims(pres, args.degree or 3)
    rels = [pres.format_relation(r) for r in pres.relations]
    data = {"generators": [f"x{i + 1}" for i in range(pres.n)], "relations": rels, "dims": dims}
    lines = ["generators " + " ".join(data["generators"])]
    lines += [f"relation {r}" for r in rels]
    lines.append("dims " + " ".join(map(str, dims)))
    return data, lines


def cmd_bar_pages(arr, args):
    from .bar import ConnectedDGA, em_pages

    alg = build_os(arr)
    if args.a is not None:
        a = _matrix(args)
        H = ConnectedDGA.from_cohomology(alg, a, _window(args, a.N, 1))
    else:
        H = ConnectedDGA.from_os(alg)
    smax = 3 if args.smax is None else args.smax
    if smax < 0:
        raise UsageError("--smax must be non-negative")
    pages = em_pages(H, smax)
    data, lines = {}, []
    for name, page in (("E1", pages.e1), ("E2", pages.e2)):
        data[name] = {f"{-s},{t}": v for (s, t), v in sorted(page.items(), key=lambda kv: (-kv[0][0], kv[0][1]))}
        lines.append(name)
        for (s, t), v in sorted(page.items(), key=lambda kv: (-kv[0][0], kv[0][1])):
            lines.append(f"  ({s},{t}) {v}")
    return data, lines


def cmd_itint(arr, args):
    from .itint import load_loop, monodromy, omega_integrals, standard_meridian

    r_value = scalar_parse(args.r) if args.r is not None else None
    a = load_weight_matrix(args.a) if args.a is not None else None
    loops = []
    if args.loop:
        loops.append(("loop", load_loop(args.loop)))
    else:
        loops += [(f"meridian {j}", standard_meridian(arr, j)) for j in range(1, arr.n + 1)]
    def fmt(z: complex) -> str:
        # adding 0.0 turns a rounded -0.0 into 0.0 so output is byte-stable
        re, im = round(z.real, 10) + 0.0, round(z.imag, 10) + 0.0
        return f"{re:.10f}{im:+.10f}i"

    data, lines = {}, []
    for name, loop in loops:
        ints = omega_integrals(arr, loop)
        entry = {"omega": [fmt(z) for z in ints]}
        line = f"{name}: omega " + " ".join(fmt(z) for z in ints)
        if a is not None:
            rho = monodromy(arr, a, loop, r_value)
            entry["monodromy"] = [fmt(complex(z)) for z in rho]
            line += " | monodromy " + " ".join(fmt(complex(z)) for z in rho)
        data[name] = entry
        lines.append(line)
    return data, lines


COMMANDS = {
    "flats": cmd_flats,
    "dense": cmd_dense,
    "esv": cmd_esv,
    "os-basis": cmd_os_basis,
    "betti": cmd_betti,
    "aomoto": cmd_aomoto,
    "profile": cmd_profile,
    "laurent-h": cmd_laurent_h,
    "massey": cmd_massey,
    "holonomy": cmd_holonomy,
    "bar-pages": cmd_bar_pages,
    "itint": cmd_itint,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-i", "--input", required=True, help="arrangement JSON file")
    common.add_argument("--format", choices=("text", "json"), default="text")
    parser = argparse.ArgumentParser(prog="arrtool", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, metavar="SUBCOMMAND")
    for name in SUBCOMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name in ("esv", "aomoto"):
            p.add_argument("--weights", help="weight row, e.g. '0 r r 0 -2*r'")
        if name in ("profile", "laurent-h", "massey", "bar-pages", "itint"):
            p.add_argument("--a", help="weight matrix file (rows of scalar strings)")
        if name in ("profile", "laurent-h", "massey", "bar-pages"):
            p.add_argument("--window", type=int, help="box radius R")
        if name in ("os-basis", "laurent-h", "holonomy"):
            p.add_argument("--degree", type=int)
        if name == "massey":
            p.add_argument("--classes", help="three comma-separated Laurent elements")
        if name == "bar-pages":
            p.add_argument("--smax", type=int)
        if name == "flats":
            p.add_argument("--projective", action="store_true", help="lattice of the projective closure")
        if name == "itint":
            p.add_argument("--loop", help="loop JSON file (default: standard meridians)")
            p.add_argument("--r", help="numeric value substituted for r")
    return parser


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        arr = load_arrangement(args.input)
        data, lines = COMMANDS[args.command](arr, args)
    except UsageError as exc:
        print(f"arrtool: usage error: {exc}", file=err)
        return 2
    except (ArrangementError, ScalarSyntaxError, ValueError, ZeroDivisionError, OSError, KeyError) as exc:
        print(f"arrtool: error: {exc}", file=err)
        return 1
    if args.format == "json":
        print(json.dumps(data, indent=2, sort_keys=True), file=out)
    else:
        for line in lines:
            print(line, file=out)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
