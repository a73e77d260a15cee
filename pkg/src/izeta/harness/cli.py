"""Command-line entry point ``izeta``."""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from ..errors import IzetaError
from ..graphs import (
    ErdosRenyiSpec,
    Graph,
    circular_ladder,
    complete_graph,
    cycle_graph,
    format_edge_list,
    path_graph,
    petersen_graph,
    random_regular,
    read_edge_list,
    sample_erdos_renyi,
)
from ..gtrh.criteria import gtrh_check_regular
from ..gtrh.poles import normalized_pole_set, poles_auto
from ..tolerances import TOL
from ..zeta import evaluate_all
from .campaign import run_campaign
from .config import ConfigError, acceptance_config, load_config
from .plot import plot_spectrum
from .verify import verify_suite


def parse_graph(spec: str) -> Graph:
    """``cycle:5``, ``path:4``, ``complete:4``, ``petersen``, ``ladder:20``,
    ``regular:n,d,seed``, ``er:n,rho,seed`` or a path to an edge-list file."""
    name, _, arg = spec.partition(":")
    try:
        if name == "cycle":
            return cycle_graph(int(arg))
        if name == "path":
            return path_graph(int(arg))
        if name == "complete":
            return complete_graph(int(arg))
        if name == "petersen":
            return petersen_graph()
        if name == "ladder":
            return circular_ladder(int(arg))
        if name == "regular":
            n, d, s = arg.split(",")
            return random_regular(int(n), int(d), int(s))
        if name == "er":
            n, rho, s = arg.split(",")
            return sample_erdos_renyi(ErdosRenyiSpec(int(n), float(rho), int(s)))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad graph spec {spec!r}: {exc}")
    p = Path(spec)
    if p.exists():
        return read_edge_list(p)
    raise argparse.ArgumentTypeError(f"unknown graph spec or missing file: {spec!r}")


def _c(z: complex) -> str:
    z = complex(z)
    return f"{z.real!r},{z.imag!r}"


def cmd_sample(a) -> int:
    if a.graph:
        g = parse_graph(a.graph)
    else:
        if a.n is None or a.rho is None:
            print("sample: give --graph, or --n and --rho", file=sys.stderr)
            return 2
        g = sample_erdos_renyi(ErdosRenyiSpec(a.n, a.rho, a.seed), a.attempt)
    text = format_edge_list(g)
    if a.output:
        Path(a.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_zeta(a) -> int:
    g = parse_graph(a.graph)
    print("route,u_re,u_im,value_re,value_im")
    for u in a.u:
        for ev in evaluate_all(g, complex(u.replace(" ", "")), a.K):
            print(f"{ev.route},{_c(ev.u)},{_c(ev.inverse_value)}")
    return 0


def cmd_poles(a) -> int:
    g = parse_graph(a.graph)
    ps = normalized_pole_set(g, a.rho, a.route) if a.rho else poles_auto(g)
    plane = "v" if a.rho else "u"
    main = ps.poles_v if a.rho else ps.poles_u
    unit = ps.unit_poles_v if a.rho else ps.unit_poles_u
    print("re,im,route,multiplicity_flag")
    for z in main:
        print(f"{_c(z)},{ps.route},root")
    for z in unit:
        print(f"{_c(z)},{ps.route},unit_prefactor")
    print(f"[poles] {main.size} roots + {unit.size} prefactor poles in the {plane}-plane", file=sys.stderr)
    return 0


def cmd_gtrh(a) -> int:
    rep = gtrh_check_regular(parse_graph(a.graph))
    print(json.dumps({
        "q": rep.q,
        "ramanujan": rep.ramanujan,
        "pole_based": rep.pole_based,
        "agree": rep.agree,
        "worst_nontrivial_eigenvalue": rep.worst_eigenvalue,
        "bound": 2 * math.sqrt(rep.q),
        "offending_poles": [[z.real, z.imag] for z in rep.offending_poles],
    }, indent=2))  # fmt: skip
    return 0


def cmd_campaign(a) -> int:
    try:
        cfg = load_config(a.config) if a.config else acceptance_config()
        if a.trials is not None:
            cfg = cfg.with_overrides(schedule=tuple((n, chi, a.trials) for n, chi, _ in cfg.schedule))
        cfg = cfg.with_overrides(
            seed_root=a.seed_root,
            output_dir=a.output_dir,
            workers=a.workers,
            emit_plots=True if a.emit_plots else None,
            archive_graphs=False if a.no_archive else None,
        )
    except (ConfigError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    return run_campaign(cfg)


def _parse_tol(items) -> dict:
    out = {}
    for it in items or ():
        k, _, v = it.partition("=")
        out[k.strip()] = float(v)
    return out


def cmd_verify(a) -> int:
    tol = TOL.with_overrides(_parse_tol(a.tol))
    res = verify_suite(a.level, tol, only=a.only, progress=lambda s: print(s, file=sys.stderr))
    for r in res:
        print(r.line())
    failed = [r for r in res if not r.passed]
    print(f"{len(res) - len(failed)}/{len(res)} checks passed")
    return 1 if failed else 0


def cmd_plot(a) -> int:
    g = parse_graph(a.graph)
    plot_spectrum(g, a.rho, a.out, chi=a.chi, kappa=a.kappa)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="izeta", description="Ihara zeta functions of graphs and random-graph pole experiments.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sample", help="emit a graph as an edge list")
    s.add_argument("--graph", help="named family instead of an Erdos-Renyi sample")
    s.add_argument("--n", type=int)
    s.add_argument("--rho", type=float)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--attempt", type=int, default=0)
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_sample)

    s = sub.add_parser("zeta", help="evaluate 1/zeta(u) by every route")
    s.add_argument("graph")
    s.add_argument("--u", action="append", required=True, help="complex point, e.g. 0.1+0.05j; repeatable")
    s.add_argument("--K", type=int, default=200, help="series truncation order")
    s.set_defaults(fn=cmd_zeta)

    s = sub.add_parser("poles", help="pole set as CSV")
    s.add_argument("graph")
    s.add_argument("--rho", type=float, help="report v = u sqrt(rho) instead of u")
    s.add_argument("--route", default="auto", choices=["auto", "companion", "edge"])
    s.set_defaults(fn=cmd_poles)

    s = sub.add_parser("gtrh-check", help="Ramanujan report for a regular graph")
    s.add_argument("graph")
    s.set_defaults(fn=cmd_gtrh)

    s = sub.add_parser("campaign", help="run the random-graph pole campaign")
    s.add_argument("--config", help="INI config; defaults to the acceptance schedule")
    s.add_argument("--seed-root", type=int)
    s.add_argument("--output-dir")
    s.add_argument("--workers", type=int)
    s.add_argument("--trials", type=int, help="override trials at every n")
    s.add_argument("--emit-plots", action="store_true")
    s.add_argument("--no-archive", action="store_true")
    s.set_defaults(fn=cmd_campaign)

    s = sub.add_parser("verify", help="run the property suite")
    s.add_argument("--level", choices=["fast", "full"], default="fast")
    s.add_argument("--tol", action="append", metavar="NAME=VALUE", help="override a tolerance; repeatable")
    s.add_argument("--only", action="append", help="run only this check group; repeatable")
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("plot", help="SVG of the normalized poles")
    s.add_argument("graph")
    s.add_argument("--rho", type=float, required=True)
    s.add_argument("--chi", type=float)
    s.add_argument("--kappa", type=float, default=0.5)
    s.add_argument("--out", required=True)
    s.set_defaults(fn=cmd_plot)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
        return a.fn(a)
    except argparse.ArgumentTypeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (IzetaError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
