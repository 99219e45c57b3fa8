"""Command-line front end for the simulator, analytics, and sweep drivers.

Every value can come from three places, in rising precedence: built-in
defaults, a JSON --config file keyed by flag name, then explicit flags.
Commands that run the simulator require --seed so no run is accidentally
irreproducible.  Exit codes: 0 success, 2 bad configuration or validation,
3 numerical failure, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .analytics import (
    HardDiskMu2Mode,
    mu1_closed_form,
    mu2_hard_disk,
    mu2_quadrature,
)
from .channel import ChannelKind, ChannelModel
from .experiments import (
    SweepSpec,
    Table,
    TableFormat,
    run_degree_sweep,
    run_hbar_scaling,
    run_hop_distribution,
    run_mu3_fit,
    run_phase_diagram,
    table_to_csv,
    table_to_json,
    write_table,
)
from .simulator import NetworkConfig, simulate
from .specfun import NumericalError

_SIM_COMMANDS = ("simulate", "sweep", "phase", "hopdist", "hbar", "fit")

_HD_MODES = {
    "numeric": HardDiskMu2Mode.NUMERIC_INTEGRAL,
    "asym2d": HardDiskMu2Mode.ASYMPTOTIC_2D,
    "asym3d": HardDiskMu2Mode.ASYMPTOTIC_3D,
}


def _floats(text):
    if isinstance(text, (list, tuple)):
        return tuple(float(v) for v in text)
    return tuple(float(v) for v in text.split(",") if v.strip())


def _cases(text):
    if isinstance(text, (list, tuple)):
        return tuple((float(a), float(b)) for a, b in text)
    pairs = []
    for token in text.split(","):
        if not token.strip():
            continue
        eps, _, eta = token.partition(":")
        if not eta:
            raise ValueError(f"case {token!r} is not epsilon:eta")
        pairs.append((float(eps), float(eta)))
    return tuple(pairs)


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="dirnet",
        description="Connectivity statistics for random directional-antenna "
                    "networks: Monte Carlo simulation and analytic formulas.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", help="JSON file of defaults keyed by flag name")
        p.add_argument("--out", help="output file (.csv or .json)")
        p.add_argument("--format", choices=("csv", "json"), dest="fmt",
                       help="output format (default: from --out suffix, else json)")

    def add_channel(p):
        p.add_argument("--eta", type=float, help="path loss exponent (default 3)")
        p.add_argument("--epsilon", type=float,
                       help="antenna directivity in [0, 1] (default 0)")
        p.add_argument("--beta", type=float, help="link budget scale (default 1)")
        p.add_argument("--lobes", type=int, help="antenna lobe count (default 1)")
        p.add_argument("--hard-disk-r0", type=float,
                       help="use the deterministic disk channel with this radius")

    p = sub.add_parser("simulate", help="Monte Carlo hop statistics for one config")
    add_common(p)
    add_channel(p)
    p.add_argument("--density", type=float)
    p.add_argument("--domain-radius", type=float)
    p.add_argument("--margin", type=float, help="boundary margin (default: auto)")
    p.add_argument("--seed", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--max-hops", type=int)
    p.add_argument("--max-sources", type=int)
    p.add_argument("--dump", help="append per-trial geometry as JSON lines here")

    p = sub.add_parser("analytic", help="closed-form and quadrature mean degrees")
    add_common(p)
    add_channel(p)
    p.add_argument("--density", type=float)
    p.add_argument("--k", help="comma list of hop counts to compute (default 1)")
    p.add_argument("--hard-disk-mode", choices=sorted(_HD_MODES),
                   help="2-hop evaluator for the disk channel (default numeric)")

    p = sub.add_parser("sweep", help="simulated degree table over a parameter grid")
    add_common(p)
    p.add_argument("--densities")
    p.add_argument("--etas")
    p.add_argument("--epsilons")
    p.add_argument("--beta", type=float)
    p.add_argument("--lobes", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--max-hops", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--margin", type=float)
    p.add_argument("--max-sources", type=int)
    p.add_argument("--no-analytic-mu2", action="store_true", default=None,
                   help="skip the 2-hop quadrature column")

    p = sub.add_parser("phase", help="which antenna wins mean degree, per (density, eta)")
    add_common(p)
    p.add_argument("--densities")
    p.add_argument("--etas")
    p.add_argument("--epsilon-star", type=float)
    p.add_argument("--k", type=int, choices=(1, 2))
    p.add_argument("--trials", type=int, help="fallback simulation trials")
    p.add_argument("--seed", type=int)
    p.add_argument("--max-sources", type=int)

    p = sub.add_parser("hopdist", help="hop-count pmf, isotropic vs directional")
    add_common(p)
    p.add_argument("--density", type=float)
    p.add_argument("--eta", type=float)
    p.add_argument("--epsilon-star", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--lobes", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--margin", type=float)
    p.add_argument("--max-sources", type=int)

    p = sub.add_parser("hbar", help="mean hop distance vs density with decay fit")
    add_common(p)
    p.add_argument("--densities")
    p.add_argument("--cases", help="comma list of epsilon:eta pairs")
    p.add_argument("--beta", type=float)
    p.add_argument("--lobes", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--max-sources", type=int)

    p = sub.add_parser("fit", help="3-hop degree growth law over a density grid")
    add_common(p)
    p.add_argument("--densities")
    p.add_argument("--eta", type=float)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--lobes", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--max-sources", type=int)

    return parser


_DEFAULTS = {
    "simulate": {"density": 1.0, "eta": 3.0, "epsilon": 0.0, "beta": 1.0,
                 "lobes": 1, "hard_disk_r0": None, "domain_radius": 10.0,
                 "margin": None, "seed": None, "trials": 200, "max_hops": None,
                 "max_sources": None, "dump": None},
    "analytic": {"density": 1.0, "eta": 3.0, "epsilon": 0.0, "beta": 1.0,
                 "lobes": 1, "hard_disk_r0": None, "k": "1",
                 "hard_disk_mode": "numeric"},
    "sweep": {"densities": "1,2,3,4", "etas": "3", "epsilons": "0,1",
              "beta": 1.0, "lobes": 1, "trials": 200, "max_hops": 3,
              "seed": None, "margin": None, "max_sources": None,
              "no_analytic_mu2": False},
    "phase": {"densities": "0.5,1,2,4", "etas": "2,2.5,3,4",
              "epsilon_star": 1.0, "k": 1, "trials": 200, "seed": None,
              "max_sources": None},
    "hopdist": {"density": 3.0, "eta": 3.0, "epsilon_star": 1.0, "beta": 1.0,
                "lobes": 1, "trials": 500, "seed": None, "margin": None,
                "max_sources": None},
    "hbar": {"densities": "0.25,0.5,0.75,1,1.5,2,3,4,6,8", "cases": "0:3,1:3",
             "beta": 1.0, "lobes": 1, "trials": 500, "seed": None,
             "max_sources": None},
    "fit": {"densities": "0.5,1,1.5,2,2.5,3,3.5,4", "eta": 3.0,
            "epsilon": 0.0, "beta": 1.0, "lobes": 1, "trials": 200,
            "seed": None, "max_sources": None},
}


def _merge(args):
    """Apply precedence: defaults, then --config entries, then flags."""
    defaults = _DEFAULTS[args.command]
    config = {}
    if args.config:
        with open(args.config) as handle:
            config = json.load(handle)
        unknown = set(config) - set(defaults)
        if unknown:
            raise ValueError(
                f"unknown config keys for {args.command}: {sorted(unknown)}")
    merged = {}
    for key, default in defaults.items():
        flag = getattr(args, key, None)
        if flag is not None:
            merged[key] = flag
        elif key in config:
            merged[key] = config[key]
        else:
            merged[key] = default
    if args.command in _SIM_COMMANDS and merged.get("seed") is None:
        raise ValueError(f"--seed is required for '{args.command}' so the "
                         "run is reproducible")
    return merged


def _channel(opts):
    if opts.get("hard_disk_r0") is not None:
        return ChannelModel.hard_disk(r0=opts["hard_disk_r0"])
    return ChannelModel.rayleigh(eta=opts["eta"], epsilon=opts["epsilon"],
                                 beta=opts["beta"], lobes=opts["lobes"])


def _emit(table, out, fmt):
    fmt = TableFormat(fmt) if fmt is not None else None
    if out:
        write_table(table, out, fmt)
        return
    if fmt is TableFormat.CSV:
        sys.stdout.write(table_to_csv(table))
    else:
        sys.stdout.write(table_to_json(table))


def _cmd_simulate(opts, out, fmt):
    channel = _channel(opts)
    config = NetworkConfig(density=opts["density"], channel=channel,
                           domain_radius=opts["domain_radius"],
                           boundary_margin=opts["margin"], seed=opts["seed"],
                           trials=opts["trials"])
    stats = simulate(config, max_hops=opts["max_hops"],
                     max_sources=opts["max_sources"], dump_path=opts["dump"])
    rows = [(k, stats.mu[k], stats.stderr[k]) for k in sorted(stats.mu)]
    hard = channel.kind is ChannelKind.HARD_DISK
    meta = {
        "generator": "dirnet", "command": "simulate",
        "density": opts["density"],
        "eta": None if hard else channel.eta,
        "epsilon": None if hard else channel.epsilon,
        "beta": None if hard else channel.beta,
        "hard_disk_r0": opts["hard_disk_r0"],
        "domain_radius": opts["domain_radius"],
        "boundary_margin": config.resolved_margin(opts["max_hops"]),
        "seed": opts["seed"], "trials": opts["trials"],
        "max_hops": opts["max_hops"], "max_sources": opts["max_sources"],
        "n_nodes": stats.n_nodes, "n_interior": stats.n_interior,
        "mu_inf": stats.mu_inf,
        "h_bar": stats.h_bar if math.isfinite(stats.h_bar) else None,
        "mean_cluster_size": stats.mean_cluster_size,
        "trials_with_unreachable": stats.trials_with_unreachable,
    }
    _emit(Table(columns=("k", "mu", "stderr"), rows=rows, metadata=meta),
          out, fmt)
    return 0


def _cmd_analytic(opts, out, fmt):
    channel = _channel(opts)
    rho = opts["density"]
    hops = tuple(int(v) for v in str(opts["k"]).split(",") if str(v).strip())
    if not hops or any(k not in (1, 2) for k in hops):
        raise ValueError("analytic supports k in {1, 2}")
    hard = channel.kind is ChannelKind.HARD_DISK
    rows = []
    for k in hops:
        if k == 1:
            if hard:
                # mean degree of a disk graph: intensity times disk area
                rows.append((1, rho * math.pi * channel.r0 ** 2, 0.0))
            else:
                est = mu1_closed_form(rho, channel)
                rows.append((1, est.value, est.error_bound))
        else:
            if hard:
                est = mu2_hard_disk(rho, channel.r0,
                                    _HD_MODES[opts["hard_disk_mode"]])
            else:
                est = mu2_quadrature(rho, channel)
            rows.append((2, est.value, est.error_bound))
    meta = {"generator": "dirnet", "command": "analytic", "density": rho,
            "eta": None if hard else channel.eta,
            "epsilon": None if hard else channel.epsilon,
            "beta": None if hard else channel.beta,
            "hard_disk_r0": opts["hard_disk_r0"]}
    _emit(Table(columns=("k", "mu", "error_bound"), rows=rows, metadata=meta),
          out, fmt)
    return 0


def _cmd_sweep(opts, out, fmt):
    spec = SweepSpec(densities=_floats(opts["densities"]),
                     etas=_floats(opts["etas"]),
                     epsilons=_floats(opts["epsilons"]),
                     beta=opts["beta"], lobes=opts["lobes"],
                     trials=opts["trials"], max_hops=opts["max_hops"],
                     seed=opts["seed"], boundary_margin=opts["margin"],
                     max_sources=opts["max_sources"],
                     analytic_mu2=not opts["no_analytic_mu2"])
    _emit(run_degree_sweep(spec), out, fmt)
    return 0


def _cmd_phase(opts, out, fmt):
    table = run_phase_diagram(densities=_floats(opts["densities"]),
                              etas=_floats(opts["etas"]),
                              epsilon_star=opts["epsilon_star"], k=opts["k"],
                              sim_trials=opts["trials"], seed=opts["seed"],
                              max_sources=opts["max_sources"])
    _emit(table, out, fmt)
    return 0


def _cmd_hopdist(opts, out, fmt):
    table = run_hop_distribution(density=opts["density"], eta=opts["eta"],
                                 epsilon_star=opts["epsilon_star"],
                                 beta=opts["beta"], lobes=opts["lobes"],
                                 trials=opts["trials"], seed=opts["seed"],
                                 boundary_margin=opts["margin"],
                                 max_sources=opts["max_sources"])
    _emit(table, out, fmt)
    return 0


def _cmd_hbar(opts, out, fmt):
    _, table = run_hbar_scaling(densities=_floats(opts["densities"]),
                                cases=_cases(opts["cases"]),
                                beta=opts["beta"], lobes=opts["lobes"],
                                trials=opts["trials"], seed=opts["seed"],
                                max_sources=opts["max_sources"])
    _emit(table, out, fmt)
    return 0


def _cmd_fit(opts, out, fmt):
    _, table = run_mu3_fit(densities=_floats(opts["densities"]),
                           eta=opts["eta"], epsilon=opts["epsilon"],
                           beta=opts["beta"], lobes=opts["lobes"],
                           trials=opts["trials"], seed=opts["seed"],
                           max_sources=opts["max_sources"])
    _emit(table, out, fmt)
    return 0


_RUNNERS = {
    "simulate": _cmd_simulate,
    "analytic": _cmd_analytic,
    "sweep": _cmd_sweep,
    "phase": _cmd_phase,
    "hopdist": _cmd_hopdist,
    "hbar": _cmd_hbar,
    "fit": _cmd_fit,
}


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        opts = _merge(args)
        return _RUNNERS[args.command](opts, args.out, args.fmt)
    except ValueError as exc:
        print(f"dirnet: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"dirnet: numerical failure: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"dirnet: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    raise SystemExit(main())
