"""Command-line entry point.

Every subcommand builds an ExperimentConfig (from --config when given,
with built-in defaults otherwise), runs it, and exits 0/1/2 for
pass/error/assertion-failure.
"""

from __future__ import annotations

import argparse
import sys

from . import harness

_FIG1 = {"name": "bls", "C": 0.5, "b": 0.5}
_FIG2 = {"name": "real_uniform", "halfwidth": 0.5, "seed": 7}

_DEFAULTS = {
    "zeros": {"kind": "zeros", "family": _FIG1, "n": 200},
    "clock": {"kind": "clock", "family": _FIG1, "n_list": [50, 100, 200, 400],
              "tolerances": {"sup_dev_max": 0.5}},
    "poisson": {"kind": "poisson", "family": {"name": "disk_uniform", "rho": 0.5, "seed": 42},
                "n": 300, "trials": 500,
                "intervals": [{"theta_anchor": 0.0, "a": 0.0, "b": 1.0}]},
    "asymptotics": {"kind": "asymptotics", "family": _FIG1, "n_list": [50, 100, 200, 400]},
    "oprl": {"kind": "oprl", "family": {"name": "free"}, "n": 500},
    "model": {"kind": "model", "model": {"K": 1.0, "k": 1}, "n": 500},
    "figdata": {"kind": "figdata", "family": _FIG1},
    "verify": {"kind": "verify"},
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="opuczeros", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _DEFAULTS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="YAML or JSON experiment config")
        p.add_argument("--seed", type=int, help="RNG seed override")
        p.add_argument("--out", help="output directory")
        p.add_argument("--level", choices=["quick", "full"], help="suite depth")
    args = parser.parse_args(argv)

    try:
        if args.config:
            cfg = harness.ExperimentConfig.from_file(args.config)
            if cfg.kind != args.command:
                raise harness.ConfigError(
                    f"config kind {cfg.kind!r} does not match subcommand {args.command!r}")
            raw = None
        else:
            raw = dict(_DEFAULTS[args.command])
        if raw is not None:
            if args.seed is not None:
                raw["seed"] = args.seed
            if args.out is not None:
                raw["out"] = args.out
            if args.level is not None:
                raw["level"] = args.level
            cfg = harness.ExperimentConfig.from_dict(raw)
        else:
            updates = {}
            if args.seed is not None:
                updates["seed"] = args.seed
            if args.out is not None:
                updates["out"] = args.out
            if args.level is not None:
                updates["level"] = args.level
            if updates:
                import dataclasses
                cfg = dataclasses.replace(cfg, **updates)
    except harness.ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    return harness.run(cfg)


if __name__ == "__main__":
    sys.exit(main())
