"""Command-line interface: compute values and run verification suites.

Subcommands:
  compute {partition-function | schur | llt | tau}   -> value as JSON
  verify  {match | match-charged | ybe | appendix | identities |
           boundaries | positivity | schur | wick | qfock |
           rho-machinery | all}                      -> CheckReport JSON

Exit codes: 0 all checks pass, 1 check failure, 2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .exactpoly import Registry, render
from . import partitions as pt
from . import fockspace as fk
from . import symmfunc as sf
from . import qfock as qf
from . import latticemodel as lm
from . import harness


def _parse_partition(text: str) -> tuple:
    if not text or text in ("-", "empty"):
        return ()
    return tuple(int(p) for p in text.split(","))


def _alphabet_from_spec(spec: str):
    """'x:2,y:2' -> a two-variable-per-side alphabet."""
    sizes = {}
    for item in spec.split(","):
        name, _, num = item.partition(":")
        sizes[name.strip()] = int(num)
    nx = sizes.get("x", 1)
    ny = sizes.get("y", nx)
    if nx != ny:
        raise ValueError("alphabet halves must have equal size")
    reg = Registry([f"x{i}" for i in range(1, nx + 1)]
                   + [f"y{i}" for i in range(1, ny + 1)]
                   + ["q"])
    return sf.SuperAlphabet.standard(reg, nx)


def _standard_weights_arg(name: str, N: int, n: int):
    if name == "standard:delta":
        reg = lm.standard_registry(N)
        return lm.standard_weights("delta", reg, N)
    if name == "standard:gamma":
        reg = lm.standard_registry(N)
        return lm.standard_weights("gamma", reg, N)
    if name == "standard:charged-ff":
        reg = lm.standard_registry(N, n, charged=True)
        return lm.standard_charged_ff("delta", reg, N, n)
    if name == "standard:nonff-identical-rows":
        reg = lm.generic_registry(1, n)
        base = lm.generic_weights(reg, 1, n)
        return lm.VertexWeights(reg, n, "delta", [base.rows[0]] * N)
    raise ValueError(f"unknown weights {name!r}")


def _weights_from_file(path: str) -> lm.VertexWeights:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if "standard" in data:
        return _standard_weights_arg(
            "standard:" + data["standard"], int(data.get("N", 1)),
            int(data.get("n", 1)))
    from .exactpoly import parse

    n = int(data["n"])
    reg = Registry(list(data["variables"]))
    rows = []
    for row in data["rows"]:
        rows.append(lm.RowWeights(
            a1=parse(reg, row["a1"]),
            a2=[parse(reg, s) for s in row["a2"]],
            b1=parse(reg, row["b1"]),
            b2=[parse(reg, s) for s in row["b2"]],
            c1=parse(reg, row["c1"]),
            c2=parse(reg, row["c2"]),
        ))
    return lm.VertexWeights(reg, n, data.get("kind", "delta"), rows)


def _emit(data: dict) -> None:
    json.dump(data, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def cli_run(argv: Optional[List[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="latticefock",
        description="Exact six-vertex / Fock-space identity workbench")
    sub = parser.add_subparsers(dest="command")

    p_compute = sub.add_parser("compute", help="compute a single value")
    p_compute.add_argument("what", choices=["partition-function", "schur", "llt", "tau"])
    p_compute.add_argument("--lambda", dest="lam", default="", help="partition, e.g. 2,1")
    p_compute.add_argument("--mu", default="", help="partition, e.g. 1")
    p_compute.add_argument("--alphabet", default="x:1,y:1")
    p_compute.add_argument("--route", default="jacobi_trudi",
                           choices=["jacobi_trudi", "hamiltonian", "tableaux"])
    p_compute.add_argument("--n", type=int, default=1, help="charge modulus")
    p_compute.add_argument("--N", type=int, default=1, help="rows")
    p_compute.add_argument("--M", type=int, default=-1, help="last column index")
    p_compute.add_argument("--weights", default="standard:delta")
    p_compute.add_argument("--g", default=None, help="path to a g-table JSON")

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("what", choices=sorted(harness.ALL_CHECKS) + ["identities", "all"])
    p_verify.add_argument("--which", default=None,
                          help="identity kinds, comma separated")
    p_verify.add_argument("--config", default=None, help="JSON config path")
    p_verify.add_argument("--n", type=int, default=None)
    p_verify.add_argument("--N", type=int, default=None)
    p_verify.add_argument("--M", type=int, default=None)
    p_verify.add_argument("--max-part", type=int, default=None)
    p_verify.add_argument("--max-len", type=int, default=None)
    p_verify.add_argument("--degree", type=int, default=None)
    p_verify.add_argument("--seed", type=int, default=None)
    p_verify.add_argument("--mode", default=None,
                          choices=["symbolic", "random-rational"])
    p_verify.add_argument("--no-timing", action="store_true",
                          help="omit wall times from the report")

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    if args.command is None:
        parser.print_help()
        return 2

    try:
        if args.command == "compute":
            return _run_compute(args)
        return _run_verify(args)
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        _emit({"error": str(exc)})
        return 2


def _run_compute(args) -> int:
    lam = _parse_partition(args.lam)
    mu = _parse_partition(args.mu)
    if args.what == "schur":
        alpha = _alphabet_from_spec(args.alphabet)
        value = sf.supersym_schur(lam, mu, alpha, args.route)
        _emit({"schema": 1, "value": render(value)})
        return 0
    if args.what == "llt":
        alpha = _alphabet_from_spec(args.alphabet)
        if args.g:
            with open(args.g, "r", encoding="utf-8") as fh:
                g = qf.GFunction.from_json(alpha.registry, fh.read())
        else:
            g = qf.GFunction.standard(alpha.registry, args.n)
        if not qf.validate_g(g):
            raise ValueError("invalid g table")
        value = sf.llt_polynomial(lam, mu, alpha, args.n, g)
        _emit({"schema": 1, "value": render(value)})
        return 0
    if args.what == "tau":
        alpha = _alphabet_from_spec(args.alphabet)
        H = sf.supersym_hamiltonian(alpha, max(sum(lam) - sum(mu), 1))
        value = fk.tau_function(pt.check_strict(mu), pt.check_strict(lam), H)
        _emit({"schema": 1, "value": render(value)})
        return 0
    # partition-function
    weights = (_weights_from_file(args.weights) if args.weights.endswith(".json")
               else _standard_weights_arg(args.weights, args.N, args.n))
    lam = pt.check_strict(lam)
    mu = pt.check_strict(mu)
    M = args.M if args.M >= 0 else max([0] + list(lam) + list(mu))
    spec = lm.model_spec(weights, lam, mu, M)
    value = lm.partition_function(spec, "brute")
    _emit({"schema": 1, "value": render(value)})
    return 0


def _config_from_args(args) -> harness.CheckConfig:
    cfg = harness.CheckConfig()
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        for key, val in data.items():
            if key == "schema":
                continue
            if not hasattr(cfg, key):
                raise ValueError(f"unknown config key {key!r}")
            setattr(cfg, key, val)
    for key, attr in (("n", "modulus"), ("N", "n_rows"), ("M", "m_cols"),
                      ("max_part", "max_part"), ("max_len", "max_len"),
                      ("degree", "degree"), ("seed", "seed"), ("mode", "mode")):
        val = getattr(args, key, None)
        if val is not None:
            setattr(cfg, attr, val)
    return cfg


def _run_verify(args) -> int:
    cfg = _config_from_args(args)
    reports = []
    if args.what == "identities":
        kinds = (args.which.split(",") if args.which else list(harness.IDENTITY_KINDS))
        for kind in kinds:
            if kind not in harness.IDENTITY_KINDS:
                raise ValueError(f"unknown identity {kind!r}")
            reports.append(harness.check_identities(cfg, kind))
    elif args.what == "all":
        for name, fn in sorted(harness.ALL_CHECKS.items()):
            reports.append(fn(cfg))
        for kind in harness.IDENTITY_KINDS:
            reports.append(harness.check_identities(cfg, kind))
    else:
        reports.append(harness.ALL_CHECKS[args.what](cfg))
    payload = {
        "schema": 1,
        "status": "pass" if all(r.ok for r in reports) else "fail",
        "reports": [r.to_json_dict(with_timing=not args.no_timing) for r in reports],
    }
    _emit(payload)
    return 0 if payload["status"] == "pass" else 1


def main() -> None:
    sys.exit(cli_run())


if __name__ == "__main__":
    main()
