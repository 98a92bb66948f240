"""Command line front end.

    shiftlattice weights  --family harmonic
    shiftlattice classify subspace.json --power 2 --power 3
    shiftlattice verify t2 --seed 42 --out report.json

Settings come from flags, then from a JSON file given with --config, then
from the defaults below.  Reports are deterministic JSON.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field, fields
from pathlib import Path

from . import verify
from .classify import classify, classify_parity_lattice
from .exactlin import Subspace
from .invariants import NotInvariantError, invariant_powers
from .shifts import ShiftSpec
from .weights import (
    an_integral_bound,
    an_partial,
    bounded_variation_report,
    check_condition_34,
    delta_estimate,
    parse_family,
)

ALTERNATING_BOUND = 17 + 15 / 16


@dataclass
class RunConfig:
    command: str = "weights"
    family: str = "donoghue"
    N: int = 128
    K: int = 200
    M_max: int = 50
    cap: float = 1e3
    epsilon: float = 1e-9
    seed: int | None = None
    power: list = field(default_factory=lambda: [2])
    out: str | None = None
    input: str | None = None
    suite: str | None = None
    cases: int | None = None
    prefix: int = 10_000
    parity: bool = False

    def validate(self):
        for name in ("N", "K", "M_max", "prefix"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.cap <= 0 or self.epsilon <= 0:
            raise ValueError("cap and epsilon must be positive")
        if self.cases is not None and self.cases < 1:
            raise ValueError("cases must be positive")


RANDOMIZED = {"t2", "t3", "joint", "prop29", "thm36"}


def cmd_weights(cfg: RunConfig) -> tuple[dict, bool]:
    f = parse_family(cfg.family)
    c34 = check_condition_34(f, cfg.prefix)
    bv = bounded_variation_report(f, cfg.K)
    est = delta_estimate(f, cfg.K, cfg.M_max, cfg.cap, cfg.epsilon)
    report = {
        "family": f.to_json(),
        "condition_34": c34.to_json(),
        "bounded_variation_partial": bv,
        "delta_estimate": est.to_json(),
    }
    if est.status == "inconclusive":
        # slow divergence shows on the m = n diagonal long before the full grid
        diag = delta_estimate(f, max(cfg.K, 10_000), max(cfg.M_max, 1500), cfg.cap, cfg.epsilon, diagonal_only=True)
        report["delta_diagonal"] = diag.to_json()
        if diag.status == "certified_divergent":
            report["delta_status"] = diag.status
    report.setdefault("delta_status", est.status)
    examples = {}
    if f.kind == "alternating38":
        examples["bound_17_15_16"] = {"bound": ALTERNATING_BOUND, "holds": est.lower_bound <= ALTERNATING_BOUND}
    if f.kind == "harmonic":
        examples["a_n"] = [
            {"n": n, "K": 10**6, "partial": an_partial(n, 10**6), "integral_bound": an_integral_bound(n)}
            for n in (1, 10, 50)
        ]
    report["examples"] = examples
    return report, True


def _read_subspace(path: str) -> Subspace:
    try:
        data = json.loads(Path(path).read_text())
        return Subspace.from_json(data)
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse subspace file {path}: {exc}") from exc


def cmd_classify(cfg: RunConfig, subspace_file: str) -> tuple[dict, bool]:
    s = _read_subspace(subspace_file)
    spec = ShiftSpec(parse_family(cfg.family), s.ambient_dim)
    powers = sorted(set(cfg.power))
    certificate = {str(p): p in invariant_powers(s, spec, (1, 2, 3)) for p in (1, 2, 3)}
    if cfg.parity:
        if len(powers) != 1:
            raise ValueError("--parity takes a single --power")
        form = classify_parity_lattice(s, spec, powers[0])
    else:
        form = classify(s, spec, powers)
    return {"form": form.to_json(), "invariance": certificate, "powers": powers}, True


def cmd_verify(cfg: RunConfig, suite: str) -> tuple[dict, bool]:
    if suite not in verify.SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(verify.SUITES)}")
    if suite in RANDOMIZED and cfg.seed is None:
        raise ValueError(f"suite {suite} is randomized and needs --seed")
    if suite in ("t2", "t3"):
        rep = verify.run_roundtrip(int(suite[1]), cfg.seed, cfg.cases or 1000)
    elif suite == "joint":
        rep = verify.run_joint(cfg.seed, cfg.cases or 500)
    elif suite == "prop29":
        rep = verify.run_prop29(cfg.seed, cfg.cases or 500)
    elif suite == "cor44":
        Ns = sorted({n for n in (4, 8, 16, 32) if n <= cfg.N} | {cfg.N}) if cfg.N < 32 else (4, 8, 16, 32)
        rep = verify.run_cor44(tuple(Ns))
    elif suite == "thm36":
        rep = verify.run_thm36(parse_family(cfg.family), cfg.seed, cfg.cases or 20, N=cfg.N)
    else:
        f = parse_family(cfg.family)
        monotone = check_condition_34(f, cfg.prefix).holds
        rep = verify.run_thm39(f, N=min(cfg.N, 64), weight_class="monotone" if monotone else "delta")
    return rep, rep["failed"] == 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with default settings")
    common.add_argument("--family", help="donoghue | geometric:r | harmonic[:w0] | alternating38 | constant:c | custom:@file.json")
    common.add_argument("--N", type=int, help="truncation dimension")
    common.add_argument("--K", type=int, help="series terms for partial sums")
    common.add_argument("--M-max", dest="M_max", type=int, help="largest m, n in the delta scan")
    common.add_argument("--cap", type=float, help="divergence certificate threshold")
    common.add_argument("--epsilon", type=float, help="stabilization tolerance")
    common.add_argument("--seed", type=int, help="seed for randomized suites")
    common.add_argument("--power", type=int, action="append", help="operator power (repeat for joint)")
    common.add_argument("--out", help="write the JSON report here (CSV artifacts go next to it)")
    common.add_argument("--cases", type=int, help="number of randomized cases")
    common.add_argument("--prefix", type=int, help="prefix length for the monotone check")

    p = argparse.ArgumentParser(prog="shiftlattice", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("weights", parents=[common], help="weight-class report")
    c = sub.add_parser("classify", parents=[common], help="classify a subspace given as JSON")
    c.add_argument("input", help='{"ambient_dim": N, "basis": [["p/q", ...], ...]}')
    c.add_argument("--parity", action="store_true", default=None, help="use the residue-class detector")
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=verify.SUITES)
    return p


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """flags > --config file > defaults."""
    values = {}
    if args.config:
        try:
            values.update(json.loads(Path(args.config).read_text()))
        except (OSError, json.JSONDecodeError) as exc:
            raise ValueError(f"cannot read config {args.config}: {exc}") from exc
        values = {k.replace("-", "_"): v for k, v in values.items()}
        if isinstance(values.get("power"), int):
            values["power"] = [values["power"]]
    for f in fields(RunConfig):
        v = getattr(args, f.name, None)
        if v is not None:
            values[f.name] = v
    known = {f.name for f in fields(RunConfig)}
    unknown = set(values) - known
    if unknown:
        raise ValueError(f"unknown settings: {', '.join(sorted(unknown))}")
    cfg = RunConfig(**values)
    cfg.validate()
    return cfg


def _dump(obj) -> str:
    def clean(o):
        if isinstance(o, float) and not math.isfinite(o):
            return str(o)
        if isinstance(o, dict):
            return {k: clean(v) for k, v in o.items()}
        if isinstance(o, (list, tuple)):
            return [clean(v) for v in o]
        return o

    return json.dumps(clean(obj), sort_keys=True, indent=2) + "\n"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        if cfg.command == "weights":
            report, ok = cmd_weights(cfg)
        elif cfg.command == "classify":
            report, ok = cmd_classify(cfg, cfg.input)
        else:
            report, ok = cmd_verify(cfg, cfg.suite)
    except NotInvariantError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    csv_text = report.pop("csv", None)
    records = report.pop("records", None)
    text = _dump(report)
    if cfg.out:
        out = Path(cfg.out)
        out.write_text(text)
        if csv_text is not None:
            out.with_suffix(".csv").write_text(csv_text)
        if records is not None:
            # one JSON object per corpus case
            out.with_suffix(".jsonl").write_text("".join(json.dumps(r, sort_keys=True) + "\n" for r in records))
        status = "ok" if ok else "FAILED"
        extra = f" ({report['passed']}/{report['cases']} passed)" if "cases" in report else ""
        print(f"{cfg.command}: {status}{extra} -> {out}")
    else:
        sys.stdout.write(text)
        if csv_text is not None:
            sys.stdout.write(csv_text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
