"""Command-line front end.

    farch generate --n 5 --seed 7 --out pair/
    farch analyze --sender pair/sender.txt --receiver pair/receiver.txt --out report/
    farch simulate --n 11 --x 5 --p 0.2 --trials 10000 --seed 1 --out row.csv
    farch sweep --config grid.json --out grid.csv

Exit codes: 0 success, 1 usage error, 2 I/O or parse error, 3 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from pathlib import Path

from farch import metrics, seqio
from farch.errors import InvalidParameterError, InvariantViolation, MetricUndefinedError
from farch.sequences import SequencePair, check_compatible, farch_pair, random_permutation
from farch.simulate import (
    SWEEP_COLUMNS,
    Scenario,
    SweepConfig,
    TrafficMode,
    average_ttr,
    stats_row,
    sweep,
)

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_INVARIANT = 0, 1, 2, 3

log = logging.getLogger("farch")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _dump_json(obj) -> str:
    def clean(x):
        if isinstance(x, float) and math.isnan(x):
            return None
        if isinstance(x, dict):
            return {k: clean(v) for k, v in x.items()}
        if isinstance(x, list):
            return [clean(v) for v in x]
        return x

    return json.dumps(clean(obj), indent=2, sort_keys=False) + "\n"


def _csv_text(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _csv_cell(row[k]) for k in columns})
    return buf.getvalue()


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return "nan" if math.isnan(v) else repr(v)
    return v


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def cmd_generate(args) -> int:
    if args.n < 2:
        raise UsageError("--n must be >= 2")
    w = random_permutation(args.n, args.seed)
    pair = farch_pair(w)
    if not metrics.is_max_diversity(pair):
        raise InvariantViolation("generated FARCH pair lacks maximal rendezvous diversity")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    seqio.write_sequence(pair.sender, out / "sender.txt")
    seqio.write_sequence(pair.receiver, out / "receiver.txt")
    manifest = {
        "n": args.n,
        "seed": args.seed,
        "permutation": list(w.image),
        "period": pair.period,
        "sender": "sender.txt",
        "receiver": "receiver.txt",
    }
    (out / "manifest.json").write_text(_dump_json(manifest))
    return EXIT_OK


def analyze_pair(pair: SequencePair, h_max: int | None = None) -> tuple[dict, list[dict]]:
    profile = metrics.build_profile(pair)
    report = metrics.metrics_report(pair, profile)
    doc = report.to_dict()
    if report.max_diversity:
        doc["bounds"] = metrics.bound_report(pair, profile).to_dict()
        curve = metrics.mttr_h_curve_rows(report, h_max)
    else:
        doc["bounds"] = None
        doc["undefined"] = (
            "MCTTR and MTTR_h (h >= 1) are undefined: the pair does not have "
            "maximal rendezvous diversity"
        )
        curve = []
    return doc, curve


def cmd_analyze(args) -> int:
    sender = seqio.read_sequence(args.sender)
    receiver = seqio.read_sequence(args.receiver)
    check_compatible(sender, receiver)
    doc, curve = analyze_pair(SequencePair(sender, receiver), args.h_max)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.json").write_text(_dump_json(doc))
    (out / "mttr_h.csv").write_text(_csv_text(curve, ["h", "mttr_h", "lower_bound"]))
    return EXIT_OK


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr)


def _write_rows(rows: list[dict], out: str | None) -> None:
    if out and out.endswith(".json"):
        _emit(_dump_json(rows), out)
    else:
        _emit(_csv_text(rows, SWEEP_COLUMNS), out)


def cmd_simulate(args) -> int:
    scenario = Scenario(
        n_channels=args.n,
        n_pus=args.x,
        transmit_prob=args.p,
        seed=args.seed,
        traffic_mode=TrafficMode(args.traffic),
        n_su_pairs=args.pairs,
        trials=args.trials,
        max_slots=args.max_slots,
    )
    _progress(f"simulating N={args.n} X={args.x} p={args.p} ({args.trials} trials)")
    stats = average_ttr(scenario)
    _write_rows([stats_row(scenario, stats)], args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    try:
        obj = json.loads(Path(args.config).read_text())
    except json.JSONDecodeError as exc:
        raise seqio.SequenceParseError(f"bad config JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise UsageError("sweep config must be a JSON object")
    if args.seed is not None:
        obj["seed"] = args.seed
    if "seed" not in obj:
        raise UsageError("a seed is required (config 'seed' or --seed)")
    try:
        config = SweepConfig.from_dict(obj)
    except TypeError as exc:
        raise UsageError(str(exc)) from None
    rows = sweep(config, progress=_progress)
    _write_rows(rows, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="farch", description="FARCH channel-hopping sequences: build, analyze, simulate.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="build a FARCH sender/receiver pair")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--out", required=True, help="output directory")
    g.set_defaults(func=cmd_generate)

    a = sub.add_parser("analyze", help="exact MTTR/MCTTR/MTTR_h and bound checks")
    a.add_argument("--sender", required=True)
    a.add_argument("--receiver", required=True)
    a.add_argument("--out", required=True, help="output directory")
    a.add_argument("--h-max", type=int, default=None, help="last h in the MTTR_h CSV")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("simulate", help="average TTR for one PU scenario")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--x", type=int, required=True, help="number of primary users")
    s.add_argument("--p", type=float, required=True, help="PU transmit probability")
    s.add_argument("--trials", type=int, default=10000)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--traffic", choices=[m.value for m in TrafficMode], default=TrafficMode.PER_SLOT.value)
    s.add_argument("--pairs", type=int, default=10)
    s.add_argument("--max-slots", type=int, default=None)
    s.add_argument("--out", default=None, help="CSV (or .json) file; stdout if omitted")
    s.set_defaults(func=cmd_simulate)

    w = sub.add_parser("sweep", help="average TTR over an (N, X, p) grid")
    w.add_argument("--config", required=True, help="JSON grid specification")
    w.add_argument("--seed", type=int, default=None, help="overrides the config seed")
    w.add_argument("--out", default=None)
    w.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, InvalidParameterError, MetricUndefinedError) as exc:
        print(f"farch {args.verb}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError) as exc:  # parse errors and incompatible files
        print(f"farch {args.verb}: {exc}", file=sys.stderr)
        return EXIT_IO
    except (InvariantViolation, AssertionError) as exc:
        print(f"farch {args.verb}: internal error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
