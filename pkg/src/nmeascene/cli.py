"""Command-line pipeline: parse, metrics, classify, validate, synth, report.

Each subcommand reads text from ``--input`` (default stdin) and writes text to
``--output`` (default stdout), so stages chain in a shell pipeline::

    nmeascene synth --profile local_a1 --epochs 60 --seed 7 \\
        | nmeascene metrics | nmeascene classify --mode sum
"""

from __future__ import annotations

import argparse
import contextlib
import dataclasses
import json
import sys
from pathlib import Path
from typing import Optional

import numpy as np

from . import classifier, epochs, nmea, synth, validation

EXIT_OK, EXIT_INPUT, EXIT_USAGE = 0, 1, 2


class InputError(Exception):
    pass


@contextlib.contextmanager
def _open_in(path: Optional[str]):
    if path in (None, "-"):
        yield sys.stdin
        return
    try:
        fh = open(path, encoding="ascii", errors="strict", newline="")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    with fh:
        yield fh


@contextlib.contextmanager
def _open_out(path: Optional[str]):
    if path in (None, "-"):
        yield sys.stdout
        return
    try:
        fh = open(path, "w", encoding="utf-8", newline="")
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from None
    with fh:
        yield fh


def _check_paths(args) -> None:
    for attr in ("input", "labels", "rules"):
        p = getattr(args, attr, None)
        if p not in (None, "-") and not Path(p).is_file():
            raise InputError(f"no such file: {p}")
    for attr in ("output", "json"):
        p = getattr(args, attr, None)
        if p not in (None, "-") and not Path(p).resolve().parent.is_dir():
            raise InputError(f"output directory does not exist: {Path(p).parent}")


def _policy(args) -> nmea.ParsePolicy:
    talkers = frozenset(nmea.CONSTELLATIONS) if args.all_talkers else frozenset({"GP"})
    return nmea.ParsePolicy(strict=args.strict, talkers=talkers)


def _read_lines(fh):
    try:
        for line in fh:
            yield line
    except UnicodeDecodeError as exc:
        raise InputError(f"non-ASCII input: {exc}") from None


def cmd_parse(args) -> int:
    policy = _policy(args)
    bad = 0
    with _open_in(args.input) as fin, _open_out(args.output) as fout:
        for n, line in enumerate(_read_lines(fin), start=1):
            if not line.strip():
                continue
            try:
                rec = nmea.parse_sentence(line, policy, n)
            except nmea.NmeaError as exc:
                bad += 1
                row = {"line": n, "error": type(exc).__name__, "detail": str(exc)}
            else:
                row = {
                    "line": n,
                    "talker": rec.raw.talker,
                    "type": rec.raw.type_tag if not isinstance(rec, nmea.Unhandled) else "Unhandled",
                    "tag": rec.raw.type_tag,
                    "diagnostics": [f"{d.code}: {d.message}" for d in rec.diagnostics],
                }
            fout.write(json.dumps(row) + "\n")
    if bad:
        print(f"{bad} sentence(s) rejected", file=sys.stderr)
    return EXIT_OK


def cmd_metrics(args) -> int:
    diags: list = []
    with _open_in(args.input) as fin, _open_out(args.output) as fout:
        stream = epochs.stream_epochs(_read_lines(fin), _policy(args), diags)
        if args.format == "jsonl":
            epochs.write_metrics_jsonl(stream, fout)
        else:
            epochs.write_metrics_csv(stream, fout)
    if args.verbose:
        for d in diags:
            print(d, file=sys.stderr)
    return EXIT_OK


def _read_metrics(path) -> list:
    with _open_in(path) as fin:
        try:
            return list(epochs.read_metrics(fin))
        except ValueError as exc:
            raise InputError(str(exc)) from None


def cmd_classify(args) -> int:
    try:
        rules = classifier.load_rules(args.rules) if args.rules else classifier.RuleSet()
        if args.mode:
            rules = dataclasses.replace(rules, mode=args.mode)
    except ValueError as exc:
        raise InputError(f"{args.rules}: {exc}") from None
    metrics = _read_metrics(args.input)
    rows = classifier.classify_stream(metrics, rules, args.window)
    with _open_out(args.output) as fout:
        if args.format == "jsonl":
            classifier.write_scenarios_jsonl(rows, fout)
        else:
            classifier.write_scenarios_csv(rows, fout)
    return EXIT_OK


def cmd_validate(args) -> int:
    try:
        truth = validation.load_labels(args.labels)
        with _open_in(args.input) as fin:
            predicted = classifier.read_scenarios(fin)
        report = validation.evaluate(predicted, truth)
    except (ValueError, LookupError) as exc:
        raise InputError(str(exc)) from None
    with _open_out(args.output) as fout:
        fout.write(report.format_table())
    if args.json:
        with _open_out(args.json) as fj:
            fj.write(report.to_json() + "\n")
    return EXIT_OK


def cmd_synth(args) -> int:
    try:
        profile = synth.load_profile(args.profile)
        config = synth.GeneratorConfig(profile, args.epochs, args.seed)
    except synth.ConfigError as exc:
        raise InputError(str(exc)) from None
    with _open_out(args.output) as fout:
        for line in synth.iter_log_lines(config):
            fout.write(line + "\r\n")
    return EXIT_OK


def summarize(metrics: list) -> dict:
    """Site-style summary: mean and population std over epochs with readings."""
    meas = [m for m in metrics if m.has_measurement]
    cols = {
        "cn0_mean": [m.cn0_mean for m in meas],
        "cn0_sum": [m.cn0_sum for m in meas],
        "pdop": [m.pdop for m in meas],
        "hdop": [m.hdop for m in meas],
        "sat_count": [m.satellite_count for m in meas],
    }
    out: dict = {"epochs_total": len(metrics), "epochs_with": len(meas), "epochs_without": len(metrics) - len(meas)}
    for name, values in cols.items():
        arr = np.asarray(values, dtype=float)
        out[name] = (float(arr.mean()), float(arr.std())) if arr.size else (None, None)
    return out


def cmd_report(args) -> int:
    summary = summarize(_read_metrics(args.input))
    with _open_out(args.output) as fout:
        if args.format == "json":
            fout.write(json.dumps(summary, indent=2) + "\n")
            return EXIT_OK
        labels = {"cn0_mean": "Mean C/N0", "cn0_sum": "Sum C/N0", "pdop": "PDOP", "hdop": "HDOP",
                  "sat_count": "Satellites"}
        for key, label in labels.items():
            mu, sd = summary[key]
            value = "n/a" if mu is None else f"{mu:.2f} ± {sd:.2f}"
            fout.write(f"{label:<12}{value}\n")
        fout.write(f"{'Epochs':<12}{summary['epochs_with']} ({summary['epochs_without']})"
                   f"  of {summary['epochs_total']}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nmeascene", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    io_parent = argparse.ArgumentParser(add_help=False)
    io_parent.add_argument("-i", "--input", help="input file (default: stdin)")
    io_parent.add_argument("-o", "--output", help="output file (default: stdout)")

    nmea_parent = argparse.ArgumentParser(add_help=False)
    g = nmea_parent.add_mutually_exclusive_group()
    g.add_argument("--strict", dest="strict", action="store_true", default=True,
                   help="require a checksum on every sentence (default)")
    g.add_argument("--lenient", dest="strict", action="store_false",
                   help="accept sentences without a checksum")
    nmea_parent.add_argument("--all-talkers", action="store_true",
                             help="accept GLONASS/Galileo/BeiDou/GN talkers, not just GP")

    p = sub.add_parser("parse", parents=[io_parent, nmea_parent], help="parse NMEA and report per-sentence diagnostics")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("metrics", parents=[io_parent, nmea_parent], help="NMEA log to per-epoch metrics")
    p.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    p.add_argument("-v", "--verbose", action="store_true", help="print diagnostics to stderr")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("classify", parents=[io_parent], help="metrics to per-epoch scenario labels")
    p.add_argument("--mode", choices=("sum", "combined"), default=None,
                   help="rule set (default: sum, or the mode in --rules)")
    p.add_argument("--window", type=_odd_window, default=1, help="odd majority-vote window (default 1)")
    p.add_argument("--rules", help="key=value threshold file")
    p.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("validate", parents=[io_parent], help="score scenario labels against a label file")
    p.add_argument("--labels", required=True, help="CSV of start_epoch,end_epoch,label")
    p.add_argument("--json", help="also write the report as JSON to this path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("synth", parents=[io_parent], help="generate a synthetic NMEA log")
    p.add_argument("--profile", required=True, help="bundled profile name (e.g. local_a1) or profile file")
    p.add_argument("--epochs", type=int, default=3600)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("report", parents=[io_parent], help="summary statistics of a metrics file")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_report)
    return parser


def _odd_window(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1 or n % 2 == 0:
        raise argparse.ArgumentTypeError("window must be a positive odd integer")
    return n


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with 2 on usage errors
    try:
        _check_paths(args)
        return args.func(args)
    except InputError as exc:
        print(f"nmeascene {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BrokenPipeError:
        return EXIT_OK


def run(argv: Optional[list] = None) -> int:
    """Like :func:`main` but returns the usage-error code instead of exiting."""
    try:
        return main(argv)
    except SystemExit as exc:
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
