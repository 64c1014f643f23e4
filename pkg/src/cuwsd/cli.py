"""Command-line surface: generate, verify, render, simulate, rate-table.

Every command is a pure function of its flags, input files and seed;
repeated runs produce byte-identical output.  Exit codes: 0 success,
1 certification failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .design import (
    Design,
    DesignParams,
    build_design,
    certify_design,
    corollary_rate,
    qod_reference_rate,
    rate,
)
from .sim import DEFAULT_JOINT_CAP, SimConfig, qam16, qpsk, simulate
from .symbolic import render, symbolic_matrix

EXIT_OK = 0
EXIT_CERTIFICATION = 1
EXIT_INVALID = 2

_CONSTELLATIONS = {"qpsk": qpsk, "qam16": qam16}

# Built-in defaults for flags that may also come from --config; explicit
# flags take precedence over the config file, which beats these.
_GENERATE_DEFAULTS = {
    "a": None,
    "g": None,
    "layout": "interleaved",
    "gamma1_sign": 1,
    "signs": "all-plus",
    "out": None,
}
_SIMULATE_DEFAULTS = {
    "snr_db": "0,10,20",
    "trials": 100,
    "seed": 0,
    "rx": 1,
    "decoder": "both",
    "constellation": "qpsk",
    "cap": DEFAULT_JOINT_CAP,
    "csv": None,
    "json": None,
}


def _merge_config(args, defaults: dict):
    """Fill unset flags from the optional JSON config file, then from the
    built-in defaults."""
    config = {}
    if getattr(args, "config", None):
        with open(args.config, "r", encoding="utf-8") as fh:
            config = json.load(fh)
        if not isinstance(config, dict):
            raise ValueError("config file must hold a JSON object")
        unknown = set(config) - set(defaults)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
    for key, fallback in defaults.items():
        if getattr(args, key) is None:
            value = config.get(key, fallback)
            setattr(args, key, value)


def _parse_signs(spec: str, a: int, g: int) -> tuple[int, ...]:
    """Sign-vector sources: 'all-plus', 'random:<seed>', or an inline
    comma-separated list of +1/-1 entries."""
    count = DesignParams.sign_count(a, g)
    if spec == "all-plus":
        return (1,) * count
    if spec.startswith("random:"):
        seed = int(spec.split(":", 1)[1])
        rng = np.random.default_rng(seed)
        return tuple(int(s) for s in rng.choice((-1, 1), size=count))
    signs = tuple(int(tok) for tok in spec.split(","))
    return signs


def _load_design(path: str) -> Design:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    return Design.from_json_dict(data)


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _cmd_generate(args) -> int:
    try:
        _merge_config(args, _GENERATE_DEFAULTS)
        if args.a is None or args.g is None:
            raise ValueError("both --a and --g are required (flag or config file)")
        signs = _parse_signs(args.signs, args.a, args.g)
        params = DesignParams(
            a=args.a,
            g=args.g,
            sign_vector=signs,
            layout=args.layout,
            gamma1_sign=args.gamma1_sign,
        )
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    design = build_design(params)
    _write_text(args.out, json.dumps(design.to_json_dict(), indent=2) + "\n")
    actual = rate(design)
    closed = corollary_rate(args.a, args.g)
    print(f"rate: actual {actual}, closed-form {closed}")
    if actual != closed:
        print(
            f"warning: construction rate {actual} differs from the closed-form "
            f"{closed} (they agree only for g in {{1, 2}})"
        )
    if args.out is not None:
        print(f"design written to {args.out}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    try:
        design = _load_design(args.design)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    report = certify_design(design)
    payload = json.dumps(report.to_json_dict(), indent=2) + "\n"
    if args.report is not None:
        Path(args.report).write_text(payload, encoding="utf-8")
    if report.verdict:
        print(f"certification: PASS ({len(report.checks)} checks)")
        return EXIT_OK
    failures = report.failures()
    print(f"certification: FAIL ({len(failures)} of {len(report.checks)} checks)")
    for rec in failures[:10]:
        print(f"  failed: {rec.name}")
    if len(failures) > 10:
        print(f"  ... and {len(failures) - 10} more")
    return EXIT_CERTIFICATION


def _cmd_render(args) -> int:
    try:
        design = _load_design(args.design)
        text = render(symbolic_matrix(design), args.format)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    _write_text(args.out, text)
    return EXIT_OK


def _cmd_simulate(args) -> int:
    try:
        _merge_config(args, _SIMULATE_DEFAULTS)
        design = _load_design(args.design)
        raw = args.snr_db
        if isinstance(raw, (list, tuple)):
            snr_db = tuple(float(v) for v in raw)
        else:
            snr_db = tuple(float(tok) for tok in str(raw).split(","))
        if args.constellation not in _CONSTELLATIONS:
            raise ValueError(f"unknown constellation {args.constellation!r}")
        config = SimConfig(
            snr_db=snr_db,
            trials=int(args.trials),
            seed=int(args.seed),
            n_rx=int(args.rx),
            constellation=_CONSTELLATIONS[args.constellation](),
        )
        args.cap = int(args.cap)
        if args.decoder not in ("both", "groupwise"):
            raise ValueError(f"decoder must be 'both' or 'groupwise', got {args.decoder!r}")
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    print(f"seed: {args.seed}")
    if not certify_design(design).verdict:
        print("error: design failed certification", file=sys.stderr)
        return EXIT_CERTIFICATION
    try:
        report = simulate(
            design, config, decoder=args.decoder, joint_cap=args.cap, verify=False
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    for p in report.points:
        agree = "" if p.agreement is None else f", agreement {100.0 * p.agreement / p.trials:g}%"
        print(
            f"snr {p.snr_db:g} dB: ber {p.ber:.6g}, ser {p.ser:.6g}, "
            f"evals/trial joint {p.joint_evals} vs groupwise {p.groupwise_evals}{agree}"
        )
    if args.csv is not None:
        Path(args.csv).write_text(report.to_csv(), encoding="utf-8")
    if args.json is not None:
        Path(args.json).write_text(
            json.dumps(report.to_json_dict(), indent=2) + "\n", encoding="utf-8"
        )
    return EXIT_OK


def _cmd_rate_table(args) -> int:
    try:
        gs = tuple(int(tok) for tok in args.g_values.split(","))
        if args.a_max < 1:
            raise ValueError(f"a-max must be >= 1, got {args.a_max}")
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    header = f"{'a':>3} {'g':>3} {'antennas':>9} {'actual':>8} {'closed-form':>12} {'qod':>6}  note"
    print(header)
    for a in range(1, args.a_max + 1):
        for g in gs:
            if not (1 <= g <= a) or g & (g - 1):
                continue
            params = DesignParams(a=a, g=g)
            actual = rate(build_design(params))
            closed = corollary_rate(a, g)
            note = "" if actual == closed else "mismatch: closed-form differs"
            print(
                f"{a:>3} {g:>3} {1 << a:>9} {str(actual):>8} {str(closed):>12} "
                f"{str(qod_reference_rate(a)):>6}  {note}".rstrip()
            )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cuwsd",
        description="Construct, certify, render and simulate unitary-weight "
        "group-decodable space-time block codes for 2^a antennas.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="build a design and write its JSON file")
    p.add_argument("--a", type=int, help="antenna exponent; side is 2^a")
    p.add_argument("--g", type=int, help="symbols decoded jointly per group")
    p.add_argument("--layout", choices=("interleaved", "blocked"))
    p.add_argument("--gamma1-sign", type=int, choices=(1, -1))
    p.add_argument(
        "--signs",
        help="sign vector: 'all-plus', 'random:<seed>', or comma-separated +1/-1",
    )
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--config", help="JSON file with flag defaults; flags override it")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("verify", help="certify a design file")
    p.add_argument("design")
    p.add_argument("--report", default=None, help="write the full check report JSON here")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("render", help="print the symbolic codeword matrix")
    p.add_argument("design")
    p.add_argument("--format", choices=("text", "latex", "json"), default="text")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_render)

    p = sub.add_parser("simulate", help="Monte Carlo link simulation")
    p.add_argument("design")
    p.add_argument("--snr-db", help="comma-separated dB values")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--rx", type=int, help="receive antennas")
    p.add_argument("--decoder", choices=("both", "groupwise"))
    p.add_argument("--constellation", choices=sorted(_CONSTELLATIONS))
    p.add_argument("--cap", type=int, help="joint search cap")
    p.add_argument("--csv", help="write the per-SNR report CSV here")
    p.add_argument("--json", help="write the full report JSON here")
    p.add_argument("--config", help="JSON file with flag defaults; flags override it")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("rate-table", help="actual vs closed-form vs prior-family rates")
    p.add_argument("--a-max", type=int, default=5)
    p.add_argument("--g-values", default="1,2,4")
    p.set_defaults(func=_cmd_rate_table)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_INVALID
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
