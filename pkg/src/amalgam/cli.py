"""Command-line front end.

Subcommands: classify (exact embedding decisions), norm (evaluate one norm on
a generated or stored grid function), probe (run an experiment and persist
CSV / record / manifest outputs), atlas (decision-surface table).

Exponents are read as exact rationals ("2", "3/4", "inf"); floats never enter
the classifier.  Exit codes: 0 success, 2 invalid configuration or exponents,
3 unreadable input.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .exponents import (
    Exponent,
    ExponentError,
    Family,
    SpaceSpec,
    as_rational,
    embed_besov_in_wiener,
    embed_hardy_in_wiener,
    embed_lebesgue_in_wiener,
    embed_seq_dyadic,
    embed_seq_uniform,
    embed_wiener_in_besov,
    embed_wiener_in_hardy,
    embed_wiener_in_lebesgue,
    embed_wiener_in_wiener,
)
from .grid import GridSpec, read_binary, unit_gaussian, zero_function
from .stft import WindowKind

_PAIRS = ("W:B", "B:W", "W:hp", "hp:W", "W:L", "L:W", "W:W", "seq0:seq0", "seq1:seq1")


def _fraction(text: str) -> Fraction:
    return as_rational(text, "rational flag")


def _window(name: str) -> WindowKind:
    return {"gaussian": WindowKind.GAUSSIAN, "compact": WindowKind.COMPACT_BUMP}[name]


def _bool_str(b) -> str:
    return "true" if b else "false"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="amalgam", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="exact sharp embedding decision")
    c.add_argument("--pair", required=True, choices=_PAIRS)
    c.add_argument("--p", help="exponent p (rational or inf)")
    c.add_argument("--q", help="exponent q (rational or inf)")
    c.add_argument("--s", default="0", help="smoothness s (rational)")
    c.add_argument("--n", type=int, default=1)
    for flag in ("--p1", "--q1", "--s1", "--p2", "--q2", "--s2"):
        c.add_argument(flag)

    n = sub.add_parser("norm", help="evaluate one norm")
    n.add_argument("--space", required=True, choices=["L", "W", "M", "B", "F", "hp"])
    n.add_argument("--p", default="2")
    n.add_argument("--q", default="2")
    n.add_argument("--s", default="0")
    n.add_argument("--gen", default="gaussian", help="gaussian | zero | shell (hj) | lowpass (heps)")
    n.add_argument("--j", type=int, default=3, help="shell index for --gen shell")
    n.add_argument("--eps", default="1/4", help="scale for --gen lowpass")
    n.add_argument("--input", help="binary grid-function file (overrides --gen)")
    n.add_argument("--extent", type=float, default=64.0)
    n.add_argument("--samples", type=int, default=2**14)
    n.add_argument("--window", default="gaussian", choices=["gaussian", "compact"])
    n.add_argument("--diagnostics", action="store_true")

    p = sub.add_parser("probe", help="run an experiment")
    p.add_argument(
        "--experiment",
        required=True,
        choices=[
            "h-eps-scaling",
            "h-j-scaling",
            "embedding",
            "khinchin",
            "seq-oracle",
            "localization",
            "fourier-series",
        ],
    )
    p.add_argument("--p", default="2")
    p.add_argument("--q", default="2")
    p.add_argument("--s", default="0")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--space", default="L", choices=["L", "W", "M", "B", "F", "hp"])
    p.add_argument("--pair", default="W:B", choices=["W:B", "B:W"])
    p.add_argument("--window", default="gaussian", choices=["gaussian", "compact"])
    p.add_argument("--schedule", help="comma-separated schedule points")
    p.add_argument("--coeffs", default="oracle", help="oracle | flat | power:THETA")
    p.add_argument("--separation", type=float, default=16.0)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--kind", default="dyadic", choices=["uniform", "dyadic"])
    p.add_argument("--q1", default="2")
    p.add_argument("--s1", default="0")
    p.add_argument("--q2", default="2")
    p.add_argument("--s2", default="0")
    p.add_argument("--direction", type=int, default=1, choices=[1, 2])
    p.add_argument("--budget", type=int, default=256)
    p.add_argument("--extent", type=float)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output directory for CSV/records/manifest")

    a = sub.add_parser("atlas", help="decision-surface table over (1/p, 1/q)")
    a.add_argument("--pair", default="W:B", choices=["W:B", "B:W"])
    a.add_argument("--s-mode", default="at_critical", choices=["at_critical", "above", "below"])
    a.add_argument("--step", default="1/4", help="grid step for 1/p and 1/q (rational)")
    a.add_argument("--max", default="2", help="grid maximum for 1/p and 1/q (rational)")
    a.add_argument("--n", type=int, default=1)
    a.add_argument("--out", help="CSV output path (stdout if omitted)")

    return parser


def _classify(args) -> int:
    n = args.n
    pair = args.pair
    if pair == "W:W":
        needed = [args.p1, args.q1, args.s1, args.p2, args.q2, args.s2]
        if any(v is None for v in needed):
            raise ExponentError("W:W needs --p1 --q1 --s1 --p2 --q2 --s2")
        holds = embed_wiener_in_wiener(
            args.p1, args.q1, _fraction(args.s1), args.p2, args.q2, _fraction(args.s2), n
        )
        print(f"holds={_bool_str(holds)}")
        return 0
    if pair in ("seq0:seq0", "seq1:seq1"):
        needed = [args.q1, args.s1, args.q2, args.s2]
        if any(v is None for v in needed):
            raise ExponentError(f"{pair} needs --q1 --s1 --q2 --s2")
        if pair == "seq0:seq0":
            holds = embed_seq_uniform(args.q1, _fraction(args.s1), args.q2, _fraction(args.s2), n)
        else:
            holds = embed_seq_dyadic(args.q1, _fraction(args.s1), args.q2, _fraction(args.s2))
        print(f"holds={_bool_str(holds)}")
        return 0
    if args.p is None or args.q is None:
        raise ExponentError(f"{pair} needs --p and --q")
    s = _fraction(args.s)
    decide = {
        "W:B": embed_wiener_in_besov,
        "B:W": embed_besov_in_wiener,
        "W:hp": embed_wiener_in_hardy,
        "hp:W": embed_hardy_in_wiener,
        "W:L": embed_wiener_in_lebesgue,
        "L:W": embed_lebesgue_in_wiener,
    }[pair]
    verdict = decide(args.p, args.q, s, n)
    print(
        f"holds={_bool_str(verdict.holds)} critical={verdict.critical_s} "
        f"strict={_bool_str(verdict.strict_required)}"
    )
    return 0


def _make_input(args):
    from .witnesses import lowpass_profile, make_scaled_lowpass, make_shell_bump, shell_profile

    spec = GridSpec(1, args.extent, args.samples)
    gen = {"hj": "shell", "heps": "lowpass"}.get(args.gen, args.gen)
    if args.input:
        return read_binary(args.input)
    if gen == "gaussian":
        return unit_gaussian(spec)
    if gen == "zero":
        return zero_function(spec)
    if gen == "shell":
        return make_shell_bump(shell_profile(spec), args.j)
    if gen == "lowpass":
        return make_scaled_lowpass(lowpass_profile(spec), float(Fraction(args.eps)))
    raise ExponentError(f"unknown generator {args.gen!r}")


def _norm(args) -> int:
    from .filters import build_filter_bank
    from .norms import (
        NormDiagnostics,
        besov_norm,
        lebesgue_norm,
        local_hardy_norm,
        modulation_norm,
        triebel_norm,
        wiener_norm,
    )

    try:
        f = _make_input(args)
    except (OSError, ValueError) as exc:
        print(f"error: cannot read input: {exc}", file=sys.stderr)
        return 3
    window = _window(args.window)
    space = args.space
    if space == "L":
        value = lebesgue_norm(f, args.p, _fraction(args.s))
    elif space == "W":
        value = wiener_norm(f, args.p, args.q, _fraction(args.s), window=window)
    elif space == "M":
        value = modulation_norm(f, args.p, args.q, _fraction(args.s), window=window)
    elif space in ("B", "F"):
        jmax = 2
        while 1.5 * 2 ** (jmax + 1) < f.spec.nyquist and jmax < 9:
            jmax += 1
        bank = build_filter_bank(f.spec, jmax)
        fn = besov_norm if space == "B" else triebel_norm
        value = fn(f, bank, args.p, args.q, _fraction(args.s), warn=False)
    else:
        value = local_hardy_norm(f, args.p)
    print(f"value={value!r}")
    if args.diagnostics:
        from .grid import core_mass_fraction

        print(f"core_mass_outside={1.0 - core_mass_fraction(f)!r}")
    return 0


def _parse_schedule(text, cast=float, default=None):
    if text is None:
        return default
    return tuple(cast(part) for part in text.split(","))


def _probe(args) -> int:
    from .experiments import (
        ProbeConfig,
        embedding_probe,
        fourier_series_sharpness,
        khinchin_mc,
        localization_check,
        scaling_probe,
        seq_embedding_oracle,
    )
    from .norms import SeqKind
    from .reporting import RunManifest, report_csv, report_records, write_csv, write_jsonl

    window = _window(args.window)
    seed = args.seed
    report = None
    extra_rows = None

    if args.experiment == "h-eps-scaling":
        schedule = _parse_schedule(args.schedule, float, tuple(2.0**-k for k in range(1, 7)))
        space = _space_spec(args.space, args.p, args.q, args.s, args.n)
        report = scaling_probe("scaled-lowpass", schedule, space, window=window, seed=seed)
    elif args.experiment == "h-j-scaling":
        schedule = _parse_schedule(args.schedule, int, tuple(range(2, 9)))
        space = _space_spec(args.space, args.p, args.q, args.s, args.n)
        grid = _probe_grid(args, GridSpec(1, 256.0, 2**18))
        report = scaling_probe(
            "shell-bump", schedule, space, grid=grid, window=window, spacing=0.5, seed=seed
        )
    elif args.experiment == "embedding":
        schedule = _parse_schedule(args.schedule, int, (1, 2, 4, 8))
        grid = _probe_grid(args, GridSpec(1, 512.0, 2**18))
        if args.pair == "W:B":
            source = _space_spec("W", args.p, args.q, args.s, args.n)
            target = _space_spec("B", args.p, args.q, "0", args.n)
        else:
            source = _space_spec("B", args.p, args.q, "0", args.n)
            target = _space_spec("W", args.p, args.q, args.s, args.n)
        coeffs = args.coeffs
        if coeffs.startswith("power:"):
            coeffs = ("power", Fraction(coeffs.split(":", 1)[1]))
        config = ProbeConfig(
            source=source,
            target=target,
            family="shell-train",
            schedule=schedule,
            window=window,
            grid=grid,
            seed=seed,
            params={"separation": args.separation, "coeffs": coeffs, "spacing": 0.5},
        )
        report = embedding_probe(config)
    elif args.experiment == "khinchin":
        from .witnesses import make_truncated_seq

        a = make_truncated_seq("flat", 8, SeqKind.UNIFORM)
        result = khinchin_mc(a, args.p, args.trials, seed)
        print(
            f"experiment=khinchin p={args.p} trials={args.trials} "
            f"ratio={result['ratio']!r}"
        )
        extra_rows = (
            ["statistic", "value"],
            [["empirical_mean", result["empirical_mean"]], ["reference", result["reference"]], ["ratio", result["ratio"]]],
        )
        _emit(args, None, extra_rows, {"experiment": "khinchin", "p": args.p, "trials": args.trials, "seed": seed})
        return 0
    elif args.experiment == "seq-oracle":
        kind = SeqKind.UNIFORM if args.kind == "uniform" else SeqKind.DYADIC
        result = seq_embedding_oracle(
            args.q1, _fraction(args.s1), args.q2, _fraction(args.s2), kind, budget=args.budget, seed=seed
        )
        print(f"experiment=seq-oracle holds_estimate={_bool_str(result.holds_estimate)} growth={result.growth!r}")
        extra_rows = (
            ["truncation", "best_ratio"],
            [[t, r] for t, r in result.table],
        )
        _emit(
            args,
            None,
            extra_rows,
            {
                "experiment": "seq-oracle",
                "kind": args.kind,
                "q1": args.q1,
                "s1": args.s1,
                "q2": args.q2,
                "s2": args.s2,
                "seed": seed,
            },
        )
        return 0
    elif args.experiment == "localization":
        from .filters import build_filter_bank, uniform_partition
        from .grid import unit_gaussian

        grid = _probe_grid(args, GridSpec(1, 32.0, 2**12))
        partition = uniform_partition(grid)
        space = _space_spec(args.space if args.space in ("W", "F") else "W", args.p, args.q, args.s, args.n)
        bank = build_filter_bank(grid, 4) if space.family == Family.TRIEBEL else None
        family = [unit_gaussian(grid, center=c) for c in (-2.0, 0.0, 1.5)]
        family.append(unit_gaussian(grid, modulation=2.0))
        result = localization_check(family, partition, space, window=window, bank=bank)
        print(f"experiment=localization max_min={result['max_min']!r}")
        extra_rows = (["index", "ratio"], [[i, r] for i, r in enumerate(result["ratios"])])
        _emit(args, None, extra_rows, {"experiment": "localization", "space": space.label(), "seed": seed})
        return 0
    elif args.experiment == "fourier-series":
        report = fourier_series_sharpness(
            args.p, args.q, _fraction(args.s), args.direction, budget=args.budget, seed=seed
        )

    assert report is not None
    print(
        f"experiment={report.experiment} verdict={report.verdict} "
        f"slope={report.slope!r} growth={report.growth!r}"
    )
    _emit(args, report, None, report.config)
    return 0


def _space_spec(space: str, p, q, s, n) -> SpaceSpec:
    fam = {
        "L": Family.LEBESGUE,
        "W": Family.WIENER,
        "M": Family.MODULATION,
        "B": Family.BESOV,
        "F": Family.TRIEBEL,
        "hp": Family.LOCAL_HARDY,
    }[space]
    return SpaceSpec(fam, Exponent.from_p(p), Exponent.from_p(q), _fraction(s), n)


def _probe_grid(args, default: GridSpec) -> GridSpec:
    if args.extent is None and args.samples is None:
        return default
    extent = args.extent if args.extent is not None else default.extent
    samples = args.samples if args.samples is not None else default.samples
    return GridSpec(1, extent, samples)


def _emit(args, report, extra_rows, config) -> None:
    from .reporting import RunManifest, report_csv, report_records, write_csv, write_jsonl

    if not args.out:
        return
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    manifest = RunManifest.create(
        command=" ".join(sys.argv), config=config, seed=args.seed, grid=config.get("grid", {})
    )
    csv_path = out / f"{manifest.run_id}__points.csv"
    if report is not None:
        header, rows = report_csv(report)
        write_csv(csv_path, header, rows)
        write_jsonl(out / f"{manifest.run_id}__records.jsonl", report_records(report))
        manifest.outputs = [csv_path.name, f"{manifest.run_id}__records.jsonl"]
    elif extra_rows is not None:
        header, rows = extra_rows
        write_csv(csv_path, header, rows)
        manifest.outputs = [csv_path.name]
    manifest.save(out)


def _atlas(args) -> int:
    from .experiments import region_atlas
    from .reporting import write_csv

    step = _fraction(args.step)
    top = _fraction(args.max)
    values = []
    v = Fraction(0)
    while v <= top:
        values.append(v)
        v += step
    rows = region_atlas(args.pair, args.s_mode.replace("-", "_"), values, n=args.n)
    header = ["u_p", "u_q", "upper_region", "lower_region", "critical_s", "strict_required", "s", "holds"]
    table = [[r[h] for h in header] for r in rows]
    if args.out:
        write_csv(args.out, header, table)
        print(f"rows={len(rows)} out={args.out}")
    else:
        print(",".join(header))
        for row in table:
            from .reporting import format_cell

            print(",".join(format_cell(v) for v in row))
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "classify":
            return _classify(args)
        if args.command == "norm":
            return _norm(args)
        if args.command == "probe":
            return _probe(args)
        if args.command == "atlas":
            return _atlas(args)
    except ExponentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
