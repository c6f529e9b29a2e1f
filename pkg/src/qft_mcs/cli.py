"""Command-line interface.

    qft-mcs validate  --input tree.ft
    qft-mcs enumerate --input tree.ft [--out DIR]
    qft-mcs sweep     --input tree.ft --variant naive|proposed
                      [--j N | --j-max N] [--shots N] [--seed N] [--out DIR]
    qft-mcs compare   --input tree.ft [--j-naive N] [--j-proposed N]
                      [--trials N] [--seed N] [--out DIR]

Exit codes: 0 success, 1 invalid input tree, 2 I/O failure, 3 capacity
exceeded.  Every output file embeds the tool version, the input file's
SHA-256 digest, the seed, and the resolved parameters; re-running the same
command reproduces byte-identical files.
"""

import argparse
import hashlib
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__, analytics, ft_classical, ft_model, qaa_engine
from .qsim import DEFAULT_MAX_QUBITS, CapacityError

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_IO = 2
EXIT_CAPACITY = 3

_SWEEP_COLUMNS = "j,exact_flag_p,exact_mcs_p,empirical_flag_p,empirical_mcs_p"


@dataclass(frozen=True)
class RunConfig:
    command: str
    input_path: str
    out_dir: str | None
    seed: int = 0
    shots: int = 0
    variant: str | None = None
    j: int | None = None
    j_max: int | None = None
    j_naive: int | None = None
    j_proposed: int | None = None
    trials: int = 0
    max_qubits: int = DEFAULT_MAX_QUBITS
    literal_shots: bool = False

    def echo(self) -> str:
        pairs = [("command", self.command)]
        for key in (
            "variant", "j", "j_max", "j_naive", "j_proposed",
            "shots", "trials", "seed", "max_qubits", "literal_shots",
        ):
            value = getattr(self, key)
            if value is not None:
                pairs.append((key, value))
        return " ".join(f"{k}={v}" for k, v in pairs)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (ft_model.FaultTreeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qft-mcs",
        description="Minimal cut set identification for coherent fault trees, "
        "classically and via amplitude amplification on a statevector simulator.",
    )
    parser.add_argument("--version", action="version", version=f"qft-mcs {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, sim: bool = False) -> None:
        p.add_argument("--input", required=True, help="fault tree file")
        p.add_argument("--out", default=None, help="output directory for CSV artifacts")
        p.add_argument("--seed", type=int, default=0)
        if sim:
            p.add_argument("--shots", type=int, default=0,
                           help="measurement samples per run (0 = exact only)")
            p.add_argument("--max-qubits", type=int, default=DEFAULT_MAX_QUBITS)
            p.add_argument("--literal-shots", action="store_true",
                           help="rebuild and measure the circuit once per sample")

    p = sub.add_parser("validate", help="check a fault tree file")
    p.add_argument("--input", required=True)
    p.set_defaults(handler=_cmd_validate)

    p = sub.add_parser("enumerate", help="brute-force cut sets and minimal cut sets")
    common(p)
    p.set_defaults(handler=_cmd_enumerate)

    p = sub.add_parser("sweep", help="amplification sweep over iteration counts")
    common(p, sim=True)
    p.add_argument("--variant", choices=("naive", "proposed"), required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--j", type=int, default=None, help="single iteration count")
    group.add_argument("--j-max", type=int, default=None, help="sweep 0..j_max (default 10)")
    p.set_defaults(handler=_cmd_sweep)

    p = sub.add_parser("compare", help="expected-sample comparison of all methods")
    common(p, sim=True)
    p.add_argument("--j-naive", type=int, default=None,
                   help="iteration count for the naive run (default: best in 0..12)")
    p.add_argument("--j-proposed", type=int, default=None,
                   help="iteration count for the proposed run (default: best in 0..12)")
    p.add_argument("--trials", type=int, default=0,
                   help="empirical collection trials per method (0 = closed forms only)")
    p.set_defaults(handler=_cmd_compare)

    return parser


def _cmd_validate(args) -> int:
    tree = _read_tree(args.input)
    violations = ft_model.validate(tree)
    if violations:  # unreachable for parser-accepted trees; kept as a guard
        for v in violations:
            print(f"invalid: {v}", file=sys.stderr)
        return EXIT_INVALID
    print(f"valid: {args.input} n_be={tree.n_be} n_ie={tree.n_ie} top={tree.top.id}")
    return EXIT_OK


def _cmd_enumerate(args) -> int:
    tree = _read_tree(args.input)
    config = RunConfig("enumerate", args.input, args.out, seed=args.seed)
    enumeration = ft_classical.enumerate_mcs(tree)
    if args.out is not None:
        path = _out_path(args.out, "configs.csv")
        with path.open("w", encoding="utf-8") as fh:
            fh.write(_artifact_header(config))
            ft_classical.write_enumeration_csv(tree, fh)
        print(f"wrote {path}")
    print(
        f"cut_sets={enumeration.cut_set_count} mcs={enumeration.mcs_count} "
        f"configs={enumeration.config_count}"
    )
    return EXIT_OK


def _cmd_sweep(args) -> int:
    tree = _read_tree(args.input)
    j_max = 10 if args.j_max is None else args.j_max
    config = RunConfig(
        "sweep", args.input, args.out, seed=args.seed, shots=args.shots,
        variant=args.variant, j=args.j, j_max=None if args.j is not None else j_max,
        max_qubits=args.max_qubits, literal_shots=args.literal_shots,
    )
    if args.j is not None:
        run_one = qaa_engine.run_naive if args.variant == "naive" else qaa_engine.run_proposed
        runs = [run_one(
            tree, args.j, shots=args.shots, seed=args.seed,
            literal_shots=args.literal_shots, max_qubits=args.max_qubits,
        )]
    else:
        runs = qaa_engine.sweep(
            tree, args.variant, j_max, shots=args.shots, seed=args.seed,
            literal_shots=args.literal_shots, max_qubits=args.max_qubits,
        )

    lines = [_SWEEP_COLUMNS]
    for r in runs:
        emp_flag = "" if r.empirical_flag_probability is None else repr(r.empirical_flag_probability)
        emp_mcs = "" if r.empirical_mcs_probability is None else repr(r.empirical_mcs_probability)
        lines.append(
            f"{r.j},{r.exact_flag_probability!r},{r.exact_mcs_probability!r},{emp_flag},{emp_mcs}"
        )
    out_dir = args.out if args.out is not None else "."
    path = _out_path(out_dir, f"sweep_{args.variant}.csv")
    path.write_text(_artifact_header(config) + "\n".join(lines) + "\n", encoding="utf-8")

    best = max(runs, key=lambda r: r.exact_mcs_probability)
    print(f"wrote {path}")
    print(f"best j={best.j} exact_mcs_p={best.exact_mcs_probability:.6g}")
    return EXIT_OK


def _cmd_compare(args) -> int:
    tree = _read_tree(args.input)
    enumeration = ft_classical.enumerate_mcs(tree)
    n_mcs, n_cut = enumeration.mcs_count, enumeration.cut_set_count
    if n_mcs == 0:
        print("error: tree has no minimal cut sets", file=sys.stderr)
        return EXIT_INVALID
    p_mc = n_mcs / enumeration.config_count
    a_cut = n_cut / enumeration.config_count

    # The naive flag marks cut sets, so its best j maximizes the cut-set
    # probability; the minimal-cut-set share within the marked states is
    # constant across j.
    j_naive = args.j_naive if args.j_naive is not None else qaa_engine.best_j(a_cut, 12)
    j_proposed = (
        args.j_proposed if args.j_proposed is not None else qaa_engine.best_j(p_mc, 12)
    )
    config = RunConfig(
        "compare", args.input, args.out, seed=args.seed, shots=args.shots,
        j_naive=j_naive, j_proposed=j_proposed, trials=args.trials,
        max_qubits=args.max_qubits, literal_shots=args.literal_shots,
    )

    naive = qaa_engine.run_naive(tree, j_naive, max_qubits=args.max_qubits)
    proposed = qaa_engine.run_proposed(tree, j_proposed, max_qubits=args.max_qubits)

    collections = {}
    if args.trials > 0:
        collections["monte_carlo"] = analytics.coupon_collection_experiment(
            tree, "monte_carlo", args.trials, args.seed
        )
        collections["naive"] = analytics.coupon_collection_experiment(
            tree, "naive", args.trials, args.seed, j=j_naive, max_qubits=args.max_qubits
        )
        collections["proposed"] = analytics.coupon_collection_experiment(
            tree, "proposed", args.trials, args.seed, j=j_proposed, max_qubits=args.max_qubits
        )

    report = analytics.comparison_report(
        tree.n_be, n_mcs, n_cut,
        j_naive, naive.exact_mcs_probability,
        j_proposed, proposed.exact_mcs_probability,
        collections=collections or None,
    )

    out_dir = args.out if args.out is not None else "."
    csv_path = _out_path(out_dir, "comparison.csv")
    csv_path.write_text(_artifact_header(config) + report.to_csv(), encoding="utf-8")
    text_path = _out_path(out_dir, "comparison.txt")
    text_path.write_text(_artifact_header(config) + report.to_text(), encoding="utf-8")
    print(f"wrote {csv_path}")
    print(f"wrote {text_path}")
    print(report.to_text(), end="")
    return EXIT_OK


def _read_tree(path_str: str) -> ft_model.FaultTree:
    text = Path(path_str).read_text(encoding="utf-8")
    return ft_model.parse_fault_tree(text)


def _out_path(out_dir: str, name: str) -> Path:
    directory = Path(out_dir)
    directory.mkdir(parents=True, exist_ok=True)
    return directory / name


def _artifact_header(config: RunConfig) -> str:
    digest = hashlib.sha256(Path(config.input_path).read_bytes()).hexdigest()
    return (
        f"# tool=qft-mcs {__version__}\n"
        f"# input={config.input_path} sha256={digest}\n"
        f"# seed={config.seed}\n"
        f"# {config.echo()}\n"
    )


if __name__ == "__main__":
    sys.exit(main())
