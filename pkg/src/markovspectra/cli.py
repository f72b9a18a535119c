"""Command-line interface.

Subcommands: ``sample``, ``eig``, ``svd``, ``check``, ``experiment``,
``version``.  Exit code 0 when everything passed, 1 on any failed
assertion, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__, kernels
from .checks import LEMMA_IDS, run_lemma_campaign
from .ensembles import parse_law, sample_iid_matrix, to_markov
from .errors import IterationLimitError
from .experiments import DEFAULT_N_GRID, EXPERIMENTS, ExperimentConfig, run_experiment
from .linalg import eigenvalues, singular_values
from .matrix import Matrix, parse_scalar_token
from .rng import SeededStream

_CONFIG_KEYS = ("experiment", "n", "law", "replicas", "seed", "z", "out", "remove_top")


def _parse_n_list(text: str) -> tuple[int, ...]:
    return tuple(int(part) for part in text.split(",") if part.strip())


def _parse_z_list(text: str) -> tuple[complex, ...]:
    return tuple(complex(parse_scalar_token(part)) for part in text.split(",") if part.strip())


def _read_config(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, eq, value = line.partition("=")
        key = key.strip()
        if not eq or key not in _CONFIG_KEYS:
            raise ValueError(f"bad config line {raw!r} (keys: {', '.join(_CONFIG_KEYS)})")
        values[key] = value.strip()
    return values


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="markovspectra",
        description="Seeded spectral experiments on row-normalized random Markov matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("version", help="print version and kernel backend")

    p_sample = sub.add_parser("sample", help="sample a random Markov matrix")
    p_sample.add_argument("--n", type=int, required=True)
    p_sample.add_argument("--law", default="exponential:rate=1")
    p_sample.add_argument("--seed", type=int, default=42)
    p_sample.add_argument("--stream", type=int, default=0)
    p_sample.add_argument(
        "--what", choices=("markov", "raw"), default="markov", help="emit M or the raw X"
    )
    p_sample.add_argument("--out", default="-", help="output file ('-' for stdout)")

    for name, help_text in (("eig", "eigenvalues of a matrix"), ("svd", "singular values")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("matrix", help="matrix text file ('-' for stdin)")

    p_check = sub.add_parser("check", help="run the inequality oracle suite")
    p_check.add_argument("suite", choices=("lemmas",))
    p_check.add_argument("--lemma", choices=sorted(LEMMA_IDS), default=None)
    p_check.add_argument("--instances", type=int, default=200)
    p_check.add_argument("--seed", type=int, default=7)

    p_exp = sub.add_parser("experiment", help="run a Monte Carlo experiment")
    p_exp.add_argument("name", nargs="?", default=None, choices=sorted(EXPERIMENTS) + [None])
    p_exp.add_argument("--config", default=None, help="flat key=value config file")
    p_exp.add_argument("--n", default=None, help="comma-separated n grid")
    p_exp.add_argument("--law", default=None)
    p_exp.add_argument("--replicas", type=int, default=None)
    p_exp.add_argument("--seed", type=int, default=None)
    p_exp.add_argument("--z", default=None, help="comma-separated shifts (a+bi tokens)")
    p_exp.add_argument("--out", default=None)
    p_exp.add_argument("--remove-top", type=int, default=None)
    p_exp.add_argument("--workers", type=int, default=1)
    return parser


def _read_matrix(arg: str) -> Matrix:
    if arg == "-":
        return Matrix.from_text(sys.stdin.read())
    return Matrix.from_text(Path(arg).read_text(encoding="utf-8"))


def _cmd_sample(args) -> int:
    law = parse_law(args.law)
    stream = SeededStream(args.seed, args.stream)
    x = sample_iid_matrix(args.n, law, stream)
    out = x if args.what == "raw" else to_markov(x).m_matrix
    text = out.to_text()
    if args.out == "-":
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text, encoding="utf-8")
    return 0


def _cmd_spectrum(args, which: str) -> int:
    matrix = _read_matrix(args.matrix)
    if which == "eig":
        values = eigenvalues(matrix)
        sys.stdout.write("index,re,im\n")
        for i, z in enumerate(values):
            sys.stdout.write(f"{i},{z.real:.17g},{z.imag:.17g}\n")
    else:
        values = singular_values(matrix)
        sys.stdout.write("index,value\n")
        for i, s in enumerate(values):
            sys.stdout.write(f"{i},{s:.17g}\n")
    return 0


def _cmd_check(args) -> int:
    lemma_ids = [args.lemma] if args.lemma else sorted(LEMMA_IDS)
    stream = SeededStream(args.seed)
    failed = False
    for idx, lemma_id in enumerate(lemma_ids):
        report = run_lemma_campaign(lemma_id, args.instances, stream.substream(idx))
        print(report)
        failed = failed or not report.passed
    return 1 if failed else 0


def _cmd_experiment(args) -> int:
    settings: dict[str, str] = {}
    if args.config:
        settings.update(_read_config(args.config))
    name = args.name or settings.get("experiment")
    if not name:
        print("error: no experiment named (argument or config 'experiment=...')", file=sys.stderr)
        return 2
    if name not in EXPERIMENTS:
        print(f"error: unknown experiment {name!r}; choose from {sorted(EXPERIMENTS)}", file=sys.stderr)
        return 2
    n_values = (
        _parse_n_list(args.n)
        if args.n
        else (_parse_n_list(settings["n"]) if "n" in settings else DEFAULT_N_GRID)
    )
    law_text = args.law or settings.get("law", "exponential:rate=1")
    replicas = args.replicas if args.replicas is not None else int(settings.get("replicas", 5))
    seed = args.seed if args.seed is not None else int(settings.get("seed", 42))
    z_text = args.z if args.z is not None else settings.get("z")
    z_grid = _parse_z_list(z_text) if z_text else ()
    if name == "resolvent" and not z_grid:
        z_grid = (0j, 1 + 0j, 1 + 1j, 3 + 0j)
    out_dir = args.out if args.out is not None else settings.get("out", "runs")
    remove_top = (
        args.remove_top if args.remove_top is not None else int(settings.get("remove_top", 1))
    )
    cfg = ExperimentConfig(
        experiment_id=name,
        law=parse_law(law_text),
        n_values=n_values,
        replicas=replicas,
        master_seed=seed,
        z_grid=z_grid,
        output_dir=out_dir,
        remove_top=remove_top,
        workers=args.workers,
    )
    report = run_experiment(cfg)
    for row in report.rows:
        tag = "PASS" if row.passed else "FAIL"
        print(f"[{tag}] n={row.n} {row.statistic}={row.value:.6g} ({row.reference})")
    print(f"artifacts under {cfg.out_path()}")
    return 0 if report.all_passed else 1


def cli_main(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse handles --help and usage errors
        code = exc.code
        return int(code) if code is not None else 0
    try:
        if args.command == "version":
            print(f"markovspectra {__version__} (kernels: {kernels.backend_name()})")
            return 0
        if args.command == "sample":
            return _cmd_sample(args)
        if args.command in ("eig", "svd"):
            return _cmd_spectrum(args, args.command)
        if args.command == "check":
            return _cmd_check(args)
        if args.command == "experiment":
            return _cmd_experiment(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except IterationLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 2


def main() -> None:
    sys.exit(cli_main(sys.argv[1:]))


if __name__ == "__main__":
    main()
