"""Config-driven, seeded Monte Carlo experiments.

Each runner samples Markov matrices over an ``n`` grid, computes spectral
statistics against their predicted limits, and emits ``report.txt``,
``summary.csv``, per-replica spectrum CSVs, and (for the two law
experiments) an SVG figure per ``n``.

Replicas are the unit of parallel work: replica ``r`` owns the sample
stream with index ``r`` under the master seed, aggregation is ordered by
replica index, and files are written once by the caller thread, so output
is byte-identical for any worker count.
"""

from __future__ import annotations

import math
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import linalg, measures, svgplot
from .ensembles import EntryLaw, MarkovSample, sample_iid_matrix, to_markov
from .errors import IterationLimitError, ReducibleMatrixError
from .rng import SeededStream

__all__ = [
    "REFERENCES",
    "DEFAULT_N_GRID",
    "ExperimentConfig",
    "SummaryRow",
    "ExperimentReport",
    "run_quartercircle",
    "run_circular",
    "run_extremes",
    "run_resolvent_bound",
    "run_perturbation_gap",
    "run_moments_and_invariant",
    "run_experiment",
    "EXPERIMENTS",
]

DEFAULT_N_GRID = (100, 200, 400, 800)

#: Statement registry: every summary row's ``reference`` resolves here.
REFERENCES = {
    "quartercircle-bulk-law": "singular-value bulk of sqrt(n)M follows the quartercircular law",
    "quartercircle-trend": "Kolmogorov distance to the quartercircular law shrinks along the n grid",
    "bulk-second-moment": "mean squared singular value of sqrt(n)M approaches 1 + radius^2",
    "circular-bulk-law": "eigenvalue bulk of sqrt(n)M follows the uniform disk law",
    "circular-trend": "radial sup-distance to the disk law shrinks along the n grid",
    "conjugate-symmetry": "spectrum of a real matrix is symmetric about the real axis",
    "phase-uniformity-question": "bulk eigenvalue phases vs uniform law (open question, reported only)",
    "perron-root-unity": "a Markov matrix has top eigenvalue exactly 1",
    "top-singular-limit-one": "s1(M) approaches 1",
    "second-singular-limit": "s2(sqrt(n)M) approaches twice the effective radius",
    "second-eigen-upper-bound": "|lambda2(sqrt(n)M)| stays below twice the effective radius",
    "operator-vs-spectral-ratio": "s1(M)/|lambda1(M)| approaches 1",
    "second-eigen-radius-question": "|lambda2(sqrt(n)M)| near the effective radius (open question, reported only)",
    "smallest-singular-positive": "sqrt(n)M - zI stays invertible at desk scale",
    "smallest-singular-decay-exponent": "s_n(sqrt(n)M - zI) decays at most polynomially in n",
    "away-from-support-floor": "s_n(sqrt(n)M - zI) >= |z| - 2*radius + o(1) beyond the bulk",
    "log-singular-gap": "log singular values of sqrt(n)M and X/sqrt(n) drift together",
    "row-scaling-gap": "max_i |n*D_ii - 1| vanishes",
    "loop-moment-decay": "scaled loop-probability moments vanish",
    "invariant-vs-uniform-tv": "l1 distance between invariant and uniform measures (open question, reported only)",
    "reducibility-events": "sampled Markov matrices are irreducible (reducible replicas counted)",
}


@dataclass(frozen=True)
class ExperimentConfig:
    experiment_id: str
    law: EntryLaw
    n_values: tuple[int, ...] = DEFAULT_N_GRID
    replicas: int = 5
    master_seed: int = 42
    z_grid: tuple[complex, ...] = ()
    output_dir: str = "runs"
    remove_top: int = 1
    workers: int = 1

    def __post_init__(self):
        if not self.n_values:
            raise ValueError("n grid must be nonempty")
        if any(n < 2 for n in self.n_values):
            raise ValueError("every n must be at least 2")
        if self.replicas < 1:
            raise ValueError("need at least one replica")
        if self.remove_top < 0 or self.remove_top >= min(self.n_values):
            raise ValueError("remove_top must lie in [0, min(n))")

    def out_path(self) -> Path:
        return Path(self.output_dir) / self.experiment_id


@dataclass(frozen=True)
class SummaryRow:
    n: int
    statistic: str
    value: float
    reference: str
    tolerance: float
    passed: bool
    reference_value: float | None = None

    def __post_init__(self):
        if self.reference not in REFERENCES:
            raise ValueError(f"unregistered reference id {self.reference!r}")


@dataclass
class ExperimentReport:
    experiment_id: str
    rows: list[SummaryRow] = field(default_factory=list)
    artifacts: list[str] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(row.passed for row in self.rows)

    def rows_for(self, statistic: str) -> list[SummaryRow]:
        return [r for r in self.rows if r.statistic == statistic]


# ---------------------------------------------------------------------------
# Shared plumbing
# ---------------------------------------------------------------------------


def _map_replicas(cfg: ExperimentConfig, work, n: int) -> list:
    """Evaluate ``work(n, replica, stream)`` for every replica, in index order."""

    def call(r: int):
        stream = SeededStream(cfg.master_seed, r)
        try:
            return work(n, r, stream)
        except IterationLimitError as exc:
            raise IterationLimitError(f"replica {r} at n={n}: {exc}") from exc

    if cfg.workers <= 1:
        return [call(r) for r in range(cfg.replicas)]
    results = [None] * cfg.replicas
    with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
        futures = {pool.submit(call, r): r for r in range(cfg.replicas)}
        for fut, r in futures.items():
            results[r] = fut.result()
    return results


def _sample(cfg: ExperimentConfig, n: int, stream: SeededStream) -> MarkovSample:
    return to_markov(sample_iid_matrix(n, cfg.law, stream))


def _scaled_markov(ms: MarkovSample) -> np.ndarray:
    return math.sqrt(ms.n) * ms.m_matrix.data


def _fmt_value(x: float) -> str:
    return "%.17g" % x


def _write_measure_csv(path: Path, values) -> None:
    arr = np.asarray(values)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        if np.iscomplexobj(arr):
            fh.write("index,re,im\n")
            for i, v in enumerate(arr):
                fh.write(f"{i},{_fmt_value(v.real)},{_fmt_value(v.imag)}\n")
        else:
            fh.write("index,value\n")
            for i, v in enumerate(arr):
                fh.write(f"{i},{_fmt_value(float(v))}\n")


def _write_outputs(cfg: ExperimentConfig, report: ExperimentReport) -> None:
    out = cfg.out_path()
    out.mkdir(parents=True, exist_ok=True)
    summary = out / "summary.csv"
    with open(summary, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("n,statistic,value,reference,tolerance,pass\n")
        for row in report.rows:
            fh.write(
                f"{row.n},{row.statistic},{_fmt_value(row.value)},{row.reference},"
                f"{_fmt_value(row.tolerance)},{'true' if row.passed else 'false'}\n"
            )
    report_txt = out / "report.txt"
    with open(report_txt, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"experiment: {report.experiment_id}\n")
        fh.write(f"law: {cfg.law.spec()}  seed: {cfg.master_seed}  replicas: {cfg.replicas}\n")
        for row in report.rows:
            tag = "PASS" if row.passed else "FAIL"
            target = "" if row.reference_value is None else f" target={_fmt_value(row.reference_value)}"
            fh.write(
                f"[{tag}] n={row.n} {row.statistic}={_fmt_value(row.value)}{target} "
                f"tol={_fmt_value(row.tolerance)} ({row.reference})\n"
            )
    report.artifacts.extend([str(summary), str(report_txt)])


def _median(values) -> float:
    return float(statistics.median(values))


def _trend_row(n_values, medians, statistic: str, reference: str) -> SummaryRow:
    """Strictly-decreasing trend across the grid: worst consecutive increment."""
    steps = [b - a for a, b in zip(medians, medians[1:])]
    worst = max(steps)
    return SummaryRow(
        n=max(n_values),
        statistic=statistic,
        value=worst,
        reference=reference,
        tolerance=0.0,
        passed=worst < 0.0,
    )


def _row(n, statistic, value, reference, tolerance, reference_value=None) -> SummaryRow:
    """Row passing when |value - reference_value| <= tolerance (or value <= tol)."""
    if reference_value is None:
        passed = value <= tolerance
    else:
        passed = abs(value - reference_value) <= tolerance
    return SummaryRow(
        n=n,
        statistic=statistic,
        value=value,
        reference=reference,
        tolerance=tolerance,
        passed=passed,
        reference_value=reference_value,
    )


def _exploratory_row(n, statistic, value, reference, reference_value=None) -> SummaryRow:
    return SummaryRow(
        n=n,
        statistic=statistic,
        value=value,
        reference=reference,
        tolerance=math.inf,
        passed=True,
        reference_value=reference_value,
    )


# ---------------------------------------------------------------------------
# Quartercircular law
# ---------------------------------------------------------------------------


def run_quartercircle(cfg: ExperimentConfig) -> ExperimentReport:
    """Bulk singular values of sqrt(n)M against the quartercircular law."""
    radius = cfg.law.effective_radius
    law = measures.quartercircular_law(radius)
    report = ExperimentReport(cfg.experiment_id)
    out = cfg.out_path()
    out.mkdir(parents=True, exist_ok=True)
    n_max = max(cfg.n_values)
    ks_medians = []

    def work(n, r, stream):
        ms = _sample(cfg, n, stream)
        svals = np.asarray(linalg.singular_values(_scaled_markov(ms)))
        bulk = svals[cfg.remove_top :]
        ks = measures.kolmogorov_distance(measures.EmpiricalMeasure.on_real_line(bulk), law)
        m2 = float(np.mean(svals**2))
        m2_bulk = m2 - float(np.sum(svals[: cfg.remove_top] ** 2)) / n
        return {"svals": svals, "ks": ks, "m2": m2, "m2_bulk": m2_bulk}

    for n in cfg.n_values:
        results = _map_replicas(cfg, work, n)
        for r, res in enumerate(results):
            path = out / f"spectrum_{n}_{r}.csv"
            _write_measure_csv(path, res["svals"])
            report.artifacts.append(str(path))
        ks_med = _median([res["ks"] for res in results])
        ks_medians.append(ks_med)
        tol = 0.06 if n == n_max else math.inf
        report.rows.append(
            _row(n, "ks_median_bulk", ks_med, "quartercircle-bulk-law", tol)
        )
        report.rows.append(
            _row(
                n,
                "second_moment",
                _median([res["m2"] for res in results]),
                "bulk-second-moment",
                0.15 if n == n_max else math.inf,
                reference_value=1.0 + radius * radius,
            )
        )
        report.rows.append(
            _row(
                n,
                "bulk_second_moment",
                _median([res["m2_bulk"] for res in results]),
                "bulk-second-moment",
                0.1 if n == n_max else math.inf,
                reference_value=radius * radius,
            )
        )
        pooled = np.concatenate([res["svals"][cfg.remove_top :] for res in results])
        fig = out / f"figure_{n}.svg"
        svgplot.save(
            svgplot.histogram_line(
                pooled,
                bins=64,
                hi=2.5 * radius,
                density=lambda x: measures.quartercircular_density(x, radius),
                title=f"bulk singular values, n={n}",
            ),
            fig,
        )
        report.artifacts.append(str(fig))
    if len(cfg.n_values) > 1:
        report.rows.append(
            _trend_row(cfg.n_values, ks_medians, "ks_median_trend", "quartercircle-trend")
        )
    _write_outputs(cfg, report)
    return report


# ---------------------------------------------------------------------------
# Circular law
# ---------------------------------------------------------------------------


def _conjugate_symmetry_gap(eigs: np.ndarray) -> float:
    """Largest multiset mismatch between the spectrum and its conjugate."""
    order = np.lexsort((np.abs(eigs.imag), eigs.imag, eigs.real))
    a = eigs[order]
    conj = np.conj(eigs)
    order_c = np.lexsort((np.abs(conj.imag), conj.imag, conj.real))
    b = conj[order_c]
    return float(np.max(np.abs(a - b)))


def run_circular(cfg: ExperimentConfig) -> ExperimentReport:
    """Bulk eigenvalues of sqrt(n)M against the uniform law on the disk."""
    radius = cfg.law.effective_radius
    report = ExperimentReport(cfg.experiment_id)
    out = cfg.out_path()
    out.mkdir(parents=True, exist_ok=True)
    n_max = max(cfg.n_values)
    rad_medians = []

    def work(n, r, stream):
        ms = _sample(cfg, n, stream)
        eigs = np.asarray(linalg.eigenvalues(_scaled_markov(ms)), dtype=np.complex128)
        bulk = eigs[cfg.remove_top :]  # sorted by modulus: drops the Perron value
        mu = measures.EmpiricalMeasure.on_complex_plane(bulk)
        rad = measures.radial_sup_distance(mu, radius)
        sym = _conjugate_symmetry_gap(eigs)
        hist = measures.phase_histogram(mu, 16)
        return {"eigs": eigs, "bulk": bulk, "radial": rad, "symmetry": sym, "hist": hist}

    for n in cfg.n_values:
        results = _map_replicas(cfg, work, n)
        for r, res in enumerate(results):
            path = out / f"spectrum_{n}_{r}.csv"
            _write_measure_csv(path, res["eigs"])
            report.artifacts.append(str(path))
        rad_med = _median([res["radial"] for res in results])
        rad_medians.append(rad_med)
        tol = 0.06 if n == n_max else math.inf
        report.rows.append(_row(n, "radial_median_bulk", rad_med, "circular-bulk-law", tol))
        report.rows.append(
            _row(
                n,
                "conjugate_symmetry_gap",
                max(res["symmetry"] for res in results),
                "conjugate-symmetry",
                1e-8,
            )
        )
        pooled_hist = np.sum([res["hist"] for res in results], axis=0)
        expect = pooled_hist.sum() / len(pooled_hist)
        chi2 = float(((pooled_hist - expect) ** 2 / expect).sum()) if expect > 0 else 0.0
        report.rows.append(
            _exploratory_row(n, "phase_chi2_16bins", chi2, "phase-uniformity-question")
        )
        pooled = np.concatenate([res["bulk"] for res in results])
        fig = out / f"figure_{n}.svg"
        svgplot.save(
            svgplot.scatter_plane(
                [complex(z) for z in pooled],
                circle_radius=radius,
                extent=svgplot.circle_extent(radius),
                title=f"bulk eigenvalues, n={n}",
            ),
            fig,
        )
        report.artifacts.append(str(fig))
    if len(cfg.n_values) > 1:
        report.rows.append(
            _trend_row(cfg.n_values, rad_medians, "radial_median_trend", "circular-trend")
        )
    _write_outputs(cfg, report)
    return report


# ---------------------------------------------------------------------------
# Extreme values
# ---------------------------------------------------------------------------


def run_extremes(cfg: ExperimentConfig) -> ExperimentReport:
    """Perron value, top singular values, and the second eigenvalue."""
    radius = cfg.law.effective_radius
    report = ExperimentReport(cfg.experiment_id)
    out = cfg.out_path()
    out.mkdir(parents=True, exist_ok=True)
    n_max = max(cfg.n_values)

    def work(n, r, stream):
        ms = _sample(cfg, n, stream)
        m = ms.m_matrix.data
        eigs = np.asarray(linalg.eigenvalues(m), dtype=np.complex128)
        svals = np.asarray(linalg.singular_values(m))
        sq = math.sqrt(n)
        return {
            "eigs_scaled": sq * eigs,
            "lambda1_err": abs(eigs[0] - 1.0),
            "s1_err": abs(svals[0] - 1.0),
            "s2_scaled": sq * svals[1],
            "lambda2_scaled": sq * abs(eigs[1]) if n > 1 else 0.0,
            "ratio": svals[0] / abs(eigs[0]),
        }

    for n in cfg.n_values:
        results = _map_replicas(cfg, work, n)
        for r, res in enumerate(results):
            path = out / f"spectrum_{n}_{r}.csv"
            _write_measure_csv(path, res["eigs_scaled"])
            report.artifacts.append(str(path))
        report.rows.append(
            _row(
                n,
                "lambda1_deviation_max",
                max(res["lambda1_err"] for res in results),
                "perron-root-unity",
                1e-9,
            )
        )
        loose = n != n_max
        report.rows.append(
            _row(
                n,
                "s1_deviation_median",
                _median([res["s1_err"] for res in results]),
                "top-singular-limit-one",
                math.inf if loose else 0.05,
            )
        )
        report.rows.append(
            _row(
                n,
                "s2_scaled_median",
                _median([res["s2_scaled"] for res in results]),
                "second-singular-limit",
                math.inf if loose else 0.25,
                reference_value=2.0 * radius,
            )
        )
        lam2 = max(res["lambda2_scaled"] for res in results)
        report.rows.append(
            SummaryRow(
                n=n,
                statistic="lambda2_scaled_max",
                value=lam2,
                reference="second-eigen-upper-bound",
                tolerance=0.3,
                passed=lam2 <= 2.0 * radius + 0.3,
                reference_value=2.0 * radius,
            )
        )
        report.rows.append(
            _row(
                n,
                "ratio_s1_over_lambda1",
                _median([res["ratio"] for res in results]),
                "operator-vs-spectral-ratio",
                math.inf if loose else 0.05,
                reference_value=1.0,
            )
        )
        report.rows.append(
            _exploratory_row(
                n,
                "lambda2_scaled_median",
                _median([res["lambda2_scaled"] for res in results]),
                "second-eigen-radius-question",
                reference_value=radius,
            )
        )
    _write_outputs(cfg, report)
    return report


# ---------------------------------------------------------------------------
# Smallest singular value of the shifted matrix
# ---------------------------------------------------------------------------


def run_resolvent_bound(cfg: ExperimentConfig) -> ExperimentReport:
    """min_replicas s_n(sqrt(n)M - zI) across the z grid, with a decay fit."""
    if not cfg.z_grid:
        raise ValueError("resolvent experiment needs a nonempty z grid")
    radius = cfg.law.effective_radius
    report = ExperimentReport(cfg.experiment_id)
    out = cfg.out_path()
    out.mkdir(parents=True, exist_ok=True)
    n_max = max(cfg.n_values)

    def work(n, r, stream):
        ms = _sample(cfg, n, stream)
        scaled = _scaled_markov(ms)
        sn = {}
        spectrum0 = None
        eye = np.eye(n)
        for j, z in enumerate(cfg.z_grid):
            if z.imag == 0.0:
                shifted = scaled - z.real * eye
            else:
                shifted = scaled.astype(np.complex128) - z * eye
            svals = linalg.singular_values(shifted)
            sn[j] = svals[-1]
            if j == 0:
                spectrum0 = np.asarray(svals)
        return {"sn": sn, "spectrum0": spectrum0}

    mins: dict[tuple[int, int], float] = {}
    for n in cfg.n_values:
        results = _map_replicas(cfg, work, n)
        for r, res in enumerate(results):
            path = out / f"spectrum_{n}_{r}.csv"
            _write_measure_csv(path, res["spectrum0"])
            report.artifacts.append(str(path))
        for j, z in enumerate(cfg.z_grid):
            val = min(res["sn"][j] for res in results)
            mins[(n, j)] = val
            report.rows.append(
                SummaryRow(
                    n=n,
                    statistic=f"sn_min_z{j}",
                    value=val,
                    reference="smallest-singular-positive",
                    tolerance=0.0,
                    passed=val > 0.0,
                )
            )
            if abs(z) > 2.0 * radius and n == n_max:
                floor = abs(z) - 2.0 * radius
                report.rows.append(
                    SummaryRow(
                        n=n,
                        statistic=f"sn_floor_z{j}",
                        value=val,
                        reference="away-from-support-floor",
                        tolerance=0.3,
                        passed=val >= floor - 0.3,
                        reference_value=floor,
                    )
                )
    if len(cfg.n_values) > 1:
        for j, z in enumerate(cfg.z_grid):
            xs = np.log(np.asarray(cfg.n_values, dtype=float))
            ys = np.array([math.log(max(mins[(n, j)], 1e-300)) for n in cfg.n_values])
            slope = float(np.polyfit(xs, ys, 1)[0])
            b_hat = max(0.0, -slope)
            report.rows.append(
                SummaryRow(
                    n=n_max,
                    statistic=f"decay_exponent_z{j}",
                    value=b_hat,
                    reference="smallest-singular-decay-exponent",
                    tolerance=6.0,
                    passed=b_hat <= 6.0,
                )
            )
    _write_outputs(cfg, report)
    return report


# ---------------------------------------------------------------------------
# Coupled perturbation gap
# ---------------------------------------------------------------------------


def run_perturbation_gap(cfg: ExperimentConfig) -> ExperimentReport:
    """max_i |log s_i(sqrt(n)M) - log s_i(X/sqrt(n))| on a shared X."""
    report = ExperimentReport(cfg.experiment_id)
    out = cfg.out_path()
    out.mkdir(parents=True, exist_ok=True)
    n_max = max(cfg.n_values)

    def work(n, r, stream):
        ms = _sample(cfg, n, stream)  # the same X feeds both pipelines
        s_m = np.asarray(linalg.singular_values(_scaled_markov(ms)))
        s_x = np.asarray(linalg.singular_values(ms.x.data)) / math.sqrt(n)
        positive = (s_m > 0) & (s_x > 0)
        if positive.all():
            gap = float(np.max(np.abs(np.log(s_m) - np.log(s_x))))
        else:
            gap = math.inf
        scaling = np.abs(n * ms.scaling_diagonal() - 1.0)
        return {"svals": s_m, "gap": gap, "dmax": float(scaling.max())}

    gap_medians = []
    dmax_medians = []
    for n in cfg.n_values:
        results = _map_replicas(cfg, work, n)
        for r, res in enumerate(results):
            path = out / f"spectrum_{n}_{r}.csv"
            _write_measure_csv(path, res["svals"])
            report.artifacts.append(str(path))
        gap_med = _median([res["gap"] for res in results])
        dmax_med = _median([res["dmax"] for res in results])
        gap_medians.append(gap_med)
        dmax_medians.append(dmax_med)
        report.rows.append(
            _exploratory_row(n, "log_singular_gap_median", gap_med, "log-singular-gap")
        )
        report.rows.append(
            _row(
                n,
                "row_scaling_gap_median",
                dmax_med,
                "row-scaling-gap",
                math.inf if n != n_max else 0.15,
            )
        )
    if len(cfg.n_values) > 1:
        report.rows.append(
            _trend_row(cfg.n_values, gap_medians, "log_singular_gap_trend", "log-singular-gap")
        )
        report.rows.append(
            _trend_row(cfg.n_values, dmax_medians, "row_scaling_gap_trend", "row-scaling-gap")
        )
    _write_outputs(cfg, report)
    return report


# ---------------------------------------------------------------------------
# Loop moments and the invariant measure
# ---------------------------------------------------------------------------


def run_moments_and_invariant(cfg: ExperimentConfig) -> ExperimentReport:
    """Scaled loop-probability moments for r in {1, 2, 3}; invariant measure TV."""
    report = ExperimentReport(cfg.experiment_id)
    out = cfg.out_path()
    out.mkdir(parents=True, exist_ok=True)
    orders = (1, 2, 3)

    def work(n, r, stream):
        ms = _sample(cfg, n, stream)
        m = ms.m_matrix
        stats = {}
        for order in orders:
            raw = measures.loop_probability_moment(m, order) - 1.0 / n
            stats[order] = n ** (order / 2.0) * raw
        tv = None
        reducible = 0
        if r == 0:
            try:
                kappa = measures.invariant_measure(m, tol=1e-12)
                tv = float(np.abs(kappa - 1.0 / n).sum())
            except ReducibleMatrixError:
                reducible = 1
        return {"stats": stats, "tv": tv, "reducible": reducible}

    medians: dict[int, list[float]] = {order: [] for order in orders}
    for n in cfg.n_values:
        results = _map_replicas(cfg, work, n)
        for order in orders:
            med = _median([abs(res["stats"][order]) for res in results])
            medians[order].append(med)
            report.rows.append(
                _exploratory_row(n, f"loop_moment_r{order}", med, "loop-moment-decay")
            )
        tv = results[0]["tv"]
        if tv is not None:
            report.rows.append(
                _exploratory_row(n, "invariant_uniform_l1", tv, "invariant-vs-uniform-tv")
            )
        reducible = sum(res["reducible"] for res in results)
        report.rows.append(
            _exploratory_row(n, "reducible_replicas", float(reducible), "reducibility-events")
        )
    if len(cfg.n_values) > 1:
        for order in orders:
            trend = _trend_row(
                cfg.n_values, medians[order], f"loop_moment_r{order}_trend", "loop-moment-decay"
            )
            if order != 2:  # only the r=2 trend is asserted; others are reported
                trend = SummaryRow(
                    n=trend.n,
                    statistic=trend.statistic,
                    value=trend.value,
                    reference=trend.reference,
                    tolerance=math.inf,
                    passed=True,
                )
            report.rows.append(trend)
    _write_outputs(cfg, report)
    return report


EXPERIMENTS = {
    "quartercircle": run_quartercircle,
    "circular": run_circular,
    "extremes": run_extremes,
    "resolvent": run_resolvent_bound,
    "perturbation": run_perturbation_gap,
    "moments": run_moments_and_invariant,
}


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    try:
        runner = EXPERIMENTS[cfg.experiment_id]
    except KeyError:
        raise ValueError(
            f"unknown experiment {cfg.experiment_id!r}; choose from {sorted(EXPERIMENTS)}"
        ) from None
    return runner(cfg)
