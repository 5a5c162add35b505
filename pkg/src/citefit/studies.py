"""Reproducible study harness: plausibility rows, bootstrap and simulation
Vuong tallies, scale-parameter intervals, shape tables, mixture-impurity
experiments and the closed-form mean cross-check.

Every study is a pure function of its inputs and a master seed. Per-rep
streams derive from (seed, rep), so reruns reproduce every cell for any
worker count. Vuong studies always orient the test as hooked (model A)
against lognormal (model B): positive z favours the hooked power law.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from citefit.bootstrap import (
    MIN_REPS,
    StudySummary,
    _resample_with,
    bootstrap_study,
    order_stat_bounds,
)
from citefit.distributions import Mixture, continuous_moments
from citefit.exceptions import (
    AllStatisticsFailedError,
    DegenerateDataError,
    FitFailedError,
    IdenticalModelsError,
    TooFewRepsError,
)
from citefit.fitting import FitConfig, FitStatus, fit
from citefit.gof import ks_p_value, ks_statistic, shape_classify
from citefit.sample import CitationSample, as_sample
from citefit.seeding import child_seed, spawn_rng
from citefit.subjects import SUBJECTS
from citefit.vuong import vuong

PLAUSIBILITY_COLUMNS = (
    "subject", "n", "ln_mu", "ln_sigma", "ln_ks", "ln_p",
    "hook_alpha", "hook_b", "hook_ks", "hook_p", "plausible",
)

SHAPE_COLUMNS = (
    "subject", "ln_bottom", "ln_middle", "ln_top",
    "hook_bottom", "hook_middle", "hook_top",
)

SCALE_COLUMNS = ("subject", "sigma_median", "sigma_lo95", "sigma_hi95",
                 "reps", "failed", "note")

VUONG_STUDY_COLUMNS = ("label", "n", "z_lo95", "z_median", "z_hi95",
                       "hooked_wins", "lognormal_wins", "neither", "failed")

MIXTURE_COLUMNS = ("rep", "mixture_ks", "pure_ks", "mixture_worse")


@dataclass(frozen=True)
class MixtureSpec:
    """Weighted combination of models feeding the impurity experiments."""

    components: tuple
    weights: tuple[float, ...]

    def to_model(self) -> Mixture:
        return Mixture(self.components, self.weights)


@dataclass(frozen=True)
class VuongStudy:
    """Summary of repeated hooked-vs-lognormal Vuong tests."""

    z_summary: StudySummary
    hooked_wins: int
    lognormal_wins: int
    neither: int
    failed: int
    reps: int

    def row(self, label: str, n: int) -> dict:
        s = self.z_summary
        return {
            "label": label, "n": n,
            "z_lo95": s.lo95, "z_median": s.median, "z_hi95": s.hi95,
            "hooked_wins": self.hooked_wins,
            "lognormal_wins": self.lognormal_wins,
            "neither": self.neither, "failed": self.failed,
        }


def _map_reps(fn, tasks, workers: int):
    if workers and workers > 1:
        chunk = max(1, len(tasks) // (4 * workers))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, tasks, chunksize=chunk))
    return [fn(t) for t in tasks]


# --- hooked-vs-lognormal z replicates -----------------------------------

def hooked_vs_lognormal_z(sample, config: FitConfig | None = None) -> float:
    """Vuong z of the hooked fit against the lognormal fit of ``sample``.

    Raises a citefit error when either fit is degenerate, when the hooked
    fit hits the ridge guard or the budget (such replicates are excluded
    from studies and counted as failed), or when z is undefined.
    """
    sample = as_sample(sample)
    ln = fit("lognormal", sample, config)
    hk = fit("hooked", sample, config)
    if ln.status is not FitStatus.CONVERGED:
        raise FitFailedError(f"lognormal fit unusable: {ln.status.value}")
    if hk.status is not FitStatus.CONVERGED:
        raise FitFailedError(f"hooked fit unusable: {hk.status.value}")
    return vuong(hk.model, ln.model, sample).z


def _bootstrap_z_rep(args) -> float:
    sample, size, seed, rep = args
    boot = _resample_with(sample, size, spawn_rng(seed, rep))
    return _safe_z(boot)


def _simulation_z_rep(args) -> float:
    generator, n, seed, rep = args
    data = CitationSample(generator.sample_with(spawn_rng(seed, rep), n))
    return _safe_z(data)


def _safe_z(sample) -> float:
    try:
        return hooked_vs_lognormal_z(sample)
    except (FitFailedError, IdenticalModelsError, DegenerateDataError):
        return math.nan


def _summarise_z(raw, reps: int) -> VuongStudy:
    arr = np.asarray(raw, dtype=np.float64)
    good = arr[~np.isnan(arr)]
    failed = int(np.isnan(arr).sum())
    lo, hi = order_stat_bounds(np.sort(good), reps)
    summary = StudySummary(
        statistic_name="vuong_z",
        median=float(np.median(good)) if good.size else math.nan,
        lo95=lo, hi95=hi, reps=reps, n_failed=failed,
        raw=tuple(float(v) for v in arr),
    )
    return VuongStudy(
        z_summary=summary,
        hooked_wins=int((good > 1.96).sum()),
        lognormal_wins=int((good < -1.96).sum()),
        neither=int((np.abs(good) <= 1.96).sum()),
        failed=failed,
        reps=reps,
    )


def bootstrap_vuong_study(sample, reps: int, size: int | None = None,
                          seed: int = 0, workers: int = 1) -> VuongStudy:
    """Vuong z over ``reps`` bootstrap resamples of ``sample``."""
    sample = as_sample(sample)
    sample.require_nonempty()
    if reps < MIN_REPS:
        raise TooFewRepsError(f"need reps >= {MIN_REPS}, got {reps}")
    size = len(sample) if size is None else int(size)
    tasks = [(sample, size, seed, rep) for rep in range(reps)]
    return _summarise_z(_map_reps(_bootstrap_z_rep, tasks, workers), reps)


def simulation_study(generator, n: int, reps: int, seed: int = 0,
                     workers: int = 1) -> VuongStudy:
    """Vuong z over ``reps`` fresh samples of size ``n`` from ``generator``."""
    if reps < MIN_REPS:
        raise TooFewRepsError(f"need reps >= {MIN_REPS}, got {reps}")
    tasks = [(generator, n, seed, rep) for rep in range(reps)]
    return _summarise_z(_map_reps(_simulation_z_rep, tasks, workers), reps)


# --- plausibility rows ----------------------------------------------------

def plausibility_row(sample, n_sim: int = 1000, seed: int = 0,
                     config: FitConfig | None = None) -> dict:
    """One KS-plausibility table row: both families fitted and tested."""
    sample = as_sample(sample)
    sample.require_nonempty()
    row = dict.fromkeys(PLAUSIBILITY_COLUMNS)
    row["subject"] = sample.label
    row["n"] = len(sample)
    flags = []
    try:
        ln = ks_p_value("lognormal", sample, n_sim, child_seed(seed, 0), config=config)
        row["ln_mu"] = ln.fit.model.mu
        row["ln_sigma"] = ln.fit.model.sigma
        row["ln_ks"] = ln.ks_stat
        row["ln_p"] = ln.p_value
        if ln.plausible:
            flags.append("L")
        hk = ks_p_value("hooked", sample, n_sim, child_seed(seed, 1), config=config)
        row["hook_alpha"] = hk.fit.model.alpha
        row["hook_b"] = hk.fit.model.b
        row["hook_ks"] = hk.ks_stat
        row["hook_p"] = hk.p_value
        if hk.plausible:
            flags.append("H")
    except FitFailedError:
        row["plausible"] = "degenerate"
        return row
    row["plausible"] = ",".join(flags)
    return row


# --- scale-parameter intervals (one per subject) --------------------------

def fitted_lognormal_sigma(sample) -> float:
    """Bootstrap statistic: sigma of the lognormal fit."""
    result = fit("lognormal", sample)
    if not result.usable:
        raise DegenerateDataError(result.message)
    return result.model.sigma


def scale_ci_study(samples, reps: int = 1000, size: int | None = 500,
                   seed: int = 0, workers: int = 1) -> list[dict]:
    """Bootstrap interval of the fitted lognormal sigma for each sample."""
    rows = []
    for index, sample in enumerate(samples):
        sample = as_sample(sample)
        row = dict.fromkeys(SCALE_COLUMNS)
        row["subject"] = sample.label
        row["reps"] = reps
        try:
            summary = bootstrap_study(
                sample, reps, fitted_lognormal_sigma, size=size,
                seed=child_seed(seed, index), statistic_name="lognormal_sigma",
                workers=workers,
            )
        except AllStatisticsFailedError:
            row["note"] = "degenerate"
            row["failed"] = reps
            rows.append(row)
            continue
        row["sigma_median"] = summary.median
        row["sigma_lo95"] = summary.lo95
        row["sigma_hi95"] = summary.hi95
        row["failed"] = summary.n_failed
        row["note"] = ""
        rows.append(row)
    return rows


# --- shape tables ----------------------------------------------------------

def shape_table(samples, epsilon: float = 0.01,
                config: FitConfig | None = None) -> tuple[list[dict], list[dict]]:
    """Bottom/middle/top shape classification per sample and family.

    Returns the per-sample rows plus three totals rows counting "+", "="
    and "-" cells per column.
    """
    rows = []
    for sample in samples:
        sample = as_sample(sample)
        row = dict.fromkeys(SHAPE_COLUMNS)
        row["subject"] = sample.label
        ln = fit("lognormal", sample, config)
        hk = fit("hooked", sample, config)
        if ln.usable:
            report = shape_classify(ln.model, sample, epsilon)
            row["ln_bottom"], row["ln_middle"], row["ln_top"] = \
                report.bottom, report.middle, report.top
        if hk.usable:
            report = shape_classify(hk.model, sample, epsilon)
            row["hook_bottom"], row["hook_middle"], row["hook_top"] = \
                report.bottom, report.middle, report.top
        rows.append(row)

    totals = []
    for symbol, label in (("+", "higher total"), ("=", "same total"),
                          ("-", "lower total")):
        total_row = {"subject": label}
        for col in SHAPE_COLUMNS[1:]:
            total_row[col] = sum(1 for r in rows if r[col] == symbol)
        totals.append(total_row)
    return rows, totals


# --- mixtures ---------------------------------------------------------------

def mixture_sample(spec: MixtureSpec, n: int, seed: int,
                   label: str = "mixture") -> CitationSample:
    """Draw ``n`` counts from the mixture by inverse transform.

    Sampling inverts the mixture CDF with one uniform per draw, so a
    single-component mixture reproduces the component's sample stream
    exactly.
    """
    model = spec.to_model()
    return CitationSample(model.sample(n, seed), label=label)


def mixture_impurity_study(spec: MixtureSpec, pure_model, n: int, reps: int,
                           seed: int = 0, config: FitConfig | None = None,
                           workers: int = 1) -> tuple[list[dict], dict]:
    """Compare lognormal KS fits on mixture data against pure data.

    Each rep draws one sample from the mixture and one from ``pure_model``,
    fits the lognormal family to each, and records both KS statistics.
    """
    mixture = spec.to_model()
    tasks = [(mixture, pure_model, n, seed, rep, config) for rep in range(reps)]
    rows = _map_reps(_mixture_rep, tasks, workers)
    worse = sum(1 for r in rows if r["mixture_worse"])
    valid = sum(1 for r in rows if r["mixture_worse"] is not None)
    summary = {
        "reps": reps,
        "mixture_worse_count": worse,
        "valid": valid,
        "fraction_worse": worse / valid if valid else math.nan,
    }
    return rows, summary


def _mixture_rep(args) -> dict:
    mixture, pure_model, n, seed, rep, config = args
    row = {"rep": rep, "mixture_ks": None, "pure_ks": None, "mixture_worse": None}
    mix_data = CitationSample(mixture.sample_with(spawn_rng(seed, rep, 0), n))
    pure_data = CitationSample(pure_model.sample_with(spawn_rng(seed, rep, 1), n))
    mix_fit = fit("lognormal", mix_data, config)
    pure_fit = fit("lognormal", pure_data, config)
    if not (mix_fit.usable and pure_fit.usable):
        return row
    row["mixture_ks"] = ks_statistic(mix_fit.model, mix_data)
    row["pure_ks"] = ks_statistic(pure_fit.model, pure_data)
    row["mixture_worse"] = row["mixture_ks"] > row["pure_ks"]
    return row


# --- closed-form mean cross-check -------------------------------------------

def mean_crosscheck(fixture=SUBJECTS) -> dict[str, float]:
    """Average closed-form mean estimates of both families over a fixture."""
    ln_means = [continuous_moments(s.lognormal()).mean for s in fixture]
    hook_means = [continuous_moments(s.hooked()).mean for s in fixture]
    return {
        "ln_mean_avg": float(np.mean(ln_means)),
        "hook_mean_avg": float(np.mean(hook_means)),
    }
