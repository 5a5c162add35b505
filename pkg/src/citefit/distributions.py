"""Discrete distributions on the support {1, 2, 3, ...}.

Two families are provided, plus finite mixtures of them:

* :class:`DiscretisedLognormal` puts at each integer x the lognormal
  density mass of the unit interval (x - 0.5, x + 0.5], renormalised by
  the total mass of (0.5, inf).
* :class:`HookedPowerLaw` uses the density value (b + x)**(-alpha) as a
  point mass with a normalising constant, the discrete counterpart of a
  Lomax (Pareto type II) law; it needs alpha > 1 to be summable.

All models are immutable after construction and safe for concurrent use;
the lazily grown cumulative table behind ``quantile`` and ``sample`` is
extended under a lock and readers only ever see complete arrays.
"""

from __future__ import annotations

import math
import threading
from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

from citefit import kernels
from citefit.exceptions import (
    DomainError,
    InvalidWeightsError,
    MomentUndefinedError,
    ParameterError,
)
from citefit.sample import CitationSample
from citefit.seeding import spawn_rng

FAMILIES = ("lognormal", "hooked")

# Relative accuracy target for the hooked normaliser truncation.
_NORM_REL_TOL = 1e-13
_NORM_FIRST_BLOCK = 1000
_NORM_MAX_TERMS = 1 << 24

# Quantile tables start small and double; beyond the cap (64 MiB of
# float64) quantiles fall back to bisection on the tail formula.
_TABLE_START = 1 << 10
_TABLE_CAP = 1 << 23

_INV_SQRT2 = 1.0 / math.sqrt(2.0)


def _validate_support(x) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(x))
    if arr.size == 0:
        return arr.astype(np.int64)
    if not np.issubdtype(arr.dtype, np.integer):
        rounded = np.rint(arr)
        if not np.all(np.isfinite(arr)) or not np.all(arr == rounded):
            raise DomainError("x must be integer-valued")
        arr = rounded
    arr = arr.astype(np.int64)
    if arr.min() < 1:
        raise DomainError("x must be >= 1 (support starts at 1)")
    return arr


class _CdfTable:
    """Geometrically grown cache of F(1), ..., F(m).

    The table for a given size is a pure function of the model, so it is
    recomputed from scratch on growth; any interleaving of concurrent
    readers and growers observes identical values.
    """

    def __init__(self, grid_fn):
        self._grid_fn = grid_fn
        self._lock = threading.Lock()
        self._cdf: np.ndarray | None = None

    def __getstate__(self):
        # the cache is rebuilt on demand; locks do not pickle
        return {"_grid_fn": self._grid_fn}

    def __setstate__(self, state):
        self._grid_fn = state["_grid_fn"]
        self._lock = threading.Lock()
        self._cdf = None

    def ensure(self, u_max: float) -> np.ndarray:
        cdf = self._cdf
        if cdf is None:
            with self._lock:
                if self._cdf is None:
                    self._cdf = self._build(_TABLE_START)
                cdf = self._cdf
        while cdf[-1] < u_max and len(cdf) < _TABLE_CAP:
            with self._lock:
                cdf = self._cdf
                if cdf[-1] >= u_max or len(cdf) >= _TABLE_CAP:
                    break
                grown = self._build(2 * len(cdf))
                if grown[-1] <= cdf[-1] and len(grown) > 4 * _TABLE_START:
                    # saturated in floating point; growing further is futile
                    self._cdf = grown
                    cdf = grown
                    break
                self._cdf = grown
                cdf = grown
        return cdf

    def ensure_length(self, m: int) -> np.ndarray:
        cdf = self._cdf
        if cdf is None or len(cdf) < m:
            with self._lock:
                cdf = self._cdf
                if cdf is None or len(cdf) < m:
                    size = max(_TABLE_START, len(cdf) if cdf is not None else 0)
                    while size < m:
                        size *= 2
                    self._cdf = self._build(size)
                cdf = self._cdf
        return cdf

    def _build(self, m: int) -> np.ndarray:
        out = self._grid_fn(m)
        out.flags.writeable = False
        return out


class _DiscreteModel(ABC):
    """Shared quantile/sampling machinery for all model families."""

    family: str

    def __init__(self):
        self._table = _CdfTable(self._grid)

    # --- family-specific primitives -------------------------------------

    @abstractmethod
    def _log_pmf(self, x: np.ndarray) -> np.ndarray:
        """log P(X = x) for a validated int64 array."""

    @abstractmethod
    def _grid(self, m: int) -> np.ndarray:
        """F(1), ..., F(m) as a monotone float64 array."""

    @abstractmethod
    def _cdf_beyond(self, x: int) -> float:
        """F(x) for x beyond the table cap (tail formula)."""

    @property
    @abstractmethod
    def params(self) -> dict[str, float]:
        """Parameter record keyed by parameter name."""

    # --- public API ------------------------------------------------------

    def log_pmf(self, x):
        scalar = np.ndim(x) == 0
        out = self._log_pmf(_validate_support(x))
        return float(out[0]) if scalar else out

    def pmf(self, x):
        scalar = np.ndim(x) == 0
        out = np.exp(self._log_pmf(_validate_support(x)))
        return float(out[0]) if scalar else out

    def cdf(self, x):
        scalar = np.ndim(x) == 0
        arr = _validate_support(x)
        if arr.size == 0:
            return np.empty(0)
        m = int(arr.max())
        if m <= _TABLE_CAP:
            table = self._table.ensure_length(m)
            out = table[arr - 1]
        else:
            table = self._table.ensure_length(_TABLE_CAP)
            out = np.empty(arr.shape, dtype=np.float64)
            small = arr <= len(table)
            out[small] = table[arr[small] - 1]
            for idx in np.flatnonzero(~small):
                out[idx] = self._cdf_beyond(int(arr[idx]))
        return float(out[0]) if scalar else out

    def cdf_grid(self, m: int) -> np.ndarray:
        """F(1), ..., F(m); cached below the table cap."""
        if m < 1:
            raise DomainError("grid length must be >= 1")
        if m <= _TABLE_CAP:
            return self._table.ensure_length(m)[:m]
        return self._grid(m)

    def quantile(self, u):
        """Smallest x >= 1 with F(x) >= u, for u in [0, 1)."""
        scalar = np.isscalar(u) or np.ndim(u) == 0
        arr = np.asarray(u, dtype=np.float64).reshape(-1)
        if arr.size and (arr.min() < 0.0 or arr.max() >= 1.0 or not np.all(np.isfinite(arr))):
            raise DomainError("u must lie in [0, 1)")
        out = self._quantile_array(arr)
        return int(out[0]) if scalar else out

    def _quantile_array(self, u: np.ndarray) -> np.ndarray:
        if u.size == 0:
            return np.empty(0, dtype=np.int64)
        table = self._table.ensure(float(u.max()))
        x = np.searchsorted(table, u, side="left") + 1
        overflow = u > table[-1]
        if np.any(overflow):
            for idx in np.flatnonzero(overflow):
                x[idx] = self._quantile_beyond(float(u[idx]), len(table))
        return x.astype(np.int64)

    def _quantile_beyond(self, u: float, lo: int) -> int:
        # exponential bracket then bisection on the tail cdf; saturates at
        # 2**62 for quantiles beyond any representable count
        hi = 2 * lo
        while self._cdf_beyond(hi) < u:
            lo = hi
            hi *= 2
            if hi >= 2 ** 62:
                return 2 ** 62
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self._cdf_beyond(mid) >= u:
                hi = mid
            else:
                lo = mid
        return hi

    def sample(self, n: int, seed: int) -> np.ndarray:
        """n i.i.d. draws by inverse transform; identical seed, identical output."""
        if n < 0:
            raise DomainError("sample size must be >= 0")
        return self.sample_with(spawn_rng(seed), n)

    def sample_with(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return self._quantile_array(rng.random(n))

    def __repr__(self):
        inner = ", ".join(f"{k}={v:g}" for k, v in self.params.items())
        return f"{type(self).__name__}({inner})"

    def __eq__(self, other):
        return type(other) is type(self) and other.params == self.params

    def __hash__(self):
        return hash((type(self).__name__, tuple(self.params.items())))


class DiscretisedLognormal(_DiscreteModel):
    """Lognormal mass integrated over unit intervals around each integer.

    P(X = x) is the lognormal(mu, sigma) density integrated over
    (x - 0.5, x + 0.5], divided by the density mass of (0.5, inf) so the
    probabilities sum to 1 over {1, 2, ...}.

    Parameters
    ----------
    mu : float
        Location on the log scale.
    sigma : float
        Scale on the log scale, > 0.
    """

    family = "lognormal"

    def __init__(self, mu: float, sigma: float):
        mu = float(mu)
        sigma = float(sigma)
        if not math.isfinite(mu):
            raise ParameterError(f"mu must be finite, got {mu}")
        if not (sigma > 0.0) or not math.isfinite(sigma):
            raise ParameterError(f"sigma must be > 0 and finite, got {sigma}")
        self.mu = mu
        self.sigma = sigma
        self._z_half = (math.log(0.5) - mu) / sigma
        # mass of (0.5, inf) under the continuous density
        self._norm = 0.5 * math.erfc(self._z_half * _INV_SQRT2)
        if self._norm <= 0.0:
            raise ParameterError("support mass underflows for these parameters")
        self._log_norm = math.log(self._norm)
        super().__init__()

    @property
    def params(self) -> dict[str, float]:
        return {"mu": self.mu, "sigma": self.sigma}

    def _masses(self, x: np.ndarray) -> np.ndarray:
        xf = x.astype(np.float64)
        z_lo = (np.log(xf - 0.5) - self.mu) / self.sigma
        z_hi = (np.log(xf + 0.5) - self.mu) / self.sigma
        return kernels.normal_interval_masses(z_lo, z_hi)

    def _log_pmf(self, x: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return np.log(self._masses(x)) - self._log_norm

    def _grid(self, m: int) -> np.ndarray:
        xf = np.arange(1, m + 1, dtype=np.float64)
        z_hi = (np.log(xf + 0.5) - self.mu) / self.sigma
        z_lo = np.full(m, self._z_half)
        out = kernels.normal_interval_masses(z_lo, z_hi) / self._norm
        # the per-element tail branch can wiggle by an ulp; force monotone
        return np.minimum(np.maximum.accumulate(out), 1.0)

    def _cdf_beyond(self, x: int) -> float:
        z_hi = (math.log(x + 0.5) - self.mu) / self.sigma
        mass = 0.5 * (math.erfc(self._z_half * _INV_SQRT2) - math.erfc(z_hi * _INV_SQRT2))
        return min(mass / self._norm, 1.0)

    def continuous_mean(self) -> float:
        return math.exp(self.mu + 0.5 * self.sigma ** 2)

    def continuous_sd(self) -> float:
        s2 = self.sigma ** 2
        return math.sqrt((math.exp(s2) - 1.0) * math.exp(2.0 * self.mu + s2))


class HookedPowerLaw(_DiscreteModel):
    """Point masses proportional to (b + x)**(-alpha) on {1, 2, ...}.

    The normalising constant is the truncated sum of (b + x)**(-alpha)
    plus the integral tail correction (b + X + 0.5)**(1 - alpha) / (alpha - 1),
    with the truncation point doubled until the estimated relative error of
    the correction is below 1e-13, comfortably inside the 1e-10 contract.

    Parameters
    ----------
    alpha : float
        Shape, > 1 (required for the normaliser to converge).
    b : float
        Scale in count units, > 0.
    """

    family = "hooked"

    def __init__(self, alpha: float, b: float):
        alpha = float(alpha)
        b = float(b)
        if not (alpha > 1.0) or not math.isfinite(alpha):
            raise ParameterError(f"alpha must be > 1 and finite, got {alpha}")
        if not (b > 0.0) or not math.isfinite(b):
            raise ParameterError(f"b must be > 0 and finite, got {b}")
        self.alpha = alpha
        self.b = b
        self._log_base = math.log(b + 1.0)
        self._scaled_norm, self._norm_terms = self._compute_scaled_norm()
        self._log_norm = math.log(self._scaled_norm) - alpha * self._log_base
        super().__init__()

    def _compute_scaled_norm(self) -> tuple[float, int]:
        # All quantities carry a (b + 1)**alpha scaling so the x = 1 term
        # is exactly 1 and nothing under- or overflows.
        alpha, b, log_base = self.alpha, self.b, self._log_base
        total = 0.0
        start, stop = 1, _NORM_FIRST_BLOCK
        while True:
            total += kernels.scaled_power_sum(alpha, b, start, stop)
            log_edge = math.log(b + stop + 0.5)
            tail = math.exp(alpha * log_base - (alpha - 1.0) * log_edge) / (alpha - 1.0)
            err = (alpha / 24.0) * math.exp(alpha * log_base - (alpha + 1.0) * log_edge)
            if err <= _NORM_REL_TOL * (total + tail) or stop >= _NORM_MAX_TERMS:
                return total + tail, stop
            start, stop = stop + 1, stop * 2

    @property
    def params(self) -> dict[str, float]:
        return {"alpha": self.alpha, "b": self.b}

    @property
    def normalizer(self) -> float:
        """Sum of (b + x)**(-alpha) over the support (may underflow to 0.0
        for extreme parameters; ``log_normalizer`` is always finite)."""
        return math.exp(self._log_norm)

    @property
    def log_normalizer(self) -> float:
        return self._log_norm

    def _log_pmf(self, x: np.ndarray) -> np.ndarray:
        return -self.alpha * np.log(self.b + x.astype(np.float64)) - self._log_norm

    def _grid(self, m: int) -> np.ndarray:
        xf = np.arange(1, m + 1, dtype=np.float64)
        terms = np.exp(-self.alpha * (np.log(self.b + xf) - self._log_base))
        out = np.cumsum(terms) / self._scaled_norm
        return np.minimum(out, 1.0)

    def _cdf_beyond(self, x: int) -> float:
        alpha, b = self.alpha, self.b
        log_edge = math.log(b + x + 0.5)
        tail = math.exp(alpha * self._log_base - (alpha - 1.0) * log_edge) / (alpha - 1.0)
        correction = (alpha / 24.0) * math.exp(alpha * self._log_base - (alpha + 1.0) * log_edge)
        return min(1.0 - (tail - correction) / self._scaled_norm, 1.0)

    def continuous_mean(self) -> float:
        return self.b / (self.alpha - 1.0)

    def continuous_sd(self) -> float:
        if self.alpha <= 2.0:
            raise MomentUndefinedError(
                f"sd undefined for alpha <= 2 (infinite variance), got alpha={self.alpha}"
            )
        a, b = self.alpha, self.b
        return b * math.sqrt(a / (a - 2.0)) / (a - 1.0)


class Mixture(_DiscreteModel):
    """Finite mixture of discrete models on the same support.

    Weights are normalised to sum to 1. A single-component mixture
    reproduces its component exactly, including the sampling stream.
    """

    family = "mixture"

    def __init__(self, components, weights):
        components = tuple(components)
        w = np.asarray(weights, dtype=np.float64).reshape(-1)
        if len(components) == 0 or w.size != len(components):
            raise InvalidWeightsError("need one weight per component, at least one component")
        if not np.all(np.isfinite(w)) or w.min() <= 0.0:
            raise InvalidWeightsError("weights must be finite and > 0")
        w = w / w.sum()
        w.flags.writeable = False
        self.components = components
        self.weights = w
        super().__init__()

    @property
    def params(self) -> dict[str, float]:
        return {f"weight_{i}": float(w) for i, w in enumerate(self.weights)}

    def __repr__(self):
        inner = ", ".join(
            f"{w:g}*{c!r}" for w, c in zip(self.weights, self.components)
        )
        return f"Mixture({inner})"

    def __eq__(self, other):
        return (
            type(other) is type(self)
            and other.components == self.components
            and np.array_equal(other.weights, self.weights)
        )

    def __hash__(self):
        return hash((self.components, tuple(self.weights)))

    def _log_pmf(self, x: np.ndarray) -> np.ndarray:
        stacked = np.stack([c._log_pmf(x) for c in self.components])
        stacked += np.log(self.weights)[:, None]
        top = stacked.max(axis=0)
        with np.errstate(invalid="ignore"):
            out = top + np.log(np.exp(stacked - top).sum(axis=0))
        return np.where(np.isfinite(top), out, top)

    def _grid(self, m: int) -> np.ndarray:
        out = self.weights[0] * self.components[0].cdf_grid(m)
        for w, c in zip(self.weights[1:], self.components[1:]):
            out = out + w * c.cdf_grid(m)
        return np.minimum(np.maximum.accumulate(out), 1.0)

    def _cdf_beyond(self, x: int) -> float:
        return min(
            sum(w * c._cdf_beyond(x) for w, c in zip(self.weights, self.components)),
            1.0,
        )

    def continuous_mean(self) -> float:
        return float(sum(w * c.continuous_mean()
                         for w, c in zip(self.weights, self.components)))

    def continuous_sd(self) -> float:
        mean = self.continuous_mean()
        second = sum(
            w * (c.continuous_sd() ** 2 + c.continuous_mean() ** 2)
            for w, c in zip(self.weights, self.components)
        )
        return math.sqrt(max(second - mean ** 2, 0.0))


@dataclass(frozen=True)
class Moments:
    """Continuous-analogue mean and sd (approximations to the discrete moments)."""

    mean: float
    sd: float | None

    @property
    def sd_defined(self) -> bool:
        return self.sd is not None


def continuous_moments(model) -> Moments:
    """Closed-form mean and sd of the continuous analogue of ``model``.

    For the lognormal family these are exp(mu + sigma**2 / 2) and
    sqrt((exp(sigma**2) - 1) * exp(2 mu + sigma**2)).  For the hooked
    family the standard Lomax formulae are used with ``alpha`` read as
    the Lomax shape and ``b`` as its scale: mean b / (alpha - 1), sd
    defined only for alpha > 2 (``sd`` is None below that).
    """
    mean = model.continuous_mean()
    try:
        sd = model.continuous_sd()
    except MomentUndefinedError:
        sd = None
    return Moments(mean=mean, sd=sd)


def make_model(family: str, *params: float) -> _DiscreteModel:
    """Build a model from a family name and its two parameters."""
    if family == "lognormal":
        return DiscretisedLognormal(*params)
    if family == "hooked":
        return HookedPowerLaw(*params)
    raise ParameterError(f"unknown family {family!r}; expected one of {FAMILIES}")


def simulate_sample(model, n: int, seed: int, label: str = "") -> CitationSample:
    """Draw n counts from ``model`` into a :class:`CitationSample`."""
    counts = model.sample(n, seed)
    return CitationSample(counts, offset_applied=1,
                          label=label or f"simulated[{model!r}]")
