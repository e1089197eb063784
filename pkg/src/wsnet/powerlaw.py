"""Discrete power-law fitting: maximum-likelihood exponent, KS-selected lower cutoff and bootstrap p-value"""

import logging
from collections import Counter
from dataclasses import dataclass, field, replace
from functools import partial

import numpy as np
from fastcore.utils import ifnone
from scipy.optimize import minimize_scalar
from scipy.special import zeta

from .config import PowerLawFitError, pmap, ws_cfg
from .graph import Graph, degrees
from .netstats import Scope, scoped

__all__ = [
    "PowerLawFit",
    "DegreeFit",
    "DegreeDistributionReport",
    "hurwitz_zeta",
    "fit_discrete_power_law",
    "ks_pvalue",
    "sample_discrete_power_law",
    "degree_histogram",
    "fit_degrees",
    "degree_distribution_report",
]

logger = logging.getLogger(__name__)

_ALPHA_MIN = 1.001
_ALPHA_TOL = 1e-6
_TABLE_SPAN = 100_000
_MAX_DRAW = 1e15


def hurwitz_zeta(alpha, q):
    "ζ(alpha, q) = Σ_{k≥0} (k + q)^-alpha, the normalisation of a discrete power law starting at `q`"
    return zeta(alpha, q)


@dataclass(frozen=True)
class PowerLawFit:
    """A discrete power law p(x) = x^-alpha / ζ(alpha, xmin) fitted to the `ntail` observations ≥ `xmin`.

    `pvalue` is filled in by `ks_pvalue`, together with the number of `replicates` and the `seed` used.
    """

    alpha: float
    xmin: int
    ks: float
    ntail: int
    n: int
    pvalue: float | None = None
    replicates: int = 0
    seed: int | None = None

    @property
    def alpha_se(self) -> float:
        "Asymptotic standard error of the MLE exponent"
        return (self.alpha - 1) / np.sqrt(self.ntail)

    def plausible(self, threshold: float | None = None) -> bool | None:
        "Whether the power law survives the bootstrap test; None before `ks_pvalue`"
        if self.pvalue is None:
            return None
        return self.pvalue > ifnone(threshold, ws_cfg.pvalue_threshold)


def _as_sample(sample) -> np.ndarray:
    x = np.asarray(sample, dtype=float).ravel()
    if x.size == 0:
        raise PowerLawFitError("Empty sample")
    if np.any(x < 1) or np.any(x != np.floor(x)):
        raise PowerLawFitError("Sample must contain integers >= 1 only")
    return x.astype(np.int64)


def _ks(vals: np.ndarray, counts: np.ndarray, alpha: float, xmin: int) -> float:
    "Largest gap between the empirical tail CDF and the model CDF over all integers ≥ xmin"
    emp = np.cumsum(counts) / counts.sum()
    z = hurwitz_zeta(alpha, xmin)
    model_at = 1 - hurwitz_zeta(alpha, vals + 1.0) / z
    d = np.abs(emp - model_at).max()
    if vals.size > 1:
        # the empirical CDF is flat up to the next observed value, the model keeps rising
        model_before = 1 - hurwitz_zeta(alpha, vals[1:].astype(float)) / z
        d = max(d, np.abs(emp[:-1] - model_before).max())
    if vals[0] > xmin:
        d = max(d, 1 - hurwitz_zeta(alpha, float(vals[0])) / z)
    return float(d)


def _mle(xmin: float, ntail: float, slog: float, max_alpha: float) -> float:
    "Exponent maximising the log-likelihood of the tail above `xmin`, bounded to [_ALPHA_MIN, max_alpha]"

    def nll(a):
        return a * slog + ntail * np.log(hurwitz_zeta(a, xmin))

    res = minimize_scalar(nll, bounds=(_ALPHA_MIN, max_alpha), method="bounded", options={"xatol": _ALPHA_TOL})
    return float(res.x)


def fit_discrete_power_law(
    sample,  # Integers >= 1
    xmin: int | None = None,  # Fixed lower cutoff; by default the one minimising the KS statistic
    max_alpha: float | None = None,
) -> PowerLawFit:
    "Fit a discrete power law by maximum likelihood, choosing `xmin` by KS minimisation (ties go to the smaller)"
    x = _as_sample(sample)
    max_alpha = ifnone(max_alpha, ws_cfg.max_alpha)
    vals, counts = np.unique(x, return_counts=True)
    # a tail needs at least two distinct values
    if xmin is None:
        cand = np.arange(vals.size - 1)
    else:
        first = int(np.searchsorted(vals, xmin))
        cand = np.arange(first, first + 1) if first < vals.size - 1 else np.arange(0)
    if cand.size == 0:
        raise PowerLawFitError("Sample tail has zero variance; a power law cannot be fitted")
    rev_n = np.cumsum(counts[::-1])[::-1]
    rev_log = np.cumsum((counts * np.log(vals))[::-1])[::-1]
    xmins = vals[cand] if xmin is None else np.array([xmin])
    best = None
    for c, xm in zip(cand, xmins):
        a = _mle(float(xm), float(rev_n[c]), float(rev_log[c]), max_alpha)
        d = _ks(vals[c:], counts[c:], a, int(xm))
        if best is None or d < best.ks:
            best = PowerLawFit(float(a), int(xm), d, int(rev_n[c]), int(x.size))
    return best


class _TailSampler:
    "Inversion sampler for the fitted discrete power law, with a continuous approximation past a finite table"

    def __init__(self, alpha: float, xmin: int):
        self.alpha, self.xmin = alpha, xmin
        ks = np.arange(xmin, xmin + _TABLE_SPAN, dtype=float)
        # survival S(k) = P(X >= k)
        self.surv = hurwitz_zeta(alpha, ks) / hurwitz_zeta(alpha, float(xmin))
        self.last = xmin + _TABLE_SPAN - 1

    def __call__(self, size: int, rng: np.random.Generator) -> np.ndarray:
        r = 1 - rng.random(size)  # in (0, 1]
        # smallest k with S(k + 1) < r
        idx = np.searchsorted(-self.surv, -r, side="right") - 1
        out = self.xmin + np.maximum(idx, 0)
        far = r < self.surv[-1]
        if far.any():
            with np.errstate(over="ignore"):
                scale = (r[far] / self.surv[-1]) ** (-1 / (self.alpha - 1))
            out = out.astype(float)
            out[far] = np.floor(np.minimum((self.last - 0.5) * scale + 0.5, _MAX_DRAW))
        return out.astype(np.int64)


def sample_discrete_power_law(alpha: float, xmin: int, size: int, seed: int | None = None) -> np.ndarray:
    "Draw `size` values from p(x) ∝ x^-alpha, x ≥ xmin"
    return _TailSampler(alpha, xmin)(size, np.random.default_rng(seed))


def _replicate(x: np.ndarray, fit: PowerLawFit, sampler: _TailSampler, max_alpha: float, seed: int) -> float | None:
    rng = np.random.default_rng(seed)
    body = x[x < fit.xmin]
    ntail = rng.binomial(x.size, fit.ntail / x.size) if body.size else x.size
    draw = np.concatenate([sampler(ntail, rng), rng.choice(body, x.size - ntail) if body.size else body])
    try:
        return fit_discrete_power_law(draw, max_alpha=max_alpha).ks
    except PowerLawFitError:
        return None


def ks_pvalue(
    sample,
    fit: PowerLawFit,
    replicates: int | None = None,  # Bootstrap size, defaults to `ws_cfg.replicates`
    seed: int | None = None,  # Replicate r uses seed + r
    n_workers: int | None = None,
    max_alpha: float | None = None,
) -> PowerLawFit:
    """Semi-parametric bootstrap p-value: the fraction of synthetic samples whose refitted KS statistic is at least
    the observed one. Synthetic samples keep the empirical body below `xmin` and draw the tail from `fit`."""
    replicates, seed = ifnone(replicates, ws_cfg.replicates), ifnone(seed, ws_cfg.seed)
    if replicates < 1:
        raise ValueError("replicates must be >= 1")
    x = _as_sample(sample)
    sampler = _TailSampler(fit.alpha, fit.xmin)
    f = partial(_replicate, x, fit, sampler, ifnone(max_alpha, ws_cfg.max_alpha))
    stats = [o for o in pmap(f, [seed + r for r in range(replicates)], n_workers) if o is not None]
    if len(stats) < replicates:
        logger.warning("%d of %d bootstrap replicates could not be refitted", replicates - len(stats), replicates)
    if not stats:
        raise PowerLawFitError("No bootstrap replicate could be refitted")
    p = sum(o >= fit.ks for o in stats) / len(stats)
    logger.debug("KS bootstrap: %d replicates, observed D=%.4f, p=%.3f", len(stats), fit.ks, p)
    return replace(fit, pvalue=float(p), replicates=len(stats), seed=seed)


def degree_histogram(seq) -> dict[int, int]:
    "Degree → count, sorted by degree"
    return dict(sorted(Counter(int(o) for o in seq).items()))


@dataclass
class DegreeFit:
    "Fit of one degree sequence; `error` explains a missing fit"

    kind: str
    histogram: dict[int, int] = field(default_factory=dict)
    fit: PowerLawFit | None = None
    error: str | None = None

    def histogram_lines(self) -> str:
        "One `degree<TAB>count` line per degree"
        return "".join(f"{k}\t{v}\n" for k, v in self.histogram.items())


@dataclass
class DegreeDistributionReport:
    in_: DegreeFit
    out: DegreeFit
    total: DegreeFit
    scope: Scope = Scope.LARGEST_COMPONENT

    def __iter__(self):
        return iter((self.in_, self.out, self.total))


def fit_degrees(
    seq,
    replicates: int | None = None,  # 0 skips the bootstrap
    seed: int | None = None,
    min_degrees: int | None = None,
    n_workers: int | None = None,
) -> PowerLawFit:
    "Fit the nonzero entries of a degree sequence, then bootstrap its p-value"
    nz = [o for o in seq if o > 0]
    need = ifnone(min_degrees, ws_cfg.min_degrees)
    if len(nz) < need:
        raise PowerLawFitError(f"Only {len(nz)} nonzero degrees, at least {need} needed")
    fit = fit_discrete_power_law(nz)
    replicates = ifnone(replicates, ws_cfg.replicates)
    return ks_pvalue(nz, fit, replicates, seed, n_workers) if replicates else fit


def degree_distribution_report(
    g: Graph,
    scope: Scope = Scope.LARGEST_COMPONENT,  # Fit on the largest component or the whole graph
    replicates: int | None = None,
    seed: int | None = None,
    min_degrees: int | None = None,
    strict: bool = True,  # Raise on an unfittable sequence instead of recording the error
    n_workers: int | None = None,
) -> DegreeDistributionReport:
    "In-, out- and total-degree power-law fits with their histograms"
    sub = scoped(g, scope)
    d = degrees(sub)
    res = {}
    for kind, seq in (("in", d.in_), ("out", d.out), ("total", d.total)):
        df = DegreeFit(kind, degree_histogram(seq))
        try:
            df.fit = fit_degrees(seq, replicates, seed, min_degrees, n_workers)
        except PowerLawFitError as e:
            if strict:
                raise
            df.error = str(e)
            logger.warning("No %s-degree fit: %s", kind, e)
        res[kind] = df
    return DegreeDistributionReport(res["in"], res["out"], res["total"], Scope(scope))
