"""Seeded Monte Carlo and numeric-convolution oracles.

Everything here is an independent cross-check for the closed forms:
gamma/channel sampling, empirical CDFs and moments, KS distances, and
trapezoid-grid convolution of densities. Samplers are deterministic per
seed (PCG64 streams) so comparison artifacts are reproducible.
"""

import json
import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy.signal import fftconvolve

from .errors import DomainError
from .pearson3 import Pearson3Params, p3_sample
from .sums import SumSpec

__all__ = [
    "OracleReport",
    "sample_channel_gain",
    "sample_sum",
    "sample_harvested",
    "empirical_cdf",
    "ks_distance",
    "ks_threshold",
    "empirical_moment",
    "GriddedPdf",
    "sample_pdf_on_grid",
    "convolve_pdfs_numeric",
    "convolve_p3_components",
]


@dataclass(frozen=True)
class OracleReport:
    """Result of one analytic-vs-empirical comparison."""

    statistic: str
    analytic: float
    empirical: float
    scale: float  # standard error or sup-distance threshold
    count: int
    seed: int
    tolerance: float
    passed: bool

    def to_json(self) -> str:
        return json.dumps(asdict(self))

    @staticmethod
    def build(statistic, analytic, empirical, scale, count, seed, tolerance):
        """The pass flag is |analytic - empirical| <= tolerance * scale."""
        passed = abs(analytic - empirical) <= tolerance * scale
        return OracleReport(statistic, float(analytic), float(empirical),
                            float(scale), int(count), int(seed),
                            float(tolerance), bool(passed))


def sample_channel_gain(fading: Pearson3Params, seed: int, count: int) -> np.ndarray:
    """i.i.d. squared channel gains: gamma draws for a (a, b>0, m=0) triple."""
    if fading.b <= 0 or fading.m != 0:
        raise DomainError("channel gains require b > 0 and m = 0")
    return p3_sample(fading, seed, count)


def sample_sum(spec: SumSpec, seed: int, count: int) -> np.ndarray:
    """Draws of SX_L: independent per-component streams, summed."""
    rng = np.random.default_rng(seed)
    out = np.zeros(count)
    for t in spec.terms:
        g = rng.gamma(shape=t.a, scale=1.0 / abs(t.b), size=count)
        out += t.m + math.copysign(1.0, t.b) * g
    return out


def sample_harvested(scenario, seed: int, count: int) -> np.ndarray:
    """Draws of the harvested power: per-branch gamma gains through the
    nonlinear harvester, fully independent of the closed forms."""
    from .wpt import _harvest

    rng = np.random.default_rng(seed)
    r = np.zeros(count)
    for br in scenario.branches:
        g = rng.gamma(shape=br.fading.a, scale=1.0 / br.fading.b, size=count)
        r += br.loss * br.p * g
    return np.asarray(_harvest(scenario.model, r), dtype=float)


def empirical_cdf(samples, x: float) -> float:
    """Fraction of samples <= x."""
    samples = np.asarray(samples)
    if samples.size == 0:
        raise DomainError("empirical_cdf needs at least one sample")
    return float(np.count_nonzero(samples <= x)) / samples.size


def ks_distance(samples, cdf_fn) -> float:
    """Sup distance between the empirical CDF and an analytic CDF.

    `cdf_fn` may be scalar or vectorized; a vectorized callable avoids a
    Python-level loop over the (sorted) sample.
    """
    samples = np.sort(np.asarray(samples))
    n = samples.size
    if n == 0:
        raise DomainError("ks_distance needs at least one sample")
    try:
        f = np.asarray(cdf_fn(samples), dtype=float)
        if f.shape != samples.shape:
            raise TypeError("cdf_fn is not vectorized")
    except (TypeError, ValueError):
        f = np.array([cdf_fn(x) for x in samples])
    upper = np.max(np.arange(1, n + 1) / n - f)
    lower = np.max(f - np.arange(0, n) / n)
    return float(max(upper, lower))


def ks_threshold(count: int, critical: float = 1.63) -> float:
    """Asymptotic KS pass threshold (default alpha ~ 0.01)."""
    return critical / math.sqrt(count)


def empirical_moment(samples, n: int):
    """Mean of x^n with its standard error; returns (moment, stderr)."""
    samples = np.asarray(samples, dtype=float)
    if samples.size == 0:
        raise DomainError("empirical_moment needs at least one sample")
    powers = samples ** n
    mean = float(np.mean(powers))
    if samples.size == 1:
        return mean, math.inf
    se = float(np.std(powers, ddof=1) / math.sqrt(samples.size))
    return mean, se


@dataclass(frozen=True)
class GriddedPdf:
    """A density sampled at uniformly spaced cell midpoints."""

    x0: float  # first midpoint
    dx: float
    values: np.ndarray

    @property
    def x(self) -> np.ndarray:
        return self.x0 + self.dx * np.arange(self.values.size)

    def integral(self) -> float:
        return float(np.sum(self.values) * self.dx)

    def at(self, x) -> np.ndarray:
        """Linear interpolation onto arbitrary points."""
        return np.interp(x, self.x, self.values)


def sample_pdf_on_grid(pdf, lo: float, hi: float, dx: float) -> GriddedPdf:
    """Sample a density at midpoints of [lo, hi] cells of width dx."""
    n = max(1, int(round((hi - lo) / dx)))
    xs = lo + dx * (np.arange(n) + 0.5)
    return GriddedPdf(float(xs[0]), dx, np.array([pdf(x) for x in xs]))


def convolve_pdfs_numeric(gridded) -> GriddedPdf:
    """Convolve midpoint-sampled densities on a common spacing.

    Midpoint-rule convolution: exact up to O(dx^2); the result integrates
    to the product of the input integrals.
    """
    gridded = list(gridded)
    if len(gridded) < 1:
        raise DomainError("need at least one density")
    dxs = {g.dx for g in gridded}
    if len(dxs) > 1:
        raise DomainError(f"incompatible grids: spacings {sorted(dxs)} differ")
    out = gridded[0]
    for g in gridded[1:]:
        vals = fftconvolve(out.values, g.values) * out.dx
        # Discrete index k = i + j lands at x0a + x0b + k*dx.
        out = GriddedPdf(out.x0 + g.x0, out.dx, np.maximum(vals, 0.0))
    return out


def convolve_p3_components(spec: SumSpec, dx: float = 2e-4,
                           mass_tol: float = 1e-13) -> GriddedPdf:
    """Numeric convolution oracle for the density of SX_L.

    Components are discretized to exact per-cell masses using the scipy
    gamma CDF (independent of the closed forms under test), so support
    edges are handled exactly; the convolved result is the true density
    smoothed by L uniform kernels of width dx, an O(dx^2) effect at
    points further than L*dx from the support edge. Mirrored supports
    (b < 0) convolve the same way, the grids simply run over negative
    offsets.
    """
    from scipy import stats

    grids = []
    for t in spec.terms:
        width = float(stats.gamma.ppf(1.0 - mass_tol, t.a) / abs(t.b))
        n = int(math.ceil(width / dx))
        edges_u = np.arange(n + 1) * dx * abs(t.b)  # gamma-variate units
        masses = np.diff(stats.gamma.cdf(edges_u, t.a))
        if t.b > 0:
            x0 = t.m + 0.5 * dx
            vals = masses / dx
        else:
            x0 = t.m - (n - 0.5) * dx
            vals = masses[::-1] / dx
        grids.append(GriddedPdf(x0, dx, vals))
    return convolve_pdfs_numeric(grids)
