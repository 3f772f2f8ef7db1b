"""Finite discrete loss distributions and their exact algebra.

A :class:`DiscreteDist` is a strictly increasing grid of nonnegative loss
amounts with a probability mass on each point. The sum of two independent
losses is obtained by :func:`convolve`, which enumerates every pair of
outcomes; pairwise sums that land within ``MERGE_TOL`` of each other are
treated as the same loss amount.
"""
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DistributionError, PreconditionError, RangeError, SizeLimitError

MERGE_TOL = 1e-9
MASS_TOL = 1e-12
DEFAULT_MAX_POINTS = 1_000_000
MIN_POISSON_QUANTILE = 1.0 - 1e-9

# largest t with exp(t) finite in double precision
_LOG_MAX = math.log(np.finfo(np.float64).max)


def _frozen(values):
    arr = np.array(values, dtype=np.float64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class DiscreteDist:
    """Distribution of a total loss amount on a finite support.

    Invariants are checked on construction and never repaired: masses must
    already sum to one within ``MASS_TOL``.
    """

    support: np.ndarray
    masses: np.ndarray

    def __post_init__(self):
        support = _frozen(self.support)
        masses = _frozen(self.masses)
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "masses", masses)
        if support.ndim != 1 or support.shape != masses.shape:
            raise DistributionError("support and masses must be 1-D and of equal length")
        if len(support) == 0:
            raise DistributionError("support must contain at least one point")
        if not np.all(np.isfinite(support)) or not np.all(np.isfinite(masses)):
            raise DistributionError("support and masses must be finite")
        if support[0] < 0:
            raise DistributionError(f"loss amounts must be >= 0, got {support[0]!r}")
        if np.any(masses < 0):
            raise DistributionError("probability masses must be >= 0")
        if np.any(np.diff(support) <= MERGE_TOL):
            raise DistributionError(
                f"support must be strictly increasing with spacing > {MERGE_TOL:g}"
            )
        total = math.fsum(masses.tolist())
        if abs(total - 1.0) > MASS_TOL:
            raise DistributionError(f"probability masses sum to {total!r}, not 1")

    def __len__(self):
        return len(self.support)

    def __repr__(self):
        if len(self) > 8:
            return f"DiscreteDist(<{len(self)} points on [{self.support[0]:g}, {self.support[-1]:g}]>)"
        body = ", ".join(f"{x:g}: {p:g}" for x, p in zip(self.support, self.masses))
        return f"DiscreteDist({{{body}}})"

    def points(self):
        """List of ``(loss, probability)`` pairs."""
        return list(zip(self.support.tolist(), self.masses.tolist()))

    @classmethod
    def from_points(cls, points):
        """Build from ``(loss, probability)`` pairs in any order.

        Duplicate loss amounts are rejected rather than merged.
        """
        pairs = sorted((float(x), float(p)) for x, p in points)
        if not pairs:
            raise DistributionError("support must contain at least one point")
        return cls([x for x, _ in pairs], [p for _, p in pairs])

    @classmethod
    def from_mapping(cls, pmf):
        return cls.from_points(pmf.items())


def _from_parametric(losses, weights):
    # Parametric families may put several outcomes on one loss amount (e.g. a
    # zero per-event loss) and may carry truncation error; merge and normalise.
    losses = np.asarray(losses, dtype=np.float64)
    weights = np.asarray(weights, dtype=np.float64)
    keep = weights > 0
    losses, weights = losses[keep], weights[keep]
    order = np.argsort(losses, kind="stable")
    losses, weights = losses[order], weights[order]
    xs, ps = [], []
    for x, w in zip(losses.tolist(), weights.tolist()):
        if xs and x - xs[-1] <= MERGE_TOL:
            ps[-1] += w
        else:
            xs.append(x)
            ps.append(w)
    total = math.fsum(ps)
    return DiscreteDist(xs, [p / total for p in ps])


def point_mass(loss=0.0):
    """Certain loss of ``loss`` currency units."""
    return DiscreteDist([loss], [1.0])


def bernoulli(q, loss):
    """Loss of ``loss`` with probability ``q``, otherwise nothing."""
    if not 0.0 <= q <= 1.0:
        raise DistributionError(f"bernoulli q must lie in [0, 1], got {q!r}")
    if loss < 0:
        raise DistributionError(f"bernoulli loss must be >= 0, got {loss!r}")
    return _from_parametric([0.0, loss], [1.0 - q, q])


def binomial(n, q, loss):
    """Number of losses among ``n`` independent events, each costing ``loss``."""
    if int(n) != n or n < 0:
        raise DistributionError(f"binomial n must be a nonnegative integer, got {n!r}")
    if not 0.0 <= q <= 1.0:
        raise DistributionError(f"binomial q must lie in [0, 1], got {q!r}")
    if loss < 0:
        raise DistributionError(f"binomial loss must be >= 0, got {loss!r}")
    n = int(n)
    weights = [math.comb(n, k) * q**k * (1.0 - q) ** (n - k) for k in range(n + 1)]
    return _from_parametric([k * loss for k in range(n + 1)], weights)


def truncated_poisson(lam, loss, quantile=1.0 - 1e-12):
    """Poisson event count times ``loss``, cut where the CDF reaches ``quantile``."""
    if lam < 0:
        raise DistributionError(f"poisson lambda must be >= 0, got {lam!r}")
    if loss < 0:
        raise DistributionError(f"poisson loss must be >= 0, got {loss!r}")
    if not MIN_POISSON_QUANTILE <= quantile < 1.0:
        raise DistributionError(
            f"truncation quantile must lie in [{MIN_POISSON_QUANTILE!r}, 1), got {quantile!r}"
        )
    if lam == 0:
        return point_mass(0.0)
    log_lam = math.log(lam)
    weights = []
    cdf = 0.0
    k = 0
    while cdf < quantile:
        w = math.exp(-lam + k * log_lam - math.lgamma(k + 1))
        weights.append(w)
        cdf += w
        k += 1
        if k > 10 * lam + 1000:
            break
    return _from_parametric([k * loss for k in range(len(weights))], weights)


def convolve(a, b, max_points=DEFAULT_MAX_POINTS):
    """Distribution of the sum of independent losses drawn from ``a`` and ``b``."""
    out = kernels.convolve_sorted(
        a.support, a.masses, b.support, b.masses, MERGE_TOL, int(max_points)
    )
    if out is None:
        raise SizeLimitError(
            f"convolution of {len(a)}- and {len(b)}-point supports exceeds {max_points} points"
        )
    return DiscreteDist(*out)


def dist_equal(a, b, tol=0.0):
    """True if ``a`` and ``b`` agree pointwise within ``tol`` after aligning supports.

    Support points closer than ``MERGE_TOL`` are paired; any unpaired point
    must carry at most ``tol`` mass.
    """
    if tol < 0:
        raise PreconditionError(f"tol must be >= 0, got {tol!r}")
    xa, pa, xb, pb = a.support, a.masses, b.support, b.masses
    i = j = 0
    while i < len(xa) and j < len(xb):
        if abs(xa[i] - xb[j]) <= MERGE_TOL:
            if abs(pa[i] - pb[j]) > tol:
                return False
            i += 1
            j += 1
        elif xa[i] < xb[j]:
            if pa[i] > tol:
                return False
            i += 1
        else:
            if pb[j] > tol:
                return False
            j += 1
    return bool(np.all(pa[i:] <= tol) and np.all(pb[j:] <= tol))


def expectation(d):
    return math.fsum((d.support * d.masses).tolist())


def exp_moment(d, theta):
    """E[exp(theta * X)] for X ~ d."""
    if not theta > 0:
        raise PreconditionError(f"theta must be > 0, got {theta!r}")
    if theta * d.support[-1] > _LOG_MAX:
        raise RangeError(
            f"exp({theta!r} * {d.support[-1]!r}) overflows; use log_exp_moment"
        )
    value = float(np.sum(d.masses * np.exp(theta * d.support)))
    if not math.isfinite(value):
        raise RangeError("exponential moment is not finite")
    return value


def top_loss(d):
    """Largest loss amount carrying positive probability."""
    return float(d.support[np.flatnonzero(d.masses > 0)[-1]])


def log_exp_moment(d, theta):
    """log E[exp(theta * X)], evaluated relative to the top loss so it cannot overflow."""
    if not theta > 0:
        raise PreconditionError(f"theta must be > 0, got {theta!r}")
    shift = top_loss(d)
    return theta * shift + kernels.log_moment_shifted(d.support, d.masses, float(theta), shift)
