"""Exponential disutility and the premia it induces.

Disutility of a cost ``l`` for risk tolerance ``rho`` is
``rho * (exp(l / rho) - 1)``. The indifference premium of a random loss X is
the certain payment with the same disutility as X, which works out to
``rho * log E[exp(X / rho)]``. Because the exponential moment factorises
over independent sums, this premium is additive across independent risks.
"""
import math
from dataclasses import dataclass

from . import kernels
from .dist import top_loss
from .errors import PreconditionError, RangeError


def check_rho(rho):
    rho = float(rho)
    if not (rho > 0 and math.isfinite(rho)):
        raise PreconditionError(f"risk tolerance must be a positive finite number, got {rho!r}")
    return rho


@dataclass(frozen=True)
class InsurerProfile:
    """An insurer quoting full coverage with its own risk tolerance.

    ``loading`` is a fractional markup on the indifference premium and
    ``admin_cost`` a flat charge per policy.
    """

    id: str
    rho: float
    loading: float = 0.0
    admin_cost: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "rho", check_rho(self.rho))
        if not self.loading >= 0:
            raise PreconditionError(f"insurer {self.id}: loading must be >= 0, got {self.loading!r}")
        if not self.admin_cost >= 0:
            raise PreconditionError(
                f"insurer {self.id}: admin_cost must be >= 0, got {self.admin_cost!r}"
            )


def disutility(l, rho):
    rho = check_rho(rho)
    if l < 0:
        raise PreconditionError(f"loss must be >= 0, got {l!r}")
    try:
        return rho * math.expm1(l / rho)
    except OverflowError as exc:
        raise RangeError(f"disutility overflows at l/rho = {l / rho!r}") from exc


def indifference_premium(d, rho):
    """Certain premium the holder of risk tolerance ``rho`` finds equivalent to loss ``d``.

    Computed as ``top + rho * log E[exp((X - top) / rho)]`` with ``top`` the
    largest loss, which stays finite for any ``rho`` and returns exactly ``L``
    for a point mass at ``L``.
    """
    rho = check_rho(rho)
    top = top_loss(d)
    value = top + rho * kernels.log_moment_shifted(d.support, d.masses, 1.0 / rho, top)
    if not math.isfinite(value):
        raise RangeError("indifference premium is not finite")
    return value


def quote_premium(insurer, d):
    return (1.0 + insurer.loading) * indifference_premium(d, insurer.rho) + insurer.admin_cost
