"""Arbitrage against non-additive premia.

If the composite risk is cheaper than its parts (P < P1 + P2), the insurer
quoting P can re-offer the same cover as two component policies whose
premia sum to P, undercutting both component quotes. If it is dearer
(P > P1 + P2), the best K1 insurer fronts the whole composite risk at
``(P + P1 + P2) / 2`` and fully reinsures K2 with the best K2 insurer; both
end up with more premium than their standalone quotes. Either way some
best quote is beaten, so only P = P1 + P2 survives.
"""
import math
from dataclasses import dataclass
from enum import Enum

from .errors import PreconditionError, StaleActionError
from .market import K, K1, K2, Origin, Quote, best_premia, best_quote

CONSERVATION_TOL = 1e-12


class Pricing(str, Enum):
    UNDERPRICED = "underpriced"
    OVERPRICED = "overpriced"
    EQUILIBRIUM = "equilibrium"


@dataclass(frozen=True)
class NoAction:
    kind = "none"


@dataclass(frozen=True)
class SplitOffer:
    """Composite insurer ``actor`` re-offers its cover as two component policies."""

    actor: str
    pi1: float
    pi2: float
    basis: tuple  # (P, P1, P2) the offer was computed from

    kind = "split_offer"

    def __post_init__(self):
        P, P1, P2 = self.basis
        if abs(self.pi1 + self.pi2 - P) > CONSERVATION_TOL * max(1.0, abs(P)):
            raise PreconditionError(f"split premia {self.pi1!r} + {self.pi2!r} != P = {P!r}")
        if not (self.pi1 > 0 and self.pi2 > 0):
            raise PreconditionError("split premia must be positive")


@dataclass(frozen=True)
class CoalitionOffer:
    """``lead`` covers the composite risk at ``Pi`` and cedes K2 to ``reinsurer`` for ``Pi2``.

    Only ``Pi`` reaches the market; ``Pi2`` is a private transfer and
    ``Pi1 = Pi - Pi2`` is what the lead keeps.
    """

    lead: str
    reinsurer: str
    Pi: float
    Pi1: float
    Pi2: float
    basis: tuple

    kind = "coalition_offer"

    def __post_init__(self):
        P, P1, P2 = self.basis
        if abs(self.Pi1 + self.Pi2 - self.Pi) > CONSERVATION_TOL * max(1.0, abs(self.Pi)):
            raise PreconditionError(f"coalition shares {self.Pi1!r} + {self.Pi2!r} != Pi = {self.Pi!r}")
        if not (self.Pi < P and self.Pi1 > P1 and self.Pi2 > P2):
            raise PreconditionError(
                f"coalition offer {self.Pi!r} ({self.Pi1!r}, {self.Pi2!r}) does not beat "
                f"P = {P!r} while paying more than P1 = {P1!r}, P2 = {P2!r}"
            )


def classify(state, tol):
    if not tol > 0:
        raise PreconditionError(f"tol must be > 0, got {tol!r}")
    P, P1, P2 = best_premia(state)
    delta = P - (P1 + P2)
    if delta < -tol:
        return Pricing.UNDERPRICED
    if delta > tol:
        return Pricing.OVERPRICED
    return Pricing.EQUILIBRIUM


def split_offer(P, P1, P2):
    """Proportional split ``pi_i = P * P_i / (P1 + P2)``; each piece undercuts its component."""
    total = P1 + P2
    if not (P1 > 0 and P2 > 0 and 0 < P < total and math.isfinite(total)):
        raise PreconditionError(f"split needs 0 < P < P1 + P2 with P1, P2 > 0; got {P!r}, {P1!r}, {P2!r}")
    return P * P1 / total, P * P2 / total


def coalition_offer(P, P1, P2):
    if not (P1 + P2 > 0 and P > P1 + P2 and math.isfinite(P)):
        raise PreconditionError(f"coalition needs P > P1 + P2 > 0; got {P!r}, {P1!r}, {P2!r}")
    excess = P - P1 - P2
    Pi = (P + P1 + P2) / 2
    Pi2 = P2 + excess / 4
    Pi1 = Pi - Pi2
    return Pi, Pi1, Pi2


def propose(state, tol):
    """The arbitrage move available in ``state``, or :class:`NoAction` at equilibrium."""
    verdict = classify(state, tol)
    if verdict is Pricing.EQUILIBRIUM:
        return NoAction()
    basis = best_premia(state)
    P, P1, P2 = basis
    if verdict is Pricing.UNDERPRICED:
        pi1, pi2 = split_offer(P, P1, P2)
        return SplitOffer(best_quote(state, K).insurer_id, pi1, pi2, basis)
    Pi, Pi1, Pi2 = coalition_offer(P, P1, P2)
    return CoalitionOffer(
        best_quote(state, K1).insurer_id, best_quote(state, K2).insurer_id, Pi, Pi1, Pi2, basis
    )


def apply(state, action):
    """Append the quotes an action puts on the market and advance the round."""
    if isinstance(action, NoAction):
        return state.next_round()
    if action.basis != best_premia(state):
        raise StaleActionError(f"best premia moved from {action.basis} to {best_premia(state)}")
    if isinstance(action, SplitOffer):
        if action.actor != best_quote(state, K).insurer_id:
            raise StaleActionError(f"{action.actor} no longer holds the best composite quote")
        return state.with_quotes([
            Quote(action.actor, K1, action.pi1, Origin.SPLIT_OFFER),
            Quote(action.actor, K2, action.pi2, Origin.SPLIT_OFFER),
        ])
    if isinstance(action, CoalitionOffer):
        if (action.lead, action.reinsurer) != (
            best_quote(state, K1).insurer_id,
            best_quote(state, K2).insurer_id,
        ):
            raise StaleActionError("coalition members no longer hold the best component quotes")
        return state.with_quotes([Quote(action.lead, K, action.Pi, Origin.COALITION_OFFER)])
    raise TypeError(f"not an arbitrage action: {action!r}")
