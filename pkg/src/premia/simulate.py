"""Equilibrium iteration: one arbitrage move per round until premia are additive."""
from dataclasses import dataclass, field

from .arbitrage import CoalitionOffer, NoAction, Pricing, SplitOffer, apply, classify, propose
from .errors import PreconditionError
from .market import best_premia, purchase_feasible

DEFAULT_TOLERANCE = 1e-9
DEFAULT_MAX_ROUNDS = 200


@dataclass(frozen=True)
class TraceRecord:
    """Best premia at the start of a round and the move taken from them.

    ``first``/``second`` hold pi1/pi2 for a split and Pi1/Pi2 for a coalition;
    ``Pi`` is only set for a coalition.
    """

    round: int
    P: float
    P1: float
    P2: float
    delta: float
    action: str
    first: float = None
    second: float = None
    Pi: float = None


@dataclass
class EquilibriumReport:
    converged: bool
    rounds_used: int
    P: float
    P1: float
    P2: float
    delta: float
    tolerance: float
    max_rounds: int
    trace: list
    purchase_feasible: bool = None
    final_state: object = field(default=None, repr=False)


def _record(state, action):
    P, P1, P2 = best_premia(state)
    rec = dict(round=state.round, P=P, P1=P1, P2=P2, delta=P - (P1 + P2), action=action.kind)
    if isinstance(action, SplitOffer):
        rec.update(first=action.pi1, second=action.pi2)
    elif isinstance(action, CoalitionOffer):
        rec.update(first=action.Pi1, second=action.Pi2, Pi=action.Pi)
    return TraceRecord(**rec)


def run_equilibrium(state, tol=DEFAULT_TOLERANCE, max_rounds=DEFAULT_MAX_ROUNDS, insured_rho=None):
    """Iterate arbitrage moves from ``state`` until |P - (P1 + P2)| <= tol.

    Stops after ``max_rounds`` moves with ``converged=False`` rather than
    raising. The trace has one record per visited state, so its length is
    ``rounds_used + 1``.
    """
    if not tol > 0:
        raise PreconditionError(f"tolerance must be > 0, got {tol!r}")
    if max_rounds < 0:
        raise PreconditionError(f"max_rounds must be >= 0, got {max_rounds!r}")
    trace = []
    converged = False
    for used in range(max_rounds + 1):
        if classify(state, tol) is Pricing.EQUILIBRIUM:
            trace.append(_record(state, NoAction()))
            converged = True
            break
        if used == max_rounds:
            trace.append(_record(state, NoAction()))
            break
        action = propose(state, tol)
        trace.append(_record(state, action))
        state = apply(state, action)
    last = trace[-1]
    return EquilibriumReport(
        converged=converged,
        rounds_used=len(trace) - 1,
        P=last.P,
        P1=last.P1,
        P2=last.P2,
        delta=last.delta,
        tolerance=tol,
        max_rounds=max_rounds,
        trace=trace,
        purchase_feasible=None if insured_rho is None else purchase_feasible(state, insured_rho),
        final_state=state,
    )
