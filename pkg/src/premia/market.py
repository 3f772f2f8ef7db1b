"""Market state: the two component risks, their composition, and the quote books."""
import math
from dataclasses import dataclass, field, replace
from enum import Enum

from .dist import DiscreteDist, convolve, dist_equal
from .errors import HypothesisViolation, PreconditionError
from .pricing import InsurerProfile, check_rho, indifference_premium, quote_premium

K1, K2, K = "K1", "K2", "K"
RISK_IDS = (K1, K2, K)
COMPOSITION_TOL = 1e-11


class Origin(str, Enum):
    INITIAL = "initial"
    SPLIT_OFFER = "split_offer"
    COALITION_OFFER = "coalition_offer"


@dataclass(frozen=True)
class Risk:
    id: str
    dist: DiscreteDist


@dataclass(frozen=True)
class Quote:
    """Premium asked by one insurer for full coverage of one risk."""

    insurer_id: str
    risk_id: str
    premium: float
    origin: Origin = Origin.INITIAL

    def __post_init__(self):
        if self.risk_id not in RISK_IDS:
            raise PreconditionError(f"unknown risk id {self.risk_id!r}")
        if not (self.premium > 0 and math.isfinite(self.premium)):
            raise PreconditionError(
                f"premium for {self.risk_id} by {self.insurer_id} must be positive, got {self.premium!r}"
            )


@dataclass(frozen=True)
class MarketState:
    """Immutable snapshot; transitions return new states.

    ``books`` maps each risk id to its quotes in insertion order.
    """

    insurers: tuple
    risks: dict
    books: dict
    round: int = 0
    _insurer_ids: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        ids = [ins.id for ins in self.insurers]
        if len(set(ids)) != len(ids):
            raise PreconditionError(f"insurer ids must be unique, got {ids}")
        object.__setattr__(self, "_insurer_ids", frozenset(ids))
        for rid in RISK_IDS:
            if rid not in self.risks:
                raise PreconditionError(f"missing risk {rid}")
            if not self.books.get(rid):
                raise HypothesisViolation(f"no insurer offers full coverage of {rid}")
            for q in self.books[rid]:
                if q.risk_id != rid:
                    raise PreconditionError(f"quote for {q.risk_id} filed in book {rid}")
                if q.insurer_id not in self._insurer_ids:
                    raise PreconditionError(f"quote from unknown insurer {q.insurer_id!r}")

    def book(self, risk_id):
        return self.books[risk_id]

    def insurer(self, insurer_id):
        for ins in self.insurers:
            if ins.id == insurer_id:
                return ins
        raise KeyError(insurer_id)

    def with_quotes(self, quotes):
        """New state with ``quotes`` appended to their books and the round advanced."""
        books = {rid: tuple(book) for rid, book in self.books.items()}
        for q in quotes:
            books[q.risk_id] = books[q.risk_id] + (q,)
        return replace(self, books=books, round=self.round + 1)

    def next_round(self):
        return replace(self, round=self.round + 1)


def build_market(insurers, risk1_dist, risk2_dist, opt_outs=None, overrides=None):
    """Assemble the market for two independent risks and their composition.

    Every insurer quotes every risk via :func:`quote_premium` unless the risk
    is listed in ``opt_outs[insurer_id]``. ``overrides`` maps a risk id to a
    list of ``(insurer_id, premium)`` pairs that replaces that book's
    generated quotes.
    """
    insurers = tuple(insurers)
    if not insurers:
        raise HypothesisViolation("the market needs at least one insurer")
    opt_outs = opt_outs or {}
    overrides = overrides or {}
    ids = {ins.id for ins in insurers}
    for who in opt_outs:
        if who not in ids:
            raise PreconditionError(f"opt-out given for unknown insurer {who!r}")
    for rid in overrides:
        if rid not in RISK_IDS:
            raise PreconditionError(f"override given for unknown risk {rid!r}")

    risks = {
        K1: Risk(K1, risk1_dist),
        K2: Risk(K2, risk2_dist),
        K: Risk(K, convolve(risk1_dist, risk2_dist)),
    }
    books = {}
    for rid in RISK_IDS:
        if rid in overrides:
            books[rid] = tuple(Quote(who, rid, float(p)) for who, p in overrides[rid])
            continue
        quotes = []
        for ins in insurers:
            if rid in opt_outs.get(ins.id, ()):
                continue
            premium = quote_premium(ins, risks[rid].dist)
            if not premium > 0:
                raise HypothesisViolation(
                    f"insurer {ins.id} quotes a non-positive premium {premium!r} for {rid}"
                )
            quotes.append(Quote(ins.id, rid, premium))
        books[rid] = tuple(quotes)
    return MarketState(insurers=insurers, risks=risks, books=books)


def best_quote(state, risk_id):
    """Cheapest quote for ``risk_id``; ties go to the earliest-inserted quote."""
    book = state.books.get(risk_id)
    if not book:
        raise HypothesisViolation(f"no quotes for {risk_id}")
    pos = min(range(len(book)), key=lambda i: (book[i].premium, i, book[i].insurer_id))
    return book[pos]


def best_premia(state):
    """``(P, P1, P2)``: best premia for the composite risk and the two components."""
    return (
        best_quote(state, K).premium,
        best_quote(state, K1).premium,
        best_quote(state, K2).premium,
    )


def mispricing(state):
    """P - (P1 + P2); zero at equilibrium."""
    P, P1, P2 = best_premia(state)
    return P - (P1 + P2)


def purchase_feasible(state, insured_rho):
    """Whether the cheaper way to buy full cover is within the insured's own valuation.

    Diagnostic only; nothing in the dynamics consults it.
    """
    P, P1, P2 = best_premia(state)
    valuation = indifference_premium(state.risks[K].dist, check_rho(insured_rho))
    return min(P, P1 + P2) <= valuation


def composition_consistent(state, tol=COMPOSITION_TOL):
    r = state.risks
    return dist_equal(r[K].dist, convolve(r[K1].dist, r[K2].dist), tol)


__all__ = [
    "K", "K1", "K2", "RISK_IDS", "InsurerProfile", "MarketState", "Origin", "Quote", "Risk",
    "best_premia", "best_quote", "build_market", "composition_consistent", "mispricing",
    "purchase_feasible",
]
