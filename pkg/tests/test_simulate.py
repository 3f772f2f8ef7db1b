import math

import numpy as np
import pytest

from helpers import D1, D2, priced_market, random_market
from premia.arbitrage import Pricing, classify
from premia.errors import PreconditionError
from premia.market import build_market
from premia.pricing import InsurerProfile
from premia.simulate import run_equilibrium


def bound(delta0, tol):
    return 1 + math.ceil(math.log2(max(abs(delta0), tol) / tol))


def test_additive_start_is_fixed_point():
    report = run_equilibrium(build_market([InsurerProfile("A", 1.0)], D1, D2))
    assert report.converged and report.rounds_used == 0
    assert len(report.trace) == 1 and report.trace[0].action == "none"


def test_underpriced_one_split():
    report = run_equilibrium(priced_market(7, 4, 4))
    assert report.converged and report.rounds_used == 1
    assert [r.action for r in report.trace] == ["split_offer", "none"]
    assert (report.trace[0].first, report.trace[0].second) == (3.5, 3.5)
    assert abs(report.delta) <= 1e-12
    assert (report.P, report.P1, report.P2) == (7, 3.5, 3.5)


def test_overpriced_halves():
    report = run_equilibrium(priced_market(10, 4, 4), tol=1e-3)
    assert report.converged and report.rounds_used == 11
    deltas = [r.delta for r in report.trace]
    assert deltas == [2 / 2**k for k in range(12)]
    assert all(r.action == "coalition_offer" for r in report.trace[:-1])
    assert report.trace[0].Pi == 9 and report.trace[0].first == 4.5


def test_contraction_on_generic_floats():
    rng = np.random.default_rng(4)
    for _ in range(200):
        P1, P2 = rng.uniform(0.1, 50, size=2)
        P = (P1 + P2) * rng.uniform(1.01, 3)
        report = run_equilibrium(priced_market(P, P1, P2), tol=1e-6)
        d = [r.delta for r in report.trace]
        for a, b in zip(d, d[1:]):
            assert abs(b - a / 2) <= 1e-12 * max(1.0, P)
        assert all(r.P1 == P1 and r.P2 == P2 for r in report.trace)


def test_underpriced_never_overshoots():
    rng = np.random.default_rng(8)
    for _ in range(200):
        P1, P2 = rng.uniform(0.1, 50, size=2)
        P = (P1 + P2) * rng.uniform(0.1, 0.99)
        report = run_equilibrium(priced_market(P, P1, P2))
        assert report.rounds_used == 1
        assert report.delta >= report.trace[0].delta
        assert abs(report.delta) <= 1e-9


def test_termination_bound_and_trace_length():
    rng = np.random.default_rng(12)
    for _ in range(300):
        state = random_market(rng)
        tol = float(10 ** rng.uniform(-10, -2))
        report = run_equilibrium(state, tol=tol)
        assert report.converged
        assert abs(report.delta) <= tol
        assert len(report.trace) == report.rounds_used + 1
        assert report.rounds_used <= bound(report.trace[0].delta, tol)
        assert classify(report.final_state, tol) is Pricing.EQUILIBRIUM


def test_round_budget_exhausted():
    report = run_equilibrium(priced_market(10, 4, 4), tol=1e-3, max_rounds=3)
    assert not report.converged
    assert report.rounds_used == 3 and len(report.trace) == 4
    assert report.delta == 0.25


def test_purchase_feasible_reported():
    state = build_market([InsurerProfile("A", 1.0)], D1, D2)
    assert run_equilibrium(state, insured_rho=1.0).purchase_feasible is True
    assert run_equilibrium(state).purchase_feasible is None


def test_bad_tolerance():
    with pytest.raises(PreconditionError):
        run_equilibrium(priced_market(8, 4, 4), tol=0)
