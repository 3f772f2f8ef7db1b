import numpy as np
import pytest

from helpers import D1, D2, priced_market, random_market
from premia.dist import convolve, dist_equal, point_mass
from premia.errors import HypothesisViolation, PreconditionError
from premia.market import (
    K,
    K1,
    K2,
    Quote,
    best_quote,
    build_market,
    composition_consistent,
    mispricing,
    purchase_feasible,
)
from premia.pricing import InsurerProfile, indifference_premium


class TestBuildMarket:
    def test_single_zero_loading_insurer_is_additive(self):
        state = build_market([InsurerProfile("A", 1.0)], D1, D2)
        assert abs(mispricing(state)) <= 1e-9
        assert state.round == 0

    def test_one_quote_per_insurer_per_book(self):
        state = build_market([InsurerProfile("A", 1.0), InsurerProfile("B", 4.0)], D1, D2)
        assert all(len(state.book(r)) == 2 for r in (K1, K2, K))

    def test_composite_is_convolution(self):
        state = build_market([InsurerProfile("A", 1.0)], D1, D2)
        assert dist_equal(state.risks[K].dist, convolve(D1, D2), 1e-11)
        assert composition_consistent(state)

    def test_no_insurers(self):
        with pytest.raises(HypothesisViolation):
            build_market([], D1, D2)

    def test_everyone_opts_out(self):
        with pytest.raises(HypothesisViolation):
            build_market([InsurerProfile("A", 1.0)], D1, D2, opt_outs={"A": {K2}})

    def test_partial_opt_out(self):
        state = build_market(
            [InsurerProfile("A", 1.0), InsurerProfile("B", 2.0)], D1, D2, opt_outs={"B": {K}}
        )
        assert [q.insurer_id for q in state.book(K)] == ["A"]
        assert len(state.book(K1)) == 2

    def test_zero_premium_rejected(self):
        # no possible loss and no admin cost gives a free policy
        with pytest.raises(HypothesisViolation):
            build_market([InsurerProfile("A", 1.0)], point_mass(0.0), D2)

    def test_duplicate_ids(self):
        with pytest.raises(PreconditionError):
            build_market([InsurerProfile("A", 1.0), InsurerProfile("A", 2.0)], D1, D2)

    def test_override_unknown_insurer(self):
        with pytest.raises(PreconditionError):
            build_market([InsurerProfile("A", 1.0)], D1, D2, overrides={K: [("Z", 1.0)]})

    def test_quote_must_be_positive(self):
        with pytest.raises(PreconditionError):
            Quote("A", K, 0.0)


class TestBestQuote:
    def _book(self, premia, ids=None):
        ids = ids or [f"I{i}" for i in range(len(premia))]
        insurers = [InsurerProfile(i, 1.0) for i in sorted(set(ids))]
        return build_market(insurers, D1, D2, overrides={K1: list(zip(ids, premia))})

    def test_minimum(self):
        assert best_quote(self._book([4.0, 5.0, 4.5]), K1).premium == 4.0

    def test_tie_goes_to_earliest(self):
        q = best_quote(self._book([4.0, 4.0], ids=["B", "A"]), K1)
        assert q.insurer_id == "B"

    def test_singleton(self):
        assert best_quote(self._book([3.25]), K1).premium == 3.25

    def test_never_above_any_quote(self):
        rng = np.random.default_rng(5)
        for _ in range(200):
            state = random_market(rng)
            for rid in (K1, K2, K):
                assert all(best_quote(state, rid).premium <= q.premium for q in state.book(rid))


class TestMispricing:
    @pytest.mark.parametrize("P,P1,P2,delta", [(10, 4, 4, 2), (7, 4, 4, -1), (8, 4, 4, 0)])
    def test_arithmetic(self, P, P1, P2, delta):
        assert mispricing(priced_market(P, P1, P2)) == delta

    def test_zero_loading_always_additive(self):
        rng = np.random.default_rng(9)
        for _ in range(200):
            rhos = rng.uniform(0.5, 50, size=int(rng.integers(1, 5)))
            state = build_market(
                [InsurerProfile(f"I{i}", float(r)) for i, r in enumerate(rhos)],
                random_market(rng).risks[K1].dist,
                random_market(rng).risks[K2].dist,
            )
            assert abs(mispricing(state)) <= 1e-9


class TestPurchaseFeasible:
    def test_equal_valuation(self):
        state = build_market([InsurerProfile("A", 1.5)], D1, D2)
        assert purchase_feasible(state, 1.5)

    def test_inflated_premia(self):
        v = indifference_premium(convolve(D1, D2), 1.0)
        state = priced_market(10 * v, 5 * v, 5 * v)
        assert not purchase_feasible(state, 1.0)

    def test_no_possible_loss(self):
        state = build_market([InsurerProfile("A", 1.0, admin_cost=0.2)], point_mass(0.0), point_mass(0.0))
        assert not purchase_feasible(state, 1.0)
