"""Market fixtures shared by the market, arbitrage and simulation tests."""
from premia.dist import DiscreteDist, bernoulli
from premia.market import K, K1, K2, build_market
from premia.pricing import InsurerProfile

D1 = DiscreteDist([0.0, 1.0], [0.9, 0.1])
D2 = DiscreteDist([0.0, 3.0], [0.8, 0.2])


def priced_market(P, P1, P2, d1=D1, d2=D2):
    """Market whose books hold exactly one quote each, at the given premia."""
    insurers = [InsurerProfile("A", 1.0), InsurerProfile("B", 1.0), InsurerProfile("C", 1.0)]
    overrides = {K: [("A", P)], K1: [("B", P1)], K2: [("C", P2)]}
    return build_market(insurers, d1, d2, overrides=overrides)


def random_market(rng):
    """Market with 1-4 insurers on random Bernoulli risks."""
    d1 = bernoulli(float(rng.uniform(0.01, 0.5)), float(rng.uniform(0.5, 20)))
    d2 = bernoulli(float(rng.uniform(0.01, 0.5)), float(rng.uniform(0.5, 20)))
    n = int(rng.integers(1, 5))
    insurers = [
        InsurerProfile(f"I{i}", float(rng.uniform(0.5, 50)), float(rng.uniform(0, 0.3)), float(rng.uniform(0, 0.5)))
        for i in range(n)
    ]
    return build_market(insurers, d1, d2)
