"""Pricing full coverage of independent risks and the arbitrage that forces additive premia."""
from .arbitrage import (
    CoalitionOffer,
    NoAction,
    Pricing,
    SplitOffer,
    apply,
    classify,
    coalition_offer,
    propose,
    split_offer,
)
from .dist import (
    DiscreteDist,
    bernoulli,
    binomial,
    convolve,
    dist_equal,
    exp_moment,
    expectation,
    log_exp_moment,
    point_mass,
    truncated_poisson,
)
from .errors import (
    DistributionError,
    HypothesisViolation,
    PreconditionError,
    PremiaError,
    RangeError,
    ScenarioError,
    SizeLimitError,
    StaleActionError,
)
from .kernels import BACKEND
from .market import (
    K,
    K1,
    K2,
    MarketState,
    Quote,
    Risk,
    best_quote,
    build_market,
    mispricing,
    purchase_feasible,
)
from .pricing import InsurerProfile, disutility, indifference_premium, quote_premium
from .scenario import Scenario, emit_report, load_scenario
from .simulate import EquilibriumReport, run_equilibrium

__version__ = "0.1.0"
