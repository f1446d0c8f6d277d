"""Shared test constants: the baseline market used across the suite."""

from edgemarket import MarketParams

DEFAULTS = MarketParams(
    alpha=0.8,
    beta=0.5,
    gamma=0.8,
    l_a=1.0,
    sigma_e=40.0,
    sigma_c=120.0,
    c_handover=80.0,
    C_cache=120.0,
    w=1.0,
    p_bar=100.0,
)

DEFAULT_MARKET_TOML = """\
[market]
alpha = 0.8
beta = 0.5
gamma = 0.8
l_a = 1.0
sigma_e = 40.0
sigma_c = 120.0
c_handover = 80.0
C_cache = 120.0
w = 1.0
p_bar = 100.0
"""
