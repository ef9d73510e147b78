from helmwave.lfa.symbols import (
    ResonanceError,
    symbol,
    symbol_A_cip,
    symbol_A_fem,
    symbol_A_shifted,
    symbol_smoother_jacobi,
    symbol_smoother_gs,
    symbol_transfer,
    smoother_symbols,
    optimal_sigma,
    penalty_rule,
)
from helmwave.lfa.blocks import (
    SymbolParams,
    SymbolBlock,
    frequency_pair,
    frequency_quad,
    smoother_block,
    twolevel_block,
    threelevel_block,
)
from helmwave.lfa.analysis import (
    Sweep,
    theta_samples,
    spectral_radius_sweep,
    sweep_dataframe,
    smoother_curve,
    amplification_experiment,
)
