"""Simulators, noise laws, theoretical extremograms and the GARCH tail-index solver."""
from extremogram.models.arma import arma_psi_coefficients, causal_psi, check_causal, ou_psi
from extremogram.models.noise import NoiseLaw, NoiseSpec, sample_noise, unit_variance
from extremogram.models.oracles import (
    BandExample,
    TheoreticalExtremogram,
    ar1_extremogram,
    arch1_extremogram,
    arma_extremogram,
    band_example_oracle,
    decay_slope,
    garch11_extremogram,
    garch_decay_rate,
    linear_process_extremogram,
    preasymptotic_tail_dependence,
    sas_ou_extremogram,
    sv_extremogram,
    sv_tail_measure,
)
from extremogram.models.simulate import ar_filter, simulate, simulate_filtered
from extremogram.models.spec import Family, ModelSpec
from extremogram.models.tail_index import (
    TailIndexResult,
    garch_log_moment,
    solve_garch_tail_index,
)

__all__ = [
    "BandExample",
    "Family",
    "ModelSpec",
    "NoiseLaw",
    "NoiseSpec",
    "TailIndexResult",
    "TheoreticalExtremogram",
    "ar1_extremogram",
    "ar_filter",
    "arch1_extremogram",
    "arma_extremogram",
    "arma_psi_coefficients",
    "band_example_oracle",
    "causal_psi",
    "check_causal",
    "decay_slope",
    "garch11_extremogram",
    "garch_decay_rate",
    "garch_log_moment",
    "linear_process_extremogram",
    "ou_psi",
    "preasymptotic_tail_dependence",
    "sample_noise",
    "sas_ou_extremogram",
    "simulate",
    "simulate_filtered",
    "solve_garch_tail_index",
    "sv_extremogram",
    "sv_tail_measure",
    "unit_variance",
]
