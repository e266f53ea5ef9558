"""amalgam: time-frequency mixed norms, dyadic decompositions, and
sharp-embedding probe experiments on uniform grids."""

from .exponents import (
    EmbeddingVerdict,
    Exponent,
    ExponentError,
    Family,
    Region,
    SpaceSpec,
    embed_besov_in_wiener,
    embed_hardy_in_wiener,
    embed_lebesgue_in_wiener,
    embed_lebesgue_in_wiener_endpoint,
    embed_seq_dyadic,
    embed_seq_uniform,
    embed_wiener_in_besov,
    embed_wiener_in_hardy,
    embed_wiener_in_lebesgue,
    embed_wiener_in_lebesgue_endpoint,
    embed_wiener_in_wiener,
    lower_region,
    lower_threshold,
    upper_region,
    upper_threshold,
)
from .grid import GridFunction, GridSpec, dilate, fourier, inverse_fourier, unit_gaussian
from .filters import FilterBank, build_filter_bank, lp_project, uniform_partition
from .stft import TfLattice, TfMatrix, WindowKind, default_lattice, stft
from .norms import (
    MixedNormSpec,
    MixedOrder,
    SeqKind,
    WeightedSeq,
    besov_norm,
    fourier_series_norm,
    lebesgue_norm,
    local_hardy_norm,
    localized_norm,
    mixed_norm,
    modulation_norm,
    seq_norm,
    triebel_norm,
    wiener_norm,
)

__version__ = "0.1.0"
