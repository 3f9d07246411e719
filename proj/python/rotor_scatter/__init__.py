"""Born-approximation cross sections of a rigid two-atom rotor."""

from ._core import (
    AnalysisError,
    ConfigError,
    IncidentBeam,
    Molecule,
    PeakShape,
    PotentialSpec,
    bessel_j,
    bessel_j_batch,
    compute_profile,
    cross_section_closed,
    cross_section_general,
    cross_section_structureless,
    dirichlet_amplitude,
    ft_peak,
    ft_total,
    make_grating,
    matrix_element,
    open_channels,
    outgoing_wavenumber,
    peak_spacing,
    run_checks,
    suppression_ratio,
    validate_config,
    visibility,
)

__all__ = [
    "AnalysisError",
    "ConfigError",
    "IncidentBeam",
    "Molecule",
    "PeakShape",
    "PotentialSpec",
    "bessel_j",
    "bessel_j_batch",
    "compute_profile",
    "cross_section_closed",
    "cross_section_general",
    "cross_section_structureless",
    "dirichlet_amplitude",
    "ft_peak",
    "ft_total",
    "make_grating",
    "matrix_element",
    "open_channels",
    "outgoing_wavenumber",
    "peak_spacing",
    "run_checks",
    "suppression_ratio",
    "validate_config",
    "visibility",
]
