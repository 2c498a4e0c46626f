"""Single-photon scattering in an SSH waveguide coupled to a driven three-level emitter."""

from ._core import (
    Band,
    Error,
    Model,
    ValidationError,
    classify_regime,
    contour,
    dispersion,
    features,
    lattice_solve,
    model,
    poles,
    reflection,
    scatter,
    spectrum,
    transmission,
    wavepacket,
    winding_number,
)

__all__ = [
    "Band",
    "Error",
    "Model",
    "ValidationError",
    "classify_regime",
    "contour",
    "dispersion",
    "features",
    "lattice_solve",
    "model",
    "poles",
    "reflection",
    "scatter",
    "spectrum",
    "transmission",
    "wavepacket",
    "winding_number",
]
