"""Single-photon scattering off giant atoms coupled to an SSH waveguide.

Energies are in units of J; detuning grids may be given in units of Gamma_e
through the sweep spec.
"""

import json

from ._core import (
    Band,
    Error,
    LatticeParams,
    Mode,
    SingleConfig,
    TwoAtomConfig,
    characteristics,
    csv_header,
    dispersion,
    emission_rate,
    git_hash,
    group_velocity,
    in_band,
    oracle,
    scatter,
    single,
    spectrum,
    topo_phase,
    two,
    validate,
    wave_vector,
)
from . import _core


def _text(spec):
    return spec if isinstance(spec, str) else json.dumps(spec)


def run(spec):
    """Run a sweep spec (dict or JSON text). Returns (csv_text, sidecar_dict)."""
    csv_text, sidecar = _core._run(_text(spec))
    return csv_text, json.loads(sidecar)


def canonical_spec(spec):
    """The sweep spec with every default filled in, as the CLI's --emit-spec prints it."""
    return json.loads(_core._emit_spec(_text(spec)))


__all__ = [
    "Band",
    "Error",
    "LatticeParams",
    "Mode",
    "SingleConfig",
    "TwoAtomConfig",
    "canonical_spec",
    "characteristics",
    "csv_header",
    "dispersion",
    "emission_rate",
    "git_hash",
    "group_velocity",
    "in_band",
    "oracle",
    "run",
    "scatter",
    "single",
    "spectrum",
    "topo_phase",
    "two",
    "validate",
    "wave_vector",
]
