"""Monte Carlo simulator for distributed-MIMO downlink in an indoor factory.

Configs are plain dicts with the same keys as the JSON config files; missing
keys take defaults.
"""

import json

import numpy as np

from ._core import (
    ConfigError,
    DomainError,
    Error,
    InsufficientSamplesError,
    NumericalError,
    PrecoderError,
    __version__,
    empirical_quantile,
    epa,
    estimated_sinr,
    los_probability,
    mpa_oracle,
    mpa_solve,
    mrt,
    path_loss_db,
    place_aps,
    thermal_noise_power,
    zf,
)
from . import _core


def resolve_config(config=None):
    """Validated config with every default filled in."""
    return json.loads(_core.resolve_config(json.dumps(config or {})))


def run_drop(config=None, drop_seed=0):
    return _core.run_drop(json.dumps(config or {}), drop_seed)


def run_campaign(config=None, n_drops=1000, master_seed=1, workers=1):
    """Pooled per-(drop, AC) SINR samples plus the campaign summary."""
    out = _core.run_campaign(json.dumps(config or {}), n_drops, master_seed, workers)
    out["summary"] = json.loads(out["summary"])
    out["sinr_db"] = 10.0 * np.log10(out["sinr"])
    return out


def availability(sinr_linear, level=1e-5):
    """SINR in dB exceeded with probability 1 - level."""
    return 10.0 * np.log10(empirical_quantile(np.asarray(sinr_linear, dtype=float), level))
