"""Coupled, driven two-level emitter pair: steady states, correlations and spectra."""

import json
import os
from pathlib import Path

_presets = Path(__file__).with_name("presets.json")
if "PAIRFLUOR_PRESETS" not in os.environ and _presets.exists():
    os.environ["PAIRFLUOR_PRESETS"] = str(_presets)

from ._core import *  # noqa: E402,F401,F403
from ._core import __version__, run_preset as _run_preset  # noqa: E402


def run_preset(name, spectrum_points=0):
    """Run a named preset and return the parsed sweep document."""
    return json.loads(_run_preset(name, spectrum_points))
