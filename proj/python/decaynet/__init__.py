"""Decay-space SINR analysis: metricity, affectance, capacity, partitions,
fading and dimension diagnostics, and instance generators."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
