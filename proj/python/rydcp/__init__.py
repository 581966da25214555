"""Casimir-Polder potentials of Rydberg atoms near graphene and layered surfaces."""

from ._core import (
    ConfigError,
    describe_stack,
    kubo_conductivity,
    nonlocal_conductivity,
    polarizability,
    potential,
    preset_names,
    preset_text,
    scan,
    transition_frequency,
)

__all__ = [
    "ConfigError",
    "describe_stack",
    "kubo_conductivity",
    "nonlocal_conductivity",
    "polarizability",
    "potential",
    "preset_names",
    "preset_text",
    "scan",
    "transition_frequency",
]
