"""Named potentials used by the test-suite and the command line."""

from types import MappingProxyType

from .potential import Potential, load_potential

__all__ = ["PRESETS", "PRESET_PREFIX", "load_preset", "resolve_potential"]

PRESET_PREFIX = "preset:"

_cos1 = Potential.trig(0.0, [2.0])

PRESETS = MappingProxyType(
    {
        "zero": Potential.constant(0.0),
        "const5": Potential.constant(5.0),
        "cos1": _cos1,
        "sin1": Potential.trig(0.0, [], [4.0]),
        "mix": Potential.trig(1.0, [2.0], [0.0, 0.5]),
        "grid-cos1": Potential.sampled(_cos1, 64),
    }
)


def load_preset(name):
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; available: {', '.join(PRESETS)}") from None


def resolve_potential(source):
    """``preset:<name>`` or a path to a potential JSON file."""
    source = str(source)
    if source.startswith(PRESET_PREFIX):
        return load_preset(source[len(PRESET_PREFIX) :])
    return load_potential(source)
