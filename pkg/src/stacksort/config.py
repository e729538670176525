"""Resource caps for the brute-force routines.

Defaults can be overridden process-wide through one environment variable,
e.g. ``STACKSORT_CAPS="oracle=10,direct=12"``, or per call.
"""

import os
from contextlib import contextmanager

from stacksort.errors import ConfigurationError, ResourceCapError

ENV_VAR = "STACKSORT_CAPS"

DEFAULT_CAPS = {
    # permutation length for the preimage oracle (9! images per call)
    "oracle": 9,
    # permutation length for direct iteration over S_n
    "direct": 11,
    # number of steps for lattice path enumeration
    "paths": 14,
}


def _env_caps():
    raw = os.environ.get(ENV_VAR, "").strip()
    if not raw:
        return {}
    caps = {}
    for item in raw.split(","):
        name, sep, value = item.partition("=")
        name = name.strip()
        if not sep or name not in DEFAULT_CAPS:
            raise ConfigurationError(f"{ENV_VAR}: cannot parse {item!r}; expected e.g. oracle=10")
        try:
            caps[name] = int(value)
        except ValueError:
            raise ConfigurationError(f"{ENV_VAR}: cap {name} must be an integer, got {value!r}") from None
    return caps


_OVERRIDES: dict[str, int] = {}


@contextmanager
def override_caps(**caps):
    """Temporarily replace caps for the current process (used by the CLI flags)."""
    saved = dict(_OVERRIDES)
    _OVERRIDES.update({k: int(v) for k, v in caps.items() if v is not None})
    try:
        yield
    finally:
        _OVERRIDES.clear()
        _OVERRIDES.update(saved)


def get_cap(name, override=None):
    """Return the effective cap ``name``.

    Precedence: explicit ``override``, then :func:`override_caps`, then the
    environment variable, then the default.
    """
    if override is not None:
        return int(override)
    if name in _OVERRIDES:
        return _OVERRIDES[name]
    return _env_caps().get(name, DEFAULT_CAPS[name])


def check_cap(name, size, override=None, what=None):
    cap = get_cap(name, override)
    if size > cap:
        raise ResourceCapError(what or name, size, cap)
    return cap
