"""Resource caps.

All exhaustive machinery is bounded by explicit caps.  Exceeding one
raises :class:`permlaw.errors.CapExceeded` (or yields an "inconclusive"
report where the operation's contract says so) -- never a silently
truncated answer.

Caps can be overridden per call, or process-wide through environment
variables with the ``PERMLAW_`` prefix, e.g. ``PERMLAW_ELEMENT_CAP=500000``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

_ENV_PREFIX = "PERMLAW_"


@dataclass(frozen=True)
class Caps:
    # largest group order for which full element enumeration is allowed
    element_cap: int = 10**6
    # largest subgroup index realisable as a coset action
    index_cap: int = 10**5
    # largest number of word evaluations in one exhaustive law scan
    tuple_cap: int = 10**9
    # largest group order for subgroup-lattice (Frattini) enumeration
    frattini_cap: int = 2000
    # how many Sylow conjugates a trajectory search may try
    sylow_conj_cap: int = 10**4

    def with_overrides(self, **kw: int) -> "Caps":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


def caps_from_env(base: Caps | None = None) -> Caps:
    """Read ``PERMLAW_<NAME>`` environment overrides on top of `base`."""
    caps = base or Caps()
    overrides = {}
    for f in fields(Caps):
        raw = os.environ.get(_ENV_PREFIX + f.name.upper())
        if raw is not None:
            try:
                overrides[f.name] = int(raw)
            except ValueError as exc:
                raise ValueError(f"bad value for {_ENV_PREFIX + f.name.upper()}: {raw!r}") from exc
    return caps.with_overrides(**overrides)


DEFAULT_CAPS = Caps()


def resolve(caps: Caps | None) -> Caps:
    return caps if caps is not None else DEFAULT_CAPS
