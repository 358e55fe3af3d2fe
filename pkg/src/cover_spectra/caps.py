"""Size caps for the exponential routines.

Every enumeration in this package is exponential by design. The caps below
turn a runaway computation into a :class:`~cover_spectra.errors.CapExceeded`
error. Defaults can be overridden with environment variables
``COVER_SPECTRA_<FIELD>`` (upper case), or by passing a :class:`Caps` to
:func:`set_caps` / :func:`using_caps`.
"""
from __future__ import annotations

import contextlib
import dataclasses
import os


@dataclasses.dataclass(frozen=True)
class Caps:
    max_vertices: int = 16          # decision-only runs
    max_oracle_vertices: int = 12   # brute-force cross-checks
    max_edges: int = 32
    max_bruteforce_matching_vertices: int = 14
    max_frontier: int = 20
    max_paths: int = 200_000
    max_cover_vertices: int = 400
    max_ball_vertices: int = 5_000
    max_probe_dimension: int = 2_000
    max_irreducible_degree: int = 8

    @classmethod
    def from_env(cls) -> "Caps":
        kwargs = {}
        for field in dataclasses.fields(cls):
            raw = os.environ.get("COVER_SPECTRA_" + field.name.upper())
            if raw is not None:
                kwargs[field.name] = int(raw)
        return cls(**kwargs)


_current = Caps.from_env()


def get_caps() -> Caps:
    return _current


def set_caps(caps: Caps) -> None:
    global _current
    _current = caps


@contextlib.contextmanager
def using_caps(**overrides):
    """Temporarily override some caps: ``with using_caps(max_vertices=20): ...``"""
    global _current
    saved = _current
    _current = dataclasses.replace(saved, **overrides)
    try:
        yield _current
    finally:
        _current = saved
