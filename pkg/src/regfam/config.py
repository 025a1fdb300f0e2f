from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Caps:
    """Resource limits. Every search checks its cap and raises ResourceError."""

    canon_vertices: int = 10
    star_pieces: int = 12
    pieces: int = 10_000
    regex_nodes: int = 1_000_000
    search_budget: int = 2_000_000
    monoid_size: int = 10_000
    parikh_states: int = 2_000
    oracle_store_vertices: int = 8
    oracle_max_len: int = 64

    def __post_init__(self):
        for name, value in self.__dict__.items():
            if value <= 0:
                raise ValueError(f"cap {name} must be positive, got {value}")

    def with_(self, **kw) -> "Caps":
        return replace(self, **kw)


DEFAULT_CAPS = Caps()
