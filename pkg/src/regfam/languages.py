"""Named example languages."""
from __future__ import annotations

from .codec import edge_word

STARS = "(abaaabbb*a)*(aba)"
CLIQUES = "(ab+aaab+a)+"
SINGLE_VERTEX = "(aba)+"
BICLIQUES = "(abb(bb)*aaabbb(bb)*a)+"


def crown_regex(n: int) -> str:
    """Cycle 1 -> 2 -> ... -> n -> 1 with an optional spike n+i -> i per vertex."""
    if n < 3:
        raise ValueError("a crown needs at least 3 cycle vertices")
    cycle = "".join(edge_word(i, i % n + 1) for i in range(1, n + 1))
    spikes = "".join(f"({edge_word(n + i, i)})?" for i in range(1, n + 1))
    return cycle + spikes
