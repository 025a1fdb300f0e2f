"""Independent reference computations used to check the library.

Nothing here goes through the automata or semilinear code under test; the
language side relies on Python's ``re`` and the vector side on plain
enumeration.
"""
from __future__ import annotations

import itertools
import re


def words(alphabet: str, max_len: int):
    for n in range(max_len + 1):
        for tup in itertools.product(alphabet, repeat=n):
            yield "".join(tup)


def re_language(regex: str, max_len: int, alphabet: str = "ab") -> set[str]:
    pat = re.compile(regex)
    return {w for w in words(alphabet, max_len) if pat.fullmatch(w)}


def sampled_torsion(regex: str, context_len: int, max_exp: int = 16) -> tuple[int, int]:
    """First repeat of b^0, b^1, ... under the congruence restricted to short contexts.

    Two powers are identified when x b^n y and x b^m y agree on membership
    for every x, y over {a, b} of length at most ``context_len``.
    """
    pat = re.compile(regex)
    ctx = list(words("ab", context_len))
    seen: dict[tuple, int] = {}
    for n in range(max_exp + 1):
        mid = "b" * n
        sig = tuple(bool(pat.fullmatch(x + mid + y)) for x in ctx for y in ctx)
        if sig in seen:
            t = seen[sig]
            return t, n - t
        seen[sig] = n
    raise AssertionError(f"no repeat among b^0..b^{max_exp}")


def sampled_congruent(regex: str, n: int, m: int, context_len: int) -> bool:
    """b^n and b^m agree on membership in every context of the given length."""
    pat = re.compile(regex)
    u, v = "b" * n, "b" * m
    ctx = list(words("ab", context_len))
    return all(bool(pat.fullmatch(x + u + y)) == bool(pat.fullmatch(x + v + y)) for x in ctx for y in ctx)


def parikh_vectors(language: set[str], letters: str) -> set[tuple[int, ...]]:
    return {tuple(w.count(c) for c in letters) for w in language}


# -- brute-force semilinear sets -----------------------------------------------

def linear_members(base, periods, bound: int) -> set[tuple[int, ...]]:
    """Members of base + N periods with every coordinate at most ``bound``."""
    out = set()
    base = tuple(base)
    if any(x > bound for x in base):
        return out
    limits = []
    for p in periods:
        pos = [bound // x for x in p if x]
        limits.append(min(pos) if pos else 0)
    for ks in itertools.product(*(range(k + 1) for k in limits)):
        v = list(base)
        for k, p in zip(ks, periods):
            for i, x in enumerate(p):
                v[i] += k * x
        if all(x <= bound for x in v):
            out.add(tuple(v))
    return out


def set_members(pieces, bound: int) -> set[tuple[int, ...]]:
    out = set()
    for base, periods in pieces:
        out |= linear_members(base, periods, bound)
    return out


def closure_sum(a: set, b: set, bound: int) -> set:
    return {tuple(x + y for x, y in zip(u, v)) for u in a for v in b if all(x + y <= bound for x, y in zip(u, v))}


def closure_star(a: set, dim: int, bound: int) -> set:
    """All sums of finitely many members of ``a`` that stay within the box."""
    out = {(0,) * dim}
    frontier = set(out)
    while frontier:
        nxt = closure_sum(frontier, a, bound) - out
        out |= nxt
        frontier = nxt
    return out


def random_pieces(rng, dim: int, count: int, max_periods: int = 2, top: int = 3):
    """Random (base, periods) pairs with small entries."""
    out = []
    for _ in range(count):
        base = tuple(rng.randint(0, top) for _ in range(dim))
        periods = [tuple(rng.randint(0, top - 1) for _ in range(dim)) for _ in range(rng.randint(0, max_periods))]
        out.append((base, periods))
    return out
