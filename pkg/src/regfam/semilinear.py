"""Linear and semilinear subsets of N^d.

Vectors are plain tuples of non-negative ints.  A linear piece is a base
vector plus the monoid generated by finitely many period vectors.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .config import DEFAULT_CAPS
from .errors import DimensionError, ParseError, ResourceError

Vector = tuple[int, ...]


def vadd(u: Vector, v: Vector) -> Vector:
    return tuple(x + y for x, y in zip(u, v))


def vsub(u: Vector, v: Vector) -> Vector:
    return tuple(x - y for x, y in zip(u, v))


def vle(u: Vector, v: Vector) -> bool:
    return all(x <= y for x, y in zip(u, v))


def vsum(vs: Iterable[Vector], dim: int) -> Vector:
    out = [0] * dim
    for v in vs:
        for i, x in enumerate(v):
            out[i] += x
    return tuple(out)


def unit(dim: int, i: int) -> Vector:
    return tuple(1 if k == i else 0 for k in range(dim))


def support(v: Vector) -> frozenset[int]:
    return frozenset(i for i, x in enumerate(v) if x)


def format_vec(v: Vector) -> str:
    return ",".join(str(x) for x in v)


@dataclass(frozen=True)
class LinearPiece:
    base: Vector
    periods: tuple[Vector, ...] = ()

    def __post_init__(self):
        base = tuple(int(x) for x in self.base)
        if any(x < 0 for x in base):
            raise ValueError(f"negative base entry in {base}")
        periods = set()
        for p in self.periods:
            p = tuple(int(x) for x in p)
            if len(p) != len(base):
                raise DimensionError(f"period {p} has dimension {len(p)}, base has {len(base)}")
            if any(x < 0 for x in p):
                raise ValueError(f"negative period entry in {p}")
            if any(p):
                periods.add(p)
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "periods", tuple(sorted(periods)))

    @property
    def dim(self) -> int:
        return len(self.base)

    @property
    def r(self) -> Vector:
        """Sum of the periods."""
        return vsum(self.periods, self.dim)

    def is_normal(self) -> bool:
        return vle(self.r, self.base)

    def contains(self, v: Vector) -> bool:
        if len(v) != self.dim:
            raise DimensionError(f"vector of dimension {len(v)} against piece of dimension {self.dim}")
        rest = vsub(tuple(v), self.base)
        if any(x < 0 for x in rest):
            return False
        return _in_monoid(self.periods, rest)

    def members(self, bound: int) -> set[Vector]:
        """Members with every coordinate at most ``bound``."""
        if any(x > bound for x in self.base):
            return set()
        out = {self.base}
        stack = [self.base]
        while stack:
            v = stack.pop()
            for p in self.periods:
                w = vadd(v, p)
                if w not in out and all(x <= bound for x in w):
                    out.add(w)
                    stack.append(w)
        return out

    def dump(self) -> str:
        return f"q={format_vec(self.base)} P={{{';'.join(format_vec(p) for p in self.periods)}}}"


@lru_cache(maxsize=200_000)
def _in_monoid(periods: tuple[Vector, ...], v: Vector) -> bool:
    """Is ``v`` a non-negative integer combination of ``periods``?"""
    if not any(v):
        return True
    if not periods:
        return False
    p, rest = periods[0], periods[1:]
    # bound on the multiplicity of p from any coordinate where p is positive
    kmax = min(v[i] // x for i, x in enumerate(p) if x)
    for k in range(kmax, -1, -1):
        w = tuple(a - k * b for a, b in zip(v, p))
        if _in_monoid(rest, w):
            return True
    return False


def piece_subsumed(a: LinearPiece, b: LinearPiece) -> bool:
    """Sufficient test for ``a`` being a subset of ``b``."""
    if not b.contains(a.base):
        return False
    return all(_in_monoid(b.periods, p) for p in a.periods)


@dataclass(frozen=True)
class SemilinearSet:
    dim: int
    pieces: tuple[LinearPiece, ...] = ()

    def __post_init__(self):
        uniq = []
        seen = set()
        for pc in self.pieces:
            if pc.dim != self.dim:
                raise DimensionError(f"piece of dimension {pc.dim} in a set of dimension {self.dim}")
            if pc not in seen:
                seen.add(pc)
                uniq.append(pc)
        object.__setattr__(self, "pieces", tuple(uniq))

    @classmethod
    def empty(cls, dim: int) -> "SemilinearSet":
        return cls(dim, ())

    @classmethod
    def zero(cls, dim: int) -> "SemilinearSet":
        return cls(dim, (LinearPiece((0,) * dim),))

    @classmethod
    def single(cls, v: Vector) -> "SemilinearSet":
        return cls(len(v), (LinearPiece(v),))

    def _check(self, other: "SemilinearSet"):
        if self.dim != other.dim:
            raise DimensionError(f"dimensions differ: {self.dim} vs {other.dim}")

    def union(self, other: "SemilinearSet") -> "SemilinearSet":
        self._check(other)
        return SemilinearSet(self.dim, self.pieces + other.pieces)

    def sum(self, other: "SemilinearSet") -> "SemilinearSet":
        self._check(other)
        return SemilinearSet(
            self.dim,
            tuple(
                LinearPiece(vadd(a.base, b.base), a.periods + b.periods)
                for a in self.pieces
                for b in other.pieces
            ),
        )

    def star(self, cap: int = DEFAULT_CAPS.star_pieces) -> "SemilinearSet":
        # (A | B)* = A* + B*, and (q + N P)* = {0} | (q + N({q} | P)); expanding
        # gives one piece per nonempty subset of pieces, simplified as we go
        zero = (0,) * self.dim
        useful = [pc for pc in self.simplify().pieces if any(pc.base) or pc.periods]
        if len(useful) > cap:
            raise ResourceError(f"star over {len(useful)} pieces exceeds cap {cap}")
        acc = SemilinearSet.zero(self.dim)
        for pc in useful:
            if pc.periods:
                own = (LinearPiece(zero), LinearPiece(pc.base, pc.periods + (pc.base,)))
            else:
                # {0} | (q + Nq) is just Nq
                own = (LinearPiece(zero, (pc.base,)),)
            acc = acc.sum(SemilinearSet(self.dim, own)).simplify()
        return acc

    def contains(self, v: Vector) -> bool:
        v = tuple(v)
        if len(v) != self.dim:
            raise DimensionError(f"vector of dimension {len(v)} against set of dimension {self.dim}")
        return any(pc.contains(v) for pc in self.pieces)

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def members(self, bound: int) -> set[Vector]:
        out = set()
        for pc in self.pieces:
            out |= pc.members(bound)
        return out

    def simplify(self) -> "SemilinearSet":
        """Drop pieces contained in another piece."""
        pieces = list(self.pieces)
        pieces.sort(key=lambda pc: (-len(pc.periods), sum(pc.base)))
        kept: list[LinearPiece] = []
        for pc in pieces:
            if not any(piece_subsumed(pc, k) for k in kept):
                kept = [k for k in kept if not piece_subsumed(k, pc)]
                kept.append(pc)
        # keep the original relative order for determinism
        order = {pc: i for i, pc in enumerate(self.pieces)}
        kept.sort(key=order.__getitem__)
        return SemilinearSet(self.dim, tuple(kept))

    def normalize(self, cap: int = DEFAULT_CAPS.pieces) -> "SemilinearSet":
        """Split pieces until every piece has period sum at most its base.

        The split uses q + N{p1..pk} = (q + N{p2..pk}) | (q + p1 + N{p1..pk})
        with p1 positive in a coordinate where the periods overshoot q.
        """
        work = list(self.pieces)
        done: list[LinearPiece] = []
        while work:
            pc = work.pop()
            r = pc.r
            deficit = [i for i in range(self.dim) if r[i] > pc.base[i]]
            if not deficit:
                done.append(pc)
                continue
            z = deficit[0]
            p1 = next(p for p in pc.periods if p[z] > 0)
            work.append(LinearPiece(pc.base, tuple(p for p in pc.periods if p != p1)))
            work.append(LinearPiece(vadd(pc.base, p1), pc.periods))
            if len(work) + len(done) > cap:
                raise ResourceError(f"normalization exceeds {cap} pieces")
        done.reverse()
        return SemilinearSet(self.dim, tuple(_merge_splits(done))).simplify()

    def dump(self) -> str:
        return "\n".join(pc.dump() for pc in self.pieces)

    @classmethod
    def load(cls, text: str, dim: int | None = None) -> "SemilinearSet":
        pieces = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            try:
                q_part, p_part = line.split(" P=")
                base = _parse_vec(q_part.removeprefix("q="))
                p_part = p_part.strip()
                if not (p_part.startswith("{") and p_part.endswith("}")):
                    raise ValueError
                body = p_part[1:-1]
                periods = tuple(_parse_vec(s) for s in body.split(";") if s)
            except (ValueError, IndexError):
                raise ParseError(f"bad piece line {line!r}") from None
            pieces.append(LinearPiece(base, periods))
        if dim is None:
            if not pieces:
                raise ParseError("cannot infer dimension of an empty dump")
            dim = pieces[0].dim
        return cls(dim, tuple(pieces))

    def __str__(self):
        return self.dump() or "<empty>"


def period_subsets(pc: LinearPiece, cap: int = DEFAULT_CAPS.pieces) -> list[tuple[Vector, ...]]:
    """One smallest period subset for each reachable union of period supports.

    Every normal piece q + sum(T) + N T with T a subset of the periods has
    the same support, and the same letters with positive period sum, as the
    representative chosen for the union of supports of T.
    """
    seen: dict[frozenset, tuple[Vector, ...]] = {frozenset(): ()}
    frontier = [frozenset()]
    while frontier:
        nxt = []
        for u in frontier:
            chosen = seen[u]
            for p in pc.periods:
                nu = u | support(p)
                if nu not in seen:
                    seen[nu] = chosen + (p,)
                    nxt.append(nu)
                    if len(seen) > cap:
                        raise ResourceError(f"support decomposition exceeds {cap} pieces")
        frontier = nxt
    return list(seen.values())


def _merge_splits(pieces: list[LinearPiece]) -> list[LinearPiece]:
    """Undo splits whose merged piece is already normal.

    (q, P - {p}) together with (q + p, P) is exactly (q, P).
    """
    pieces = list(pieces)
    changed = True
    while changed:
        changed = False
        for a, b in itertools.permutations(pieces, 2):
            extra = set(b.periods) - set(a.periods)
            if len(extra) != 1 or not set(a.periods) <= set(b.periods):
                continue
            (p,) = extra
            if vadd(a.base, p) != b.base:
                continue
            merged = LinearPiece(a.base, b.periods)
            if merged.is_normal():
                pieces = [pc for pc in pieces if pc not in (a, b)] + [merged]
                changed = True
                break
    return pieces


def _parse_vec(s: str) -> Vector:
    s = s.strip()
    return tuple(int(x) for x in s.split(",")) if s else ()


def box(dim: int, bound: int) -> Iterator[Vector]:
    return itertools.product(range(bound + 1), repeat=dim)
