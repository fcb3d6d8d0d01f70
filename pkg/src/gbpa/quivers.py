"""Quivers, paths and relations.

The same combinatorial substrate serves both outer quivers and the
presentation quivers of vertex algebras.  Vertex and arrow identifiers are
strings; paths are stored as ordered arrow-name tuples together with their
endpoints, so a stationary path at ``v`` is ``Path(v, v, ())``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class QuiverError(ValueError):
    pass


class CycleError(QuiverError):
    """Raised when an acyclic quiver was required; carries one cycle."""

    def __init__(self, cycle: Sequence[str]) -> None:
        self.cycle = tuple(cycle)
        super().__init__("quiver has a cycle: " + " -> ".join(self.cycle))


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


class Quiver:
    """Finite directed multigraph with named vertices and arrows."""

    def __init__(self, vertices: Iterable[str], arrows: Iterable[Arrow]) -> None:
        self.vertices = tuple(vertices)
        self.arrows = tuple(arrows)
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex identifiers")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise QuiverError("duplicate arrow identifiers")
        vset = set(self.vertices)
        for a in self.arrows:
            if a.source not in vset or a.target not in vset:
                raise QuiverError(f"arrow {a.name}: unknown endpoint")
        self._by_name = {a.name: a for a in self.arrows}
        self._out = {v: tuple(a for a in self.arrows if a.source == v)
                     for v in self.vertices}
        self._in = {v: tuple(a for a in self.arrows if a.target == v)
                    for v in self.vertices}

    def arrow(self, name: str) -> Arrow:
        try:
            return self._by_name[name]
        except KeyError:
            raise QuiverError(f"unknown arrow {name!r}") from None

    def arrows_from(self, v: str) -> tuple:
        return self._out[v]

    def arrows_into(self, v: str) -> tuple:
        return self._in[v]

    def has_vertex(self, v: str) -> bool:
        return v in self._out

    def stationary_path(self, v: str) -> "Path":
        if not self.has_vertex(v):
            raise QuiverError(f"unknown vertex {v!r}")
        return Path(v, v, ())

    def path(self, arrow_names: Sequence[str]) -> "Path":
        """Path from an ordered list of composable arrow names."""
        if not arrow_names:
            raise QuiverError("empty arrow list: use stationary_path")
        arrows = [self.arrow(n) for n in arrow_names]
        for a, b in zip(arrows, arrows[1:]):
            if a.target != b.source:
                raise QuiverError(f"arrows {a.name}, {b.name} do not compose")
        return Path(arrows[0].source, arrows[-1].target, tuple(arrow_names))

    def __eq__(self, other) -> bool:
        return (isinstance(other, Quiver) and other.vertices == self.vertices
                and other.arrows == self.arrows)

    def __hash__(self):
        return hash((self.vertices, self.arrows))

    def __repr__(self) -> str:
        return f"Quiver({len(self.vertices)} vertices, {len(self.arrows)} arrows)"


@dataclass(frozen=True)
class Path:
    """Composable arrow sequence; empty sequence = stationary path."""

    source: str
    target: str
    arrows: tuple

    @property
    def length(self) -> int:
        return len(self.arrows)

    def sort_key(self) -> tuple:
        # Stationary paths compare by vertex, longer paths by arrow ids.
        return (len(self.arrows), self.arrows if self.arrows else (self.source,))

    def compose(self, other: "Path") -> "Path | None":
        """Concatenation self then other; None when endpoints do not meet."""
        if self.target != other.source:
            return None
        if not self.arrows:
            return other
        if not other.arrows:
            return self
        return Path(self.source, other.target, self.arrows + other.arrows)

    def reversed(self) -> "Path":
        return Path(self.target, self.source, tuple(reversed(self.arrows)))

    def __str__(self) -> str:
        if not self.arrows:
            return f"e_{self.source}"
        return "*".join(self.arrows)


class Relation:
    """k-linear combination of parallel paths of length >= 2.

    Coefficients are stored as exact rationals and coerced into the working
    field by the algebra that consumes the relation.
    """

    def __init__(self, terms: Iterable[tuple]) -> None:
        combined: dict = {}
        for coeff, path in terms:
            c = Fraction(coeff)
            if not isinstance(path, Path):
                raise QuiverError("relation terms must contain Path objects")
            combined[path] = combined.get(path, Fraction(0)) + c
        cleaned = [(c, p) for p, c in combined.items() if c != 0]
        if not cleaned:
            raise QuiverError("relation has no nonzero term")
        srcs = {p.source for _, p in cleaned}
        tgts = {p.target for _, p in cleaned}
        if len(srcs) != 1 or len(tgts) != 1:
            raise QuiverError("relation terms are not parallel")
        if any(p.length < 2 for _, p in cleaned):
            raise QuiverError("relation terms must have length >= 2")
        cleaned.sort(key=lambda t: t[1].sort_key())
        self.terms = tuple(cleaned)
        self.source = next(iter(srcs))
        self.target = next(iter(tgts))

    def reversed(self) -> "Relation":
        return Relation([(c, p.reversed()) for c, p in self.terms])

    def __eq__(self, other) -> bool:
        return isinstance(other, Relation) and other.terms == self.terms

    def __hash__(self):
        return hash(self.terms)

    def __str__(self) -> str:
        parts = []
        for c, p in self.terms:
            parts.append(f"({c})*{p}" if c != 1 else str(p))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Relation({self})"


def is_acyclic(q: Quiver) -> bool:
    try:
        topological_order(q)
        return True
    except CycleError:
        return False


def topological_order(q: Quiver) -> list:
    """Kahn's algorithm with lexicographic tie-breaking.

    Lists every vertex before its proper successors; raises
    :class:`CycleError` naming a cycle otherwise.
    """
    indeg = {v: 0 for v in q.vertices}
    for a in q.arrows:
        indeg[a.target] += 1
    ready = sorted(v for v, d in indeg.items() if d == 0)
    order = []
    while ready:
        v = ready.pop(0)
        order.append(v)
        changed = False
        for a in q.arrows_from(v):
            indeg[a.target] -= 1
            if indeg[a.target] == 0:
                ready.append(a.target)
                changed = True
        if changed:
            ready.sort()
    if len(order) != len(q.vertices):
        remaining = [v for v in q.vertices if indeg[v] > 0]
        raise CycleError(_find_cycle(q, remaining))
    return order


def _find_cycle(q: Quiver, candidates: list) -> list:
    # Each leftover vertex keeps an incoming arrow from the leftover set, so
    # walking backwards must eventually revisit a vertex.
    inside = set(candidates)
    v = candidates[0]
    seen: list = []
    while v not in seen:
        seen.append(v)
        v = next(a.source for a in q.arrows_into(v) if a.source in inside)
    i = seen.index(v)
    cycle = seen[i:] + [v]
    cycle.reverse()
    return cycle


def enumerate_paths(q: Quiver, max_len: int) -> list:
    """All paths of length <= max_len, sorted by (length, arrow ids).

    Stationary paths come first (ordered by vertex id).  On an acyclic quiver
    the enumeration stabilizes once max_len reaches |vertices| - 1.
    """
    if max_len < 0:
        raise QuiverError("max_len must be >= 0")
    out = [q.stationary_path(v) for v in sorted(q.vertices)]
    frontier = list(out)
    for _ in range(max_len):
        nxt = []
        for p in frontier:
            for a in q.arrows_from(p.target):
                nxt.append(Path(p.source, a.target, p.arrows + (a.name,)))
        if not nxt:
            break
        out.extend(nxt)
        frontier = nxt
    out.sort(key=Path.sort_key)
    return out


def successors(q: Quiver, v: str) -> tuple:
    """(immediate, proper) successor vertex sets of ``v``.

    ``immediate`` holds the targets of arrows out of ``v``; ``proper`` the
    vertices reachable along paths of positive length.
    """
    if not q.has_vertex(v):
        raise QuiverError(f"unknown vertex {v!r}")
    immediate = frozenset(a.target for a in q.arrows_from(v))
    proper = set()
    stack = list(immediate)
    while stack:
        w = stack.pop()
        if w in proper:
            continue
        proper.add(w)
        stack.extend(a.target for a in q.arrows_from(w))
    return immediate, frozenset(proper)
