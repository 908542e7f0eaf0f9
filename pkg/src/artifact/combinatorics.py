"""2-regular quivers with a permutation f, the derived g and the Brauer graph.

Arrow and vertex ids are strings.  Arrows are kept in sorted id order; that
order fixes arrow indices everywhere else in the package.  Vertices are sorted
with numeric ids before others (so "10" comes after "9").
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import FNotCompatible, MalformedPermutation, NotTwoRegular

__all__ = [
    "Quiver2Reg",
    "BrauerGraph",
    "build_quiver",
    "brauer_graph",
    "graph_predicates",
    "vertex_key",
    "quiver_K",
    "quiver_B",
    "quiver_R",
    "quiver_single_edge",
    "quiver_tree2",
]


def vertex_key(v: str) -> tuple:
    return (0, int(v), "") if v.isdigit() else (1, 0, v)


def _cycles_of(perm: dict[str, str], order: Sequence[str]) -> list[tuple[str, ...]]:
    seen: set[str] = set()
    out = []
    for a in order:
        if a in seen:
            continue
        cyc = [a]
        seen.add(a)
        b = perm[a]
        while b != a:
            cyc.append(b)
            seen.add(b)
            b = perm[b]
        out.append(tuple(cyc))
    return out


@dataclass(frozen=True)
class Quiver2Reg:
    """Validated 2-regular quiver with f, bar and g = bar o f.

    Use :func:`build_quiver` rather than the constructor.
    """

    vertices: tuple[str, ...]
    arrows: tuple[str, ...]
    src: dict[str, str]
    tgt: dict[str, str]
    bar: dict[str, str]
    f: dict[str, str]
    g: dict[str, str]
    index: dict[str, int] = field(repr=False)

    @property
    def n_arrows(self) -> int:
        return len(self.arrows)

    def finv(self, a: str) -> str:
        return self._finv[a]

    def ginv(self, a: str) -> str:
        return self._ginv[a]

    def __post_init__(self) -> None:
        object.__setattr__(self, "_finv", {b: a for a, b in self.f.items()})
        object.__setattr__(self, "_ginv", {b: a for a, b in self.g.items()})

    # orbit data
    def g_orbits(self) -> list[tuple[str, ...]]:
        """g-orbits, each listed rep, g(rep), g^2(rep), ... with rep least."""
        return _cycles_of(self.g, self.arrows)

    def f_orbits(self) -> list[tuple[str, ...]]:
        return _cycles_of(self.f, self.arrows)

    def g_rep(self, a: str) -> str:
        return min(self._orbit_of(self.g, a))

    def f_rep(self, a: str) -> str:
        return min(self._orbit_of(self.f, a))

    def n(self, a: str) -> int:
        """Size of the g-orbit of ``a``."""
        return len(self._orbit_of(self.g, a))

    def _orbit_of(self, perm: dict[str, str], a: str) -> list[str]:
        out = [a]
        b = perm[a]
        while b != a:
            out.append(b)
            b = perm[b]
        return out

    def g_path(self, a: str, length: int) -> tuple[str, ...]:
        """a, g(a), ..., of the given length."""
        out = []
        for _ in range(length):
            out.append(a)
            a = self.g[a]
        return tuple(out)

    def out_arrows(self, v: str) -> list[str]:
        return [a for a in self.arrows if self.src[a] == v]

    def is_connected(self) -> bool:
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for a in self.arrows:
            adj[self.src[a]].add(self.tgt[a])
            adj[self.tgt[a]].add(self.src[a])
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    def f_cycles(self) -> list[tuple[str, ...]]:
        return self.f_orbits()

    def raw(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [(a, self.src[a], self.tgt[a]) for a in self.arrows],
            "f": [list(c) for c in self.f_cycles()],
        }


def build_quiver(
    vertices: Iterable[str],
    arrows: Iterable[tuple[str, str, str]],
    f_cycles: Iterable[Sequence[str]],
) -> Quiver2Reg:
    """Validate raw data and derive bar and g.

    ``f_cycles`` must mention every arrow exactly once; fixed points are
    written as 1-cycles.
    """
    verts = [str(v) for v in vertices]
    if len(set(verts)) != len(verts):
        raise NotTwoRegular("duplicate vertex id")
    if not verts:
        raise NotTwoRegular("quiver has no vertices")
    arrow_list = [(str(a), str(s), str(t)) for a, s, t in arrows]
    ids = [a for a, _, _ in arrow_list]
    dup = [a for a, k in Counter(ids).items() if k > 1]
    if dup:
        raise MalformedPermutation(f"duplicate arrow ids: {sorted(dup)}")
    src = {a: s for a, s, _ in arrow_list}
    tgt = {a: t for a, _, t in arrow_list}
    vset = set(verts)
    for a in ids:
        if src[a] not in vset or tgt[a] not in vset:
            raise NotTwoRegular(f"arrow {a} uses an unknown vertex")
    outdeg = Counter(src.values())
    indeg = Counter(tgt.values())
    for v in verts:
        if outdeg[v] != 2 or indeg[v] != 2:
            raise NotTwoRegular(f"vertex {v} has out-degree {outdeg[v]} and in-degree {indeg[v]}")

    f: dict[str, str] = {}
    for cyc in f_cycles:
        cyc = [str(a) for a in cyc]
        if not cyc:
            raise MalformedPermutation("empty cycle")
        if len(set(cyc)) != len(cyc):
            raise MalformedPermutation(f"cycle {cyc} repeats an arrow")
        for i, a in enumerate(cyc):
            if a not in src:
                raise MalformedPermutation(f"unknown arrow {a} in f")
            if a in f:
                raise MalformedPermutation(f"arrow {a} occurs in two cycles of f")
            f[a] = cyc[(i + 1) % len(cyc)]
    missing = sorted(set(ids) - set(f))
    if missing:
        raise MalformedPermutation(f"f does not mention {missing}; write fixed points as 1-cycles")
    for a in ids:
        if tgt[a] != src[f[a]]:
            raise FNotCompatible(f"target of {a} is {tgt[a]} but f({a}) = {f[a]} starts at {src[f[a]]}")

    bar = {}
    for a in ids:
        (other,) = [b for b in ids if b != a and src[b] == src[a]]
        bar[a] = other
    g = {a: bar[f[a]] for a in ids}
    arrows_sorted = tuple(sorted(ids))
    return Quiver2Reg(
        vertices=tuple(sorted(verts, key=vertex_key)),
        arrows=arrows_sorted,
        src=src,
        tgt=tgt,
        bar=bar,
        f=f,
        g=g,
        index={a: i for i, a in enumerate(arrows_sorted)},
    )


@dataclass(frozen=True)
class BrauerGraph:
    vertices: tuple[str, ...]  # g-orbit representatives
    edges: tuple[tuple[str, str, str], ...]  # (quiver vertex, end orbit, end orbit)
    half_edges: dict[str, tuple[tuple[str, str], ...]]  # orbit -> cyclic (edge, arrow)

    def successor(self, half: tuple[str, str], q: Quiver2Reg) -> tuple[str, str]:
        _, a = half
        b = q.g[a]
        return (q.src[b], b)

    def to_dot(self) -> str:
        lines = ["graph brauer {"]
        for v in self.vertices:
            lines.append(f'  "{v}";')
        for e, u, w in self.edges:
            lines.append(f'  "{u}" -- "{w}" [label="{e}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def brauer_graph(q: Quiver2Reg) -> BrauerGraph:
    reps = [orb[0] for orb in q.g_orbits()]
    edges = []
    for v in q.vertices:
        a, b = q.out_arrows(v)
        edges.append((v, q.g_rep(a), q.g_rep(b)))
    halves = {orb[0]: tuple((q.src[a], a) for a in orb) for orb in q.g_orbits()}
    return BrauerGraph(vertices=tuple(reps), edges=tuple(edges), half_edges=halves)


def graph_predicates(bg: BrauerGraph) -> dict[str, bool]:
    adj: dict[str, list[str]] = {v: [] for v in bg.vertices}
    pairs = Counter()
    has_loop = False
    for _, u, w in bg.edges:
        if u == w:
            has_loop = True
        adj[u].append(w)
        adj[w].append(u)
        pairs[frozenset((u, w))] += 1
    simple = not has_loop and all(k == 1 for k in pairs.values())

    colour: dict[str, int] = {}
    bipartite = not has_loop
    components = 0
    for start in bg.vertices:
        if start in colour:
            continue
        components += 1
        colour[start] = 0
        stack = [start]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in colour:
                    colour[w] = 1 - colour[u]
                    stack.append(w)
                elif colour[w] == colour[u]:
                    bipartite = False
    return {"bipartite": bipartite, "simple": simple, "connected": components == 1}


# Standard quivers -----------------------------------------------------------

def quiver_K() -> Quiver2Reg:
    """Triangle quiver with f = (a1 a2 a3)(b3 b2 b1)."""
    arrows = [
        ("a1", "1", "2"), ("a2", "2", "3"), ("a3", "3", "1"),
        ("b1", "1", "3"), ("b2", "2", "1"), ("b3", "3", "2"),
    ]
    return build_quiver(["1", "2", "3"], arrows, [("a1", "a2", "a3"), ("b3", "b2", "b1")])


def quiver_B() -> Quiver2Reg:
    """Two vertices, a1: 1->2, a2: 2->1 and loops b1, b2; f = (a1 b2 a2)(b1)."""
    arrows = [("a1", "1", "2"), ("a2", "2", "1"), ("b1", "1", "1"), ("b2", "2", "2")]
    return build_quiver(["1", "2"], arrows, [("a1", "b2", "a2"), ("b1",)])


def quiver_R() -> Quiver2Reg:
    """Oriented triangle a1 a2 a3 with a loop b_i at each vertex; f = (a1 b2 a2 b3 a3 b1)."""
    arrows = [
        ("a1", "1", "2"), ("a2", "2", "3"), ("a3", "3", "1"),
        ("b1", "1", "1"), ("b2", "2", "2"), ("b3", "3", "3"),
    ]
    return build_quiver(["1", "2", "3"], arrows, [("a1", "b2", "a2", "b3", "a3", "b1")])


def quiver_single_edge() -> Quiver2Reg:
    """One vertex with loops a, b and f = (a b); the Brauer graph is one edge."""
    return build_quiver(["1"], [("a", "1", "1"), ("b", "1", "1")], [("a", "b")])


def quiver_tree2() -> Quiver2Reg:
    """Brauer tree with two edges: loops p, s and q: 1->2, r: 2->1, f = (p q s r)."""
    arrows = [("p", "1", "1"), ("q", "1", "2"), ("r", "2", "1"), ("s", "2", "2")]
    return build_quiver(["1", "2"], arrows, [("p", "q", "s", "r")])
