"""Two-term silting posets, irreducible mutation, lifting and transport.

A node is a basic silting complex stored as its indecomposable summands
(minimal complexes, sorted by fingerprint).  Left mutation at a summand X
replaces X by the cone of a minimal left add(T/X)-approximation of X; right
mutation uses the cocone of a minimal right approximation.  Minimal
approximations are built directly: the multiplicity of a summand M in the
target is the dimension of Hom(X, M) modulo the maps that factor through a
radical map into M.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from .algebra import SCAlgebra
from .errors import (
    ApproximationNotFound,
    CorrectionUnsolvable,
    NodeCapExceeded,
    NotPresiltingInput,
    ResultNotPresilting,
)
from .homotopy import (
    ChainMap,
    ProjComplex,
    _HomComplex,
    _identity_map,
    _nilpotent,
    amul,
    decompose,
    direct_sum,
    end_is_local,
    fingerprint,
    hom_dim,
    hom_space,
    is_isomorphic,
    is_presilting,
    minimize,
    stalk,
)
from .linalg import RowSpace, int_det, matmul, solve_left
from .orders import QuotientAlgebra, TruncOrder, reduce_mod

__all__ = [
    "SiltingNode",
    "SiltingPoset",
    "Certificate",
    "make_node",
    "order_leq",
    "irreducible_mutation",
    "certify_silting",
    "enumerate_two_term",
    "compare_posets",
    "check_involution",
    "lift_complex",
    "transport",
    "transport_node",
    "quotient_of",
]


# Nodes -----------------------------------------------------------------------------

@dataclass
class SiltingNode:
    summands: list[ProjComplex]
    key: tuple
    provenance: tuple = ()

    @property
    def complex(self) -> ProjComplex:
        return direct_sum(*self.summands)

    @property
    def alg(self) -> SCAlgebra:
        return self.summands[0].alg

    def g_vectors(self) -> list[tuple[int, ...]]:
        return [s.k0_class() for s in self.summands]

    def to_json(self) -> dict:
        return {
            "g_vectors": [list(g) for g in self.g_vectors()],
            "summands": [s.to_json() for s in self.summands],
            "provenance": [list(step) for step in self.provenance],
        }


def _node_key(summands: list[ProjComplex]) -> tuple:
    return tuple(sorted(fingerprint(s) for s in summands))


def make_node(summands: list[ProjComplex], provenance: tuple = ()) -> SiltingNode:
    summands = sorted(summands, key=fingerprint)
    return SiltingNode(summands, _node_key(summands), provenance)


def node_from_complex(T: ProjComplex) -> SiltingNode:
    return make_node(decompose(T))


def same_node(a: SiltingNode, b: SiltingNode) -> bool:
    """Summand-wise isomorphism, matching within groups of equal fingerprints."""
    if a.key != b.key:
        return False
    used = [False] * len(b.summands)
    for s in a.summands:
        fp = fingerprint(s)
        for j, t in enumerate(b.summands):
            if not used[j] and fingerprint(t) == fp and is_isomorphic(s, t):
                used[j] = True
                break
        else:
            return False
    return True


# Order and certification -------------------------------------------------------------

def _window(S: ProjComplex, T: ProjComplex) -> range:
    return range(1, max(S.hi, T.hi) - min(S.lo, T.lo) + 1)


def order_geq(S: ProjComplex, T: ProjComplex) -> bool:
    """S >= T iff Hom(S, T[i]) = 0 for all i > 0."""
    return all(hom_dim(S, T, i) == 0 for i in _window(S, T))


def order_leq(S, T) -> bool:
    """S <= T in the silting order (nodes or complexes)."""
    S = S.complex if isinstance(S, SiltingNode) else S
    T = T.complex if isinstance(T, SiltingNode) else T
    return order_geq(T, S)


@dataclass(frozen=True)
class Certificate:
    kind: str  # "two-term K0 basis", "mutation path" or "uncertified"
    ok: bool
    presilting: bool
    summands: int
    determinant: int | None = None
    reason: str = ""


def certify_silting(T: ProjComplex | SiltingNode, path: tuple | None = None) -> Certificate:
    """Presilting plus, for two-term complexes, a unimodular K0 basis of summand classes.

    Longer complexes are certified only by a recorded mutation path.
    """
    node = T if isinstance(T, SiltingNode) else node_from_complex(T)
    if not node.summands:
        return Certificate("uncertified", False, True, 0, reason="zero complex")
    C = node.complex
    pre, _ = is_presilting(C)
    n = len(C.alg.vertices)
    k = len(node.summands)
    if not pre:
        return Certificate("uncertified", False, False, k, reason="not presilting")
    if C.hi - C.lo <= 1:
        if k != n:
            return Certificate("uncertified", False, True, k, reason=f"{k} summands, {n} simples")
        det = int_det([list(g) for g in node.g_vectors()])
        ok = abs(det) == 1
        return Certificate("two-term K0 basis", ok, True, k, det, "" if ok else "K0 classes not unimodular")
    if path or node.provenance:
        return Certificate("mutation path", True, True, k)
    return Certificate("uncertified", False, True, k, reason="longer than two terms without a mutation path")


# Approximations and mutation ------------------------------------------------------------

def _hom_maps(S: ProjComplex, T: ProjComplex) -> tuple[list[ChainMap], object]:
    H = hom_space(S, T, 0)
    return H.basis(), H


def _radical_endos(M: ProjComplex) -> list[ChainMap]:
    """Radical of End(M) for an indecomposable M with residue field GF(p)."""
    p = M.alg.p
    one = _identity_map(M)
    eye = np.eye(one.top().shape[0], dtype=np.int64)
    out = []
    for g in hom_space(M, M, 0).basis():
        t = g.top()
        lam = next((l for l in range(p) if _nilpotent((t - l * eye) % p, p)), None)
        if lam is None:
            raise ApproximationNotFound("endomorphism ring of a summand is not split local")
        out.append(g.scaled_add(one, -lam))
    return out


def _radical_maps(Mj: ProjComplex, Mi: ProjComplex, same: bool) -> list[ChainMap]:
    return _radical_endos(Mi) if same else _hom_maps(Mj, Mi)[0]


def _complement(H, maps: list[ChainMap], sub: list[ChainMap]) -> list[ChainMap]:
    """Maps from ``maps`` spanning a complement of span(sub) + boundaries."""
    hom = H.hom
    size = len(hom.index(0))
    space = RowSpace(size, hom.alg.p)
    if H.boundaries.dim:
        space.add(H.boundaries.rows)
    for f in sub:
        space.add(hom.coords(f))
    out = []
    for f in maps:
        if space.add(hom.coords(f)).shape[0]:
            out.append(f)
    return out


def _left_approximation(X: ProjComplex, others: list[ProjComplex]) -> list[tuple[int, ChainMap]]:
    """Minimal left add(others)-approximation as a list of (summand index, map X -> M)."""
    homs = [_hom_maps(X, M) for M in others]
    out = []
    for i, Mi in enumerate(others):
        maps, H = homs[i]
        if not maps:
            continue
        sub = []
        for j, Mj in enumerate(others):
            for g in _radical_maps(Mj, Mi, i == j):
                for h in homs[j][0]:
                    sub.append(g.compose(h))
        out += [(i, f) for f in _complement(H, maps, sub)]
    return out


def _right_approximation(X: ProjComplex, others: list[ProjComplex]) -> list[tuple[int, ChainMap]]:
    """Minimal right add(others)-approximation as a list of (summand index, map M -> X)."""
    homs = [_hom_maps(M, X) for M in others]
    out = []
    for i, Mi in enumerate(others):
        maps, H = homs[i]
        if not maps:
            continue
        sub = []
        for j, Mj in enumerate(others):
            for g in _radical_maps(Mi, Mj, i == j):
                for h in homs[j][0]:
                    sub.append(h.compose(g))
        out += [(i, f) for f in _complement(H, maps, sub)]
    return out


def _cone(f_parts: list[tuple[int, ChainMap]], X: ProjComplex, others: list[ProjComplex]) -> ProjComplex:
    """cone(X -> sum of copies), terms X^{k+1} + T'^k, d = [[-d_X, 0], [f, d_T']]."""
    alg, p = X.alg, X.alg.p
    targets = [others[i] for i, _ in f_parts]
    Tp = direct_sum(*targets) if targets else ProjComplex(alg, {})
    degs = sorted({k - 1 for k in X.terms} | set(Tp.terms))
    terms = {k: X.term(k + 1) + Tp.term(k) for k in degs}
    diffs = {}
    for k in degs:
        if k + 1 not in terms:
            continue
        nx_src, nx_tgt = len(X.term(k + 1)), len(X.term(k + 2))
        nt_src, nt_tgt = len(Tp.term(k)), len(Tp.term(k + 1))
        d = np.zeros((nx_tgt + nt_tgt, nx_src + nt_src, alg.dim), dtype=np.int64)
        d[:nx_tgt, :nx_src] = (-X.d(k + 1)) % p
        d[nx_tgt:, nx_src:] = Tp.d(k)
        # f^{k+1}: X^{k+1} -> T'^{k+1}
        r0 = 0
        for _, f in f_parts:
            comp = f.comp(k + 1)
            d[nx_tgt + r0 : nx_tgt + r0 + comp.shape[0], :nx_src] = comp
            r0 += comp.shape[0]
        diffs[k] = d
    return ProjComplex(alg, terms, diffs)


def _cocone(g_parts: list[tuple[int, ChainMap]], X: ProjComplex, others: list[ProjComplex]) -> ProjComplex:
    """cone(T'' -> X)[-1]: terms T''^k + X^{k-1}, d = [[d_T'', 0], [-g, -d_X]] up to sign."""
    alg, p = X.alg, X.alg.p
    sources = [others[i] for i, _ in g_parts]
    Tpp = direct_sum(*sources) if sources else ProjComplex(alg, {})
    # cone(g) has terms T''^{k+1} + X^k; shifting by -1 gives T''^k + X^{k-1}
    degs = sorted(set(Tpp.terms) | {k + 1 for k in X.terms})
    terms = {k: Tpp.term(k) + X.term(k - 1) for k in degs}
    diffs = {}
    for k in degs:
        if k + 1 not in terms:
            continue
        a_src, a_tgt = len(Tpp.term(k)), len(Tpp.term(k + 1))
        b_src, b_tgt = len(X.term(k - 1)), len(X.term(k))
        d = np.zeros((a_tgt + b_tgt, a_src + b_src, alg.dim), dtype=np.int64)
        # cone(g)^j = T''^{j+1} + X^j with [[-d_T'', 0], [g, d_X]]; shift by -1 negates
        d[:a_tgt, :a_src] = Tpp.d(k)
        d[a_tgt:, a_src:] = (-X.d(k - 1)) % p
        c0 = 0
        for _, g in g_parts:
            comp = g.comp(k)
            d[a_tgt:, c0 : c0 + comp.shape[1]] = (-comp) % p
            c0 += comp.shape[1]
        diffs[k] = d
    return ProjComplex(alg, terms, diffs)


def irreducible_mutation(node: SiltingNode, index: int, direction: str = "left", check: bool = True) -> SiltingNode:
    """Left (going down) or right (going up) mutation at summand ``index``."""
    X = node.summands[index]
    others = [s for i, s in enumerate(node.summands) if i != index]
    if direction == "left":
        parts = _left_approximation(X, others)
        Y = minimize(_cone(parts, X, others))
    elif direction == "right":
        parts = _right_approximation(X, others)
        Y = minimize(_cocone(parts, X, others))
    else:
        raise ValueError("direction must be 'left' or 'right'")
    if Y.is_zero:
        raise ApproximationNotFound("mutation produced a zero summand")
    if check:
        Y.check()
        if not end_is_local(Y):
            raise ApproximationNotFound("the mutated summand is decomposable; the approximation is not minimal")
    new = make_node(others + [Y], node.provenance + ((index, direction),))
    if check:
        ok, witness = is_presilting(new.complex)
        if not ok:
            raise ResultNotPresilting(f"mutation of {node.key} at {index} ({direction}) is not presilting")
    return new


# Enumeration ---------------------------------------------------------------------------

@dataclass
class SiltingPoset:
    """Nodes with Hasse edges (i, j) meaning node i > node j by one left mutation."""

    alg: SCAlgebra
    nodes: list[SiltingNode] = field(default_factory=list)
    edges: set = field(default_factory=set)
    edge_summand: dict = field(default_factory=dict)  # (i, j) -> (summand at i, summand at j)
    _by_key: dict = field(default_factory=dict)

    def find(self, node: SiltingNode) -> int | None:
        for i in self._by_key.get(node.key, []):
            if same_node(self.nodes[i], node):
                return i
        return None

    def add(self, node: SiltingNode) -> tuple[int, bool]:
        i = self.find(node)
        if i is not None:
            return i, False
        self.nodes.append(node)
        self._by_key.setdefault(node.key, []).append(len(self.nodes) - 1)
        return len(self.nodes) - 1, True

    def graph(self) -> nx.DiGraph:
        G = nx.DiGraph()
        G.add_nodes_from(range(len(self.nodes)))
        G.add_edges_from(self.edges)
        return G

    def top(self) -> int:
        return 0

    def order_matrix(self) -> list[list[int]]:
        """M[i][j] = 1 iff node i >= node j (reachability in the Hasse diagram)."""
        G = self.graph()
        n = len(self.nodes)
        M = [[0] * n for _ in range(n)]
        for i in range(n):
            M[i][i] = 1
            for j in nx.descendants(G, i):
                M[i][j] = 1
        return M

    def to_dot(self) -> str:
        lines = ["digraph silting {", "  rankdir=TB;"]
        for i, node in enumerate(self.nodes):
            label = " | ".join(",".join(str(x) for x in g) for g in node.g_vectors())
            lines.append(f'  n{i} [label="{label}"];')
        for i, j in sorted(self.edges):
            lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self, order: bool = True) -> dict:
        out = {
            "nodes": [
                {"id": i, "g_vectors": [list(g) for g in n.g_vectors()], "fingerprint": repr(n.key)}
                for i, n in enumerate(self.nodes)
            ],
            "edges": [list(e) for e in sorted(self.edges)],
        }
        if order:
            out["order"] = self.order_matrix()
        return out


def _in_window(T: ProjComplex, lo: int = -1, hi: int = 0) -> bool:
    return T.is_zero or (T.lo >= lo and T.hi <= hi)


def enumerate_two_term(alg: SCAlgebra, cap: int = 5000, check: bool = True) -> SiltingPoset:
    """BFS over irreducible mutations inside degrees -1..0, starting at the regular complex."""
    poset = SiltingPoset(alg)
    start = make_node([stalk(alg, [v]) for v in range(len(alg.vertices))])
    poset.add(start)
    queue = deque([0])
    while queue:
        i = queue.popleft()
        node = poset.nodes[i]
        for s in range(len(node.summands)):
            for direction in ("left", "right"):
                X = node.summands[s]
                new = irreducible_mutation(node, s, direction, check=check)
                Y = next(t for t in new.summands if not any(t is u for u in node.summands))
                if not all(_in_window(t) for t in new.summands):
                    continue
                j, fresh = poset.add(new)
                if fresh:
                    if len(poset.nodes) > cap:
                        raise NodeCapExceeded(f"more than {cap} two-term silting complexes")
                    queue.append(j)
                edge = (i, j) if direction == "left" else (j, i)
                poset.edges.add(edge)
                if direction == "left":
                    poset.edge_summand.setdefault(edge, (X, Y))
                else:
                    poset.edge_summand.setdefault(edge, (Y, X))
    return poset


def check_involution(poset: SiltingPoset) -> list[tuple[int, int]]:
    """Edges where right mutation at the new summand fails to return the source."""
    bad = []
    for (i, j), (X, Y) in sorted(poset.edge_summand.items()):
        target = poset.nodes[j]
        idx = next(k for k, t in enumerate(target.summands) if t is Y or (fingerprint(t) == fingerprint(Y) and is_isomorphic(t, Y)))
        back = irreducible_mutation(target, idx, "right")
        if not same_node(back, poset.nodes[i]):
            bad.append((i, j))
    return bad


# Poset comparison ----------------------------------------------------------------------

def _levels(G: nx.DiGraph) -> dict[int, int]:
    roots = [v for v in G if G.in_degree(v) == 0]
    return nx.multi_source_dijkstra_path_length(G, roots) if roots else {v: 0 for v in G}


def compare_posets(P: SiltingPoset, Q: SiltingPoset, cap: int = 10**7, sample: int = 20, seed: int = 0):
    """An edge-preserving bijection of Hasse diagrams, None, or the string "inconclusive".

    Nodes are refined by level (distance from the top) and in/out degrees
    before the backtracking search.  The order relation is re-verified on a
    sample of pairs computed from the complexes themselves.
    """
    G, H = P.graph(), Q.graph()
    if G.number_of_nodes() != H.number_of_nodes() or G.number_of_edges() != H.number_of_edges():
        return None
    for graph in (G, H):
        lv = _levels(graph)
        for v in graph:
            graph.nodes[v]["inv"] = (lv.get(v, -1), graph.in_degree(v), graph.out_degree(v))
    steps = [0]

    def node_match(a: dict, b: dict) -> bool:
        steps[0] += 1
        if steps[0] > cap:
            raise _Cap()
        return a["inv"] == b["inv"]

    matcher = nx.algorithms.isomorphism.DiGraphMatcher(G, H, node_match=node_match)
    try:
        found = matcher.is_isomorphic()
    except _Cap:
        return "inconclusive"
    if not found:
        return None
    bij = dict(matcher.mapping)
    rng = np.random.default_rng(seed)
    n = len(P.nodes)
    pairs = [(int(a), int(b)) for a, b in rng.integers(0, n, size=(min(sample, n * n), 2))]
    for a, b in pairs:
        if order_leq(P.nodes[a], P.nodes[b]) != order_leq(Q.nodes[bij[a]], Q.nodes[bij[b]]):
            return None
    return bij


class _Cap(Exception):
    pass


# Lifting and transport -----------------------------------------------------------------

def quotient_of(order: TruncOrder, x: np.ndarray) -> QuotientAlgebra:
    """reduce_mod with a cache on the order."""
    cache = order.parts.setdefault("quotients", {})
    key = np.asarray(x, dtype=np.int64).tobytes()
    if key not in cache:
        cache[key] = reduce_mod(order, x)
    return cache[key]


def _lift_entries(Q: QuotientAlgebra, M: np.ndarray) -> np.ndarray:
    out = np.zeros(M.shape[:-1] + (Q.parent.dim,), dtype=np.int64)
    out[..., Q.bcols] = M
    return out


def _push_entries(Q: QuotientAlgebra, M: np.ndarray) -> np.ndarray:
    shape = M.shape
    flat = M.reshape(-1, shape[-1])
    return matmul(flat, Q.proj, Q.p).reshape(shape[:-1] + (Q.dim,))


def lift_complex(order: TruncOrder, x: np.ndarray, Tbar: ProjComplex, check: bool = True) -> ProjComplex:
    """A complex over the truncated order reducing to Tbar (a presilting complex over order/x).

    Differential entries are lifted along the quotient basis, then corrected
    degree by degree in the x-adic filtration until d^2 = 0 holds exactly.
    """
    Q = Tbar.alg
    if not isinstance(Q, QuotientAlgebra) or Q.parent is not order.alg:
        raise NotPresiltingInput("Tbar must live over a reduction of this order")
    if check:
        ok, _ = is_presilting(Tbar)
        if not ok:
            raise NotPresiltingInput("the complex to lift is not presilting")
    A, p = order.alg, order.p
    diffs = {k: _lift_entries(Q, d) for k, d in Tbar.diffs.items()}
    T = ProjComplex(A, Tbar.terms, diffs)
    xs = x.copy()
    Hbar = _HomComplex(Tbar, Tbar)
    for s in range(1, A.dim + 2):
        defect = {k: amul(A, T.d(k + 1), T.d(k)) for k in T.diffs if k + 1 in T.diffs}
        if not any(np.any(v) for v in defect.values()):
            return T
        if not np.any(xs):
            raise CorrectionUnsolvable("x-adic correction exhausted the truncation with d^2 != 0")
        # write the defect as x^s * delta
        Lx = A.left_matrix(xs)
        delta = {}
        for k, D in defect.items():
            out = np.zeros_like(D)
            for r, c in itertools.product(range(D.shape[0]), range(D.shape[1])):
                if np.any(D[r, c]):
                    sol = solve_left(Lx, D[r, c], p)
                    if sol is None:
                        raise CorrectionUnsolvable(f"defect in degree {k} is not divisible by x^{s}")
                    out[r, c] = sol
            delta[k] = out
        # solve D^1(h) = -delta over the reduction
        idx2 = Hbar.index(2)
        target = np.zeros(len(idx2), dtype=np.int64)
        for n_, (k, r, c, b) in enumerate(idx2):
            if k in delta:
                target[n_] = (-_push_entries(Q, delta[k][r : r + 1, c : c + 1])[0, 0, b]) % p
        D1 = Hbar.D(1)
        h = solve_left(D1, target, p) if D1.size else None
        if h is None:
            raise CorrectionUnsolvable(f"obstruction class in Hom(T, T[2]) is nonzero at stage {s}")
        hmap = Hbar.to_map(1, h)
        new = {}
        for k, d in T.diffs.items():
            corr = _lift_entries(Q, hmap.comp(k))
            xcorr = np.einsum("rci,ij->rcj", corr, A.left_matrix(xs)) % p
            new[k] = (d + xcorr) % p
        T = ProjComplex(A, T.terms, new)
        xs = A.mul(xs, x)
    raise CorrectionUnsolvable("correction did not terminate")


def reduce_complex(Q: QuotientAlgebra, T: ProjComplex) -> ProjComplex:
    return ProjComplex(Q, T.terms, {k: _push_entries(Q, d) for k, d in T.diffs.items()})


def transport(order: TruncOrder, x1: np.ndarray, x2: np.ndarray, Tbar1: ProjComplex) -> ProjComplex:
    """Lift along x1, then reduce modulo x2; the result is minimized and presilting-checked."""
    Q2 = quotient_of(order, x2)
    T = lift_complex(order, x1, Tbar1)
    out = minimize(reduce_complex(Q2, T))
    ok, _ = is_presilting(out)
    if not ok:
        raise ResultNotPresilting("transported complex is not presilting")
    return out


def transport_node(order: TruncOrder, x1: np.ndarray, x2: np.ndarray, node: SiltingNode) -> SiltingNode:
    """Transport summand by summand; each image must stay indecomposable."""
    parts = []
    for s in node.summands:
        t = transport(order, x1, x2, s)
        if not end_is_local(t):
            raise ResultNotPresilting("a transported summand decomposes")
        parts.append(t)
    new = make_node(parts, node.provenance)
    ok, _ = is_presilting(new.complex)
    if not ok:
        raise ResultNotPresilting("transported node is not presilting")
    return new
