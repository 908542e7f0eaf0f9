"""Truncated orders: ribbon graph orders, the pullback ring Gamma_0, reductions.

An order over k[[X]] is stored as a finite-dimensional algebra over GF(p)
obtained by truncating (paths longer than L, or powers X^N).  A designated
central element plays the role of X; reducing modulo it gives the
finite-dimensional algebra the order lifts.  Truncation artifacts are kept
honest by a "top stratum": an ideal spanned by the elements that only vanish
because of the truncation.  A reduction is accepted only when that stratum
already lies in the ideal generated by the central element.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .algebra import PathAlgebra, Presentation, SCAlgebra, build_basis, cartan_matrix, centre, verify_relations
from .combinatorics import Quiver2Reg, quiver_K
from .errors import (
    CentralityFailed,
    DimensionMismatch,
    NotInPullback,
    PreconditionFailed,
    PullbackRankMismatch,
    TruncationUnstable,
)
from .gwsa import GWSAData, expected_dim, gwsa_presentation, make_gwsa
from .linalg import RowSpace, left_nullspace, matmul, rank, rref

__all__ = [
    "TruncOrder",
    "DecompData",
    "QuotientAlgebra",
    "make_ribbon_order",
    "central_z",
    "reduce_mod",
    "decomposition_matrix",
    "gamma0_decomposition",
    "make_gamma0",
    "lift_central_xi",
    "verify_reduction",
    "generic_centre_rank",
    "pair_to_coords",
]


@dataclass
class TruncOrder:
    """A truncated order with designated central elements.

    ``top`` holds rows spanning the truncation stratum (see module docstring).
    For pullback orders ``embed`` maps coordinates to the pair space
    Lambda_1 + Lambda_2 and ``parts`` keeps the two factors and the common
    quotient.
    """

    alg: SCAlgebra
    quiver: Quiver2Reg
    provenance: str
    top: np.ndarray
    L: int
    N: int = 1
    central: list[tuple[str, np.ndarray]] = field(default_factory=list)
    embed: np.ndarray | None = None
    parts: dict = field(default_factory=dict)

    @property
    def p(self) -> int:
        return self.alg.p

    @property
    def dim(self) -> int:
        return self.alg.dim

    def add_central(self, label: str, x: np.ndarray) -> np.ndarray:
        if not self.alg.commutes(x):
            raise CentralityFailed(f"{label} is not central; the truncation may be too tight")
        self.central.append((label, np.asarray(x, dtype=np.int64) % self.p))
        return x

    def central_element(self, label: str) -> np.ndarray:
        for lab, x in self.central:
            if lab == label:
                return x
        raise KeyError(label)

    def summary(self) -> dict:
        return {
            "provenance": self.provenance,
            "rank": self.dim,
            "centre_rank": int(centre(self.alg, full=self.provenance != "ribbon").shape[0]),
            "L": self.L,
            "N": self.N,
            "central_elements": [lab for lab, _ in self.central],
        }


@dataclass(frozen=True)
class DecompData:
    D: list[list[int]]
    multiplicities: list[int]
    rows: list[str]
    columns: list[str]

    def cartan(self) -> list[list[int]]:
        D = np.array(self.D, dtype=np.int64)
        return (D @ np.diag(self.multiplicities) @ D.T).tolist()

    def to_json(self) -> dict:
        return {"D": self.D, "multiplicities": self.multiplicities, "rows": self.rows, "columns": self.columns}


class QuotientAlgebra(SCAlgebra):
    """A/I with basis a subset of the parent basis (``bcols``).

    ``proj`` (parent dim x quotient dim) sends parent vectors to classes.
    Generators of the parent are carried over under the same labels.
    """

    def __init__(self, parent: SCAlgebra, ideal: RowSpace):
        p = parent.p
        d0 = parent.dim
        pivset = set(ideal.pivots)
        bcols = [i for i in range(d0) if i not in pivset]
        proj = np.zeros((d0, len(bcols)), dtype=np.int64)
        for k, c in enumerate(bcols):
            proj[c, k] = 1
        if ideal.pivots:
            proj[ideal.pivots] = (-ideal.rows[:, bcols]) % p
        d = len(bcols)
        table = np.zeros((d, d, d), dtype=np.int64)
        for i, c in enumerate(bcols):
            table[i] = matmul(parent.table[c][bcols], proj, p)
        corners = None if parent.corners is None else [parent.corners[c] for c in bcols]
        top = None if parent.top is None else parent.top[bcols]
        idem = matmul(parent.idempotents, proj, p)
        gens = {k: matmul(v, proj, p) for k, v in parent.gens.items()}
        super().__init__(p, table, [parent.labels[c] for c in bcols], parent.vertices, idem, corners, gens, top)
        self.parent = parent
        self.proj = proj
        self.bcols = bcols

    def image(self, x: np.ndarray) -> np.ndarray:
        return matmul(np.asarray(x, dtype=np.int64), self.proj, self.p)


# Ribbon graph orders ---------------------------------------------------------

def make_ribbon_order(q: Quiver2Reg, L: int, p: int = 2) -> TruncOrder:
    """kQ/(a f(a)) with paths longer than L set to zero."""
    pres = Presentation(q, p, L, {a: [] for a in q.arrows}, [], truncated=True, name="ribbon order")
    alg = build_basis(pres)
    top_idx = [k for k, key in enumerate(alg.bkeys) if len(key[2]) == L]
    top = np.eye(alg.dim, dtype=np.int64)[top_idx]
    return TruncOrder(alg, q, "ribbon", top, L)


def _z_terms(q: Quiver2Reg, m: Mapping[str, int]) -> list[tuple[int, int, tuple[str, ...]]]:
    data = GWSAData(q, dict(m))
    return [(1, 0, data.B(a)) for a in q.arrows]


def central_z(order: TruncOrder, m: Mapping[str, int]) -> np.ndarray:
    """z = sum over arrows a of a g(a) ... g^{m n - 1}(a), registered as central."""
    q = order.quiver
    data = GWSAData(q, dict(m))
    for a in q.arrows:
        if data.m_of(a) < 1:
            raise PreconditionFailed(f"multiplicity of {q.g_rep(a)} must be positive")
        if 2 * data.mn(a) > order.L:
            raise PreconditionFailed(f"m n = {data.mn(a)} on the orbit of {a} exceeds L/2 = {order.L / 2}")
    alg = order.alg
    if not isinstance(alg, PathAlgebra):
        raise PreconditionFailed("central_z needs a ribbon order")
    z = alg.element(_z_terms(q, m))
    label = "z(" + ",".join(str(data.m_of(o[0])) for o in q.g_orbits()) + ")"
    return order.add_central(label, z)


def decomposition_matrix(order: TruncOrder | Quiver2Reg, m: Mapping[str, int] | None = None) -> DecompData:
    """D[v][O] = number of arrows of the g-orbit O that start at v."""
    q = order.quiver if isinstance(order, TruncOrder) else order
    if isinstance(order, TruncOrder) and order.provenance != "ribbon":
        raise PreconditionFailed("decomposition_matrix needs a ribbon order")
    data = GWSAData(q, dict(m or {}))
    orbits = q.g_orbits()
    D = [[sum(1 for a in orb if q.src[a] == v) for orb in orbits] for v in q.vertices]
    return DecompData(D, [data.m_of(o[0]) for o in orbits], list(q.vertices), [o[0] for o in orbits])


def gamma0_decomposition(m_prime: Mapping[str, int]) -> DecompData:
    """Decomposition data of the Q(3K) pullback: k^3 + M_3 columns, then the ribbon orbits."""
    q = quiver_K()
    ribbon = decomposition_matrix(q, m_prime)
    D = [[int(i == j) for j in range(3)] + [1] + ribbon.D[i] for i in range(3)]
    cols = ["k1", "k2", "k3", "M3"] + ribbon.columns
    return DecompData(D, [1, 1, 1, 1] + ribbon.multiplicities, ribbon.rows, cols)


# Reductions ------------------------------------------------------------------

def _ideal_of(alg: SCAlgebra, x: np.ndarray) -> RowSpace:
    space = RowSpace(alg.dim, alg.p, col_order=list(range(alg.dim - 1, -1, -1)))
    space.add(alg.left_matrix(x))
    return space


def reduce_mod(order: TruncOrder, x: np.ndarray, power: int = 1, check: bool = True) -> QuotientAlgebra:
    """order / (x^power) for a central x, after the stabilization check."""
    alg = order.alg
    xs = alg.power(x, power)
    if check and not alg.commutes(xs):
        raise CentralityFailed("reduce_mod needs a central element")
    ideal = _ideal_of(alg, xs)
    if check and order.top.shape[0]:
        missing = ideal.reduce(order.top)
        if np.any(missing):
            raise TruncationUnstable(
                "the truncation stratum is not contained in the ideal; raise the length bound or N"
            )
    return QuotientAlgebra(alg, ideal)


def verify_reduction(quot: SCAlgebra, target: GWSAData | PathAlgebra, p: int | None = None) -> dict:
    """Compare a reduction with an independently built algebra.

    Runs (a) dimension equality, (b) the target's defining relations on the
    carried generator images and (c) Cartan equality.  No ring isomorphism
    is claimed beyond these checks.
    """
    if isinstance(target, GWSAData):
        tgt = make_gwsa(target, p or quot.p, check=False)
    else:
        tgt = target
    report: dict = {"checks": ["dimension", "relations", "cartan"], "dim": quot.dim, "target_dim": tgt.dim}
    report["dim_ok"] = quot.dim == tgt.dim
    images = {k: v for k, v in quot.gens.items()}
    try:
        rel = verify_relations(tgt, quot, images)
        report["relations_ok"] = rel["relations"]
        report["generated"] = rel["bijective"]
        report["failed_relations"] = rel["failed"]
    except DimensionMismatch:
        report["relations_ok"] = False
        report["generated"] = False
        report["failed_relations"] = ["skipped: dimensions differ"]
    report["cartan"] = cartan_matrix(quot)
    report["target_cartan"] = cartan_matrix(tgt)
    report["cartan_ok"] = report["cartan"] == report["target_cartan"]
    report["ok"] = bool(report["dim_ok"] and report["relations_ok"] and report["generated"] and report["cartan_ok"])
    return report


# The pullback Gamma_0 --------------------------------------------------------

def _word_map(src: PathAlgebra, dst: PathAlgebra) -> np.ndarray:
    """Matrix sending basis words of ``src`` (X-degree 0) to ``dst``; X goes to 0."""
    M = np.zeros((src.dim, dst.dim), dtype=np.int64)
    for k, (xd, v, w) in enumerate(src.basis_words()):
        if xd:
            continue
        M[k] = dst.idempotent(v) if not w else dst.element([(1, 0, w)])
    return M


def make_gamma0(data: GWSAData, p: int = 2, N: int | None = None, L: int | None = None) -> TruncOrder:
    """Pullback of Lambda_1 -> C <- Lambda_2, truncated at X^N and path length L.

    Lambda_1 is the X-deformed algebra (a f(a) = X c A t) over GF(p)[X]/(X^N),
    Lambda_2 the ribbon algebra and C the algebra with all t set to zero and
    no Z relations.  Both maps fix arrows; the first sends X to 0.
    """
    q = data.quiver
    maxm = max(data.m_of(a) for a in q.arrows)
    N = N or maxm + 3
    L = L or 2 * (2 * maxm + 1) * max(q.n(a) for a in q.arrows) + 2
    lam1 = build_basis(gwsa_presentation(data, p, nx=N, x_rules=True))
    if lam1.dim != N * expected_dim(data):
        raise PullbackRankMismatch(f"Lambda_1 has dimension {lam1.dim}, expected {N} * {expected_dim(data)}")
    lam2 = make_ribbon_order(q, L, p).alg
    cdata = GWSAData(q, dict(data.m), dict(data.c), name="common quotient")
    C = make_gwsa(cdata, p, check=False)
    phi = _word_map(lam1, C)
    nu = _word_map(lam2, C)
    d1, d2 = lam1.dim, lam2.dim
    if rank(nu, p) != C.dim:
        raise PullbackRankMismatch("the ribbon factor does not surject onto the common quotient")

    # kernel of (phi, -nu), corner by corner so the basis stays Peirce homogeneous
    nvert = len(q.vertices)
    corners1 = lam1.corners
    corners2 = lam2.corners
    rows = []
    new_corners = []
    for i in range(nvert):
        for j in range(nvert):
            c1 = [k for k in range(d1) if corners1[k] == (i, j)]
            c2 = [k for k in range(d2) if corners2[k] == (i, j)]
            M = np.concatenate([phi[c1], (-nu[c2]) % p])
            K = left_nullspace(M, p) if M.shape[0] else np.zeros((0, 0), dtype=np.int64)
            if K.shape[0] == 0:
                continue
            K, _ = rref(K, p)
            full = np.zeros((K.shape[0], d1 + d2), dtype=np.int64)
            full[:, c1] = K[:, : len(c1)]
            full[:, [d1 + k for k in c2]] = K[:, len(c1) :]
            rows.append(full)
            new_corners += [(i, j)] * K.shape[0]
    E = np.concatenate(rows)
    expected = d1 + d2 - C.dim
    if E.shape[0] != expected:
        raise PullbackRankMismatch(f"pullback has dimension {E.shape[0]}, expected {expected}")
    order = _pullback_order(E, new_corners, lam1, lam2, p)
    order.quiver = q
    order.L, order.N = L, N
    order.parts = {"lambda1": lam1, "lambda2": lam2, "common": C, "phi": phi, "nu": nu, "data": data}
    order.top = _pullback_top(order, lam1, lam2, L, N)
    return order


def _pullback_order(E: np.ndarray, corners: list, lam1: PathAlgebra, lam2: PathAlgebra, p: int) -> TruncOrder:
    d1 = lam1.dim
    piv = [int(np.flatnonzero(r)[0]) for r in E]
    d = E.shape[0]
    U, V = E[:, :d1], E[:, d1:]
    table = np.zeros((d, d, d), dtype=np.int64)
    for i in range(d):
        a, b = corners[i]
        js = [j for j in range(d) if corners[j][0] == b]
        if not js:
            continue
        prod1 = matmul(U[js], lam1.left_matrix(U[i]), p)
        prod2 = matmul(V[js], lam2.left_matrix(V[i]), p)
        prod = np.concatenate([prod1, prod2], axis=1)
        table[i, js] = prod[:, piv]

    def lift(u: np.ndarray, v: np.ndarray) -> np.ndarray:
        return np.concatenate([u, v])[piv] % p

    labels = []
    for r in E:
        k = int(np.flatnonzero(r)[0])
        labels.append(("L1:" + lam1.labels[k]) if k < d1 else ("L2:" + lam2.labels[k - d1]))
    q = lam1.q
    idem = np.array([lift(lam1.idempotent(v), lam2.idempotent(v)) for v in q.vertices])
    gens = {a: lift(lam1.gens[a], lam2.gens[a]) for a in q.arrows}
    for v, e in zip(q.vertices, idem):
        gens["e" + v] = e
    gens["X"] = lift(lam1.x_element(), np.zeros(lam2.dim, dtype=np.int64))
    top = matmul(V, lam2.top, p)
    alg = SCAlgebra(p, table, labels, q.vertices, idem, corners, gens, top)
    alg.embed = E
    alg.pivots = piv
    return TruncOrder(alg, q, "pullback", np.zeros((0, d), dtype=np.int64), 0, embed=E)


def _pullback_top(order: TruncOrder, lam1: PathAlgebra, lam2: PathAlgebra, L: int, N: int) -> np.ndarray:
    """Elements of Gamma_0 lying in X^{N-1} Lambda_1 + (length-L paths of Lambda_2)."""
    d1, p = lam1.dim, order.p
    keep1 = [k for k, key in enumerate(lam1.bkeys) if key[0] == N - 1]
    keep2 = [d1 + k for k, key in enumerate(lam2.bkeys) if len(key[2]) == L]
    allowed = keep1 + keep2
    other = [c for c in range(order.embed.shape[1]) if c not in set(allowed)]
    E = order.embed
    # combinations of Gamma_0 basis rows vanishing outside the allowed columns
    return left_nullspace(E[:, other], p)


def pair_to_coords(order: TruncOrder, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Coordinates of the pair (u, v); NotInPullback if it is not in Gamma_0."""
    E, p = order.embed, order.p
    full = np.concatenate([np.asarray(u, dtype=np.int64), np.asarray(v, dtype=np.int64)]) % p
    c = full[order.alg.pivots]
    if np.any((matmul(c, E, p) - full) % p):
        raise NotInPullback("the pair does not agree in the common quotient")
    return c


def lift_central_xi(order: TruncOrder, m_prime: Mapping[str, int], strict: bool = True) -> np.ndarray:
    """xi = (X, -z_{m'}) in Gamma_0, registered as a central element.

    With ``strict`` the multiplicities must satisfy m' > m on every orbit;
    otherwise only membership in the pullback and centrality are required.
    """
    if order.provenance != "pullback":
        raise PreconditionFailed("lift_central_xi needs a pullback order")
    data: GWSAData = order.parts["data"]
    q = data.quiver
    mp = GWSAData(q, dict(m_prime))
    for a in q.arrows:
        if mp.m_of(a) < 1:
            raise PreconditionFailed("m' must be positive")
        if strict and mp.m_of(a) <= data.m_of(a):
            r = q.g_rep(a)
            raise PreconditionFailed(f"inequality m'_{r} > m_{r} fails: {mp.m_of(a)} <= {data.m_of(a)}")
        if data.t_of(q.bar[a])[0] == 1 and mp.mn(a) < 2:
            raise PreconditionFailed(f"inequality m' n >= 2 fails on the orbit of {q.g_rep(a)}: {mp.mn(a)} < 2")
        if 2 * mp.mn(a) > order.L:
            raise PreconditionFailed(f"inequality 2 m' n <= L fails on the orbit of {q.g_rep(a)}: {2 * mp.mn(a)} > {order.L}")
    lam1, lam2 = order.parts["lambda1"], order.parts["lambda2"]
    u = lam1.x_element()
    v = (-lam2.element(_z_terms(q, m_prime))) % order.p
    xi = pair_to_coords(order, u, v)
    label = "xi(" + ",".join(str(mp.m_of(o[0])) for o in q.g_orbits()) + ")"
    return order.add_central(label, xi)


def generic_centre_rank(order: TruncOrder, x: np.ndarray, s: int = 3) -> dict:
    """Rank of the centre over k((x)), read off from dim Z(order / x^j).

    For a free order the dimension of Z(order/x^j) grows by exactly the
    generic rank once j is large; the report includes the whole sequence so
    the stabilization can be inspected.
    """
    dims, qdims = [], []
    for j in range(1, s + 1):
        Q = reduce_mod(order, x, power=j, check=False)
        qdims.append(Q.dim)
        dims.append(int(centre(Q, full=True).shape[0]))
    free = all(qdims[j] == (j + 1) * qdims[0] for j in range(len(qdims)))
    diffs = [b - a for a, b in zip(dims, dims[1:])]
    return {
        "quotient_dims": qdims,
        "centre_dims": dims,
        "increments": diffs,
        "free": free,
        "stable": len(diffs) >= 2 and diffs[-1] == diffs[-2],
        "rank": diffs[-1] if diffs else None,
    }
