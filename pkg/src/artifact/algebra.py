"""Finite-dimensional algebras over GF(p) given by quivers and relations.

Two layers live here.

``SCAlgebra`` is an algebra given by structure constants on a basis whose
elements are Peirce homogeneous (each lies in a single corner e_i A e_j).
Elements are plain integer vectors.  Products follow the row convention
``(a*b)[k] = sum_ij a[i] b[j] table[i, j, k]``.

``PathAlgebra`` computes such a basis for a quiver presentation.  Paths are
written left to right, so ``a b`` means "first a, then b".  Every path that is
not a g-path contains a factor ``a f(a)``; those factors are rewritten by
per-arrow rules, so every element is represented on the space V spanned by
g-paths (optionally times powers of X).  The presentation ideal is then the
right-module closure, inside V, of all left multiples of the relations; the
quotient basis consists of the smallest monomials outside the pivots of
that closure (order: length, then word, then X-degree).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .combinatorics import Quiver2Reg
from .errors import (
    CheckFailure,
    DimensionMismatch,
    LengthBoundExceeded,
    NonComposableWord,
)
from .linalg import RowSpace, left_nullspace, matmul, rank, rref

__all__ = [
    "SCAlgebra",
    "Presentation",
    "PathAlgebra",
    "build_basis",
    "cartan_matrix",
    "centre",
    "symmetrizing_form",
    "multiply",
    "normalize",
    "verify_relations",
    "semisimple_plus_matrix",
    "path_algebra_A2",
]

Key = tuple[int, int, tuple[int, ...]]  # (X-degree, source vertex, arrow word)
Term = tuple[int, int, tuple[str, ...]]  # (coefficient, X-degree, arrow ids)


class SCAlgebra:
    """Algebra over GF(p) given by a structure-constant table.

    ``corners[k] = (i, j)`` records that basis element k lies in e_i A e_j.
    ``top`` (shape d x n) gives the image of each basis element in the
    semisimple quotient k^n, one coordinate per vertex.
    """

    def __init__(
        self,
        p: int,
        table: np.ndarray,
        labels: Sequence[str],
        vertices: Sequence[str],
        idempotents: np.ndarray,
        corners: Sequence[tuple[int, int]] | None,
        gens: dict[str, np.ndarray] | None = None,
        top: np.ndarray | None = None,
    ):
        self.p = p
        self.table = np.asarray(table, dtype=np.int64) % p
        self.dim = self.table.shape[0]
        self.labels = list(labels)
        self.vertices = list(vertices)
        self.idempotents = np.asarray(idempotents, dtype=np.int64) % p
        self.corners = None if corners is None else [tuple(c) for c in corners]
        self.gens = dict(gens or {})
        self.top = top
        self._flat = self.table.reshape(self.dim * self.dim, self.dim)
        self._corner_idx: dict[tuple[int, int], np.ndarray] = {}
        if self.corners is not None:
            for i in range(len(self.vertices)):
                for j in range(len(self.vertices)):
                    self._corner_idx[(i, j)] = np.array(
                        [k for k, c in enumerate(self.corners) if c == (i, j)], dtype=np.int64
                    )

    # basic arithmetic -------------------------------------------------------
    def zero(self) -> np.ndarray:
        return np.zeros(self.dim, dtype=np.int64)

    def one(self) -> np.ndarray:
        return self.idempotents.sum(axis=0) % self.p

    def basis_vector(self, k: int) -> np.ndarray:
        v = self.zero()
        v[k] = 1
        return v

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return matmul(np.asarray(b), self.left_matrix(a), self.p)

    def left_matrix(self, a: np.ndarray) -> np.ndarray:
        """Matrix L with ``b @ L = a*b``."""
        a = np.asarray(a, dtype=np.int64)
        nz = np.flatnonzero(a)
        if nz.size == 0:
            return np.zeros((self.dim, self.dim), dtype=np.int64)
        return np.tensordot(a[nz], self.table[nz], axes=(0, 0)) % self.p

    def right_matrix(self, b: np.ndarray) -> np.ndarray:
        """Matrix R with ``a @ R = a*b``."""
        b = np.asarray(b, dtype=np.int64)
        nz = np.flatnonzero(b)
        if nz.size == 0:
            return np.zeros((self.dim, self.dim), dtype=np.int64)
        return np.tensordot(self.table[:, nz, :], b[nz], axes=(1, 0)) % self.p

    def power(self, a: np.ndarray, k: int) -> np.ndarray:
        out = self.one()
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def commutes(self, x: np.ndarray) -> bool:
        for k in range(self.dim):
            b = self.basis_vector(k)
            if np.any((self.mul(x, b) - self.mul(b, x)) % self.p):
                return False
        return True

    # Peirce data ------------------------------------------------------------
    def corner_indices(self, i: int, j: int) -> np.ndarray:
        if self.corners is None:
            raise CheckFailure("algebra has no Peirce-homogeneous basis")
        return self._corner_idx[(i, j)]

    def vertex_index(self, v: str) -> int:
        return self.vertices.index(v)

    def check_associative(self, triples: Iterable[tuple[int, int, int]]) -> int:
        """Number of basis triples (i, j, k) where (b_i b_j) b_k != b_i (b_j b_k)."""
        bad = 0
        for i, j, k in triples:
            lhs = self.mul(self.table[i, j], self.basis_vector(k))
            rhs = self.mul(self.basis_vector(i), self.table[j, k])
            if np.any((lhs - rhs) % self.p):
                bad += 1
        return bad

    def label_of(self, v: np.ndarray) -> str:
        parts = []
        for k in np.flatnonzero(np.asarray(v) % self.p):
            c = int(v[k]) % self.p
            parts.append(self.labels[k] if c == 1 else f"{c}*{self.labels[k]}")
        return " + ".join(parts) if parts else "0"


def cartan_matrix(alg: SCAlgebra) -> list[list[int]]:
    """C[i][j] = dim e_i A e_j (rows and columns follow ``alg.vertices``)."""
    n = len(alg.vertices)
    if alg.corners is not None:
        return [[len(alg.corner_indices(i, j)) for j in range(n)] for i in range(n)]
    out = []
    for i in range(n):
        Li = alg.left_matrix(alg.idempotents[i])
        row = []
        for j in range(n):
            Rj = alg.right_matrix(alg.idempotents[j])
            row.append(rank(matmul(Li, Rj, alg.p), alg.p))
        out.append(row)
    return out


def centre(alg: SCAlgebra, full: bool = False) -> np.ndarray:
    """Basis (rows) of the centre, found by successively imposing [x, b_k] = 0.

    The generators are used as probes unless ``full`` is set or there are none.
    """
    p = alg.p
    cand = np.eye(alg.dim, dtype=np.int64)
    if alg.gens and not full:
        probes = list(alg.gens.values())
    else:
        probes = [alg.basis_vector(k) for k in range(alg.dim)]
    for g in probes:
        if cand.shape[0] == 0:
            break
        M = (alg.right_matrix(g) - alg.left_matrix(g)) % p
        C = matmul(cand, M, p)
        ns = left_nullspace(C, p)
        cand = matmul(ns, cand, p)
        if cand.shape[0]:
            cand, _ = rref(cand, p)
    for x in cand:
        if not alg.commutes(x):
            raise CheckFailure("centre candidate fails to commute")
    return cand


def symmetrizing_form(alg: SCAlgebra, seed: int = 0, tries: int = 200) -> np.ndarray | None:
    """A symmetric nondegenerate linear form, as a vector t with t(x) = t . x.

    Solves t(b_i b_j) = t(b_j b_i), then searches the solution space for a
    form whose Gram matrix is invertible: exhaustively when the space has at
    most 4096 elements, otherwise by seeded random sampling.
    """
    p, d = alg.p, alg.dim
    diff = (alg.table - alg.table.transpose(1, 0, 2)).reshape(d * d, d) % p
    sol = left_nullspace(diff.T, p)
    if sol.shape[0] == 0:
        return None

    def gram_ok(t: np.ndarray) -> bool:
        G = np.tensordot(alg.table, t, axes=(2, 0)) % p
        return rank(G, p) == d

    k = sol.shape[0]
    if p**k <= 4096:
        coeffs: Iterable = itertools.product(range(p), repeat=k)
    else:
        rng = np.random.default_rng(seed)
        coeffs = (rng.integers(0, p, size=k) for _ in range(tries))
    for c in coeffs:
        t = matmul(np.asarray(c, dtype=np.int64), sol, p)
        if np.any(t) and gram_ok(t):
            return t
    return None


def multiply(a: np.ndarray, b: np.ndarray, alg: SCAlgebra) -> np.ndarray:
    return alg.mul(a, b)


# Presentations ---------------------------------------------------------------

@dataclass
class Presentation:
    """Quiver relations in the shape used by the path-algebra engine.

    ``f_rules[a]`` rewrites the factor ``a f(a)``: a list of terms
    (coefficient, X-degree, replacement word); an empty list means
    ``a f(a) = 0``.  ``relations`` are further elements of the ideal, each a
    list of terms sharing source and target.  ``nx`` is the X-truncation
    (1 means the plain field).  Paths longer than ``L`` are dropped; unless
    ``truncated`` is set, the build then checks that the ideal already
    contains every path of length L.

    With ``bounded`` set, long paths are never dropped.  A product that would
    leave the length bound is simply not formed, and the build checks that
    every path of length L is congruent to shorter ones.  This computes kQ/I
    itself, which matters when rules shorten paths and arrows need not be
    nilpotent.
    """

    quiver: Quiver2Reg
    p: int
    L: int
    f_rules: dict[str, list[Term]]
    relations: list[list[Term]] = field(default_factory=list)
    nx: int = 1
    truncated: bool = False
    bounded: bool = False
    name: str = ""


class PathAlgebra(SCAlgebra):
    """Algebra computed from a :class:`Presentation`; see module docstring."""

    def __init__(self, pres: Presentation):
        self.pres = pres
        q = pres.quiver
        self.q = q
        p, L, nx = pres.p, pres.L, pres.nx
        self.p = p
        self._ai = q.index
        self._src = [q.vertices.index(q.src[a]) for a in q.arrows]
        self._tgt = [q.vertices.index(q.tgt[a]) for a in q.arrows]
        self._f = [q.index[q.f[a]] for a in q.arrows]
        self._g = [q.index[q.g[a]] for a in q.arrows]
        self._rules: list[list[tuple[int, int, tuple[int, ...]]]] = []
        for a in q.arrows:
            terms = []
            for c, xd, w in pres.f_rules.get(a, []):
                terms.append((int(c) % p, int(xd), self._word(w)))
            self._rules.append(terms)
        self._memo: dict[tuple[str, tuple[int, ...]], dict] = {}

        keys: list[Key] = []
        for xd in range(nx):
            for v in range(len(q.vertices)):
                keys.append((xd, v, ()))
            for a in range(len(q.arrows)):
                w: tuple[int, ...] = ()
                b = a
                for _ in range(L):
                    w = w + (b,)
                    keys.append((xd, self._src[a], w))
                    b = self._g[b]
        keys.sort(key=lambda k: (len(k[2]), k[2], k[1], k[0]))
        self.vkeys = keys
        self.vpos = {k: i for i, k in enumerate(keys)}
        nv = len(keys)

        # ideal: left multiples of relations, closed under right action
        space = RowSpace(nv, p, col_order=list(range(nv - 1, -1, -1)))
        gens = []
        rel_terms = [[(int(c) % p, int(xd), self._word(w)) for c, xd, w in r] for r in pres.relations]
        for a in range(len(q.arrows)):
            pair = (a, self._f[a])
            rel_terms.append([(1, 0, pair)] + [((-c) % p, xd, w) for c, xd, w in self._rules[a]])
        for rel in rel_terms:
            s = self._src[rel[0][2][0]] if rel[0][2] else None
            for u in keys:
                if s is not None and self._end(u) != s:
                    continue
                vec = np.zeros(nv, dtype=np.int64)
                if all(self._accumulate(vec, c, u[0] + xd, u[1], u[2] + w) for c, xd, w in rel):
                    if np.any(vec):
                        gens.append(vec)
        new = space.add(np.array(gens)) if gens else np.zeros((0, nv), dtype=np.int64)
        ops = [self._right_op(a) for a in range(len(q.arrows))]
        if nx > 1:
            ops.append((self._x_op(), np.ones(nv, dtype=bool)))
        self._ops = ops
        while new.shape[0]:
            cand = []
            for op, defined in ops:
                ok = ~np.any(new[:, ~defined] != 0, axis=1)
                if np.any(ok):
                    cand.append(matmul(new[ok], op, p))
            if not cand:
                break
            new = space.add(np.concatenate(cand))
        self.ideal = space

        pivset = set(space.pivots)
        bcols = [i for i in range(nv) if i not in pivset]
        proj = np.zeros((nv, len(bcols)), dtype=np.int64)
        for k, c in enumerate(bcols):
            proj[c, k] = 1
        if space.pivots:
            proj[space.pivots] = (-space.rows[:, bcols]) % p
        self.proj = proj
        self.bkeys = [keys[c] for c in bcols]

        if pres.bounded:
            if any(len(k[2]) == L for k in self.bkeys):
                raise LengthBoundExceeded(f"paths of length L={L} are not congruent to shorter paths")
        elif not pres.truncated:
            longest = [i for i, k in enumerate(keys) if len(k[2]) == L]
            if longest and np.any(proj[longest]):
                raise LengthBoundExceeded(
                    f"paths of length L={L} survive; the basis is not closed below the bound"
                )

        d = len(bcols)
        table = self._table_by_action(bcols) if pres.bounded else self._table_direct()
        nvert = len(q.vertices)
        idem = np.zeros((nvert, d), dtype=np.int64)
        top = np.zeros((d, nvert), dtype=np.int64)
        for k, key in enumerate(self.bkeys):
            if key[0] == 0 and not key[2]:
                idem[key[1], k] = 1
                top[k, key[1]] = 1
        corners = [(key[1], self._end(key)) for key in self.bkeys]
        labels = [self._label(k) for k in self.bkeys]
        super().__init__(p, table, labels, q.vertices, idem, corners, top=top)
        for a in q.arrows:
            self.gens[a] = self.element([(1, 0, (a,))])
        for v in q.vertices:
            self.gens["e" + v] = idem[q.vertices.index(v)]
        if nx > 1:
            self.gens["X"] = self.x_element()

    # words and rewriting ----------------------------------------------------
    def _word(self, w: Sequence[str]) -> tuple[int, ...]:
        try:
            out = tuple(self._ai[a] for a in w)
        except KeyError as exc:
            raise NonComposableWord(f"unknown arrow {exc.args[0]}") from None
        for x, y in zip(out, out[1:]):
            if self._tgt[x] != self._src[y]:
                raise NonComposableWord(f"word {' '.join(w)} is not a path")
        return out

    def _end(self, key: Key) -> int:
        return self._tgt[key[2][-1]] if key[2] else key[1]

    def _label(self, key: Key) -> str:
        xd, v, w = key
        body = ".".join(self.q.arrows[a] for a in w) if w else "e" + self.q.vertices[v]
        if xd == 0:
            return body
        return ("X" if xd == 1 else f"X^{xd}") + "*" + body

    def _table_direct(self) -> np.ndarray:
        d, nv, p = len(self.bkeys), len(self.vkeys), self.p
        table = np.zeros((d, d, d), dtype=np.int64)
        for i, ki in enumerate(self.bkeys):
            for j, kj in enumerate(self.bkeys):
                if self._end(ki) != kj[1]:
                    continue
                vec = np.zeros(nv, dtype=np.int64)
                self._accumulate(vec, 1, ki[0] + kj[0], ki[1], ki[2] + kj[2])
                if np.any(vec):
                    table[i, j] = matmul(vec, self.proj, p)
        return table

    def _table_by_action(self, bcols: list[int]) -> np.ndarray:
        """b_i * b_j as b_i times the letters of b_j, one right action at a time."""
        d, p = len(bcols), self.p
        bars = []
        for op, defined in self._ops:
            if not np.all(defined[bcols]):
                raise LengthBoundExceeded("a basis word cannot be multiplied within the bound")
            bars.append(matmul(op[bcols], self.proj, p))
        table = np.zeros((d, d, d), dtype=np.int64)
        for j, (xd, v, w) in enumerate(self.bkeys):
            M = np.zeros((d, d), dtype=np.int64)
            for i, ki in enumerate(self.bkeys):
                if self._end(ki) == v:
                    M[i, i] = 1
            for a in w:
                M = matmul(M, bars[a], p)
            for _ in range(xd):
                M = matmul(M, bars[-1], p)
            table[:, j, :] = M
        return table

    def _reduce(self, w: tuple[int, ...], strategy: str = "left", _active: set | None = None) -> dict | None:
        """Rewrite all ``a f(a)`` factors; returns {(xdeg, g-path): coef}.

        In bounded mode None signals that the result leaves the length bound.
        """
        memo_key = (strategy, w)
        if memo_key in self._memo:
            return self._memo[memo_key]
        L, nx, p = self.pres.L, self.pres.nx, self.p
        bounded = self.pres.bounded
        if len(w) > L and (not bounded or len(w) > 2 * L + 4):
            return None if bounded else {}
        rng = range(len(w) - 1) if strategy == "left" else range(len(w) - 2, -1, -1)
        pos = next((i for i in rng if w[i + 1] == self._f[w[i]]), None)
        if pos is None:
            res = None if len(w) > L else {(0, w): 1}
        else:
            active = set() if _active is None else _active
            if w in active:
                raise CheckFailure("rewriting does not terminate (cycle detected)")
            active.add(w)
            res: dict = {}
            for c, xd, rep in self._rules[w[pos]]:
                if xd >= nx:
                    continue
                sub = self._reduce(w[:pos] + rep + w[pos + 2 :], strategy, active)
                if sub is None:
                    res = None
                    break
                for (xd2, w2), c2 in sub.items():
                    if xd + xd2 < nx:
                        k = (xd + xd2, w2)
                        res[k] = (res.get(k, 0) + c * c2) % p
            active.discard(w)
            if res is not None:
                res = {k: v for k, v in res.items() if v}
        self._memo[memo_key] = res
        return res

    def _accumulate(self, vec: np.ndarray, c: int, xd: int, src: int, w: tuple[int, ...], strategy: str = "left") -> bool:
        """Add c * X^xd * w (in normal form) to vec; False if it leaves the bound."""
        if xd >= self.pres.nx or c % self.p == 0:
            return True
        if not w:
            vec[self.vpos[(xd, src, ())]] = (vec[self.vpos[(xd, src, ())]] + c) % self.p
            return True
        red = self._reduce(w, strategy)
        if red is None:
            return False
        for (xd2, w2), c2 in red.items():
            if xd + xd2 < self.pres.nx:
                if not w2:
                    raise CheckFailure("a rule produced an idempotent")
                i = self.vpos[(xd + xd2, src, w2)]
                vec[i] = (vec[i] + c * c2) % self.p
        return True

    def _right_op(self, a: int) -> tuple[np.ndarray, np.ndarray]:
        nv = len(self.vkeys)
        M = np.zeros((nv, nv), dtype=np.int64)
        defined = np.ones(nv, dtype=bool)
        for i, key in enumerate(self.vkeys):
            if self._end(key) == self._src[a]:
                if not self._accumulate(M[i], 1, key[0], key[1], key[2] + (a,)):
                    M[i] = 0
                    defined[i] = False
        return M, defined

    def _x_op(self) -> np.ndarray:
        nv = len(self.vkeys)
        M = np.zeros((nv, nv), dtype=np.int64)
        for i, (xd, v, w) in enumerate(self.vkeys):
            if xd + 1 < self.pres.nx:
                M[i, self.vpos[(xd + 1, v, w)]] = 1
        return M

    # public element constructors -------------------------------------------
    def element(self, terms: Iterable[Term], strategy: str = "left") -> np.ndarray:
        """Normal form of a combination of (coef, X-degree, word) terms.

        Words that leave the length bound (bounded mode only) are evaluated
        by multiplying generators in the table instead.
        """
        vec = np.zeros(len(self.vkeys), dtype=np.int64)
        extra = np.zeros(len(self.bkeys), dtype=np.int64)
        for c, xd, w in terms:
            wi = self._word(w)
            if not wi:
                raise NonComposableWord("use idempotent() for length-0 words")
            part = np.zeros(len(self.vkeys), dtype=np.int64)
            if self._accumulate(part, int(c), int(xd), self._src[wi[0]], wi, strategy):
                vec = (vec + part) % self.p
            else:
                v = self.word_by_action(w)
                for _ in range(int(xd)):
                    v = self.mul(self.gens["X"], v)
                extra = (extra + int(c) * v) % self.p
        return (matmul(vec, self.proj, self.p) + extra) % self.p

    def idempotent(self, v: str) -> np.ndarray:
        return self.idempotents[self.q.vertices.index(v)].copy()

    def x_element(self) -> np.ndarray:
        vec = np.zeros(len(self.vkeys), dtype=np.int64)
        if self.pres.nx > 1:
            for v in range(len(self.q.vertices)):
                vec[self.vpos[(1, v, ())]] = 1
        return matmul(vec, self.proj, self.p)

    def word_by_action(self, w: Sequence[str]) -> np.ndarray:
        """Product of the arrow generators of ``w`` computed in the table."""
        wi = self._word(w)
        out = self.idempotents[self._src[wi[0]]]
        for a in w:
            out = self.mul(out, self.gens[a])
        return out

    def basis_words(self) -> list[tuple[int, str, tuple[str, ...]]]:
        return [(xd, self.q.vertices[v], tuple(self.q.arrows[a] for a in w)) for xd, v, w in self.bkeys]

    def g_path_element(self, a: str, length: int) -> np.ndarray:
        return self.element([(1, 0, self.q.g_path(a, length))])


def build_basis(pres: Presentation) -> PathAlgebra:
    return PathAlgebra(pres)


def normalize(terms: Iterable[Term], alg: PathAlgebra, strategy: str = "left") -> np.ndarray:
    """Normal form of a combination of words.

    ``strategy`` is "left" (leftmost factor rewritten first), "right"
    (rightmost first) or "action" (product of generators in the table).
    """
    terms = list(terms)
    if strategy in ("left", "right"):
        return alg.element(terms, strategy)
    if strategy != "action":
        raise ValueError(f"unknown strategy {strategy}")
    out = alg.zero()
    x = alg.x_element() if alg.pres.nx > 1 else None
    for c, xd, w in terms:
        v = alg.word_by_action(w)
        for _ in range(xd):
            v = alg.mul(x, v) if x is not None else alg.zero()
        out = (out + int(c) * v) % alg.p
    return out


def verify_relations(
    alg: PathAlgebra,
    target: SCAlgebra,
    images: dict[str, np.ndarray],
) -> dict:
    """Check that generator images define a homomorphism and a bijection.

    ``images`` maps vertex labels "e<v>", arrow ids and (for X-algebras) "X"
    to vectors of ``target``.
    """
    p = alg.p
    q = alg.q
    report: dict = {"relations": True, "bijective": False, "failed": []}
    if alg.dim != target.dim:
        raise DimensionMismatch(f"source has dimension {alg.dim}, target {target.dim}")

    def img_word(xd: int, v: str, w: Sequence[str]) -> np.ndarray:
        out = images["e" + v]
        for a in w:
            out = target.mul(out, images[a])
        for _ in range(xd):
            out = target.mul(images["X"], out)
        return out

    def fail(what: str) -> None:
        report["relations"] = False
        report["failed"].append(what)

    es = [images["e" + v] for v in q.vertices]
    if np.any((sum(es) - target.one()) % p):
        fail("idempotents do not sum to 1")
    for i, ei in enumerate(es):
        for j, ej in enumerate(es):
            want = ei if i == j else target.zero()
            if np.any((target.mul(ei, ej) - want) % p):
                fail(f"e{q.vertices[i]} e{q.vertices[j]}")
    for a in q.arrows:
        x = images[a]
        sx = target.mul(target.mul(images["e" + q.src[a]], x), images["e" + q.tgt[a]])
        if np.any((sx - x) % p):
            fail(f"{a} not in its corner")
    rels = [list(r) for r in alg.pres.relations]
    for a in q.arrows:
        rels.append([(1, 0, (a, q.f[a]))] + [(-c, xd, w) for c, xd, w in alg.pres.f_rules.get(a, [])])
    for r in rels:
        acc = target.zero()
        for c, xd, w in r:
            acc = (acc + int(c) * img_word(xd, q.src[w[0]], w)) % p
        if np.any(acc):
            fail(" + ".join(f"{c}*{'.'.join(w)}" for c, _, w in r))
    M = np.array([img_word(xd, v, w) for xd, v, w in alg.basis_words()])
    report["bijective"] = rank(M, p) == target.dim
    report["ok"] = report["relations"] and report["bijective"]
    return report


# Small explicit algebras ---------------------------------------------------------

def semisimple_plus_matrix(p: int, k: int = 3, n: int = 3) -> SCAlgebra:
    """k^k x M_n(k) with basis E_1..E_k then E(i, j) row-major."""
    d = k + n * n
    table = np.zeros((d, d, d), dtype=np.int64)
    for i in range(k):
        table[i, i, i] = 1

    def m(i: int, j: int) -> int:
        return k + i * n + j

    for i in range(n):
        for j in range(n):
            for l in range(n):
                table[m(i, j), m(j, l), m(i, l)] = 1
    labels = [f"E{i + 1}" for i in range(k)] + [f"E({i + 1},{j + 1})" for i in range(n) for j in range(n)]
    one = np.zeros((1, d), dtype=np.int64)
    one[0, :k] = 1
    for i in range(n):
        one[0, m(i, i)] = 1
    return SCAlgebra(p, table, labels, ["*"], one, None)


def path_algebra_A2(p: int) -> SCAlgebra:
    """Path algebra of 1 -> 2: basis e1, e2, a."""
    table = np.zeros((3, 3, 3), dtype=np.int64)
    table[0, 0, 0] = 1
    table[1, 1, 1] = 1
    table[0, 2, 2] = 1  # e1 a = a
    table[2, 1, 2] = 1  # a e2 = a
    idem = np.eye(3, dtype=np.int64)[:2]
    top = np.array([[1, 0], [0, 1], [0, 0]], dtype=np.int64)
    return SCAlgebra(p, table, ["e1", "e2", "a"], ["1", "2"], idem, [(0, 0), (1, 1), (0, 1)], top=top)
