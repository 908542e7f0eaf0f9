"""Bounded complexes of projectives and their homotopy category.

Conventions.  Modules are right modules and P_v = e_v A.  A map
P_s -> P_t is left multiplication by an element of e_t A e_s, so
Hom(P_s, P_t) has dimension C[t][s] with C the Cartan matrix.  A map
between direct sums is a matrix M with rows indexed by target summands and
columns by source summands; it is stored as an integer array of shape
(rows, cols, dim A).  Composition is the matrix product with the algebra
product on entries, left factor applied last.

The differential of T[s] is (-1)^s d_T.  The Hom complex has
D(f) = d_T f - (-1)^n f d_S in degree n, so Hom_K(S, T[n]) is its n-th
cohomology.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
import sympy

from .algebra import SCAlgebra, cartan_matrix
from .errors import IdempotentLiftDivergence, InputError
from .linalg import RowSpace, inv_mod, left_nullspace, matmul, rref, solve_left

__all__ = [
    "ProjComplex",
    "ChainMap",
    "HomSpace",
    "stalk",
    "regular_complex",
    "two_term",
    "hom_space",
    "hom_dim",
    "euler_pairing",
    "euler_from_homs",
    "is_presilting",
    "minimize",
    "decompose",
    "fingerprint",
    "is_isomorphic",
    "end_is_local",
    "amul",
    "direct_sum",
    "presilting_pair",
]


# Matrices over the algebra -------------------------------------------------------

def amul(alg: SCAlgebra, N: np.ndarray, M: np.ndarray) -> np.ndarray:
    """Product of algebra matrices (a x b) and (b x c)."""
    a, b, d = N.shape
    c = M.shape[1]
    if a == 0 or b == 0 or c == 0:
        return np.zeros((a, c, alg.dim), dtype=np.int64)
    p = alg.p
    # left[a, k, j, l] = sum_i N[a, k, i] table[i, j, l]
    left = matmul(N.reshape(a * b, d), alg._flat.reshape(d, d * d), p).reshape(a, b, d, d)
    # out[a, c, l] = sum_{k, j} left[a, k, j, l] M[k, c, j]
    lt = left.transpose(0, 3, 1, 2).reshape(a * d, b * d)
    mt = M.transpose(0, 2, 1).reshape(b * d, c)
    out = matmul(lt, mt, p).reshape(a, d, c).transpose(0, 2, 1)
    return np.ascontiguousarray(out)


def _identity(alg: SCAlgebra, verts: tuple[int, ...]) -> np.ndarray:
    n = len(verts)
    out = np.zeros((n, n, alg.dim), dtype=np.int64)
    for i, v in enumerate(verts):
        out[i, i] = alg.idempotents[v]
    return out


def _top_coeff(alg: SCAlgebra) -> np.ndarray:
    return alg.top.sum(axis=1) % alg.p


def _local_inverse(alg: SCAlgebra, x: np.ndarray, v: int) -> np.ndarray:
    """Inverse of x in e_v A e_v, where x has nonzero e_v coefficient."""
    p = alg.p
    lam = int(x @ _top_coeff(alg)) % p
    e = alg.idempotents[v]
    li = inv_mod(lam, p)
    n = (e - li * x) % p  # x = lam (e - n)
    out = e.copy()
    term = e.copy()
    for _ in range(alg.dim + 1):
        term = alg.mul(term, n)
        if not np.any(term):
            return (li * out) % p
        out = (out + term) % p
    raise IdempotentLiftDivergence("element is not invertible in its corner")


# Complexes -----------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ProjComplex:
    """Bounded complex of projectives.

    ``terms[k]`` lists the vertex index of each summand of T^k and
    ``diffs[k]`` is d^k : T^k -> T^{k+1}.  Empty degrees are omitted.
    """

    alg: SCAlgebra
    terms: dict[int, tuple[int, ...]]
    diffs: dict[int, np.ndarray] = field(default_factory=dict)

    def __post_init__(self) -> None:
        terms = {int(k): tuple(int(v) for v in vs) for k, vs in self.terms.items() if len(vs)}
        object.__setattr__(self, "terms", terms)
        diffs = {}
        for k in terms:
            if k + 1 in terms:
                shape = (len(terms[k + 1]), len(terms[k]), self.alg.dim)
                d = self.diffs.get(k)
                d = np.zeros(shape, dtype=np.int64) if d is None else np.asarray(d, dtype=np.int64) % self.alg.p
                if d.shape != shape:
                    raise InputError(f"differential in degree {k} has shape {d.shape}, expected {shape}")
                diffs[k] = d
        object.__setattr__(self, "diffs", diffs)

    @property
    def lo(self) -> int:
        return min(self.terms) if self.terms else 0

    @property
    def hi(self) -> int:
        return max(self.terms) if self.terms else 0

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def term(self, k: int) -> tuple[int, ...]:
        return self.terms.get(k, ())

    def d(self, k: int) -> np.ndarray:
        if k in self.diffs:
            return self.diffs[k]
        return np.zeros((len(self.term(k + 1)), len(self.term(k)), self.alg.dim), dtype=np.int64)

    def multiplicities(self, k: int) -> tuple[int, ...]:
        out = [0] * len(self.alg.vertices)
        for v in self.term(k):
            out[v] += 1
        return tuple(out)

    def k0_class(self) -> tuple[int, ...]:
        """Alternating sum of term classes over the projectives."""
        out = np.zeros(len(self.alg.vertices), dtype=np.int64)
        for k in self.terms:
            out += (-1) ** (k % 2) * np.array(self.multiplicities(k))
        return tuple(int(x) for x in out)

    def n_summands_total(self) -> int:
        return sum(len(v) for v in self.terms.values())

    def shift(self, s: int) -> "ProjComplex":
        """T[s], with T[s]^k = T^{k+s}."""
        sign = -1 if s % 2 else 1
        return ProjComplex(
            self.alg,
            {k - s: v for k, v in self.terms.items()},
            {k - s: (sign * d) % self.alg.p for k, d in self.diffs.items()},
        )

    def check(self) -> None:
        """Raise InputError unless d^2 = 0 and entries lie in their corners."""
        alg = self.alg
        for k, d in self.diffs.items():
            src, tgt = self.term(k), self.term(k + 1)
            for r, c in itertools.product(range(len(tgt)), range(len(src))):
                x = d[r, c]
                if not np.any(x):
                    continue
                proj = alg.mul(alg.mul(alg.idempotents[tgt[r]], x), alg.idempotents[src[c]])
                if np.any((proj - x) % alg.p):
                    raise InputError(f"entry ({r},{c}) of d^{k} is not in e_t A e_s")
            if k + 1 in self.diffs and np.any(amul(alg, self.diffs[k + 1], d)):
                raise InputError(f"d^{k + 1} d^{k} != 0")

    def to_json(self) -> dict:
        alg = self.alg
        out = {"lo": self.lo, "hi": self.hi, "terms": {}, "d": {}}
        for k, vs in sorted(self.terms.items()):
            out["terms"][str(k)] = [alg.vertices[v] for v in vs]
        for k, d in sorted(self.diffs.items()):
            rows = []
            for r in range(d.shape[0]):
                rows.append([{alg.labels[i]: str(int(d[r, c, i])) for i in np.flatnonzero(d[r, c])} for c in range(d.shape[1])])
            out["d"][str(k)] = rows
        return out

    @classmethod
    def from_json(cls, alg: SCAlgebra, obj: dict) -> "ProjComplex":
        terms = {int(k): tuple(alg.vertices.index(v) for v in vs) for k, vs in obj["terms"].items()}
        diffs = {}
        for k, rows in obj.get("d", {}).items():
            k = int(k)
            arr = np.zeros((len(terms.get(k + 1, ())), len(terms.get(k, ())), alg.dim), dtype=np.int64)
            for r, row in enumerate(rows):
                for c, entry in enumerate(row):
                    for lab, coef in entry.items():
                        arr[r, c, alg.labels.index(lab)] = int(coef) % alg.p
            diffs[k] = arr
        T = cls(alg, terms, diffs)
        T.check()
        return T

    def __add__(self, other: "ProjComplex") -> "ProjComplex":
        return direct_sum(self, other)

    def __repr__(self) -> str:
        parts = []
        for k in range(self.lo, self.hi + 1):
            vs = self.term(k)
            parts.append(f"{k}:" + ("+".join("P" + self.alg.vertices[v] for v in vs) if vs else "0"))
        return "ProjComplex(" + " -> ".join(parts) + ")"


def direct_sum(*Ts: ProjComplex) -> ProjComplex:
    alg = Ts[0].alg
    degs = sorted({k for T in Ts for k in T.terms})
    terms = {k: tuple(v for T in Ts for v in T.term(k)) for k in degs}
    diffs = {}
    for k in degs:
        if k + 1 not in terms:
            continue
        d = np.zeros((len(terms[k + 1]), len(terms[k]), alg.dim), dtype=np.int64)
        r0 = c0 = 0
        for T in Ts:
            nr, nc = len(T.term(k + 1)), len(T.term(k))
            d[r0 : r0 + nr, c0 : c0 + nc] = T.d(k)
            r0, c0 = r0 + nr, c0 + nc
        diffs[k] = d
    return ProjComplex(alg, terms, diffs)


def stalk(alg: SCAlgebra, vertices, degree: int = 0) -> ProjComplex:
    """The stalk complex of a sum of projectives (vertex labels or indices)."""
    idx = tuple(v if isinstance(v, (int, np.integer)) else alg.vertices.index(v) for v in vertices)
    return ProjComplex(alg, {degree: idx})


def regular_complex(alg: SCAlgebra, degree: int = 0) -> ProjComplex:
    return stalk(alg, range(len(alg.vertices)), degree)


def two_term(alg: SCAlgebra, P1, P0, d: np.ndarray) -> ProjComplex:
    """P1 -> P0 in degrees -1, 0 (vertex labels or indices)."""
    conv = lambda vs: tuple(v if isinstance(v, (int, np.integer)) else alg.vertices.index(v) for v in vs)
    T = ProjComplex(alg, {-1: conv(P1), 0: conv(P0)}, {-1: d})
    T.check()
    return T


# Chain maps and the Hom complex --------------------------------------------------

@dataclass(frozen=True, eq=False)
class ChainMap:
    """Graded map S -> T of degree n; ``comps[k]`` : S^k -> T^{k+n}."""

    source: ProjComplex
    target: ProjComplex
    degree: int
    comps: dict[int, np.ndarray]

    def comp(self, k: int) -> np.ndarray:
        if k in self.comps:
            return self.comps[k]
        alg = self.source.alg
        return np.zeros((len(self.target.term(k + self.degree)), len(self.source.term(k)), alg.dim), dtype=np.int64)

    def compose(self, other: "ChainMap") -> "ChainMap":
        """self o other (other first)."""
        alg = self.source.alg
        comps = {}
        for k in other.source.terms:
            comps[k] = amul(alg, self.comp(k + other.degree), other.comp(k))
        return ChainMap(other.source, self.target, self.degree + other.degree, comps)

    def scaled_add(self, other: "ChainMap", c: int = 1) -> "ChainMap":
        p = self.source.alg.p
        keys = set(self.comps) | set(other.comps)
        return ChainMap(self.source, self.target, self.degree, {k: (self.comp(k) + c * other.comp(k)) % p for k in keys})

    def top(self) -> np.ndarray:
        """Block matrix of e_v coefficients (degree 0 endomorphisms only)."""
        tc = _top_coeff(self.source.alg)
        blocks = [self.comp(k) @ tc % self.source.alg.p for k in sorted(self.source.terms)]
        n = sum(b.shape[0] for b in blocks)
        out = np.zeros((n, n), dtype=np.int64)
        i = 0
        for b in blocks:
            out[i : i + b.shape[0], i : i + b.shape[1]] = b
            i += b.shape[0]
        return out

    def is_zero(self) -> bool:
        return not any(np.any(c) for c in self.comps.values())


class _HomComplex:
    """Graded Hom(S, T) with coordinates over corner bases."""

    def __init__(self, S: ProjComplex, T: ProjComplex):
        self.S, self.T = S, T
        self.alg = S.alg
        self._index: dict[int, list[tuple[int, int, int, int]]] = {}

    def index(self, n: int) -> list[tuple[int, int, int, int]]:
        if n not in self._index:
            alg, out = self.alg, []
            for k in sorted(self.S.terms):
                tgt = self.T.term(k + n)
                for r, tv in enumerate(tgt):
                    for c, sv in enumerate(self.S.term(k)):
                        for b in alg.corner_indices(tv, sv):
                            out.append((k, r, c, int(b)))
            self._index[n] = out
        return self._index[n]

    def D(self, n: int) -> np.ndarray:
        """Matrix of the Hom differential Hom^n -> Hom^{n+1} (row convention)."""
        alg, p = self.alg, self.alg.p
        src, dst = self.index(n), self.index(n + 1)
        pos = {(k, r, c, b): i for i, (k, r, c, b) in enumerate(dst)}
        M = np.zeros((len(src), len(dst)), dtype=np.int64)
        sign = -1 if n % 2 == 0 else 1  # -(-1)^n
        lcache: dict = {}
        rcache: dict = {}
        for i, (k, r, c, b) in enumerate(src):
            dT = self.T.d(k + n)
            for r2 in range(dT.shape[0]):
                x = dT[r2, r]
                if not np.any(x):
                    continue
                key = (k + n, r2, r)
                if key not in lcache:
                    lcache[key] = alg.left_matrix(x)
                prod = lcache[key][b]
                for j in np.flatnonzero(prod):
                    M[i, pos[(k, r2, c, int(j))]] += prod[j]
            dS = self.S.d(k - 1)
            for c2 in range(dS.shape[1]):
                y = dS[c, c2]
                if not np.any(y):
                    continue
                key = (k - 1, c, c2)
                if key not in rcache:
                    rcache[key] = alg.right_matrix(y)
                prod = rcache[key][b]
                for j in np.flatnonzero(prod):
                    M[i, pos[(k - 1, r, c2, int(j))]] += sign * prod[j]
        return M % p

    def to_map(self, n: int, coords: np.ndarray) -> ChainMap:
        alg = self.alg
        comps: dict[int, np.ndarray] = {}
        for (k, r, c, b), x in zip(self.index(n), coords):
            if k not in comps:
                comps[k] = np.zeros((len(self.T.term(k + n)), len(self.S.term(k)), alg.dim), dtype=np.int64)
            comps[k][r, c, b] = (comps[k][r, c, b] + int(x)) % alg.p
        return ChainMap(self.S, self.T, n, comps)

    def coords(self, f: ChainMap) -> np.ndarray:
        return np.array([f.comp(k)[r, c, b] for k, r, c, b in self.index(f.degree)], dtype=np.int64)


@dataclass
class HomSpace:
    """Hom_K(S, T[n]): cycles modulo boundaries, plus a basis of representatives."""

    degree: int
    dim: int
    cycles: np.ndarray  # rows, in Hom complex coordinates
    boundaries: RowSpace
    reps: np.ndarray  # rows, a complement of the boundaries inside the cycles
    hom: _HomComplex

    def basis(self) -> list[ChainMap]:
        return [self.hom.to_map(self.degree, r) for r in self.reps]

    def cycle_maps(self) -> list[ChainMap]:
        return [self.hom.to_map(self.degree, r) for r in self.cycles]

    def is_null_homotopic(self, f: ChainMap) -> bool:
        return self.boundaries.contains(self.hom.coords(f))


def _hom(S: ProjComplex, T: ProjComplex, n: int, H: _HomComplex | None = None) -> HomSpace:
    H = H or _HomComplex(S, T)
    p = S.alg.p
    size = len(H.index(n))
    bd = RowSpace(size, p)
    if size == 0:
        z = np.zeros((0, 0), dtype=np.int64)
        return HomSpace(n, 0, z, bd, z, H)
    Dn = H.D(n)
    cycles = left_nullspace(Dn, p) if Dn.shape[1] else np.eye(size, dtype=np.int64)
    if len(H.index(n - 1)):
        B = H.D(n - 1)
        if np.any(B):
            bd.add(B)
    reps = []
    tmp = RowSpace(size, p)
    if bd.dim:
        tmp.add(bd.rows)
    for z in cycles:
        if tmp.add(z).shape[0]:
            reps.append(z)
    reps_arr = np.array(reps, dtype=np.int64).reshape(len(reps), size)
    return HomSpace(n, len(reps), cycles.reshape(-1, size), bd, reps_arr, H)


def hom_space(S: ProjComplex, T: ProjComplex, i: int = 0) -> HomSpace:
    """Hom_K(S, T[i]) as cycles in degree i of the Hom complex modulo boundaries."""
    if S.alg is not T.alg:
        raise InputError("complexes live over different algebras")
    return _hom(S, T, i)


def hom_dim(S: ProjComplex, T: ProjComplex, i: int = 0) -> int:
    if S.is_zero or T.is_zero:
        return 0
    if not (T.lo - i <= S.hi and S.lo <= T.hi - i):
        return 0
    return hom_space(S, T, i).dim


def euler_pairing(x, y, alg: SCAlgebra) -> int:
    """sum_{a, b} x_a y_b dim Hom(P_a, P_b) = x^T C^T y, C[i][j] = dim e_i A e_j."""
    C = np.array(cartan_matrix(alg), dtype=np.int64)
    return int(np.asarray(x, dtype=np.int64) @ C.T @ np.asarray(y, dtype=np.int64))


def euler_from_homs(S: ProjComplex, T: ProjComplex) -> int:
    """sum_i (-1)^i dim Hom_K(S, T[i]) over every shift where the Hom complex lives."""
    total = 0
    for i in range(T.lo - S.hi, T.hi - S.lo + 1):
        total += (-1) ** (i % 2) * hom_dim(S, T, i)
    return total


def is_presilting(T: ProjComplex) -> tuple[bool, ChainMap | None]:
    """Hom_K(T, T[i]) = 0 for i = 1 .. hi - lo; beyond that the Hom complex is zero.

    Returns the verdict and, when false, a chain map that is not null-homotopic.
    """
    if T.is_zero:
        return True, None
    for i in range(1, T.hi - T.lo + 1):
        H = hom_space(T, T, i)
        if H.dim:
            return False, H.basis()[0]
    return True, None


def presilting_pair(X: ProjComplex, Y: ProjComplex) -> bool:
    """X + Y is presilting, given that X and Y are."""
    for a, b in ((X, Y), (Y, X)):
        for i in range(1, max(a.hi, b.hi) - min(a.lo, b.lo) + 1):
            if hom_dim(a, b, i):
                return False
    return True


# Minimization --------------------------------------------------------------------

def _drop(M: np.ndarray, rows=None, cols=None) -> np.ndarray:
    if rows is not None:
        M = np.delete(M, rows, axis=0)
    if cols is not None:
        M = np.delete(M, cols, axis=1)
    return M


def minimize(T: ProjComplex) -> ProjComplex:
    """Remove contractible summands P -> P (Gaussian elimination on unit entries)."""
    alg, p = T.alg, T.alg.p
    tc = _top_coeff(alg)
    terms = dict(T.terms)
    diffs = {k: d.copy() for k, d in T.diffs.items()}
    while True:
        hit = None
        for k in sorted(diffs):
            d = diffs[k]
            if d.size == 0:
                continue
            tops = d @ tc % p
            for r, c in zip(*np.nonzero(tops)):
                if terms[k + 1][r] == terms[k][c]:
                    hit = (k, int(r), int(c))
                    break
            if hit:
                break
        if hit is None:
            break
        k, r0, c0 = hit
        d = diffs[k]
        v = terms[k][c0]
        ainv = _local_inverse(alg, d[r0, c0], v)
        col = d[:, c0 : c0 + 1]  # A -> D part (column c0)
        row = d[r0 : r0 + 1, :]  # B -> C part (row r0)
        corr = amul(alg, amul(alg, col, ainv.reshape(1, 1, -1)), row)
        newd = (d - corr) % p
        diffs[k] = _drop(newd, rows=[r0], cols=[c0])
        if k - 1 in diffs:
            diffs[k - 1] = _drop(diffs[k - 1], rows=[c0])
        if k + 1 in diffs:
            diffs[k + 1] = _drop(diffs[k + 1], cols=[r0])
        terms[k] = terms[k][:c0] + terms[k][c0 + 1 :]
        terms[k + 1] = terms[k + 1][:r0] + terms[k + 1][r0 + 1 :]
    return ProjComplex(alg, terms, diffs)


# Endomorphisms, idempotents and decomposition ---------------------------------------

def _end_cycles(T: ProjComplex) -> tuple[list[ChainMap], HomSpace]:
    H = hom_space(T, T, 0)
    return H.cycle_maps(), H


def _identity_map(T: ProjComplex) -> ChainMap:
    return ChainMap(T, T, 0, {k: _identity(T.alg, v) for k, v in T.terms.items()})


def _nilpotent(M: np.ndarray, p: int) -> bool:
    n = M.shape[0]
    P = M.copy()
    for _ in range(max(1, n.bit_length() + 1)):
        P = matmul(P, P, p)
    return not np.any(P)


def _local_split(tops: list[np.ndarray], p: int) -> bool:
    """True when the matrix algebra spanned by ``tops`` (containing 1) is local with residue field GF(p)."""
    n = tops[0].shape[0]
    eye = np.eye(n, dtype=np.int64)
    nil = []
    for t in tops:
        lam = next((l for l in range(p) if _nilpotent((t - l * eye) % p, p)), None)
        if lam is None:
            return False
        if np.any((t - lam * eye) % p):
            nil.append(((t - lam * eye) % p).reshape(-1))
    if not nil:
        return True
    space = RowSpace(n * n, p)
    space.add(np.array(nil))
    # closed under products and nilpotent as an algebra
    power = space.rows.copy()
    for _ in range(n + 1):
        prods = [matmul(a.reshape(n, n), b.reshape(n, n), p).reshape(-1) for a in power for b in space.rows]
        prods = [x for x in prods if np.any(x)]
        if not prods:
            return True
        if not space.contains(np.array(prods)):
            return False
        nxt = RowSpace(n * n, p)
        nxt.add(np.array(prods))
        power = nxt.rows
        if power.shape[0] == 0:
            return True
    return False


def end_is_local(T: ProjComplex) -> bool:
    """End_K(T) is local with residue field GF(p); T must be minimal."""
    if T.is_zero:
        return False
    maps, _ = _end_cycles(T)
    tops = [_identity_map(T).top()] + [f.top() for f in maps]
    return _local_split(tops, T.alg.p)


def _minpoly(M: np.ndarray, p: int) -> list[int]:
    """Coefficients (low to high, monic) of the minimal polynomial of a square matrix."""
    n = M.shape[0]
    powers = [np.eye(n, dtype=np.int64).reshape(-1)]
    while True:
        nxt = matmul(powers[-1].reshape(n, n), M, p).reshape(-1)
        A = np.array(powers)
        sol = solve_left(A, nxt, p)
        if sol is not None:
            return [int(-c) % p for c in sol] + [1]
        powers.append(nxt)


def _poly_eval(coeffs: list[int], x: ChainMap, one: ChainMap, p: int) -> ChainMap:
    out = ChainMap(one.source, one.target, 0, {k: np.zeros_like(v) for k, v in one.comps.items()})
    for c in reversed(coeffs):
        out = x.compose(out).scaled_add(one, c)
    return out


def _idempotent_poly(minpoly: list[int], p: int) -> list[int] | None:
    """Polynomial h with h(x) idempotent and nontrivial, if the minimal polynomial allows one."""
    t = sympy.Symbol("t")
    f = sympy.Poly(list(reversed(minpoly)), t, modulus=p)
    _, factors = f.factor_list()
    if len(factors) < 2:
        return None
    g0, e0 = factors[0]
    a = g0**e0
    b = sympy.Poly(1, t, modulus=p)
    for g, e in factors[1:]:
        b = b * g**e
    # h = 1 mod a, 0 mod b  ->  h = b * (b^{-1} mod a)
    s = sympy.invert(b.as_expr(), a.as_expr(), t, domain=sympy.GF(p)) if a.degree() > 0 else 1
    h = sympy.Poly(sympy.Poly(s, t, modulus=p) * b, t, modulus=p).rem(f)
    coeffs = [int(c) % p for c in reversed(h.all_coeffs())]
    return coeffs


def _lift_idempotent(e: ChainMap, p: int, limit: int = 64) -> ChainMap:
    for _ in range(limit):
        e2 = e.compose(e)
        if all(not np.any((e2.comp(k) - e.comp(k)) % p) for k in e.source.terms):
            return e
        e3 = e2.compose(e)
        e = ChainMap(e.source, e.target, 0, {k: (3 * e2.comp(k) - 2 * e3.comp(k)) % p for k in e.source.terms})
    raise IdempotentLiftDivergence("idempotent lifting did not converge")


def _find_idempotent(T: ProjComplex, maps: list[ChainMap], seed: int = 0, tries: int = 200) -> ChainMap | None:
    p = T.alg.p
    one = _identity_map(T)
    rng = np.random.default_rng(seed)
    cands = iter(maps)
    for attempt in range(tries + len(maps)):
        x = next(cands, None)
        if x is None:
            coef = rng.integers(0, p, size=len(maps))
            x = ChainMap(T, T, 0, {k: np.zeros_like(v) for k, v in one.comps.items()})
            for c, f in zip(coef, maps):
                if c:
                    x = x.scaled_add(f, int(c))
        mp = _minpoly(x.top(), p)
        h = _idempotent_poly(mp, p)
        if h is None:
            continue
        e = _lift_idempotent(_poly_eval(h, x, one, p), p)
        if not e.is_zero() and np.any(e.top() != one.top()):
            return e
    return None


def _mat_inverse_unipotent(alg: SCAlgebra, U: np.ndarray, verts: tuple[int, ...]) -> np.ndarray:
    """Inverse of U = 1 - N with N having radical entries."""
    p = alg.p
    I = _identity(alg, verts)
    N = (I - U) % p
    out, term = I.copy(), I.copy()
    for _ in range(alg.dim * len(verts) + 2):
        term = amul(alg, term, N)
        if not np.any(term):
            return out
        out = (out + term) % p
    raise IdempotentLiftDivergence("unipotent inverse did not terminate")


def _split(T: ProjComplex, e: ChainMap) -> tuple[ProjComplex, ProjComplex]:
    """T = Im e + Im(1 - e) for a strict idempotent chain map e."""
    alg, p = T.alg, T.alg.p
    tc = _top_coeff(alg)
    phis, phinvs, keep = {}, {}, {}
    for k, verts in T.terms.items():
        n = len(verts)
        I = _identity(alg, verts)
        ek = e.comp(k)
        t = ek @ tc % p
        eps = np.zeros_like(I)
        for r in range(n):
            for c in range(n):
                if t[r, c]:
                    eps[r, c] = t[r, c] * alg.idempotents[verts[r]] % p
        # u = e eps + (1 - e)(1 - eps), u eps = e u
        u = (amul(alg, ek, eps) + amul(alg, (I - ek) % p, (I - eps) % p)) % p
        # scalar change of basis Q with Q^{-1} t Q = diag, per vertex block
        Q = np.zeros((n, n), dtype=np.int64)
        ones: list[int] = []
        col = 0
        for v in sorted(set(verts)):
            idx = [i for i, w in enumerate(verts) if w == v]
            tv = t[np.ix_(idx, idx)]
            img = rref(tv.T, p)[0]  # rows spanning the column space of tv
            ker = left_nullspace(tv.T, p)  # rows x with tv x = 0
            vecs = list(img) + list(ker)
            if len(vecs) != len(idx):
                raise IdempotentLiftDivergence("top of the idempotent is not diagonalizable")
            for j, vec in enumerate(vecs):
                Q[idx, col] = vec % p
                if j < len(img):
                    ones.append(col)
                col += 1
        Qa = np.zeros_like(I)
        Qinv = _scalar_inverse(Q, p)
        Qia = np.zeros_like(I)
        order = []
        for c in range(n):
            # the summand in new position c has the vertex of the rows Q touches
            vs = {verts[r] for r in np.flatnonzero(Q[:, c])}
            order.append(vs.pop())
        for r in range(n):
            for c in range(n):
                if Q[r, c]:
                    Qa[r, c] = Q[r, c] * alg.idempotents[verts[r]] % p
                if Qinv[r, c]:
                    Qia[r, c] = Qinv[r, c] * alg.idempotents[order[r]] % p
        uinv = _mat_inverse_unipotent(alg, u, verts)
        # phi = (u Q)^{-1} = Q^{-1} u^{-1}
        phis[k] = amul(alg, Qia, uinv)
        phinvs[k] = amul(alg, u, Qa)
        keep[k] = (tuple(order), ones)
    parts = []
    for block in (True, False):
        terms, diffs = {}, {}
        for k, (order, ones) in keep.items():
            sel = [i for i in range(len(order)) if (i in ones) == block]
            terms[k] = tuple(order[i] for i in sel)
        for k in T.diffs:
            dn = amul(alg, amul(alg, phis[k + 1], T.diffs[k]), phinvs[k])
            rs = [i for i in range(len(keep[k + 1][0])) if (i in keep[k + 1][1]) == block]
            cs = [i for i in range(len(keep[k][0])) if (i in keep[k][1]) == block]
            ro = [i for i in range(len(keep[k + 1][0])) if (i in keep[k + 1][1]) != block]
            if np.any(dn[np.ix_(ro, cs)]):
                raise IdempotentLiftDivergence("conjugated differential is not block diagonal")
            diffs[k] = dn[np.ix_(rs, cs)]
        parts.append(ProjComplex(alg, terms, diffs))
    return parts[0], parts[1]


def _scalar_inverse(Q: np.ndarray, p: int) -> np.ndarray:
    n = Q.shape[0]
    aug = np.concatenate([Q % p, np.eye(n, dtype=np.int64)], axis=1)
    R, piv = rref(aug, p)
    if piv[:n] != list(range(n)):
        raise IdempotentLiftDivergence("change of basis is singular")
    return R[:, n:]


def decompose(T: ProjComplex, seed: int = 0) -> list[ProjComplex]:
    """Indecomposable summands (minimal complexes) in fingerprint order."""
    T = minimize(T)
    if T.is_zero:
        return []
    out = _decompose_minimal(T, seed)
    return sorted(out, key=fingerprint)


def _decompose_minimal(T: ProjComplex, seed: int) -> list[ProjComplex]:
    maps, _ = _end_cycles(T)
    one = _identity_map(T)
    if _local_split([one.top()] + [f.top() for f in maps], T.alg.p):
        return [T]
    e = _find_idempotent(T, maps, seed)
    if e is None:
        # no splitting idempotent: the residue algebra is a larger division ring
        return [T]
    A, B = _split(T, e)
    return _decompose_minimal(A, seed) + _decompose_minimal(B, seed)


# Fingerprints and isomorphism -------------------------------------------------------

def _stalk_profile(T: ProjComplex) -> tuple:
    """dim H^i(T e_v) for every vertex v and degree i."""
    alg = T.alg
    out = []
    for v in range(len(alg.vertices)):
        P = stalk(alg, [v])
        row = []
        for i in range(T.lo, T.hi + 1):
            row.append(hom_dim(P, T, i))
        out.append(tuple(row))
    return tuple(out)


def fingerprint(T: ProjComplex) -> tuple:
    """Isomorphism invariant of a minimal complex (degree range, term vectors, stalk Hom profile)."""
    if T.is_zero:
        return ()
    terms = tuple((k, T.multiplicities(k)) for k in range(T.lo, T.hi + 1))
    return (T.lo, T.hi, terms, _stalk_profile(T))


def is_isomorphic(S: ProjComplex, T: ProjComplex) -> bool:
    """Exact test for indecomposable minimal complexes.

    S and T are isomorphic iff some composite S -> T -> S is not in the
    radical of End(S), i.e. its top is not nilpotent.
    """
    if fingerprint(S) != fingerprint(T):
        return False
    p = S.alg.p
    fs = hom_space(S, T, 0).cycle_maps()
    gs = hom_space(T, S, 0).cycle_maps()
    for f in fs:
        for g in gs:
            if not _nilpotent(g.compose(f).top(), p):
                return True
    return False
