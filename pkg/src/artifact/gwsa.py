"""Generalised weighted surface algebras, twisted Brauer graph algebras, presets.

Data conventions: ``m`` and ``c`` are keyed by g-orbit representatives
(the least arrow id of the orbit), ``t`` by f-orbit representatives with
values ``(t0, t1)`` meaning t = t0 + t1 * alpha.  ``Z`` is a tuple of words.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .algebra import PathAlgebra, Presentation, SCAlgebra, build_basis, semisimple_plus_matrix, verify_relations
from .combinatorics import Quiver2Reg, quiver_B, quiver_K, quiver_R
from .errors import InvalidTData, ParameterOutOfRange

__all__ = [
    "GWSAData",
    "make_gwsa",
    "make_twisted_bga",
    "validate_gwsa",
    "verify_hom",
    "preset",
    "PRESETS",
    "q3k_semisimple_images",
    "expected_dim",
]


@dataclass(frozen=True)
class GWSAData:
    quiver: Quiver2Reg
    m: dict[str, int]
    c: dict[str, int] = field(default_factory=dict)
    t: dict[str, tuple[int, int]] = field(default_factory=dict)
    Z: tuple[tuple[str, ...], ...] = ()
    name: str = ""

    def m_of(self, a: str) -> int:
        return int(self.m.get(self.quiver.g_rep(a), 1))

    def c_of(self, a: str) -> int:
        return int(self.c.get(self.quiver.g_rep(a), 1))

    def t_of(self, a: str) -> tuple[int, int]:
        t0, t1 = self.t.get(self.quiver.f_rep(a), (0, 0))
        return int(t0), int(t1)

    def mn(self, a: str) -> int:
        return self.m_of(a) * self.quiver.n(a)

    def B(self, a: str) -> tuple[str, ...]:
        return self.quiver.g_path(a, self.mn(a))

    def A(self, a: str) -> tuple[str, ...]:
        return self.quiver.g_path(a, self.mn(a) - 1)

    def with_m(self, m: dict[str, int]) -> "GWSAData":
        return replace(self, m=dict(m))

    def full_m(self) -> dict[str, int]:
        return {orb[0]: self.m_of(orb[0]) for orb in self.quiver.g_orbits()}


def expected_dim(data: GWSAData) -> int:
    """Sum over g-orbits of m * n^2."""
    return sum(data.m_of(o[0]) * len(o) ** 2 for o in data.quiver.g_orbits())


def check_data(data: GWSAData, p: int) -> None:
    """Raise InvalidTData (or ParameterOutOfRange) when the data is inadmissible."""
    q = data.quiver
    for orb in q.g_orbits():
        if data.m_of(orb[0]) < 1:
            raise ParameterOutOfRange(f"multiplicity of orbit {orb[0]} must be positive")
        if data.c_of(orb[0]) % p == 0:
            raise ParameterOutOfRange(f"c on orbit {orb[0]} must be nonzero mod {p}")
    for key in list(data.m) + list(data.c):
        if key not in q.arrows or q.g_rep(key) != key:
            raise ParameterOutOfRange(f"{key} is not a g-orbit representative")
    for key in data.t:
        if key not in q.arrows or q.f_rep(key) != key:
            raise InvalidTData(f"{key} is not an f-orbit representative")
    for a in q.arrows:
        t0, t1 = data.t_of(a)
        b = q.bar[a]
        if t0 not in (0, 1):
            raise InvalidTData(f"t0 on the f-orbit of {a} must be 0 or 1")
        if t0 == 1:
            if q.f[q.f[q.f[a]]] != a:
                raise InvalidTData(f"t0 = 1 needs f^3({a}) = {a}")
            if data.mn(b) < 2:
                raise InvalidTData(f"t0 = 1 needs m n >= 2 on the orbit of {b}")
        if t1 % p:
            if q.f[a] != a:
                raise InvalidTData(f"t1 != 0 needs f({a}) = {a}")
            if data.mn(b) < 3:
                raise InvalidTData(f"t1 != 0 needs m n >= 3 on the orbit of {b}")
    for w in data.Z:
        if not _z_shape_ok(q, w):
            raise InvalidTData(f"Z word {' '.join(w)} is neither a g f nor a f g shape")


def _z_shape_ok(q: Quiver2Reg, w: tuple[str, ...]) -> bool:
    if len(w) != 3 or any(a not in q.src for a in w):
        return False
    a = w[0]
    return w == (a, q.g[a], q.f[q.g[a]]) or w == (a, q.f[a], q.g[q.f[a]])


def default_L(data: GWSAData) -> int:
    return 2 * max(data.mn(a) for a in data.quiver.arrows) + 2


def gwsa_presentation(
    data: GWSAData, p: int, L: int | None = None, nx: int = 1, x_rules: bool = False
) -> Presentation:
    """Presentation of the GWSA (``x_rules``: a f(a) = X c A t instead)."""
    q = data.quiver
    rules = {}
    xd = 1 if x_rules else 0
    for a in q.arrows:
        t0, t1 = data.t_of(a)
        b = q.bar[a]
        terms = []
        if t0:
            terms.append((data.c_of(b) * t0 % p, xd, data.A(b)))
        if t1 % p:
            terms.append((data.c_of(b) * t1 % p, xd, data.A(b) + (a,)))
        rules[a] = terms
    rels = []
    for v in q.vertices:
        a, b = q.out_arrows(v)
        rels.append([(data.c_of(a) % p, 0, data.B(a)), ((-data.c_of(b)) % p, 0, data.B(b))])
    for w in data.Z:
        rels.append([(1, 0, tuple(w))])
    if L is None:
        L = default_L(data)
        if x_rules:
            L = nx * (max(data.mn(a) for a in q.arrows) + 1) + 2
    shortening = any(not x_rules and len(w) < 2 for terms in rules.values() for _, _, w in terms)
    return Presentation(q, p, L, rules, rels, nx=nx, bounded=shortening, name=data.name)


def make_gwsa(data: GWSAData, p: int = 2, L: int | None = None, check: bool = True) -> PathAlgebra:
    if check:
        check_data(data, p)
    return build_basis(gwsa_presentation(data, p, L))


def twisted_presentation(q: Quiver2Reg, m: dict[str, int], p: int, L: int | None = None) -> Presentation:
    data = GWSAData(q, dict(m))
    rels = []
    for v in q.vertices:
        a, b = q.out_arrows(v)
        rels.append([(1, 0, data.B(a)), (1, 0, data.B(b))])
    return Presentation(q, p, L or default_L(data), {a: [] for a in q.arrows}, rels, name="twisted BGA")


def make_twisted_bga(q: Quiver2Reg, m: dict[str, int], p: int = 2, L: int | None = None) -> PathAlgebra:
    """kQ/(a f(a), B_a + B_abar)."""
    for key, val in m.items():
        if int(val) < 1:
            raise ParameterOutOfRange(f"multiplicity of {key} must be positive")
    return build_basis(twisted_presentation(q, m, p, L))


def validate_gwsa(alg: PathAlgebra, data: GWSAData) -> dict:
    """Dimension axiom, socle axiom and sufficient-condition hypotheses."""
    q, p = data.quiver, alg.p
    report: dict = {"dim": alg.dim, "expected_dim": expected_dim(data)}
    report["dim_ok"] = alg.dim == report["expected_dim"]
    socle = []
    for a in q.arrows:
        if data.mn(a) < 2:
            continue
        b = q.bar[a]
        bound = data.m_of(a) + 1
        start = 2 if q.n(a) == 1 else 1
        for e in range(start, bound + 1):
            w1 = q.g_path(a, e * q.n(a)) + data.A(a)
            w2 = q.g_path(b, e * q.n(b)) + data.A(a)
            val = alg.element([(1, 0, w1), (1, 0, w2)])
            socle.append({"arrow": a, "e": e, "bound": bound, "ok": not np.any(val)})
    report["socle_checks"] = socle
    report["socle_ok"] = all(s["ok"] for s in socle)
    quat = [a for a in q.arrows if data.t_of(q.bar[a])[0] == 1]
    afg = {(a, q.f[a], q.g[q.f[a]]) for a in q.arrows}
    route1 = afg <= set(map(tuple, data.Z)) and all(data.mn(a) >= 3 for a in quat)
    route2 = all(data.mn(a) >= 4 for a in quat)
    report["sufficient_route1"] = route1
    report["sufficient_route2"] = route2
    report["hypotheses_met"] = route1 or route2
    report["ok"] = report["dim_ok"] and report["socle_ok"]
    report["length_bound"] = alg.pres.L
    report["connected"] = q.is_connected()
    report["prime"] = p
    return report


def verify_hom(source: PathAlgebra, target: SCAlgebra, images: dict[str, np.ndarray]) -> bool:
    """True iff the images satisfy every relation and induce a bijection."""
    return verify_relations(source, target, images)["ok"]


def q3k_semisimple_images(p: int = 2, c: int = 1) -> tuple[SCAlgebra, dict[str, np.ndarray]]:
    """Target k^3 x M_3(k) and the images e_i -> E_i + E(i,i), a_i -> c E(i, s(i)), b_i -> c E(i, s^-1(i))."""
    T = semisimple_plus_matrix(p)

    def E4(i: int, j: int) -> np.ndarray:
        v = T.zero()
        v[3 + (i - 1) * 3 + (j - 1)] = 1
        return v

    def sigma(i: int, k: int = 1) -> int:
        return (i - 1 + k) % 3 + 1

    images = {}
    for i in (1, 2, 3):
        e = E4(i, i)
        e[i - 1] = 1
        images[f"e{i}"] = e
        images[f"a{i}"] = (c * E4(i, sigma(i))) % p
        images[f"b{i}"] = (c * E4(i, sigma(i, -1))) % p
    return T, images


# Presets -------------------------------------------------------------------------

def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise ParameterOutOfRange(msg)


def _d2b(a1: int, a2: int, v: int = 0, p: int = 2) -> GWSAData:
    _need(a1 >= a2 >= 1, "D(2B) needs a1 >= a2 >= 1")
    _need(v in (0, 1), "D(2B) needs v in {0, 1}")
    return GWSAData(quiver_B(), {"a1": a1, "b2": a2}, {}, {"b1": (0, v), "a1": (0, 0)}, (), f"D(2B)^{a1},{a2}({v})")


def _d3k(a1: int, a2: int, a3: int, p: int = 2) -> GWSAData:
    _need(a1 >= a2 >= a3 >= 1, "D(3K) needs a1 >= a2 >= a3 >= 1")
    return GWSAData(quiver_K(), {"a1": a1, "a2": a2, "a3": a3}, {}, {}, (), f"D(3K)^{a1},{a2},{a3}")


def _d3r(a1: int, b1: int, b2: int, b3: int, p: int = 2) -> GWSAData:
    _need(b1 >= b2 >= b3 >= a1 >= 1, "D(3R) needs b1 >= b2 >= b3 >= a1 >= 1")
    _need(b2 >= 2, "D(3R) needs b2 >= 2")
    m = {"a1": a1, "b1": b1, "b2": b2, "b3": b3}
    return GWSAData(quiver_R(), m, {}, {}, (), f"D(3R)^{a1},{b1},{b2},{b3}")


def _sd2b1(a1: int, a2: int, v: int = 0, p: int = 2) -> GWSAData:
    _need(a1 >= 1 and a2 >= 1, "SD(2B)1 needs a1, a2 >= 1")
    _need((a1, a2) != (1, 1), "SD(2B)1 needs (a1, a2) != (1, 1)")
    _need(v in (0, 1), "SD(2B)1 needs v in {0, 1}")
    return GWSAData(quiver_B(), {"a1": a1, "b2": a2}, {}, {"b1": (1, v), "a1": (0, 0)}, (), f"SD(2B)1^{a1},{a2}({v})")


def _sd2b2(a1: int, a2: int, v: int = 0, p: int = 2) -> GWSAData:
    _need(a1 >= 1 and a2 >= 2 and a1 + a2 >= 4, "SD(2B)2 needs a1 >= 1, a2 >= 2, a1 + a2 >= 4")
    _need(v in (0, 1), "SD(2B)2 needs v in {0, 1}")
    Z = (("a1", "b2", "b2"), ("b2", "b2", "a2"))
    return GWSAData(quiver_B(), {"a1": a1, "b2": a2}, {}, {"b1": (0, v), "a1": (1, 0)}, Z, f"SD(2B)2^{a1},{a2}({v})")


def _sd3k(a1: int, a2: int, a3: int, p: int = 2) -> GWSAData:
    _need(a1 >= a2 >= a3 >= 1, "SD(3K) needs a1 >= a2 >= a3 >= 1")
    _need(a1 >= 2, "SD(3K) needs a1 >= 2")
    return GWSAData(quiver_K(), {"a1": a1, "a2": a2, "a3": a3}, {}, {"a1": (1, 0), "b1": (0, 0)}, (), f"SD(3K)^{a1},{a2},{a3}")


def _q2b1(a1: int, a2: int, u: int = 1, v: int = 0, p: int = 2) -> GWSAData:
    _need(a1 >= 1 and a2 >= 3, "Q(2B)1 needs a1 >= 1, a2 >= 3")
    _need(u % p != 0, "Q(2B)1 needs u invertible")
    c = {"a1": u % p, "b2": pow(u, 1 - a2, p)}
    Z = (("b1", "b1", "a1"), ("a2", "b1", "b1"))
    return GWSAData(quiver_B(), {"a1": a1, "b2": a2}, c, {"b1": (1, v % p), "a1": (1, 0)}, Z, f"Q(2B)1^{a1},{a2}({u},{v})")


def _q3k(a1: int, a2: int, a3: int, p: int = 2) -> GWSAData:
    _need(a1 >= a2 >= a3 >= 1, "Q(3K) needs a1 >= a2 >= a3 >= 1")
    _need(a2 >= 2, "Q(3K) needs a2 >= 2")
    _need((a1, a2, a3) != (2, 2, 1), "Q(3K) needs (a1, a2, a3) != (2, 2, 1)")
    return q3k_data((a1, a2, a3))


def q3k_data(m: tuple[int, int, int], Z: bool = True, t: int = 1, c: dict[str, int] | None = None) -> GWSAData:
    """Q(3K)-shaped data without the parameter-range guard."""
    words = (("b2", "a1", "a2"), ("a2", "b3", "b2"), ("a3", "b1", "b3")) if Z else ()
    return GWSAData(
        quiver_K(),
        {"a1": m[0], "a2": m[1], "a3": m[2]},
        dict(c or {}),
        {"a1": (t, 0), "b1": (t, 0)},
        words,
        "Q(3K)^{},{},{}".format(*m),
    )


PRESETS = {
    "D(2B)": _d2b,
    "D(3K)": _d3k,
    "D(3R)": _d3r,
    "SD(2B)1": _sd2b1,
    "SD(2B)2": _sd2b2,
    "SD(3K)": _sd3k,
    "Q(2B)1": _q2b1,
    "Q(3K)": _q3k,
}


def preset(name: str, *params: int, p: int = 2, **scalars: int) -> GWSAData:
    """Data for a named family, e.g. ``preset("Q(3K)", 2, 2, 2)`` or ``preset("D(2B)", 2, 1, v=1)``."""
    if name not in PRESETS:
        raise ParameterOutOfRange(f"unknown preset {name}; known: {sorted(PRESETS)}")
    try:
        return PRESETS[name](*params, p=p, **scalars)
    except TypeError as exc:
        raise ParameterOutOfRange(f"bad parameters for {name}: {exc}") from None
