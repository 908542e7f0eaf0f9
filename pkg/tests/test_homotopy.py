import numpy as np
import pytest

from artifact.gwsa import make_gwsa, preset
from artifact.homotopy import (
    ProjComplex,
    decompose,
    direct_sum,
    end_is_local,
    euler_from_homs,
    euler_pairing,
    fingerprint,
    hom_dim,
    hom_space,
    is_isomorphic,
    is_presilting,
    minimize,
    regular_complex,
    stalk,
    two_term,
)


@pytest.fixture(scope="module")
def alg():
    return make_gwsa(preset("D(3K)", 1, 1, 1), 2)


def arrow_complex(alg, a, src, tgt):
    # P_src -> P_tgt by left multiplication with the arrow a in e_tgt A e_src
    d = np.zeros((1, 1, alg.dim), dtype=np.int64)
    d[0, 0] = alg.gens[a]
    return two_term(alg, [src], [tgt], d)


def test_stalk_homs(alg):
    P1, P2 = stalk(alg, ["1"]), stalk(alg, ["2"])
    assert hom_dim(P1, P1) == 2 and hom_dim(P1, P2) == 1 and hom_dim(P1, P2, 1) == 0


def test_two_term(alg):
    T = arrow_complex(alg, "a1", "2", "1")
    assert [hom_dim(T, T, i) for i in (-1, 0, 1)] == [0, 2, 0]
    assert is_presilting(T)[0]
    assert euler_pairing(T.k0_class(), T.k0_class(), alg) == euler_from_homs(T, T) == 2
    assert T.k0_class() == (1, -1, 0)


def test_regular_and_shift(alg):
    R = regular_complex(alg)
    assert is_presilting(R)[0]
    ok, witness = is_presilting(R + R.shift(1))
    assert not ok and witness is not None and not witness.is_zero()


def test_decompose(alg):
    R = regular_complex(alg)
    parts = decompose(R + R)
    assert len(parts) == 6 and all(end_is_local(p) for p in parts)
    T = arrow_complex(alg, "a1", "2", "1")
    parts = decompose(T + T.shift(1) + stalk(alg, ["1"]))
    assert len(parts) == 3
    assert sum(is_isomorphic(p, T) for p in parts) == 1


def test_contractible_cone(alg):
    e = np.zeros((1, 1, alg.dim), dtype=np.int64)
    e[0, 0] = alg.idempotents[0]
    C = two_term(alg, ["1"], ["1"], e)
    assert decompose(C) == []
    T = arrow_complex(alg, "a1", "2", "1")
    assert fingerprint(minimize(C + T)) == fingerprint(T)


def test_isomorphism(alg):
    P1, P2 = stalk(alg, ["1"]), stalk(alg, ["2"])
    T = arrow_complex(alg, "a1", "2", "1")
    assert is_isomorphic(T, T) and not is_isomorphic(P1, P2)
    U = arrow_complex(alg, "b1", "3", "1")
    assert not is_isomorphic(T, U)
    # a summand recovered by decomposition is isomorphic to the original
    split = [p for p in decompose(T + stalk(alg, ["3"])) if p.lo == -1]
    assert len(split) == 1 and is_isomorphic(split[0], T)


def test_hom_space_null_homotopy(alg):
    T = arrow_complex(alg, "a1", "2", "1")
    H = hom_space(T, T, 0)
    for f in H.basis():
        assert not H.is_null_homotopic(f)


def test_json_round_trip(alg):
    T = direct_sum(arrow_complex(alg, "a1", "2", "1"), stalk(alg, ["3"]))
    back = ProjComplex.from_json(alg, T.to_json())
    assert back.terms == T.terms
    assert all(np.array_equal(back.d(k), T.d(k)) for k in T.diffs)
