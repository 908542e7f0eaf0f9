import json

import numpy as np
import pytest

from oracles import two_term_silting_count
from shared import qk_case, qk_order, tree_case

from artifact.combinatorics import quiver_K, quiver_single_edge
from artifact.errors import NodeCapExceeded, NotPresiltingInput
from artifact.gwsa import make_twisted_bga
from artifact.homotopy import stalk
from artifact.orders import central_z, make_ribbon_order
from artifact.silting import (
    certify_silting,
    compare_posets,
    enumerate_two_term,
    irreducible_mutation,
    lift_complex,
    make_node,
    order_leq,
    quotient_of,
    reduce_complex,
)

# frozen from tests/oracles.py on the triangle twisted Brauer graph algebra
QK_G_VECTORS = [
    (-1, -1, 1), (-1, 0, 0), (-1, 0, 1), (-1, 1, -1), (-1, 1, 0), (-1, 1, 1),
    (0, -1, 0), (0, -1, 1), (0, 0, -1), (0, 0, 1), (0, 1, -1), (0, 1, 0),
    (1, -1, -1), (1, -1, 0), (1, -1, 1), (1, 0, -1), (1, 0, 0), (1, 1, -1),
]


def test_single_edge():
    o = make_ribbon_order(quiver_single_edge(), 4, 2)
    P = enumerate_two_term(quotient_of(o, central_z(o, {})))
    assert len(P.nodes) == 2 and P.edges == {(0, 1)}


def test_tree_matches_oracle():
    _, _, P = tree_case(0)
    assert len(P.nodes) == 6 and len(P.edges) == 6


def test_qk_indecomposables_match_oracle():
    _, _, P = qk_case(0)
    found = sorted({g for n in P.nodes for g in n.g_vectors()})
    assert found == QK_G_VECTORS
    alg = make_twisted_bga(quiver_K(), {}, 2)
    assert two_term_silting_count(alg.table, alg.idempotents, 2, maxmult=1)["g_vectors"] == QK_G_VECTORS


def test_certificates():
    _, Q, P = qk_case(0)
    assert all(certify_silting(n).ok for n in P.nodes)
    partial = make_node([stalk(Q, [0]), stalk(Q, [1])])
    c = certify_silting(partial)
    assert not c.ok and "summands" in c.reason


def test_mutation_goes_down():
    _, _, P = qk_case(0)
    top = P.nodes[0]
    for s in range(3):
        low = irreducible_mutation(top, s, "left")
        assert order_leq(low, top) and not order_leq(top, low)
        back = irreducible_mutation(low, [i for i, t in enumerate(low.summands) if not any(t is u for u in top.summands)][0], "right")
        assert P.find(back) == 0


def test_poset_outputs():
    _, _, P = tree_case(0)
    dot = P.to_dot()
    assert dot.startswith("digraph") and dot.count("->") == len(P.edges)
    obj = json.loads(json.dumps(P.to_json()))
    assert len(obj["nodes"]) == 6 and len(obj["order"]) == 6
    assert all(obj["order"][i][i] == 1 for i in range(6))


def test_compare_posets():
    _, _, T = tree_case(0)
    _, _, T3 = tree_case(1)
    _, _, K = qk_case(0)
    assert isinstance(compare_posets(T, T3), dict)
    assert compare_posets(T, K) is None
    assert compare_posets(K, qk_case(1)[2], cap=1) == "inconclusive"


def test_node_cap():
    _, Q, _ = qk_case(0)
    with pytest.raises(NodeCapExceeded):
        enumerate_two_term(Q, cap=3)


def test_lift_three_term_complex():
    o = qk_order()
    x, Q, P = qk_case(0)
    # a left mutation that leaves the two-term window with three terms
    T = None
    for node in P.nodes:
        for s in range(3):
            C = irreducible_mutation(node, s, "left").complex
            if C.hi - C.lo == 2:
                T = C
                break
        if T is not None:
            break
    assert T is not None
    lifted = lift_complex(o, x, T)
    lifted.check()
    back = reduce_complex(Q, lifted)
    assert all(np.array_equal(back.d(k), T.d(k)) for k in T.diffs)


def test_lift_rejects_non_presilting():
    o = qk_order()
    x, Q, _ = qk_case(0)
    R = stalk(Q, [0, 1, 2])
    with pytest.raises(NotPresiltingInput):
        lift_complex(o, x, R + R.shift(1))


def test_lift_needs_correction():
    # over k[a, b]/(ab, ba) modulo z = a + b the complex P -a-> P -a-> P has d^2 = 0,
    # while the naive lift has d^2 = a^2 = a z, which the x-adic step must repair
    from artifact.homotopy import ProjComplex, amul

    o = make_ribbon_order(quiver_single_edge(), 6, 2)
    z = central_z(o, {})
    Q = quotient_of(o, z)
    d = np.zeros((1, 1, Q.dim), dtype=np.int64)
    d[0, 0] = Q.gens["a"]
    T = ProjComplex(Q, {-2: (0,), -1: (0,), 0: (0,)}, {-2: d, -1: d})
    T.check()
    naive = amul(o.alg, o.alg.gens["a"].reshape(1, 1, -1), o.alg.gens["a"].reshape(1, 1, -1))
    assert np.any(naive)
    lifted = lift_complex(o, z, T, check=False)
    lifted.check()
    back = reduce_complex(Q, lifted)
    assert all(np.array_equal(back.d(k), T.d(k)) for k in T.diffs)
