import numpy as np
import pytest

from artifact.algebra import cartan_matrix
from artifact.combinatorics import quiver_K, quiver_single_edge, quiver_tree2
from artifact.errors import NotInPullback, PreconditionFailed, TruncationUnstable
from artifact.gwsa import make_twisted_bga, preset
from artifact.gwsa import q3k_data
from artifact.orders import (
    central_z,
    decomposition_matrix,
    gamma0_decomposition,
    generic_centre_rank,
    lift_central_xi,
    make_gamma0,
    make_ribbon_order,
    pair_to_coords,
    reduce_mod,
    verify_reduction,
)


@pytest.fixture(scope="module")
def gamma0():
    return make_gamma0(q3k_data((1, 1, 1), Z=False), 2)


def test_ribbon_dimensions():
    assert make_ribbon_order(quiver_K(), 8, 2).dim == 51
    assert make_ribbon_order(quiver_tree2(), 6, 2).dim == 26
    assert make_ribbon_order(quiver_single_edge(), 4, 2).dim == 9


def test_reduction_is_twisted_bga():
    o = make_ribbon_order(quiver_K(), 8, 2)
    Q = reduce_mod(o, central_z(o, {}))
    assert Q.dim == 12 and cartan_matrix(Q) == [[2, 1, 1], [1, 2, 1], [1, 1, 2]]
    assert verify_reduction(Q, make_twisted_bga(quiver_K(), {}, 2))["ok"]


def test_reduction_odd_prime():
    o = make_ribbon_order(quiver_K(), 10, 3)
    m = {"a1": 2}
    Q = reduce_mod(o, central_z(o, m))
    assert Q.dim == 16
    assert cartan_matrix(Q) == decomposition_matrix(o, m).cartan() == [[3, 2, 1], [2, 3, 1], [1, 1, 2]]
    assert verify_reduction(Q, make_twisted_bga(quiver_K(), m, 3))["ok"]


def test_decomposition_matrices():
    assert decomposition_matrix(quiver_K()).D == [[1, 0, 1], [1, 1, 0], [0, 1, 1]]
    d = decomposition_matrix(quiver_tree2(), {"q": 2})
    assert d.D == [[1, 1, 0], [0, 1, 1]] and d.multiplicities == [1, 2, 1]
    assert d.cartan() == [[3, 2], [2, 3]]


def test_guards():
    o = make_ribbon_order(quiver_K(), 4, 2)
    with pytest.raises(PreconditionFailed):
        central_z(o, {"a1": 2})
    with pytest.raises(TruncationUnstable):
        reduce_mod(o, central_z(o, {}), power=2)


def test_gamma0_reduction(gamma0):
    assert gamma0.dim == 123
    mp = {"a1": 2, "a2": 2, "a3": 2}
    Q = reduce_mod(gamma0, lift_central_xi(gamma0, mp))
    assert Q.dim == 36
    assert cartan_matrix(Q) == gamma0_decomposition(mp).cartan()
    assert verify_reduction(Q, preset("Q(3K)", 3, 3, 3))["ok"]


def test_gamma0_guards(gamma0):
    with pytest.raises(PreconditionFailed, match="m'_a1 > m_a1"):
        lift_central_xi(gamma0, {"a1": 1, "a2": 2, "a3": 2})
    with pytest.raises(PreconditionFailed, match="2 m' n <= L"):
        lift_central_xi(gamma0, {"a1": 4, "a2": 4, "a3": 4})
    lam1 = gamma0.parts["lambda1"]
    lam2 = gamma0.parts["lambda2"]
    with pytest.raises(NotInPullback):
        pair_to_coords(gamma0, lam1.gens["a1"], np.zeros(lam2.dim, dtype=np.int64))


def test_generic_centre_rank(gamma0):
    xi = lift_central_xi(gamma0, {"a1": 2, "a2": 2, "a3": 2})
    g = generic_centre_rank(gamma0, xi, 3)
    assert g["rank"] == 10 and g["stable"]
    assert g["centre_dims"] == [10, 20, 30]
