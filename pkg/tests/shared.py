"""Cached builders shared by the acceptance and property tests."""

from __future__ import annotations

from functools import lru_cache

from artifact.combinatorics import quiver_K, quiver_tree2
from artifact.orders import central_z, make_ribbon_order
from artifact.silting import enumerate_two_term, quotient_of

QK_MS = ({}, {"a1": 2}, {"a1": 3, "a2": 2})
TREE_MS = ({}, {"q": 3})


@lru_cache(maxsize=None)
def qk_order():
    return make_ribbon_order(quiver_K(), 12, 2)


@lru_cache(maxsize=None)
def qk_case(i: int):
    o = qk_order()
    x = central_z(o, QK_MS[i])
    Q = quotient_of(o, x)
    return x, Q, enumerate_two_term(Q)


@lru_cache(maxsize=None)
def tree_order():
    return make_ribbon_order(quiver_tree2(), 12, 2)


@lru_cache(maxsize=None)
def tree_case(i: int):
    o = tree_order()
    x = central_z(o, TREE_MS[i])
    Q = quotient_of(o, x)
    return x, Q, enumerate_two_term(Q)
