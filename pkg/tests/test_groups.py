import math

import pytest

from homstab.groups import (
    symmetric_group, alternating_group, cyclic_group, wreath_group,
    general_linear_group, gln_order, perm_mul, perm_inv, perm_identity,
    perm_block_sum, perm_braiding, mat_mul_mod, mat_inv_mod, mat_identity,
    quotient_group, abelianization, GroupBudgetExceeded,
)


def _is_group(G):
    e = G.identity
    for g in G:
        assert G.mul(g, G.inv(g)) == e
        assert G.mul(e, g) == g
    gs = list(G)[: min(8, G.order)]
    for g in gs:
        for h in gs:
            assert G.mul(g, h) in G


@pytest.mark.parametrize("n", range(0, 6))
def test_symmetric_group_order(n):
    G = symmetric_group(n)
    assert G.order == math.factorial(n)
    _is_group(G)


@pytest.mark.parametrize("n", range(2, 7))
def test_alternating_group_order(n):
    assert alternating_group(n).order == math.factorial(n) // 2


def test_perm_ops():
    g = (1, 2, 0)
    assert perm_mul(g, perm_inv(g)) == perm_identity(3)
    assert perm_block_sum((1, 0), (0,)) == (1, 0, 2)
    b = perm_braiding(1, 2)
    assert perm_mul(b, perm_braiding(2, 1)) == perm_identity(3)


@pytest.mark.parametrize("n,m", [(1, 2), (2, 2), (2, 3), (3, 2)])
def test_gl_group_order(n, m):
    G = general_linear_group(n, m, budget=25000)
    assert G.order == gln_order(n, m)
    _is_group(G)


def test_mat_inverse_mod():
    a = ((1, 1), (0, 1))
    inv = mat_inv_mod(a, 5)
    assert mat_mul_mod(a, inv, 5) == mat_identity(2)


def test_wreath_group_order():
    G = wreath_group(cyclic_group(2), 3)
    assert G.order == 8 * 6
    _is_group(G)


def test_cyclic_abelianization():
    G = cyclic_group(6)
    ab, phi = abelianization(G)
    assert ab.free_rank == 0 and ab.torsion == (6,)
    assert len(set(phi.values())) == 6


@pytest.mark.parametrize("n,expect", [(3, (3,)), (4, (3,)), (5, ()),
                                      (6, ())])
def test_alternating_abelianization(n, expect):
    ab, _ = abelianization(alternating_group(n))
    assert ab.free_rank == 0 and ab.torsion == expect


def test_symmetric_abelianization():
    ab, _ = abelianization(symmetric_group(4))
    assert ab.free_rank == 0 and ab.torsion == (2,)


def test_quotient_group():
    G = symmetric_group(3)
    Q, proj = quotient_group(G, G.commutator_subgroup())
    assert Q.order == 2
    assert proj[G.identity] == Q.identity


def test_commutator_subgroup_of_s4():
    G = symmetric_group(4)
    assert len(G.commutator_subgroup()) == 12


def test_generator_words_cover_group():
    G = symmetric_group(4)
    words = G.generator_words()
    assert len(words) == G.order
    gens = G.generators
    for g, w in words.items():
        acc = G.identity
        for i in w:
            acc = G.mul(acc, gens[i])
        assert acc == g


def test_budget_guard():
    with pytest.raises(GroupBudgetExceeded):
        symmetric_group(8, budget=100)
