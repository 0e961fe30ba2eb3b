import math

import pytest

from homstab.simplicial import (
    build_W, build_S, lift_profile, link, complexes_isomorphic,
    ord_of_complex, w_isomorphic_to_ord, connectivity_certificate,
    weakly_cm_report, SimplicialComplex,
)


@pytest.mark.parametrize("n", range(1, 7))
def test_W_level_sizes_symmetric(sym_cat, n):
    W = build_W(sym_cat, 0, 1, n)
    # p-simplices = injections of a (p+1)-set into an n-set
    for p, level in enumerate(W.levels):
        assert len(level) == math.factorial(n) // math.factorial(n - p - 1)


@pytest.mark.parametrize("n", range(1, 7))
def test_S_is_full_simplex(sym_cat, n):
    # S_n(0,1) in U-Sigma is the (n-1)-simplex on n vertices
    S = build_S(build_W(sym_cat, 0, 1, n))
    assert S.n_vertices == n
    full = SimplicialComplex(n, [tuple(range(n))])
    assert complexes_isomorphic(S, full) is not None
    hom = S.chain_complex().reduced_homology(n - 1)
    assert all(h.is_trivial() for h in hom)


@pytest.mark.parametrize("n", range(2, 7))
def test_lift_profile_condition_A(sym_cat, n):
    W = build_W(sym_cat, 0, 1, n)
    S = build_S(W)
    lp = lift_profile(W, S)
    assert lp.condition == "A"
    for simplex, count in lp.counts.items():
        assert count == math.factorial(len(simplex))


def test_lift_counts_exact_factorial(sym_cat):
    # exactly (p+1)! lifts per p-simplex, p <= 4, n <= 6
    for n in range(1, 7):
        W = build_W(sym_cat, 0, 1, n)
        S = build_S(W)
        lp = lift_profile(W, S)
        for simplex, count in lp.counts.items():
            p = len(simplex) - 1
            if p > 4:
                continue
            assert count == math.factorial(p + 1)


def test_link_recursion(sym_cat):
    # Link of a p-simplex of S_n(0,1) is S_{n-p-1}(0,1)
    for n in range(2, 7):
        S = build_S(build_W(sym_cat, 0, 1, n))
        for p in range(n - 1):
            sigma = tuple(range(p + 1))
            L = link(S, sigma)
            Sm = build_S(build_W(sym_cat, 0, 1, n - p - 1))
            assert complexes_isomorphic(L, Sm) is not None


def test_ord_complex_matches_W(sym_cat):
    for n in range(1, 5):
        W = build_W(sym_cat, 0, 1, n)
        S = build_S(W)
        assert w_isomorphic_to_ord(W, ord_of_complex(S))


@pytest.mark.parametrize("n", range(1, 6))
def test_W_connectivity_symmetric(sym_cat, n):
    # |W_n(0,1)| is (n-2)-connected, certified topologically
    W = build_W(sym_cat, 0, 1, n)
    cert = connectivity_certificate(W, n - 2, 10 ** 6)
    assert cert.meets_target
    assert cert.mode == "topological"
    assert cert.certified_connectivity >= n - 2


def test_weakly_cm_full_simplex(sym_cat):
    S = build_S(build_W(sym_cat, 0, 1, 5))
    rep = weakly_cm_report(S, 3, 10 ** 5)
    assert rep.passed


def test_empty_complex_convention(sym_cat):
    W = build_W(sym_cat, 0, 1, 0)
    cert = connectivity_certificate(W, -2, 10 ** 4)
    assert cert.meets_target


def test_gl_W_connectivity(gl2_cat):
    # A = R^{sr(R)} = R for the field F_2; floor((n-2)/2)-connected
    for n in (1, 2):
        W = build_W(gl2_cat, 1, 1, n)
        target = (n - 2) // 2
        cert = connectivity_certificate(W, target, 10 ** 5)
        assert cert.meets_target_homological
