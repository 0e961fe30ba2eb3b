import math

import pytest


@pytest.mark.parametrize("m,n", [(m, n) for n in range(0, 7)
                                 for m in range(0, n + 1)])
def test_fi_hom_counts(sym_cat, m, n):
    # |Hom(m, n)| = n! / (n-m)! : injections of an m-set into an n-set
    hom = sym_cat.hom_set(m, n)
    assert len(hom) == math.factorial(n) // math.factorial(n - m)
    assert len(set(hom)) == len(hom)


def test_composition_associative(sym_cat):
    cat = sym_cat
    for f in cat.hom_set(1, 2):
        for g in cat.hom_set(2, 3):
            for h in cat.hom_set(3, 4):
                assert cat.compose(h, cat.compose(g, f)) == \
                    cat.compose(cat.compose(h, g), f)


def test_identity_morphisms(sym_cat):
    cat = sym_cat
    for f in cat.hom_set(2, 4):
        assert cat.compose(cat.identity_mor(4), f) == f
        assert cat.compose(f, cat.identity_mor(2)) == f


def test_iota_initial(sym_cat):
    # 0 is initial: exactly one morphism 0 -> n
    for n in range(0, 5):
        assert len(sym_cat.hom_set(0, n)) == 1
        assert sym_cat.hom_set(0, n)[0] == sym_cat.iota(n)


def test_monoidal_sum_functorial(sym_cat):
    cat = sym_cat
    for f in cat.hom_set(1, 2):
        for g in cat.hom_set(1, 3):
            s = cat.monoidal_sum(f, g)
            assert s in cat.hom_set(2, 5)


@pytest.mark.parametrize("m,n", [(0, 0), (0, 3), (1, 3), (2, 4), (3, 5)])
def test_homogeneity_symmetric(sym_cat, m, n):
    assert sym_cat.verify_homogeneity(m, n)["passed"]


@pytest.mark.parametrize("m,n", [(0, 2), (1, 2), (1, 3), (2, 3)])
def test_homogeneity_wreath(wreath_cat, m, n):
    assert wreath_cat.verify_homogeneity(m, n)["passed"]


@pytest.mark.parametrize("m,n", [(0, 2), (1, 2), (1, 3), (2, 3)])
def test_homogeneity_gl(gl2_cat, m, n):
    assert gl2_cat.verify_homogeneity(m, n)["passed"]


def test_prebraid_all_instances(sym_cat, wreath_cat, gl2_cat):
    for cat, n_max in ((sym_cat, 5), (wreath_cat, 3), (gl2_cat, 3)):
        assert cat.verify_prebraid(n_max)["passed"]


def test_local_standardness(sym_cat):
    assert sym_cat.verify_local_standardness(0, 1, 4)["passed"]


def test_upper_suspension_canonical(sym_cat):
    # sigma^X : n -> n+1 composed with canonical morphisms stays canonical
    cat = sym_cat
    for n in range(0, 4):
        up = cat.upper_suspension(n, 1)
        assert up in cat.hom_set(n, n + 1)


def test_lower_suspension_naturality(sym_cat):
    # Sigma_X(sigma_{X,n}) o sigma_{X,n} = sigma_{X,n+1} o sigma_{X,n}
    cat = sym_cat
    for n in range(1, 4):
        s_n = cat.lower_suspension(0, 1, n)
        s_n1 = cat.lower_suspension(0, 1, n + 1)
        shifted = cat.lower_suspension_of_mor(s_n, 0, 1)
        assert cat.compose(shifted, s_n) == cat.compose(s_n1, s_n)


def test_face_inclusions_satisfy_simplicial_identity(sym_cat):
    cat = sym_cat
    x = 1
    for p in range(1, 4):
        for i in range(p + 1):
            for j in range(i):
                # d_j d_i = d_{i-1} d_j on inclusions (dual identity)
                lhs = cat.compose(cat.face_inclusion(p, i, x),
                                  cat.face_inclusion(p - 1, j, x))
                rhs = cat.compose(cat.face_inclusion(p, j, x),
                                  cat.face_inclusion(p - 1, i - 1, x))
                assert lhs == rhs
