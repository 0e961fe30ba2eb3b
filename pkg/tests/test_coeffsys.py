import pytest

from homstab.groups import cyclic_group
from homstab.groupoids import braid_family
from homstab.homology_engine import GModule, bar_homology
from homstab.exact_linalg import FGAbelianGroup
from homstab.laurent import lp, lm_eq
from homstab.coeffsys import (
    CoefficientSystem, constant_system, standard_system, tensor_power,
    degree_profile, split_witness, split_degree_profile,
    abelianization_limit, abelian_constant_system, internalize,
    InternalizedSystem, BurauSystem, presented_abelianization,
    _mm, _identity,
)


@pytest.fixture(scope="module")
def std(sym_cat):
    S = standard_system(sym_cat, 0, 4)
    S.verify(functoriality_pairs=5, seed=2)
    return S


def test_constant_system(sym_cat):
    C = constant_system(sym_cat, 0, 1, 4)
    C.verify(functoriality_pairs=5, seed=1)
    dp = degree_profile(C, 1, 0)
    assert (dp.status, dp.r, dp.N) == ("ok", 0, 0)


def test_constant_with_torsion(sym_cat):
    C = constant_system(sym_cat, 0, 1, 3, rank=1, torsion=(4,))
    C.verify()
    dp = degree_profile(C, 1, 0)
    assert (dp.status, dp.r, dp.N) == ("ok", 0, 0)


def test_standard_sigma_naturality(sym_cat, std):
    # act(sigma_lower(g)) o lambda_n = lambda_n o act(g)
    for n in range(3):
        lam = std.sigma_mat(n)
        for g in std.group(n).generators:
            tw = std.modules[n + 1].act(
                sym_cat.sigma_lower_on_group(g, 0, 1, n))
            assert _mm(tw, lam) == _mm(lam, std.modules[n].act(g)), (n, g)


def test_standard_kernel_trivial(std):
    K = std.kernel_system()
    assert all(K.module_trivial(n) for n in range(K.n_max + 1))


def test_standard_cokernel_constant(std):
    Q = std.cokernel_system()
    Q.verify()
    assert [Q.rank(n) for n in range(Q.n_max + 1)] == [1] * (Q.n_max + 1)
    assert all(all(o == 0 for o in Q.orders(n))
               for n in range(Q.n_max + 1))


def test_standard_degree(std):
    dp = degree_profile(std, 2, 0)
    assert (dp.status, dp.r, dp.N) == ("ok", 1, 0)


def test_degree_window_guard(std):
    with pytest.raises(ValueError):
        degree_profile(std, 4, 3)   # window too small for r_max + N_max


def test_suspension_degree_lemma(std):
    # deg(F) = r at N implies deg(Sigma F) = r at max(N-1, 0)
    SS = std.suspend()
    SS.verify()
    assert [SS.rank(n) for n in range(SS.n_max + 1)] == [1, 2, 3, 4]
    dp = degree_profile(SS, 2, 0)
    assert (dp.status, dp.r, dp.N) == ("ok", 1, 0)


def test_tensor_square_degree(std):
    T = tensor_power(std, 2)
    T.verify()
    dp = degree_profile(T, 3, 0)
    assert (dp.status, dp.r, dp.N) == ("ok", 2, 0)


def test_split_witness_standard(std):
    w = split_witness(std)
    assert w is not None
    for n, rho in enumerate(w):
        assert _mm(rho, std.sigma_mat(n)) == _identity(std.rank(n))
    sdp = split_degree_profile(std, 2, 0)
    assert (sdp.status, sdp.r, sdp.N) == ("ok", 1, 0)


def test_no_split_witness_for_multiplication_by_two(sym_cat):
    # F_n = Z with trivial action and s_n = multiplication by 2:
    # a valid system whose suspension map admits no retraction
    n_max = 3
    mods = [GModule(sym_cat.G.aut(n), FGAbelianGroup(1),
                    {g: [[1]] for g in sym_cat.G.aut(n).generators},
                    name=f"dbl_{n}")
            for n in range(n_max + 1)]
    F = CoefficientSystem(sym_cat, 0, 1, n_max, mods,
                          [[[2]]] * n_max, name="times2")
    F.verify()
    assert split_witness(F) is None


def test_abelianization_limit_symmetric(sym_cat):
    lim = abelianization_limit(sym_cat, 0, 1, 4, 2)
    assert str(lim.limit) == "Z/2"
    assert lim.stable_from == 2
    assert lim.certified


def test_abelianization_limit_wreath(wreath_cat):
    lim = abelianization_limit(wreath_cat, 0, 1, 3, 2)
    assert str(lim.limit) == "Z/2 + Z/2"
    assert lim.certified


def test_internalized_system_alternating_homology(sym_cat):
    lim = abelianization_limit(sym_cat, 0, 1, 4, 2)
    Zq, star = abelian_constant_system(sym_cat, 0, 1, 4, lim)
    I = internalize(Zq, lim, star)
    assert isinstance(I, InternalizedSystem)
    I.verify()
    # Shapiro: H_1(S_n; Z[S_n/A_n]) = H_1(A_n)
    assert str(bar_homology(I.modules[3], 1)) == "Z/3"
    assert str(bar_homology(I.modules[4], 1)) == "Z/3"
    setup = I.stabilization_setup(3)
    setup.verify()


def test_internalized_sign_values(sym_cat):
    lim = abelianization_limit(sym_cat, 0, 1, 4, 2)
    Isign = internalize(constant_system(sym_cat, 0, 1, 4), lim,
                        [[[[-1]]]] * 5)
    Isign.verify()
    vals = {Isign.modules[3].act(g)[0][0]
            for g in Isign.group(3).elements}
    assert vals == {1, -1}


def test_burau_relations_and_matrix():
    B = BurauSystem(6)
    for n in range(2, 7):
        assert B.verify_relations(n) is None, n
    m2 = B.images(2)[1]
    assert lm_eq(m2, [[lp((0, 1), (1, -1)), lp((1, 1))],
                      [lp((0, 1)), {}]])


def test_burau_degree():
    dp = degree_profile(BurauSystem(5), 2, 0)
    assert (dp.status, dp.r, dp.N) == ("ok", 1, 0)


def test_burau_suspension_naturality():
    B = BurauSystem(5)
    for n in (1, 2, 3):
        lhs = _lm_mm(B.sigma_mat(n, shift=1), B.sigma_mat(n))
        rhs = _lm_mm(B.sigma_mat(n + 1), B.sigma_mat(n))
        assert lm_eq(lhs, rhs), n


def _lm_mm(a, b):
    from homstab.laurent import lm_mul
    return lm_mul(a, b)


def test_braid_abelianization():
    fam = braid_family()
    for n in (2, 3, 5):
        assert str(presented_abelianization(fam, n)) == "Z"


def test_stabilization_setup_verifies(std):
    for n in range(std.n_max):
        std.stabilization_setup(n).verify()
