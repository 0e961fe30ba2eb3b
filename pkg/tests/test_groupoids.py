import pytest

from homstab.groups import cyclic_group, perm_identity
from homstab.groupoids import (
    make_symmetric, make_wreath, make_general_linear, FiniteRing,
    verify_groupoid_axioms, braid_family, PresentedGroupFamily,
)
from homstab.laurent import lm_identity, lm_eq, lm_mul, lm_word
from homstab.coeffsys import BurauSystem


@pytest.mark.parametrize("make,n_max", [
    (make_symmetric, 5),
    (lambda: make_wreath(cyclic_group(2)), 3),
    (lambda: make_general_linear(FiniteRing(2)), 3),
])
def test_braided_groupoid_axioms(make, n_max):
    report = verify_groupoid_axioms(make(), n_max)
    assert report.all_passed, report.failures()


def test_symmetric_braiding_is_symmetry():
    inst = make_symmetric()
    b = inst.braiding(2, 3)
    assert inst.mul(inst.braiding(3, 2), b) == perm_identity(5)


def test_wreath_aut_order():
    inst = make_wreath(cyclic_group(3))
    assert inst.aut(2).order == 9 * 2


def test_gl_aut_order():
    inst = make_general_linear(FiniteRing(2))
    assert inst.aut(3).order == 168


def test_braid_family_relators_in_burau():
    fam = braid_family()
    B = BurauSystem(5)
    for n in (3, 4, 5):
        bad = fam.verify_images(n, B.images(n),
                                identity=lm_identity(n),
                                mul=lm_mul, eq=lm_eq)
        assert bad is None, bad


def test_braid_family_relator_shapes():
    fam = braid_family()
    assert fam.gens(4) == 3
    rels = fam.relators(4)
    # two braid relations and one far commutator
    assert any(len(r) == 6 for r in rels)
    assert any(len(r) == 4 for r in rels)
    assert fam.b1n(4) == (4, 3, 2, 1)


def test_presented_family_rejects_bad_images():
    fam = braid_family()
    B = BurauSystem(3)
    imgs = dict(B.images(3))
    imgs[1] = lm_identity(3)  # sigma_1 killed: braid relation fails
    imgs[-1] = lm_identity(3)
    assert fam.verify_images(3, imgs, identity=lm_identity(3),
                             mul=lm_mul, eq=lm_eq) is not None
