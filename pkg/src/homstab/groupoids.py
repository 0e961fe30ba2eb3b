"""Skeletal finite braided monoidal groupoids.

Objects are natural numbers with monoidal sum = addition; the data of an
instance is Aut(n) for each n (within budget), a block-sum homomorphism
and a braiding element, plus executable axiom checks with counterexample
witnesses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import groups as gr
from .groups import (FiniteGroup, GroupBudgetExceeded, DEFAULT_GROUP_BUDGET)


@dataclass(frozen=True)
class FiniteRing:
    """Z/m; a field when m is prime.  Units are detected by gcd."""

    modulus: int

    def __post_init__(self):
        assert self.modulus >= 2

    def is_unit(self, x) -> bool:
        return math.gcd(x % self.modulus, self.modulus) == 1

    def label(self):
        return f"Z/{self.modulus}"


class BraidedGroupoidInstance:
    """A finite braided monoidal groupoid on objects 0, 1, 2, ...

    Subclasses provide `_make_aut`, `block_sum` and `braiding`; Aut(n)
    construction is memoized and budget-guarded.
    """

    symmetric_flag = False
    name = "G"

    def __init__(self, budget=DEFAULT_GROUP_BUDGET):
        self.budget = budget
        self._auts: dict[int, FiniteGroup] = {}

    def aut(self, n: int) -> FiniteGroup:
        if n not in self._auts:
            self._auts[n] = self._make_aut(n)
        return self._auts[n]

    def _make_aut(self, n: int) -> FiniteGroup:
        raise NotImplementedError

    def block_sum(self, g, h, m: int, n: int):
        """g + h in Aut(m+n) with g in Aut(m), h in Aut(n)."""
        raise NotImplementedError

    def braiding(self, m: int, n: int):
        """b_{m,n} in Aut(m+n)."""
        raise NotImplementedError

    def mul(self, a, b):
        """Element multiplication, independent of Aut enumeration."""
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def braiding_inv(self, m: int, n: int):
        return self.inv(self.braiding(m, n))

    def identity(self, n: int):
        return self.aut(n).identity

    def key(self) -> str:
        """Stable identifier used for caches."""
        return self.name


class SymmetricGroupoid(BraidedGroupoidInstance):
    symmetric_flag = True
    name = "symmetric"

    def mul(self, a, b):
        return gr.perm_mul(a, b)

    def inv(self, a):
        return gr.perm_inv(a)

    def _make_aut(self, n):
        return gr.symmetric_group(n, budget=self.budget)

    def block_sum(self, g, h, m, n):
        return gr.perm_block_sum(g, h)

    def braiding(self, m, n):
        return gr.perm_braiding(m, n)


class WreathGroupoid(BraidedGroupoidInstance):
    symmetric_flag = True

    def __init__(self, base: FiniteGroup, budget=DEFAULT_GROUP_BUDGET):
        super().__init__(budget)
        self.base = base
        self.name = f"wreath[{base.name}]"
        self._mul = gr.wreath_mul(base)
        self._inv = gr.wreath_inv(base)

    def mul(self, a, b):
        return self._mul(a, b)

    def inv(self, a):
        return self._inv(a)

    def _make_aut(self, n):
        return gr.wreath_group(self.base, n, budget=self.budget)

    def block_sum(self, g, h, m, n):
        return gr.wreath_block_sum(self.base, g, h)

    def braiding(self, m, n):
        return gr.wreath_braiding(self.base, m, n)


class GeneralLinearGroupoid(BraidedGroupoidInstance):
    symmetric_flag = True

    def __init__(self, ring: FiniteRing, budget=DEFAULT_GROUP_BUDGET):
        super().__init__(budget)
        self.ring = ring
        self.name = f"gl[{ring.label()}]"

    def mul(self, a, b):
        return gr.mat_mul_mod(a, b, self.ring.modulus)

    def inv(self, a):
        return gr.mat_inv_mod(a, self.ring.modulus)

    def _make_aut(self, n):
        return gr.general_linear_group(n, self.ring.modulus,
                                       budget=self.budget)

    def block_sum(self, g, h, m, n):
        return gr.mat_block_sum(g, h)

    def braiding(self, m, n):
        return gr.mat_braiding(m, n)


def make_symmetric(budget=DEFAULT_GROUP_BUDGET) -> BraidedGroupoidInstance:
    """The groupoid of finite sets and bijections."""
    return SymmetricGroupoid(budget)


def make_wreath(base: FiniteGroup,
                budget=DEFAULT_GROUP_BUDGET) -> BraidedGroupoidInstance:
    """Labeled bijections: Aut(n) = base wr Sym(n)."""
    return WreathGroupoid(base, budget)


def make_general_linear(ring: FiniteRing,
                        budget=DEFAULT_GROUP_BUDGET) -> BraidedGroupoidInstance:
    """Free R-modules and their isomorphisms, R = Z/m."""
    return GeneralLinearGroupoid(ring, budget)


# ------------------------------------------------------------------
# axiom verification


@dataclass
class AxiomCheck:
    identity: str
    passed: bool
    witness: tuple | None = None


@dataclass
class AxiomReport:
    instance: str
    n_max: int
    checks: list[AxiomCheck] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, identity, passed, witness=None):
        self.checks.append(AxiomCheck(identity, passed, witness))

    def failures(self):
        return [c for c in self.checks if not c.passed]


def verify_groupoid_axioms(G: BraidedGroupoidInstance,
                           n_max: int) -> AxiomReport:
    """Exhaustive braided-monoidal axiom checks up to total object n_max.

    Checks: block_sum homomorphism in each variable, unit/associativity,
    injectivity of g -> g + id, braiding naturality, both hexagons, and
    (for symmetric instances) the symmetry b_{n,m} b_{m,n} = id.
    """
    rep = AxiomReport(G.name, n_max)

    def first_failure(pairs):
        for w in pairs:
            return w
        return None

    # homomorphism + unit + injectivity of - + id_n
    w = first_failure(
        (m, n, g1, g2, h1, h2)
        for m in range(0, n_max + 1) for n in range(0, n_max + 1 - m)
        for g1 in G.aut(m) for g2 in G.aut(m)
        for h1 in G.aut(n) for h2 in G.aut(n)
        if G.block_sum(G.aut(m).mul(g1, g2), G.aut(n).mul(h1, h2), m, n)
        != G.aut(m + n).mul(G.block_sum(g1, h1, m, n),
                            G.block_sum(g2, h2, m, n)))
    rep.add("block_sum is a homomorphism", w is None, w)

    w = first_failure(
        (m, n)
        for m in range(0, n_max + 1) for n in range(0, n_max + 1 - m)
        if G.block_sum(G.identity(m), G.identity(n), m, n)
        != G.identity(m + n))
    rep.add("block_sum preserves identities", w is None, w)

    w = first_failure(
        (a, b, c, g, h, k)
        for a in range(0, n_max + 1) for b in range(0, n_max + 1 - a)
        for c in range(0, n_max + 1 - a - b)
        for g in G.aut(a) for h in G.aut(b) for k in G.aut(c)
        if G.block_sum(G.block_sum(g, h, a, b), k, a + b, c)
        != G.block_sum(g, G.block_sum(h, k, b, c), a, b + c))
    rep.add("block_sum is associative", w is None, w)

    def not_injective(m, n):
        seen = set()
        for g in G.aut(m):
            img = G.block_sum(g, G.identity(n), m, n)
            if img in seen:
                return (m, n, g)
            seen.add(img)
        return None

    w = first_failure(
        bad
        for m in range(0, n_max + 1) for n in range(0, n_max + 1 - m)
        if (bad := not_injective(m, n)) is not None)
    rep.add("g -> g + id is injective", w is None, w)

    # naturality: b_{m,n} (g + h) = (h + g) b_{m,n}
    w = first_failure(
        (m, n, g, h)
        for m in range(0, n_max + 1) for n in range(0, n_max + 1 - m)
        for g in G.aut(m) for h in G.aut(n)
        if G.aut(m + n).mul(G.braiding(m, n), G.block_sum(g, h, m, n))
        != G.aut(m + n).mul(G.block_sum(h, g, n, m), G.braiding(m, n)))
    rep.add("braiding naturality", w is None, w)

    # hexagons (strict monoidal form):
    # b_{a+b,c} = (b_{a,c} + id_b)(id_a + b_{b,c})
    # b_{a,b+c} = (id_b + b_{a,c})(b_{a,b} + id_c)
    w = first_failure(
        (a, b, c)
        for a in range(0, n_max + 1) for b in range(0, n_max + 1 - a)
        for c in range(0, n_max + 1 - a - b)
        if G.braiding(a + b, c) != G.aut(a + b + c).mul(
            G.block_sum(G.braiding(a, c), G.identity(b), a + c, b),
            G.block_sum(G.identity(a), G.braiding(b, c), a, b + c)))
    rep.add("hexagon (sum on the left)", w is None, w)

    w = first_failure(
        (a, b, c)
        for a in range(0, n_max + 1) for b in range(0, n_max + 1 - a)
        for c in range(0, n_max + 1 - a - b)
        if G.braiding(a, b + c) != G.aut(a + b + c).mul(
            G.block_sum(G.identity(b), G.braiding(a, c), b, a + c),
            G.block_sum(G.braiding(a, b), G.identity(c), a + b, c)))
    rep.add("hexagon (sum on the right)", w is None, w)

    if G.symmetric_flag:
        w = first_failure(
            (m, n)
            for m in range(0, n_max + 1) for n in range(0, n_max + 1 - m)
            if G.aut(m + n).mul(G.braiding(n, m), G.braiding(m, n))
            != G.identity(m + n))
        rep.add("symmetry b_{n,m} b_{m,n} = id", w is None, w)

    return rep


# ----------------------------------------------------------------------
# presented families
#
# A presented family describes a sequence of groups G_n by generators and
# relators without ever enumerating elements.  It exists to feed the
# coefficient-system calculus for families whose groups are infinite
# (e.g. braid groups): matrix images of the generators are supplied by
# the caller together with the ring operations needed to validate them.


class PresentedGroupFamily:
    """Family n -> G_n given by presentations.

    gens(n) returns the number of generators of G_n; relators(n) yields
    relator words as tuples of signed 1-based generator indices (+i for
    the generator, -i for its inverse).  The stabilization map
    G_n -> G_{n+1} sends generator i to generator i; the distinguished
    suspension element b1n(n) is a word in the generators of G_{n+1}.
    """

    def __init__(self, name, gens, relators, b1n):
        self.name = name
        self.gens = gens
        self.relators = relators
        self.b1n = b1n

    def verify_images(self, n, images, identity, mul, eq):
        """Check that matrix images satisfy every relator of G_n.

        ``images`` maps signed generator index -> matrix; ``identity``
        is the identity matrix; ``mul``/``eq`` are ring-matrix ops.
        Returns the first failing relator, or None.
        """
        for word in self.relators(n):
            acc = identity
            for letter in word:
                acc = mul(acc, images[letter])
            if not eq(acc, identity):
                return word
        # inverses really invert
        for i in range(1, self.gens(n) + 1):
            if not eq(mul(images[i], images[-i]), identity):
                return (i, -i)
        return None


def braid_family() -> PresentedGroupFamily:
    """Artin braid groups: G_n = B_n with generators s_1..s_{n-1}."""

    def gens(n):
        return max(n - 1, 0)

    def relators(n):
        out = []
        for i in range(1, n - 1):
            # s_i s_{i+1} s_i = s_{i+1} s_i s_{i+1}
            out.append((i, i + 1, i, -(i + 1), -i, -(i + 1)))
        for i in range(1, n - 1):
            for j in range(i + 2, n):
                out.append((i, j, -i, -j))
        return out

    def b1n(n):
        # block braiding b_{1,n} in B_{n+1}: s_n s_{n-1} ... s_1
        return tuple(range(n, 0, -1))

    return PresentedGroupFamily("braid", gens, relators, b1n)
