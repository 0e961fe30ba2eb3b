"""Concrete finite groups with a deterministic total element order.

Elements are hashable canonical tuples; three backends are provided:
permutations (tuple of images, 0-indexed), matrices over Z/m (tuple of
row tuples), and wreath products base ≀ Sym(n) (pair of a label tuple and
a permutation).  Enumeration respects a configurable order budget and
raises :class:`GroupBudgetExceeded` past it.
"""

from __future__ import annotations

import itertools
import math

from .exact_linalg import SparseCols, smith_normal_form, FGAbelianGroup

DEFAULT_GROUP_BUDGET = 5040


class GroupBudgetExceeded(Exception):
    """Requested group enumeration exceeds the configured order budget."""


class FiniteGroup:
    """A finite group given by explicit elements and operations.

    Elements are canonical hashable values totally ordered by `sorted`;
    the sorted tuple fixes a deterministic indexing used everywhere
    downstream (canonical coset representatives, chain bases, caches).
    """

    def __init__(self, elements, mul, inv, identity, name="G",
                 generators=None):
        self.elements = tuple(sorted(elements))
        self.index = {g: i for i, g in enumerate(self.elements)}
        self.mul = mul
        self.inv = inv
        self.identity = identity
        self.name = name
        self.generators = tuple(generators) if generators is not None else \
            tuple(g for g in self.elements if g != identity)
        assert identity in self.index

    @property
    def order(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g):
        return g in self.index

    def conjugate(self, g, h):
        """h g h^-1"""
        return self.mul(h, self.mul(g, self.inv(h)))

    def commutator(self, g, h):
        return self.mul(g, self.mul(h, self.mul(self.inv(g), self.inv(h))))

    def element_order(self, g) -> int:
        n = 1
        x = g
        while x != self.identity:
            x = self.mul(x, g)
            n += 1
        return n

    def subgroup_closure(self, gens) -> set:
        out = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = self.mul(x, s)
                    if y not in out:
                        out.add(y)
                        nxt.append(y)
            frontier = nxt
        return out

    def commutator_subgroup(self) -> set:
        comms = {self.commutator(g, h)
                 for g in self.elements for h in self.elements}
        return self.subgroup_closure(comms)

    def is_subgroup(self, subset) -> bool:
        s = set(subset)
        return (self.identity in s
                and all(self.mul(a, b) in s for a in s for b in s))

    def generator_words(self, gens=None):
        """BFS words over `gens` reaching every element; returns
        {element: tuple of generator indices}.  Deterministic: generators
        tried in order, frontier kept sorted."""
        gens = list(gens) if gens is not None else list(self.generators)
        words = {self.identity: ()}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for gi, s in enumerate(gens):
                    y = self.mul(x, s)
                    if y not in words:
                        words[y] = words[x] + (gi,)
                        nxt.append(y)
            frontier = sorted(nxt)
        if len(words) != self.order:
            raise ValueError("generators do not generate the group")
        return words


# ------------------------------------------------------------------
# permutation backend


def perm_identity(n):
    return tuple(range(n))


def perm_mul(g, h):
    """(g h)(i) = g(h(i))"""
    return tuple(g[h[i]] for i in range(len(g)))


def perm_inv(g):
    out = [0] * len(g)
    for i, gi in enumerate(g):
        out[gi] = i
    return tuple(out)


def symmetric_group(n, budget=DEFAULT_GROUP_BUDGET) -> FiniteGroup:
    if math.factorial(n) > budget:
        raise GroupBudgetExceeded(
            f"|Sym({n})| = {math.factorial(n)} exceeds budget {budget}")
    elems = list(itertools.permutations(range(n)))
    gens = [tuple_swap(n, i) for i in range(n - 1)] if n > 1 else []
    return FiniteGroup(elems, perm_mul, perm_inv, perm_identity(n),
                       name=f"Sym({n})", generators=gens)


def tuple_swap(n, i):
    """Adjacent transposition (i, i+1) as a permutation tuple."""
    out = list(range(n))
    out[i], out[i + 1] = out[i + 1], out[i]
    return tuple(out)


def alternating_group(n, budget=DEFAULT_GROUP_BUDGET) -> FiniteGroup:
    order = math.factorial(n) // 2 if n > 1 else 1
    if order > budget:
        raise GroupBudgetExceeded(
            f"|Alt({n})| = {order} exceeds budget {budget}")
    elems = [p for p in itertools.permutations(range(n)) if _perm_sign(p) == 1]
    gens = [p for p in elems if p != perm_identity(n)]
    # 3-cycles generate; the full nonidentity set is fine at this scale
    return FiniteGroup(elems, perm_mul, perm_inv, perm_identity(n),
                       name=f"Alt({n})", generators=gens)


def _perm_sign(p):
    seen = [False] * len(p)
    sign = 1
    for i in range(len(p)):
        if not seen[i]:
            j = i
            length = 0
            while not seen[j]:
                seen[j] = True
                j = p[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def perm_block_sum(g, h):
    """g acting on the first block, h shifted to the second."""
    m = len(g)
    return tuple(g) + tuple(x + m for x in h)


def perm_braiding(m, n):
    """Block swap X^m + Y^n -> Y^n + X^m as a permutation of m+n points:
    the first m points move past the last n."""
    return tuple(i + n for i in range(m)) + tuple(i for i in range(n))


# ------------------------------------------------------------------
# matrices over Z/m


def gln_order(n, m) -> int:
    """|GL_n(Z/m)| by multiplicativity over prime powers."""
    out = 1
    for p, k in _factorize(m):
        gl_p = 1
        for i in range(n):
            gl_p *= p ** n - p ** i
        out *= p ** ((k - 1) * n * n) * gl_p
    return out


def _factorize(m):
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            k = 0
            while m % d == 0:
                m //= d
                k += 1
            out.append((d, k))
        d += 1
    if m > 1:
        out.append((m, 1))
    return out


def mat_identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n))
                 for i in range(n))


def mat_mul_mod(a, b, m):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) % m for j in range(n))
        for i in range(n))


def mat_det_mod(a, m):
    # fraction-free expansion is fine at these sizes
    n = len(a)
    if n == 0:
        return 1 % m
    if n == 1:
        return a[0][0] % m
    det = 0
    for j in range(n):
        sub = tuple(row[:j] + row[j + 1:] for row in a[1:])
        term = a[0][j] * mat_det_mod(sub, m)
        det += term if j % 2 == 0 else -term
    return det % m


def mat_inv_mod(a, m):
    """Inverse via adjugate times det inverse (det must be a unit)."""
    n = len(a)
    det = mat_det_mod(a, m)
    g, dinv, _ = _xgcd(det, m)
    if g != 1:
        raise ValueError("matrix not invertible mod m")
    dinv %= m
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sub = tuple(row[:i] + row[i + 1:]
                        for r, row in enumerate(a) if r != j)
            c = mat_det_mod(sub, m) if n > 1 else 1
            if (i + j) % 2:
                c = -c
            adj[i][j] = (c * dinv) % m
    return tuple(tuple(r) for r in adj)


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def general_linear_group(n, m, budget=DEFAULT_GROUP_BUDGET) -> FiniteGroup:
    """GL_n(Z/m) (m need not be prime) as explicit matrices."""
    order = gln_order(n, m)
    if order > budget:
        raise GroupBudgetExceeded(
            f"|GL_{n}(Z/{m})| = {order} exceeds budget {budget}")
    elems = []
    for flat in itertools.product(range(m), repeat=n * n):
        a = tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))
        g, _, _ = _xgcd(mat_det_mod(a, m), m)
        if g == 1:
            elems.append(a)
    assert len(elems) == order
    mul = lambda a, b: mat_mul_mod(a, b, m)
    inv = lambda a: mat_inv_mod(a, m)
    return FiniteGroup(elems, mul, inv, mat_identity(n),
                       name=f"GL({n},Z/{m})")


def mat_block_sum(a, b):
    n, k = len(a), len(b)
    out = [[0] * (n + k) for _ in range(n + k)]
    for i in range(n):
        for j in range(n):
            out[i][j] = a[i][j]
    for i in range(k):
        for j in range(k):
            out[n + i][n + j] = b[i][j]
    return tuple(tuple(r) for r in out)


def mat_braiding(m, n):
    """Permutation matrix swapping the first m coordinates past the
    last n (matches perm_braiding acting on basis vectors)."""
    p = perm_braiding(m, n)
    size = m + n
    return tuple(tuple(1 if p[j] == i else 0 for j in range(size))
                 for i in range(size))


# ------------------------------------------------------------------
# wreath products base ≀ Sym(n)


def wreath_identity(base, n):
    return (tuple([base.identity] * n), perm_identity(n))


def wreath_mul(base):
    def mul(g, h):
        a, s = g
        b, t = h
        # (a, s)(b, t) = (a * s.b, s t) with (s.b)_i = b_{s^{-1}(i)}
        sinv = perm_inv(s)
        lab = tuple(base.mul(a[i], b[sinv[i]]) for i in range(len(a)))
        return (lab, perm_mul(s, t))
    return mul


def wreath_inv(base):
    def inv(g):
        a, s = g
        sinv = perm_inv(s)
        # ((a,s)^-1)_i = a_{s(i)}^-1 so that labels cancel pointwise
        lab = tuple(base.inv(a[s[i]]) for i in range(len(a)))
        return (lab, sinv)
    return inv


def wreath_group(base: FiniteGroup, n, budget=DEFAULT_GROUP_BUDGET) -> FiniteGroup:
    order = base.order ** n * math.factorial(n)
    if order > budget:
        raise GroupBudgetExceeded(
            f"|{base.name} wr Sym({n})| = {order} exceeds budget {budget}")
    elems = [(labels, p)
             for labels in itertools.product(base.elements, repeat=n)
             for p in itertools.permutations(range(n))]
    return FiniteGroup(elems, wreath_mul(base), wreath_inv(base),
                       wreath_identity(base, n),
                       name=f"{base.name} wr Sym({n})")


def wreath_block_sum(base, g, h):
    a, s = g
    b, t = h
    return (a + b, perm_block_sum(s, t))


def wreath_braiding(base, m, n):
    return (tuple([base.identity] * (m + n)), perm_braiding(m, n))


def cyclic_group(m) -> FiniteGroup:
    """Z/m as permutations would be wasteful; use integers mod m."""
    elems = list(range(m))
    return FiniteGroup(elems, lambda a, b: (a + b) % m,
                       lambda a: (-a) % m, 0, name=f"Z/{m}",
                       generators=[1 % m] if m > 1 else [])


# ------------------------------------------------------------------
# abelianization


def quotient_group(G: FiniteGroup, normal_subgroup) -> tuple[FiniteGroup, dict]:
    """Quotient by a normal subgroup; cosets are represented by their
    minimum element.  Returns (Q, coset_map element -> representative)."""
    N = sorted(normal_subgroup)
    assert G.is_subgroup(N)
    rep = {}
    for g in G.elements:
        if g in rep:
            continue
        coset = sorted(G.mul(g, n) for n in N)
        r = coset[0]
        for x in coset:
            rep[x] = r
    reps = sorted(set(rep.values()))
    mul = lambda a, b: rep[G.mul(a, b)]
    inv = lambda a: rep[G.inv(a)]
    Q = FiniteGroup(reps, mul, inv, rep[G.identity],
                    name=f"{G.name}/N")
    return Q, rep


def abelian_invariants(Q: FiniteGroup):
    """Invariant factors and explicit coordinates of a finite abelian
    group.

    Presents Q on all its elements with the full multiplication table as
    relations, then reads the decomposition off the Smith normal form.
    Returns (FGAbelianGroup, coords) with coords[g] a tuple over the
    torsion factors.
    """
    k = Q.order
    idx = Q.index
    rel_cols = []
    for a in Q.elements:
        for b in Q.elements:
            c = Q.mul(a, b)
            col = {}
            for key, sgn in ((idx[a], 1), (idx[b], 1), (idx[c], -1)):
                col[key] = col.get(key, 0) + sgn
            col = {i: v for i, v in col.items() if v}
            if col:
                rel_cols.append(col)
    snf = smith_normal_form(
        SparseCols(k, rel_cols) if rel_cols else SparseCols.zero(k, 0),
        transforms=True)
    assert snf.rank == k, "finite abelian group must have full relation rank"
    torsion_pos = [i for i, d in enumerate(snf.factors) if d > 1]
    group = FGAbelianGroup(0, tuple(snf.factors[i] for i in torsion_pos))
    U = snf.U
    coords = {}
    for g in Q.elements:
        i = idx[g]
        coords[g] = tuple(U[p][i] % snf.factors[p] for p in torsion_pos)
    # coords must be a homomorphism onto the full group
    assert len({coords[g] for g in Q.elements}) == group.order()
    return group, coords


def abelianization(G: FiniteGroup):
    """G^ab with an explicit quotient homomorphism.

    Returns (FGAbelianGroup, phi) where phi maps each element to its
    coordinate tuple over the invariant factors.
    """
    N = G.commutator_subgroup()
    Q, rep = quotient_group(G, N)
    group, coords = abelian_invariants(Q)
    phi = {g: coords[rep[g]] for g in G.elements}
    return group, phi


def coords_add(x, y, factors):
    return tuple((a + b) % d for a, b, d in zip(x, y, factors))
