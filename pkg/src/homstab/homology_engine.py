"""Group homology of finite groups with twisted coefficients.

Normalized bar complex over a finite group G with coefficients in a
finitely generated Z[G]-module, plus the plumbing the stability verifier
needs: coinvariants, induced modules, stabilization chain maps, and
relative homology as a mapping cone.

Conventions (fixed once, and d^2 = 0 is asserted on every assembled
complex so a sign slip cannot pass silently):

  * modules carry a LEFT action by integer matrices on a fixed generating
    presentation; the bar complex uses the associated right action
    m.g := g^{-1}.m;
  * C_i = M (x) Z[Gbar^i] with Gbar = G \\ {e}  (normalized complex);
  * d(m(x)[g1|...|gi]) = m.g1 (x) [g2|...|gi]
      + sum_{s=1..i-1} (-1)^s m (x) [g1|..|g_s g_{s+1}|..|gi]
      + (-1)^i m (x) [g1|...|g_{i-1}],
    terms whose bar acquires an identity entry are dropped.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
from dataclasses import dataclass, field

from .exact_linalg import (
    FGAbelianGroup,
    LatticeSpan,
    SparseCols,
    Subquotient,
    SNFResult,
    classify_induced,
    fgab_from_factors,
    homology_of_pair,
    induced_matrix,
    kernel_columns,
    smith_normal_form,
    span_columns,
    triangular_coords,
)
from .groups import FiniteGroup


class BarBudgetExceeded(Exception):
    """Raised when a chain level would exceed the configured cell budget
    or a degree/order guard.  Carries the offending size estimate."""

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


@dataclass(frozen=True)
class BarBudget:
    """Resource limits for bar-complex assembly.

    max_cells bounds the basis size of any single chain level (in the
    normalized complex).  The degree/order guards refuse expensive
    homological degrees for large groups unless explicitly raised.
    """

    max_cells: int = 2_000_000
    max_degree: int = 3
    order_limit_deg2: int = 120
    order_limit_deg3: int = 24

    def __post_init__(self):
        assert self.max_cells > 0 and self.max_degree > 0

    def check(self, group_order: int, rank: int, degree: int) -> None:
        if degree > self.max_degree:
            raise BarBudgetExceeded(
                f"homological degree {degree} exceeds max_degree "
                f"{self.max_degree}", estimate=degree)
        if degree >= 2 and group_order > self.order_limit_deg2:
            raise BarBudgetExceeded(
                f"|G| = {group_order} > {self.order_limit_deg2} refused at "
                f"degree {degree}", estimate=group_order)
        if degree >= 3 and group_order > self.order_limit_deg3:
            raise BarBudgetExceeded(
                f"|G| = {group_order} > {self.order_limit_deg3} refused at "
                f"degree {degree}", estimate=group_order)
        # largest level consulted for H_degree is degree + 1
        worst = rank * max(1, (group_order - 1)) ** (degree + 1)
        if worst > self.max_cells:
            raise BarBudgetExceeded(
                f"chain level {degree + 1} needs {worst} cells "
                f"(> {self.max_cells})", estimate=worst)


# ----------------------------------------------------------------------
# modules


class GModule:
    """A finitely generated Z[G]-module.

    The underlying abelian group is presented on `rank` generators with
    orders `orders` (0 = infinite, listed torsion-first to match
    FGAbelianGroup).  `gen_action` maps each group generator to an
    integer matrix acting on coordinates from the left; actions of
    arbitrary elements are obtained by word evaluation and memoized.
    """

    def __init__(self, group: FiniteGroup, underlying: FGAbelianGroup,
                 gen_action: dict, name: str = ""):
        self.group = group
        self.underlying = underlying
        self.orders = list(underlying.torsion) + [0] * underlying.free_rank
        self.rank = len(self.orders)
        self.name = name
        self.gen_action = {g: [row[:] for row in m]
                           for g, m in gen_action.items()}
        for g in group.generators:
            if g not in self.gen_action:
                raise ValueError("action matrix missing for a generator")
        self._act_cache: dict = {group.identity: self._identity_matrix()}
        self._right_cache: dict = {}
        self._words = None

    # -- presentation helpers

    def _identity_matrix(self):
        return [[1 if i == j else 0 for j in range(self.rank)]
                for i in range(self.rank)]

    def _reduce(self, mat):
        out = []
        for i, row in enumerate(mat):
            o = self.orders[i]
            out.append([x % o for x in row] if o else row[:])
        return out

    def _mat_mul(self, a, b):
        r = self.rank
        prod = [[sum(a[i][k] * b[k][j] for k in range(r)) for j in range(r)]
                for i in range(r)]
        return self._reduce(prod)

    def congruent(self, a, b) -> bool:
        for i in range(self.rank):
            o = self.orders[i]
            for j in range(self.rank):
                d = a[i][j] - b[i][j]
                if (d % o if o else d) != 0:
                    return False
        return True

    # -- the action

    def act(self, g):
        """Left-action matrix of g, memoized via generator words."""
        cached = self._act_cache.get(g)
        if cached is not None:
            return cached
        if self._words is None:
            self._words = self.group.generator_words()
        gens = self.group.generators
        # words are generator-index tuples with g = s_{w_1} ... s_{w_k}
        mat = self._identity_matrix()
        for gi in self._words[g]:
            mat = self._mat_mul(mat, self._reduce(self.gen_action[gens[gi]]))
        self._act_cache[g] = mat
        return mat

    def act_right(self, g):
        """Right-action matrix: m.g = g^{-1}.m."""
        cached = self._right_cache.get(g)
        if cached is None:
            cached = self.act(self.group.inv(g))
            self._right_cache[g] = cached
        return cached

    def apply(self, g, vec):
        mat = self.act(g)
        out = []
        for i in range(self.rank):
            x = sum(mat[i][j] * vec[j] for j in range(self.rank))
            o = self.orders[i]
            out.append(x % o if o else x)
        return out

    def verify_action(self, full: bool = False) -> None:
        """Check the action descends to the presentation and is a
        homomorphism (on generators; all elements when full=True)."""
        ident = self._identity_matrix()
        for s in self.group.generators:
            m = self._reduce(self.gen_action[s])
            # relation columns must be preserved: o_j * (col j) = 0 in M
            for j, oj in enumerate(self.orders):
                if not oj:
                    continue
                for i, oi in enumerate(self.orders):
                    v = oj * m[i][j]
                    if (v % oi if oi else v) != 0:
                        raise ValueError(
                            "action does not descend to the presentation")
            if not self.congruent(self._mat_mul(m, self.act(self.group.inv(s))),
                                  ident):
                raise ValueError("generator action is not invertible")
        elems = self.group.elements if full else self.group.generators
        for g in elems:
            mg = self.act(g)
            for s in self.group.generators:
                lhs = self._mat_mul(self.act(s), mg)
                if not self.congruent(lhs, self.act(self.group.mul(s, g))):
                    raise ValueError("action is not a homomorphism")

    def content_hash(self) -> str:
        blob = {
            "elements": [repr(e) for e in self.group.elements],
            "orders": self.orders,
            "action": [[repr(g), m] for g, m in
                       sorted(self.gen_action.items(), key=lambda kv: repr(kv[0]))],
        }
        return hashlib.sha256(
            json.dumps(blob, sort_keys=True).encode()).hexdigest()[:16]


def trivial_module(group: FiniteGroup, rank: int = 1,
                   torsion: tuple = ()) -> GModule:
    under = FGAbelianGroup(rank - len(torsion), tuple(torsion))
    n = rank
    ident = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    return GModule(group, under,
                   {g: ident for g in group.generators}, name="trivial")


def sign_module(group: FiniteGroup, sign_of) -> GModule:
    """Z with g acting by sign_of(g) in {+1, -1}."""
    return GModule(group, FGAbelianGroup(1),
                   {g: [[sign_of(g)]] for g in group.generators},
                   name="sign")


def permutation_module(group: FiniteGroup, n: int) -> GModule:
    """Z^n for a group of permutation tuples acting by g.e_j = e_{g(j)}."""
    action = {}
    for g in group.generators:
        m = [[0] * n for _ in range(n)]
        for j in range(n):
            m[g[j]][j] = 1
        action[g] = m
    return GModule(group, FGAbelianGroup(n), action, name=f"perm{n}")


def group_ring_module(group: FiniteGroup, quotient: FiniteGroup,
                      phi: dict) -> GModule:
    """Z[Q] with g acting by left multiplication through phi: G -> Q."""
    basis = quotient.elements
    idx = {q: i for i, q in enumerate(basis)}
    n = len(basis)
    action = {}
    for g in group.generators:
        m = [[0] * n for _ in range(n)]
        for j, q in enumerate(basis):
            m[idx[quotient.mul(phi[g], q)]][j] = 1
        action[g] = m
    return GModule(group, FGAbelianGroup(n), action,
                   name=f"Z[Q{n}]")


def induce_module(G: FiniteGroup, M: GModule) -> GModule:
    """Induced module Ind_H^G M where H = M.group sits inside G.

    Basis: (coset rep r, module generator j); g.(r (x) m) = r' (x) h.m
    with g r = r' h, h in H.  Coset reps are the minimal elements of the
    left cosets gH, so the construction is deterministic.
    """
    H = M.group
    hset = set(H.elements)
    for h in H.elements:
        if h not in G.index:
            raise ValueError("H is not a subset of G")
    for a in H.generators:
        for b in H.generators:
            if G.mul(a, b) not in hset:
                raise ValueError("H is not closed under the group operation")
    # minimal-element coset representatives
    seen = set()
    reps = []
    for g in G.elements:
        if g in seen:
            continue
        coset = sorted(G.mul(g, h) for h in hset)
        reps.append(coset[0])
        seen.update(coset)
    rep_of = {}
    for r in reps:
        for h in hset:
            rep_of[G.mul(r, h)] = r
    ridx = {r: i for i, r in enumerate(reps)}
    m_rank = M.rank
    n = len(reps) * m_rank
    # torsion-first order layout is preserved blockwise only if M is free
    # or pure torsion per generator; interleave then re-sort canonically
    orders = []
    for _ in reps:
        orders.extend(M.orders)
    tors = sorted(o for o in orders if o)
    under = FGAbelianGroup(sum(1 for o in orders if not o), tuple(tors))
    # index layout: block r, generator j, with torsion-first order inside M
    action = {}
    for g in G.generators:
        mat = [[0] * n for _ in range(n)]
        for i, r in enumerate(reps):
            gr = G.mul(g, r)
            r2 = rep_of[gr]
            h = G.mul(G.inv(r2), gr)
            hmat = M.act(h)
            for a in range(m_rank):
                for b in range(m_rank):
                    if hmat[a][b]:
                        mat[ridx[r2] * m_rank + a][i * m_rank + b] = hmat[a][b]
        action[g] = mat
    out = GModule(G, under, action, name=f"Ind({M.name})")
    # the blockwise layout must agree with the torsion-first convention
    out.orders = orders
    return out


# ----------------------------------------------------------------------
# coinvariants


def _cokernel(columns, dim) -> FGAbelianGroup:
    dense = [[col.get(i, 0) for col in columns] for i in range(dim)]
    if not columns:
        return FGAbelianGroup(dim)
    snf = smith_normal_form(dense)
    return fgab_from_factors(snf.factors, dim)


def coinvariants(M: GModule) -> FGAbelianGroup:
    """M_G = M / span{g.m - m}, computed from group generators."""
    cols = []
    for j, o in enumerate(M.orders):
        if o:
            cols.append({j: o})
    for g in M.group.generators:
        mat = M.act(g)
        for j in range(M.rank):
            col = {}
            for i in range(M.rank):
                v = mat[i][j] - (1 if i == j else 0)
                if v:
                    col[i] = v
            if col:
                cols.append(col)
    return _cokernel(cols, M.rank)


# ----------------------------------------------------------------------
# the normalized bar complex


class BarComplex:
    """Normalized bar complex of (G, M) up to a requested level.

    Levels are free Z-modules on (module generator, bar tuple) pairs with
    the module's torsion relations tracked separately; homology is the
    subquotient {v : d v in relations} / (im d + relations).
    """

    def __init__(self, M: GModule, top: int, budget: BarBudget):
        self.M = M
        self.G = M.group
        self.top = top
        self.budget = budget
        g1 = self.G.order - 1
        budget.check(self.G.order, M.rank, max(1, top - 1))
        self.nontriv = [g for g in self.G.elements
                        if g != self.G.identity]
        self.pos = {g: i for i, g in enumerate(self.nontriv)}
        self.level_size = [M.rank * g1 ** i for i in range(top + 1)]
        for i, sz in enumerate(self.level_size):
            if sz > budget.max_cells:
                raise BarBudgetExceeded(
                    f"chain level {i} needs {sz} cells "
                    f"(> {budget.max_cells})", estimate=sz)
        self._boundaries: dict[int, SparseCols] = {}

    def _tuples(self, i):
        if i == 0:
            yield ()
            return
        for prefix in self._tuples(i - 1):
            for g in self.nontriv:
                yield prefix + (g,)

    def tuple_index(self, bar) -> int:
        g1 = len(self.nontriv)
        t = 0
        for g in bar:
            t = t * g1 + self.pos[g]
        return t

    def cell_index(self, bar, j) -> int:
        return self.tuple_index(bar) * self.M.rank + j

    def boundary(self, i) -> SparseCols:
        """d_i : C_i -> C_{i-1} as a SparseCols matrix."""
        if i in self._boundaries:
            return self._boundaries[i]
        if i == 0 or i > self.top:
            raise ValueError("boundary index out of range")
        rank = self.M.rank
        ident = self.G.identity
        cols = []
        for bar in self._tuples(i):
            base = []
            # structural terms shared by all module generators
            sign = -1 if i % 2 else 1
            tail_idx = self.tuple_index(bar[:-1]) if i >= 1 else 0
            for j in range(rank):
                col: dict[int, int] = {}
                # leading face: twist the module by g1
                head = self.tuple_index(bar[1:])
                mat = self.M.act_right(bar[0])
                for a in range(rank):
                    v = mat[a][j]
                    if v:
                        col[head * rank + a] = col.get(head * rank + a, 0) + v
                # middle faces
                for s in range(1, i):
                    prod = self.G.mul(bar[s - 1], bar[s])
                    if prod == ident:
                        continue
                    merged = bar[:s - 1] + (prod,) + bar[s + 1:]
                    k = self.tuple_index(merged) * rank + j
                    msign = -1 if s % 2 else 1
                    w = col.get(k, 0) + msign
                    if w:
                        col[k] = w
                    else:
                        col.pop(k, None)
                # trailing face
                k = tail_idx * rank + j
                w = col.get(k, 0) + sign
                if w:
                    col[k] = w
                else:
                    col.pop(k, None)
                base.append(col)
            cols.extend(base)
        d = SparseCols(self.level_size[i - 1], cols)
        self._boundaries[i] = d
        return d

    def relation_columns(self, i):
        """Torsion relations of level i as sparse columns."""
        out = []
        if all(o == 0 for o in self.M.orders):
            return out
        rank = self.M.rank
        for t in range(self.level_size[i] // rank):
            for j, o in enumerate(self.M.orders):
                if o:
                    out.append({t * rank + j: o})
        return out

    def homology(self, i) -> Subquotient:
        if i == 0:
            d1 = self.boundary(1) if self.top >= 1 else SparseCols.zero(
                self.level_size[0], 0)
            return presented_subquotient(
                SparseCols.zero(0, self.level_size[0]), d1,
                [], self.relation_columns(0))
        d_out = self.boundary(i)
        d_in = self.boundary(i + 1)
        if not _composite_vanishes(d_out, d_in, self.M.orders, self.M.rank):
            raise AssertionError("bar complex: d^2 != 0")
        return presented_subquotient(
            d_out, d_in,
            self.relation_columns(i - 1), self.relation_columns(i))


def _composite_vanishes(d_out: SparseCols, d_in: SparseCols,
                        orders, rank) -> bool:
    """d_out o d_in == 0 modulo the torsion relations of the target level
    (row r belongs to module generator r % rank)."""
    comp = d_out.compose(d_in)
    if all(o == 0 for o in orders):
        return comp.is_zero()
    for col in comp.cols:
        for r, v in col.items():
            o = orders[r % rank]
            if (v % o if o else v) != 0:
                return False
    return True


def presented_subquotient(d_out: SparseCols, d_in: SparseCols,
                          rel_out, rel_here) -> Subquotient:
    """ker/im homology where the chain levels are presented groups.

    Cycles are v with d_out(v) in the lattice spanned by rel_out;
    boundaries are im(d_in) together with rel_here.  With no relations
    this is exactly homology_of_pair.
    """
    if not rel_out and not rel_here:
        return homology_of_pair(d_out, d_in, check_composition=False)
    n = d_out.ncols
    # kernel of [d_out | -D] projected to the first n coordinates
    aug_cols = [dict(c) for c in d_out.cols]
    for r in rel_out:
        aug_cols.append({i: -v for i, v in r.items()})
    aug = SparseCols(d_out.nrows, aug_cols)
    raw, _ = kernel_columns(aug)
    lat = LatticeSpan(n)
    for v in raw:
        lat.insert({i: x for i, x in v.items() if i < n})
    lat.normalize()
    kbasis = []
    leads = []
    for lead, row in lat.basis():
        kbasis.append({i: x for i, x in enumerate(row) if x})
        leads.append(lead)
    k = len(kbasis)
    span = span_columns(SparseCols(
        n, [dict(c) for c in d_in.cols] + [dict(r) for r in rel_here]))
    X_cols = []
    for _, bvec in span.basis():
        bd = {i: x for i, x in enumerate(bvec) if x}
        X_cols.append(triangular_coords(bd, kbasis, leads))
    nb = len(X_cols)
    X_rows = [[X_cols[c][r] for c in range(nb)] for r in range(k)]
    snf = smith_normal_form(X_rows, transforms=True) if k else SNFResult(
        factors=[], rank=0, nrows=0, ncols=nb, U=[], V=[], Uinv=[])
    torsion_pos = [i for i, d in enumerate(snf.factors) if d > 1]
    free_pos = list(range(snf.rank, k))
    group = FGAbelianGroup(
        free_rank=k - snf.rank,
        torsion=tuple(snf.factors[i] for i in torsion_pos))
    return Subquotient(
        ambient_dim=n, group=group, leads=leads, kernel_basis=kbasis,
        U=snf.U if k else [], Uinv=snf.Uinv if k else [],
        factors=list(snf.factors) + [0] * (k - snf.rank),
        torsion_pos=torsion_pos, free_pos=free_pos)


def bar_homology(M: GModule, i: int,
                 budget: BarBudget | None = None) -> FGAbelianGroup:
    """H_i(G; M) via the normalized bar complex."""
    budget = budget or BarBudget()
    if i == 0:
        return coinvariants(M)
    cx = BarComplex(M, i + 1, budget)
    return cx.homology(i).group


# ----------------------------------------------------------------------
# stabilization maps and relative homology


@dataclass
class StabilizationSetup:
    """The pair (phi: G_small -> G_big, s: M_small -> M_big) inducing a
    chain map of bar complexes.

    phi is an injective homomorphism given element-by-element; s_matrix
    is an integer matrix equivariant over phi, i.e.
    s . act_small(g) == act_big(phi(g)) . s  on the presentations.
    """

    small: GModule
    big: GModule
    phi: dict
    s_matrix: list

    def verify(self) -> None:
        Gs, Gb = self.small.group, self.big.group
        ident = Gb.identity
        assert self.phi[Gs.identity] == ident
        for a in Gs.generators:
            for b in Gs.elements:
                assert self.phi[Gs.mul(a, b)] == Gb.mul(
                    self.phi[a], self.phi[b]), "phi is not a homomorphism"
        assert len(set(self.phi.values())) == len(self.phi), \
            "phi is not injective"
        for g in Gs.generators:
            lhs = _rect_mul(self.s_matrix, self.small.act(g))
            rhs = _rect_mul(self.big.act(self.phi[g]), self.s_matrix)
            if not _rect_congruent(lhs, rhs, self.big.orders):
                raise ValueError("s is not equivariant over phi")

    def chain_map(self, i, cx_small: BarComplex,
                  cx_big: BarComplex) -> SparseCols:
        """C_i(G_small; M_small) -> C_i(G_big; M_big)."""
        rs = self.small.rank
        rb = self.big.rank
        cols = []
        for bar in cx_small._tuples(i):
            tgt = cx_big.tuple_index(tuple(self.phi[g] for g in bar))
            for j in range(rs):
                col = {}
                for a in range(rb):
                    v = self.s_matrix[a][j]
                    if v:
                        col[tgt * rb + a] = v
                cols.append(col)
        return SparseCols(cx_big.level_size[i], cols)


def _rect_mul(a, b):
    rows = len(a)
    inner = len(b)
    colsn = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner))
             for j in range(colsn)] for i in range(rows)]


def _rect_congruent(a, b, row_orders):
    for i, o in enumerate(row_orders):
        for x, y in zip(a[i], b[i]):
            d = x - y
            if (d % o if o else d) != 0:
                return False
    return True


def stabilization_status(setup: StabilizationSetup, i: int,
                         budget: BarBudget | None = None) -> dict:
    """Classify H_i(G_small; M_small) -> H_i(G_big; M_big)."""
    budget = budget or BarBudget()
    top = i + 1
    cx_s = BarComplex(setup.small, top, budget)
    cx_b = BarComplex(setup.big, top, budget)
    hs = cx_s.homology(i)
    hb = cx_b.homology(i)
    f = setup.chain_map(i, cx_s, cx_b)
    M = induced_matrix(f, hs, hb)
    verdict = classify_induced(M, hs.gen_orders(), hb.gen_orders())
    return {
        "is_epi": verdict["is_epi"],
        "is_iso": verdict["is_iso"],
        "source": hs.group,
        "target": hb.group,
        "matrix": M,
    }


class MappingCone:
    """Cone of the bar-level chain map of a StabilizationSetup.

    Cone_i = C_{i-1}(small) (+) C_i(big), d(x, y) = (-dx, f(x) + dy).
    H_i(Cone) is the relative homology of the stabilization pair.
    """

    def __init__(self, setup: StabilizationSetup, top: int,
                 budget: BarBudget):
        self.setup = setup
        self.cx_s = BarComplex(setup.small, top, budget)
        self.cx_b = BarComplex(setup.big, top, budget)
        self.top = top

    def level_size(self, i):
        small = self.cx_s.level_size[i - 1] if i >= 1 else 0
        return small + self.cx_b.level_size[i]

    def boundary(self, i) -> SparseCols:
        ns_out = self.cx_s.level_size[i - 2] if i >= 2 else 0
        nrows = self.level_size(i - 1)
        cols = []
        f = self.setup.chain_map(i - 1, self.cx_s, self.cx_b) if i >= 1 \
            else None
        ds = self.cx_s.boundary(i - 1) if i >= 2 else None
        db = self.cx_b.boundary(i)
        if i >= 1:
            for c in range(self.cx_s.level_size[i - 1]):
                col = {}
                if ds is not None:
                    for r, v in ds.cols[c].items():
                        col[r] = -v
                for r, v in f.cols[c].items():
                    col[ns_out + r] = v
                cols.append(col)
        for c in range(self.cx_b.level_size[i]):
            cols.append({ns_out + r: v for r, v in db.cols[c].items()})
        return SparseCols(nrows, cols)

    def relation_columns(self, i):
        out = []
        off = self.cx_s.level_size[i - 1] if i >= 1 else 0
        if i >= 1:
            out.extend(self.cx_s.relation_columns(i - 1))
        for r in self.cx_b.relation_columns(i):
            out.append({off + k: v for k, v in r.items()})
        return out

    def _composite_vanishes(self, d_out, d_in, target_level) -> bool:
        ms, mb = self.setup.small, self.setup.big
        if all(o == 0 for o in ms.orders) and all(o == 0 for o in mb.orders):
            return d_out.compose(d_in).is_zero()
        off = self.cx_s.level_size[target_level - 1] \
            if target_level >= 1 else 0
        comp = d_out.compose(d_in)
        for col in comp.cols:
            for r, v in col.items():
                o = ms.orders[r % ms.rank] if r < off \
                    else mb.orders[(r - off) % mb.rank]
                if (v % o if o else v) != 0:
                    return False
        return True

    def homology(self, i) -> Subquotient:
        d_out = self.boundary(i) if i >= 1 else SparseCols.zero(
            0, self.level_size(0))
        d_in = self.boundary(i + 1)
        if i >= 1 and not self._composite_vanishes(d_out, d_in, i - 1):
            raise AssertionError("mapping cone: d^2 != 0")
        return presented_subquotient(
            d_out, d_in,
            self.relation_columns(i - 1) if i >= 1 else [],
            self.relation_columns(i))


def relative_homology(setup: StabilizationSetup, i: int,
                      budget: BarBudget | None = None) -> FGAbelianGroup:
    """Rel_i = H_i of the mapping cone of the stabilization chain map."""
    budget = budget or BarBudget()
    cone = MappingCone(setup, i + 2, budget)
    return cone.homology(i).group


def exactness_defect(g_mat, f_mat, orders_a, orders_b, orders_c
                     ) -> FGAbelianGroup:
    """Homology at B of A --f--> B --g--> C between presented groups.

    Exactness at B is equivalent to the result being trivial; everything
    is exact integer arithmetic, no rank heuristics.
    """
    nb = len(orders_b)
    nc = len(orders_c)
    na = len(orders_a)
    d_out = SparseCols.from_dense(g_mat) if nc else SparseCols.zero(0, nb)
    f_cols = [{i: f_mat[i][j] for i in range(nb) if f_mat[i][j]}
              for j in range(na)]
    d_in = SparseCols(nb, f_cols)
    rel_out = [{i: o} for i, o in enumerate(orders_c) if o]
    rel_here = [{i: o} for i, o in enumerate(orders_b) if o]
    return presented_subquotient(d_out, d_in, rel_out, rel_here).group


def les_exact_at_rel(setup: StabilizationSetup, i: int,
                     budget: BarBudget | None = None) -> dict:
    """Check exactness of H_i(big) -> Rel_i -> H_{i-1}(small) -> H_{i-1}(big)
    at the Rel_i and H_{i-1}(small) nodes, plus j o f = 0 at H_i(big).

    Returns the computed groups and per-node defects (all trivial iff the
    long exact sequence holds at these nodes).
    """
    budget = budget or BarBudget()
    top = i + 2
    cone = MappingCone(setup, top, budget)
    cx_s, cx_b = cone.cx_s, cone.cx_b
    h_b_i = cx_b.homology(i)
    rel_i = cone.homology(i)
    h_s_im1 = cx_s.homology(i - 1) if i >= 1 else None
    h_b_im1 = cx_b.homology(i - 1) if i >= 1 else None
    h_s_i = cx_s.homology(i)

    # j: C_i(big) -> Cone_i is the inclusion into the second summand
    off = cx_s.level_size[i - 1] if i >= 1 else 0
    j_cols = [{off + c: 1} for c in range(cx_b.level_size[i])]
    j_amb = SparseCols(cone.level_size(i), j_cols)
    Mj = induced_matrix(j_amb, h_b_i, rel_i)

    f_amb = setup.chain_map(i, cx_s, cx_b)
    Mf = induced_matrix(f_amb, h_s_i, h_b_i)

    out = {
        "H_i_small": h_s_i.group, "H_i_big": h_b_i.group,
        "Rel_i": rel_i.group,
        "defects": {},
    }
    # exactness at H_i(big): ker j = im f
    out["defects"]["at_H_i_big"] = exactness_defect(
        Mj, Mf, h_s_i.gen_orders(), h_b_i.gen_orders(), rel_i.gen_orders())
    if i >= 1:
        # connecting map: Cone_i -> C_{i-1}(small) is (x, y) |-> x
        d_cols = []
        for c in range(cone.level_size(i)):
            d_cols.append({c: 1} if c < off else {})
        d_amb = SparseCols(cx_s.level_size[i - 1], d_cols)
        Md = induced_matrix(d_amb, rel_i, h_s_im1)
        f_prev = setup.chain_map(i - 1, cx_s, cx_b)
        Mf_prev = induced_matrix(f_prev, h_s_im1, h_b_im1)
        out["H_im1_small"] = h_s_im1.group
        out["H_im1_big"] = h_b_im1.group
        out["defects"]["at_Rel_i"] = exactness_defect(
            Md, Mj, h_b_i.gen_orders(), rel_i.gen_orders(),
            h_s_im1.gen_orders())
        out["defects"]["at_H_im1_small"] = exactness_defect(
            Mf_prev, Md, rel_i.gen_orders(), h_s_im1.gen_orders(),
            h_b_im1.gen_orders())
    out["exact"] = all(d.is_trivial() for d in out["defects"].values())
    return out


# ----------------------------------------------------------------------
# conjugation invariance


def conjugation_chain_map(M: GModule, h, i, cx: BarComplex) -> SparseCols:
    """Chain self-map of C_i(G; M) induced by the inner automorphism
    g |-> h g h^{-1} together with m |-> h.m."""
    G = M.group
    hinv = G.inv(h)
    rank = M.rank
    hmat = M.act(h)
    cols = []
    for bar in cx._tuples(i):
        conj = tuple(G.mul(G.mul(h, g), hinv) for g in bar)
        tgt = cx.tuple_index(conj)
        for j in range(rank):
            col = {}
            for a in range(rank):
                v = hmat[a][j]
                if v:
                    col[tgt * rank + a] = v
            cols.append(col)
    return SparseCols(cx.level_size[i], cols)


def conjugation_acts_trivially(M: GModule, i: int,
                               budget: BarBudget | None = None) -> bool:
    """True iff every inner automorphism induces the identity on
    H_i(G; M).  Exhaustive over the group."""
    budget = budget or BarBudget()
    cx = BarComplex(M, i + 1, budget)
    hq = cx.homology(i)
    orders = hq.gen_orders()
    ngen = len(orders)
    for h in M.group.elements:
        f = conjugation_chain_map(M, h, i, cx)
        Mc = induced_matrix(f, hq, hq)
        for r in range(ngen):
            for c in range(ngen):
                want = 1 if r == c else 0
                d = Mc[r][c] - want
                o = orders[r]
                if (d % o if o else d) != 0:
                    return False
    return True


# ----------------------------------------------------------------------
# disk cache


class HomologyCache:
    """JSON-on-disk memo of homology values keyed by
    (family_hash, n, i, coefficient_hash)."""

    def __init__(self, path):
        self.path = str(path)
        self._data = {}
        if os.path.exists(self.path):
            with open(self.path) as fh:
                self._data = json.load(fh)

    @staticmethod
    def key(family_hash: str, n: int, i: int, coeff_hash: str) -> str:
        return f"{family_hash}:{n}:{i}:{coeff_hash}"

    def get(self, key) -> FGAbelianGroup | None:
        rec = self._data.get(key)
        if rec is None:
            return None
        return FGAbelianGroup(rec["free"], tuple(rec["torsion"]))

    def put(self, key, value: FGAbelianGroup) -> None:
        self._data[key] = {"free": value.free_rank,
                           "torsion": list(value.torsion)}

    def flush(self) -> None:
        tmp = self.path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(self._data, fh, sort_keys=True, indent=0)
        os.replace(tmp, self.path)
