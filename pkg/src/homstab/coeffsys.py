"""Coefficient systems on the stable bracket category and their calculus.

A coefficient system F assigns a Z[Aut(A + n.x)]-module F_n to every
level n together with structure maps s_n : F_n -> F_{n+1} that are
equivariant over the upper suspension and on whose image the complement
automorphism block acts trivially; this data determines F on all bracket
morphisms.  The module implements:

* evaluation of F on morphisms, verification of the defining conditions;
* the suspension Sigma F = F o Sigma_X and the natural transformation
  sigma_X : F -> Sigma F;
* kernel and cokernel systems of sigma_X, degree profiles (including the
  split variant), and explicit split witnesses found by exact integer
  linear algebra;
* internalization: twisting a system by maps s_n : G_n -> G_inf^ab into
  a stably detected abelianization limit;
* builtin systems (constant, standard/permutation, tensor powers,
  abelian-constant group rings) plus the Burau system over the braid
  family, handled with Laurent-polynomial matrices.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groups import abelianization, coords_add
from .groupoids import PresentedGroupFamily, braid_family
from .bracket import BracketCategory, UMorphism
from .exact_linalg import (FGAbelianGroup, SparseCols, smith_normal_form,
                           Subquotient)
from .homology_engine import (GModule, StabilizationSetup,
                              presented_subquotient)
from . import laurent as lau


# ----------------------------------------------------------------------
# dense integer matrix helpers (rectangular, with row-wise reduction)


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _mm(a, b):
    rows, inner = len(a), len(b)
    cols = len(b[0]) if inner else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner))
             for j in range(cols)] for i in range(rows)]


def _reduce_rows(mat, orders):
    out = []
    for i, row in enumerate(mat):
        o = orders[i]
        out.append([x % o for x in row] if o else row[:])
    return out


def _rows_congruent(a, b, orders):
    for i, o in enumerate(orders):
        for x, y in zip(a[i], b[i]):
            d = x - y
            if (d % o if o else d) != 0:
                return False
    return True


def _apply_dense(mat, vec):
    """mat @ vec with vec a sparse dict; result sparse."""
    out: dict[int, int] = {}
    for j, v in vec.items():
        for i in range(len(mat)):
            a = mat[i][j]
            if a:
                w = out.get(i, 0) + a * v
                if w:
                    out[i] = w
                else:
                    out.pop(i, None)
    return out


def _kron(a, b):
    ra, ca = len(a), len(a[0]) if a else 0
    rb, cb = len(b), len(b[0]) if b else 0
    out = [[0] * (ca * cb) for _ in range(ra * rb)]
    for i in range(ra):
        for j in range(ca):
            v = a[i][j]
            if not v:
                continue
            for p in range(rb):
                for q in range(cb):
                    out[i * rb + p][j * cb + q] = v * b[p][q]
    return out


def _relation_columns(orders):
    return [{i: o} for i, o in enumerate(orders) if o]


# ----------------------------------------------------------------------
# finite coefficient systems


class CoefficientSystem:
    """A coefficient system on levels 0..n_max.

    modules[n] is a GModule over Aut(A + n.x); s_mats[n] is the integer
    matrix of the structure map F_n -> F_{n+1} (present for n < n_max).
    """

    def __init__(self, cat: BracketCategory, A: int, x: int, n_max: int,
                 modules, s_mats, name: str = "F"):
        if x <= 0:
            raise ValueError("x must be a nonempty object")
        if len(modules) != n_max + 1 or len(s_mats) != n_max:
            raise ValueError("modules/s_mats length mismatch")
        self.cat = cat
        self.inst = cat.G
        self.A = A
        self.x = x
        self.n_max = n_max
        self.modules = list(modules)
        self.s_mats = [[row[:] for row in m] for m in s_mats]
        self.name = name

    # -- basic accessors

    def obj(self, n: int) -> int:
        return self.A + n * self.x

    def group(self, n: int):
        return self.modules[n].group

    def rank(self, n: int) -> int:
        return self.modules[n].rank

    def orders(self, n: int):
        return self.modules[n].orders

    def module_trivial(self, n: int) -> bool:
        return self.modules[n].underlying.is_trivial()

    # -- evaluation on morphisms

    def schain(self, m: int, n: int):
        """Composite structure map F_m -> F_n (identity when m == n)."""
        mat = _identity(self.rank(m))
        for j in range(m, n):
            mat = _reduce_rows(_mm(self.s_mats[j], mat), self.orders(j + 1))
        return mat

    def cchain(self, m: int, n: int):
        """F of the canonical morphism [x^{n-m}, id] : m -> n, whose rep
        is the identity.  Since the complement sits in the LEFT block,
        each step is the structure map followed by the braiding that
        moves the image into the last coordinates."""
        mat = _identity(self.rank(m))
        for j in range(m, n):
            b = self.inst.braiding(self.obj(j), self.x)
            step = _mm(self.modules[j + 1].act(b), self.s_mats[j])
            mat = _reduce_rows(_mm(step, mat), self.orders(j + 1))
        return mat

    def _steps(self, size: int) -> int:
        d = size - self.A
        if d < 0 or d % self.x:
            raise ValueError(f"object {size} is not of the form A + n.x")
        return d // self.x

    def evaluate(self, mor: UMorphism):
        """Matrix of F on a bracket morphism [x^c, f] = f . canonical."""
        m = self._steps(mor.source)
        n = self._steps(mor.target)
        if n > self.n_max:
            raise ValueError("morphism target outside the window")
        return _reduce_rows(
            _mm(self.modules[n].act(mor.rep), self.cchain(m, n)),
            self.orders(n))

    def sigma_mor(self, n: int) -> UMorphism:
        return self.cat.lower_suspension(self.A, self.x, n)

    def sigma_mat(self, n: int):
        """Component F_n -> F_{n+1} of the natural map sigma_X."""
        return self.evaluate(self.sigma_mor(n))

    # -- verification

    def verify(self, functoriality_pairs: int = 0, seed: int = 0) -> None:
        """Check the defining conditions of a coefficient system.

        (1) each s_n is equivariant over the upper suspension;
        (2) the complement block Aut(x^m) acts trivially on the image of
            F_n in F_{n+m};
        (3) optionally, functoriality on sampled composable pairs.
        Raises ValueError on the first failure.
        """
        cat, x = self.cat, self.x
        for n in range(self.n_max):
            s = self.s_mats[n]
            tgt = self.orders(n + 1)
            for g in self.group(n).generators:
                lhs = _mm(s, self.modules[n].act(g))
                gg = cat.sigma_upper_on_group(g, self.obj(n), x)
                rhs = _mm(self.modules[n + 1].act(gg), s)
                if not _rows_congruent(lhs, rhs, tgt):
                    raise ValueError(
                        f"s_{n} is not equivariant over the suspension")
        for n in range(self.n_max):
            for m in range(1, self.n_max - n + 1):
                chain = self.schain(n, n + m)
                blockgrp = self.inst.aut(m * x)
                for h in blockgrp.generators:
                    big = self.inst.block_sum(
                        self.inst.identity(self.obj(n)), h,
                        self.obj(n), m * x)
                    lhs = _mm(self.modules[n + m].act(big), chain)
                    if not _rows_congruent(lhs, chain,
                                           self.orders(n + m)):
                        raise ValueError(
                            f"Aut(x^{m}) does not act trivially on the "
                            f"image of F_{n}")
        if functoriality_pairs:
            import random
            rng = random.Random(seed)
            checked = 0
            while checked < functoriality_pairs:
                m = rng.randrange(0, self.n_max + 1)
                p = rng.randrange(m, self.n_max + 1)
                q = rng.randrange(p, self.n_max + 1)
                hf = cat.hom_set(self.obj(m), self.obj(p))
                hg = cat.hom_set(self.obj(p), self.obj(q))
                if not hf or not hg:
                    continue
                f = hf[rng.randrange(len(hf))]
                g = hg[rng.randrange(len(hg))]
                lhs = self.evaluate(cat.compose(g, f))
                rhs = _reduce_rows(_mm(self.evaluate(g), self.evaluate(f)),
                                   self.orders(q))
                if not _rows_congruent(lhs, rhs, self.orders(q)):
                    raise ValueError("functoriality fails on a sample")
                checked += 1

    # -- suspension and the kernel/cokernel calculus

    def suspend(self) -> "CoefficientSystem":
        """Sigma F = F o Sigma_X on the window 0..n_max-1."""
        cat, A, x = self.cat, self.A, self.x
        mods = []
        for n in range(self.n_max):
            gen_action = {
                g: self.modules[n + 1].act(
                    cat.sigma_lower_on_group(g, A, x, n))
                for g in self.group(n).generators}
            mods.append(GModule(self.group(n),
                                self.modules[n + 1].underlying,
                                gen_action, name=f"(S{self.name})_{n}"))
        s_mats = []
        for n in range(self.n_max - 1):
            mor = cat.lower_suspension_of_mor(
                cat.upper_suspension(self.obj(n), x), A, x)
            s_mats.append(self.evaluate(mor))
        return CoefficientSystem(cat, A, x, self.n_max - 1, mods, s_mats,
                                 name=f"S{self.name}")

    def _subq_module(self, sq: Subquotient, group, ambient_act, name):
        orders = sq.gen_orders()
        under = FGAbelianGroup(sum(1 for o in orders if o == 0),
                               tuple(o for o in orders if o))
        k = len(orders)
        lifts = [sq.lift(j) for j in range(k)]
        gen_action = {}
        for g in group.generators:
            amat = ambient_act(g)
            cols = [sq.project(_apply_dense(amat, lifts[j]))
                    for j in range(k)]
            gen_action[g] = [[cols[j][i] for j in range(k)]
                             for i in range(k)]
        return GModule(group, under, gen_action, name=name), lifts

    def _induced_map(self, amb_mat, sq_src: Subquotient, lifts_src,
                     sq_dst: Subquotient):
        k_src = len(lifts_src)
        cols = [sq_dst.project(_apply_dense(amb_mat, lifts_src[j]))
                for j in range(k_src)]
        k_dst = len(sq_dst.gen_orders())
        return [[cols[j][i] for j in range(k_src)] for i in range(k_dst)]

    def kernel_system(self) -> "CoefficientSystem":
        """ker(sigma_X : F -> Sigma F) on the window 0..n_max-1."""
        sqs, lifts, mods = [], [], []
        for n in range(self.n_max):
            lam = SparseCols.from_dense(self.sigma_mat(n))
            sq = presented_subquotient(
                lam, SparseCols.zero(self.rank(n), 0),
                _relation_columns(self.orders(n + 1)),
                _relation_columns(self.orders(n)))
            mod, lf = self._subq_module(
                sq, self.group(n), self.modules[n].act,
                name=f"(ker {self.name})_{n}")
            sqs.append(sq)
            lifts.append(lf)
            mods.append(mod)
        s_mats = [self._induced_map(self.s_mats[n], sqs[n], lifts[n],
                                    sqs[n + 1])
                  for n in range(self.n_max - 1)]
        return CoefficientSystem(self.cat, self.A, self.x, self.n_max - 1,
                                 mods, s_mats, name=f"ker {self.name}")

    def cokernel_system(self) -> "CoefficientSystem":
        """coker(sigma_X : F -> Sigma F) on the window 0..n_max-1."""
        cat, A, x = self.cat, self.A, self.x
        susp = self.suspend()
        sqs, lifts, mods = [], [], []
        for n in range(self.n_max):
            lam = self.sigma_mat(n)
            r1 = self.rank(n + 1)
            sq = presented_subquotient(
                SparseCols.zero(0, r1),
                SparseCols.from_dense(lam), [],
                _relation_columns(self.orders(n + 1)))
            mod, lf = self._subq_module(
                sq, self.group(n), susp.modules[n].act,
                name=f"(coker {self.name})_{n}")
            sqs.append(sq)
            lifts.append(lf)
            mods.append(mod)
        s_mats = [self._induced_map(susp.s_mats[n], sqs[n], lifts[n],
                                    sqs[n + 1])
                  for n in range(self.n_max - 1)]
        return CoefficientSystem(cat, A, x, self.n_max - 1, mods, s_mats,
                                 name=f"coker {self.name}")

    # -- stability plumbing

    def stabilization_setup(self, n: int) -> StabilizationSetup:
        """(G_n -> G_{n+1}, s_n) as a bar-complex stabilization setup."""
        phi = {g: self.cat.sigma_upper_on_group(g, self.obj(n), self.x)
               for g in self.group(n).elements}
        return StabilizationSetup(self.modules[n], self.modules[n + 1],
                                  phi, self.s_mats[n])


# ----------------------------------------------------------------------
# degree profiles


@dataclass(frozen=True)
class DegreeProfile:
    status: str                 # "ok" or "exceeds"
    r: int | None
    N: int | None
    window: int                 # n_max of the window the answer refers to


def _trivial_from(F) -> int | None:
    """Least N with F_n = 0 for all N <= n <= n_max, or None."""
    t = None
    for n in range(F.n_max, -1, -1):
        if F.module_trivial(n):
            t = n
        else:
            break
    return t


def degree_profile(F, r_max: int, N_max: int) -> DegreeProfile:
    """Degree (r, N) of a coefficient system, computed recursively:
    degree -1 means vanishing from N on; otherwise ker sigma_X must
    vanish from some N_K <= N_max and coker must have degree r-1.

    The answer is window-relative: each recursion level shrinks the
    window by one, so n_max must be at least N_max + r_max + 1.
    """
    if hasattr(F, "degree_profile"):
        return F.degree_profile(r_max, N_max)
    if F.n_max < N_max + max(r_max, 0) + 1:
        raise ValueError("window too small for the requested degree bound")
    t = _trivial_from(F)
    if t is not None and t <= N_max:
        return DegreeProfile("ok", -1, t, F.n_max)
    if r_max < 0:
        return DegreeProfile("exceeds", None, None, F.n_max)
    ker = F.kernel_system()
    kt = _trivial_from(ker)
    if kt is None or kt > N_max:
        return DegreeProfile("exceeds", None, None, F.n_max)
    sub = degree_profile(F.cokernel_system(), r_max - 1, N_max)
    if sub.status != "ok":
        return DegreeProfile("exceeds", None, None, F.n_max)
    return DegreeProfile("ok", sub.r + 1, max(kt, sub.N), F.n_max)


# ----------------------------------------------------------------------
# split witnesses


def _solve_integer(rows, rhs):
    """One solution x of A x = b over Z, or None."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    if m == 0:
        return [0] * n
    snf = smith_normal_form(rows, transforms=True)
    ub = [sum(snf.U[i][j] * rhs[j] for j in range(m)) for i in range(m)]
    y = [0] * n
    for i in range(m):
        if i < snf.rank:
            d = snf.factors[i]
            if ub[i] % d:
                return None
            y[i] = ub[i] // d
        elif ub[i]:
            return None
    return [sum(snf.V[i][j] * y[j] for j in range(n)) for i in range(n)]


def split_witness(F: CoefficientSystem):
    """Retractions rho_n : F_{n+1} -> F_n with rho_n sigma_X = id,
    equivariant over Sigma_X and natural in the system; None if the
    joint integer linear system has no solution on this window.
    """
    cat, A, x = F.cat, F.A, F.x
    W = F.n_max
    # variable layout: rho_n entry (i, j) for n in 0..W-1
    offs, total = [], 0
    for n in range(W):
        offs.append(total)
        total += F.rank(n) * F.rank(n + 1)

    def var(n, i, j):
        return offs[n] + i * F.rank(n + 1) + j

    rows, rhs = [], []

    def add_eq(coeffs: dict, target: int, modulus: int):
        row = [0] * (total + (1 if modulus else 0))
        for v, c in coeffs.items():
            row[v] += c
        if modulus:
            row[total] = modulus
        # pad previously added rows for the new slack column
        for r in rows:
            r.extend([0] * (len(row) - len(r)))
        rows.append(row)
        rhs.append(target)

    def add_matrix_eq(n_rho_left, left_pre, n_rho_right, right_post,
                      target_mat, orders, shape):
        """sum_k pre[i][k] rho_L[k][j'] - sum_k rho_R[i][k] post[k][j]
        = target[i][j] (mod orders[i]); either side may be absent."""
        ri, rj = shape
        for i in range(ri):
            for j in range(rj):
                coeffs: dict[int, int] = {}
                if n_rho_left is not None:
                    nL = n_rho_left
                    for k in range(F.rank(nL)):
                        c = left_pre[i][k]
                        if c:
                            v = var(nL, k, j)
                            coeffs[v] = coeffs.get(v, 0) + c
                if n_rho_right is not None:
                    nR = n_rho_right
                    for k in range(F.rank(nR + 1)):
                        c = right_post[k][j]
                        if c:
                            v = var(nR, i, k)
                            coeffs[v] = coeffs.get(v, 0) - c
                add_eq(coeffs, target_mat[i][j] if target_mat else 0,
                       orders[i])

    susp = F.suspend() if W >= 2 else None
    for n in range(W):
        lam = F.sigma_mat(n)
        rn, rn1 = F.rank(n), F.rank(n + 1)
        ident = _identity(rn)
        # (a) rho_n . lam_n = id  (mod orders_n)
        for i in range(rn):
            for j in range(rn):
                coeffs = {var(n, i, k): lam[k][j]
                          for k in range(rn1) if lam[k][j]}
                add_eq(coeffs, ident[i][j], F.orders(n)[i])
        # (b) rho_n . act_{n+1}(Sigma_X g) = act_n(g) . rho_n
        for g in F.group(n).generators:
            tw = F.modules[n + 1].act(
                cat.sigma_lower_on_group(g, A, x, n))
            ag = F.modules[n].act(g)
            add_matrix_eq(n, ag, n, tw, None, F.orders(n), (rn, rn1))
    # (c) naturality: s_n . rho_n = rho_{n+1} . s'_n
    for n in range(W - 1):
        sp = susp.s_mats[n]
        add_matrix_eq(n, F.s_mats[n], n + 1, sp, None, F.orders(n + 1),
                      (F.rank(n + 1), F.rank(n + 1)))
    sol = _solve_integer(rows, rhs)
    if sol is None:
        return None
    out = []
    for n in range(W):
        rn, rn1 = F.rank(n), F.rank(n + 1)
        out.append([[sol[var(n, i, j)] for j in range(rn1)]
                    for i in range(rn)])
    return out


def split_degree_profile(F, r_max: int, N_max: int) -> DegreeProfile:
    """Split degree: sigma_X must be split injective (witnessed by an
    explicit system of retractions) and coker F of split degree r-1."""
    if hasattr(F, "degree_profile"):
        # structural Laurent systems certify splitness along the way
        return F.degree_profile(r_max, N_max)
    if F.n_max < N_max + max(r_max, 0) + 1:
        raise ValueError("window too small for the requested degree bound")
    t = _trivial_from(F)
    if t is not None and t <= N_max:
        return DegreeProfile("ok", -1, t, F.n_max)
    if r_max < 0 or split_witness(F) is None:
        return DegreeProfile("exceeds", None, None, F.n_max)
    sub = split_degree_profile(F.cokernel_system(), r_max - 1, N_max)
    if sub.status != "ok":
        return DegreeProfile("exceeds", None, None, F.n_max)
    return DegreeProfile("ok", sub.r + 1, sub.N, F.n_max)


# ----------------------------------------------------------------------
# abelianization limits and internalization


@dataclass
class AbelianizationLimit:
    limit: FGAbelianGroup
    stable_from: int | None     # least n with ab_n -> ab_{n+1} iso onward
    certified: bool             # tail guaranteed by the stability range
    s_maps: list                # per level n: {element of G_n: coords}


def _coords_closure(gens, factors):
    zero = tuple(0 for _ in factors)
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = coords_add(a, g, factors)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return seen


def abelianization_limit(cat: BracketCategory, A: int, x: int,
                         n_probe: int, k: int) -> AbelianizationLimit:
    """Detect the stable abelianization G_inf^ab along the suspension.

    Computes Aut(A + n.x)^ab for n <= n_probe with the induced maps;
    stable_from is the least level from which every consecutive map is
    an isomorphism.  The tail beyond the probe window is certified by
    the H_1 isomorphism range exactly when n_probe >= k + 1.
    """
    inst = cat.G
    abs_, phis = [], []
    for n in range(n_probe + 1):
        grp, phi = abelianization(inst.aut(A + n * x))
        abs_.append(grp)
        phis.append(phi)
    iso = []
    for n in range(n_probe):
        tgt = abs_[n + 1]
        factors = tuple(tgt.torsion)
        gens = [phis[n + 1][cat.sigma_upper_on_group(g, A + n * x, x)]
                for g in inst.aut(A + n * x).generators]
        image = _coords_closure(gens, factors)
        iso.append(len(image) == tgt.order()
                   and abs_[n].order() == tgt.order())
    # least level from which every consecutive map up to the probe top
    # is an isomorphism; the top map itself must be one
    stable_from = n_probe
    for n in range(n_probe - 1, -1, -1):
        if iso[n]:
            stable_from = n
        else:
            break
    if stable_from == n_probe:
        return AbelianizationLimit(abs_[n_probe], None, False, [])
    certified = n_probe >= k + 1
    top = n_probe
    s_maps = []
    for n in range(n_probe + 1):
        mp = {}
        for g in inst.aut(A + n * x).elements:
            h = g
            for j in range(n, top):
                h = cat.sigma_upper_on_group(h, A + j * x, x)
            mp[g] = phis[top][h]
        s_maps.append(mp)
    return AbelianizationLimit(abs_[top], stable_from, certified, s_maps)


class InternalizedSystem(CoefficientSystem):
    """A system twisted by the translation action of G_inf^ab.

    The underlying modules and all structure matrices are those of the
    base system; only the group actions are twisted, so evaluation of
    canonical chains and the sigma_X components are delegated to the
    base.  Such a twist is not a coefficient system in the strict sense
    (the complement block acts by translation, not trivially); what
    survives is equivariance of both suspension maps for the twisted
    actions, which is exactly what verify() checks and what stability
    runs need.
    """

    def __init__(self, base: CoefficientSystem, limit: AbelianizationLimit,
                 star, mods):
        super().__init__(base.cat, base.A, base.x, base.n_max, mods,
                         base.s_mats, name=f"{base.name}^int")
        self.base = base
        self.limit = limit
        self.star = star

    def cchain(self, m: int, n: int):
        return self.base.cchain(m, n)

    def sigma_mat(self, n: int):
        return self.base.sigma_mat(n)

    def suspend(self) -> "InternalizedSystem":
        bs = self.base.suspend()
        lim = AbelianizationLimit(self.limit.limit, self.limit.stable_from,
                                  self.limit.certified,
                                  self.limit.s_maps[: bs.n_max + 1])
        return internalize(bs, lim, self.star[1: bs.n_max + 2])

    def verify(self, functoriality_pairs: int = 0, seed: int = 0) -> None:
        """Both suspension maps stay equivariant for the twisted
        actions (upper over Sigma^X, lower over Sigma_X)."""
        cat = self.cat
        for n in range(self.n_max):
            for mat, on_group, tag in (
                    (self.s_mats[n],
                     lambda g, n=n: cat.sigma_upper_on_group(
                         g, self.obj(n), self.x), "upper"),
                    (self.sigma_mat(n),
                     lambda g, n=n: cat.sigma_lower_on_group(
                         g, self.A, self.x, n), "lower")):
                for g in self.group(n).generators:
                    lhs = _mm(mat, self.modules[n].act(g))
                    rhs = _mm(self.modules[n + 1].act(on_group(g)), mat)
                    if not _rows_congruent(lhs, rhs, self.orders(n + 1)):
                        raise ValueError(
                            f"{tag} suspension not equivariant for the "
                            f"internalized action at level {n}")


def internalize(F: CoefficientSystem, limit: AbelianizationLimit,
                star) -> InternalizedSystem:
    """Twist F by the translation action of G_inf^ab.

    ``star`` gives, per level n, one matrix on F_n for each canonical
    generator of the limit; the internalized action of g on F_n is
    act_n(g) followed by translation by s_n(g).  The structure maps are
    unchanged.
    """
    factors = list(limit.limit.torsion) + [0] * limit.limit.free_rank
    if limit.limit.free_rank:
        raise ValueError("internalization needs a finite limit")
    if not limit.s_maps:
        raise ValueError("abelianization limit was not detected")

    def star_word(n, coords):
        mat = _identity(F.rank(n))
        for kk, c in enumerate(coords):
            e = c % factors[kk]
            for _ in range(e):
                mat = _reduce_rows(_mm(star[n][kk], mat), F.orders(n))
        return mat

    mods = []
    for n in range(F.n_max + 1):
        smap = limit.s_maps[n]
        gen_action = {
            g: _reduce_rows(_mm(F.modules[n].act(g), star_word(n, smap[g])),
                            F.orders(n))
            for g in F.group(n).generators}
        mods.append(GModule(F.group(n), F.modules[n].underlying,
                            gen_action, name=f"({F.name})^int_{n}"))
    return InternalizedSystem(F, limit, star, mods)


# ----------------------------------------------------------------------
# builtin systems


def constant_system(cat: BracketCategory, A: int, x: int, n_max: int,
                    rank: int = 1, torsion: tuple = ()) -> CoefficientSystem:
    under = FGAbelianGroup(rank - len(torsion), tuple(torsion))
    total = len(under.torsion) + under.free_rank
    ident = _identity(total)
    mods = []
    for n in range(n_max + 1):
        grp = cat.G.aut(A + n * x)
        mods.append(GModule(grp, under,
                            {g: ident for g in grp.generators},
                            name=f"const_{n}"))
    return CoefficientSystem(cat, A, x, n_max, mods,
                             [ident for _ in range(n_max)], name="const")


def _perm_matrix(g):
    n = len(g)
    mat = [[0] * n for _ in range(n)]
    for j in range(n):
        mat[g[j]][j] = 1
    return mat


def standard_system(cat: BracketCategory, A: int, n_max: int
                    ) -> CoefficientSystem:
    """The permutation system Z^{A+n} over the symmetric groupoid, with
    structure maps including as the first coordinates."""
    if cat.G.name != "symmetric":
        raise ValueError("standard system is defined over the symmetric "
                         "groupoid")
    mods, s_mats = [], []
    for n in range(n_max + 1):
        size = A + n
        grp = cat.G.aut(size)
        mods.append(GModule(grp, FGAbelianGroup(size, ()),
                            {g: _perm_matrix(g) for g in grp.generators},
                            name=f"std_{n}"))
        if n < n_max:
            s_mats.append([[1 if i == j else 0 for j in range(size)]
                           for i in range(size + 1)])
    return CoefficientSystem(cat, A, 1, n_max, mods, s_mats, name="std")


def tensor_power(F: CoefficientSystem, p: int) -> CoefficientSystem:
    """p-th tensor power of a torsion-free system."""
    if p < 1:
        raise ValueError("tensor power needs p >= 1")
    if any(o for n in range(F.n_max + 1) for o in F.orders(n)):
        raise ValueError("tensor powers implemented for free systems only")
    mods, s_mats = [], []
    for n in range(F.n_max + 1):
        gen_action = {}
        for g in F.group(n).generators:
            m = F.modules[n].act(g)
            out = m
            for _ in range(p - 1):
                out = _kron(out, m)
            gen_action[g] = out
        mods.append(GModule(F.group(n),
                            FGAbelianGroup(F.rank(n) ** p, ()),
                            gen_action, name=f"({F.name})x{p}_{n}"))
        if n < F.n_max:
            s = F.s_mats[n]
            out = s
            for _ in range(p - 1):
                out = _kron(out, s)
            s_mats.append(out)
    return CoefficientSystem(F.cat, F.A, F.x, F.n_max, mods, s_mats,
                             name=f"{F.name}^(x{p})")


def abelian_constant_system(cat: BracketCategory, A: int, x: int,
                            n_max: int, limit: AbelianizationLimit,
                            subgroup=()):
    """The constant system Z[Q], Q = limit / <subgroup>, together with
    the translation star-action used by internalization.

    Returns (system, star) ready to feed ``internalize``.
    """
    fg = limit.limit
    if fg.free_rank:
        raise ValueError("group-ring systems need a finite limit")
    factors = tuple(fg.torsion)
    elements = _coords_closure(
        [tuple(1 if i == j else 0 for i in range(len(factors)))
         for j in range(len(factors))], factors)
    sub = _coords_closure(list(subgroup), factors) if subgroup else \
        {tuple(0 for _ in factors)}

    def coset(a):
        return min(coords_add(a, s, factors) for s in sub)

    reps = sorted({coset(a) for a in elements})
    idx = {r: i for i, r in enumerate(reps)}
    q = len(reps)

    def translation(c):
        mat = [[0] * q for _ in range(q)]
        for r in reps:
            mat[idx[coset(coords_add(c, r, factors))]][idx[r]] = 1
        return mat

    system = constant_system(cat, A, x, n_max, rank=q)
    system.name = "Z[Q]"
    star = [[translation(tuple(1 if i == j else 0
                               for i in range(len(factors))))
             for j in range(len(factors))]
            for _ in range(n_max + 1)]
    return system, star


# ----------------------------------------------------------------------
# the Burau system over the braid family


def _burau_gen(n, i, inverse=False):
    """Unreduced Burau matrix of sigma_i (1-based) in B_n."""
    mat = [[dict(lau.L_ONE) if a == b else {} for b in range(n)]
           for a in range(n)]
    a = i - 1
    if inverse:
        mat[a][a] = {}
        mat[a][a + 1] = dict(lau.L_ONE)
        mat[a + 1][a] = lau.lp((-1, 1))
        mat[a + 1][a + 1] = lau.lp((0, 1), (-1, -1))
    else:
        mat[a][a] = lau.lp((0, 1), (1, -1))
        mat[a][a + 1] = lau.lp((1, 1))
        mat[a + 1][a] = dict(lau.L_ONE)
        mat[a + 1][a + 1] = {}
    return mat


class BurauSystem:
    """The Burau coefficient system over the braid family.

    Level n carries Z[t, t^{-1}]^n with sigma_i acting by the unreduced
    Burau matrix; the structure map is inclusion as the first n
    coordinates.  All linear algebra stays in the unit-pivot structural
    fragment of Laurent matrices.
    """

    def __init__(self, n_max: int):
        self.family: PresentedGroupFamily = braid_family()
        self.n_max = n_max
        self.name = "burau"
        self._images: dict[int, dict] = {}

    def rank(self, n: int) -> int:
        return n

    def module_trivial(self, n: int) -> bool:
        return n == 0

    def images(self, n: int) -> dict:
        if n not in self._images:
            img = {}
            for i in range(1, n):
                img[i] = _burau_gen(n, i)
                img[-i] = _burau_gen(n, i, inverse=True)
            self._images[n] = img
        return self._images[n]

    def act_word(self, n: int, word):
        if not word:
            return lau.lm_identity(n)
        return lau.lm_word(self.images(n), word)

    def s_mat(self, n: int):
        return [[dict(lau.L_ONE) if i == j else {} for j in range(n)]
                for i in range(n + 1)]

    @staticmethod
    def _bn1_word(n: int):
        """Block braiding b_{n,1} in B_{n+1} via the hexagon recursion
        b_{n,1} = (b_{1,1} + id) . (id + b_{n-1,1})."""
        return tuple(range(1, n + 1))

    def can_step(self, n: int):
        """F of the canonical morphism [x, id] : n -> n+1; with the
        complement in the left block this is act(b_{n,1}) . s_n."""
        return lau.lm_mul(self.act_word(n + 1, self._bn1_word(n)),
                          self.s_mat(n))

    def sigma_mat(self, n: int, shift: int = 0):
        """Matrix of F(Sigma_X^shift sigma_{X,n}).

        sigma_{X,n} = [x, id] is canonical, and each application of
        Sigma_X shifts the rep by one strand and appends sigma_1^{-1},
        giving the rep word (-shift, ..., -1) at level n + shift."""
        word = tuple(range(-shift, 0))
        return lau.lm_mul(self.act_word(n + shift + 1, word),
                          self.can_step(n + shift))

    def verify_relations(self, n: int):
        """First failing braid relator under the Burau images, or None."""
        return self.family.verify_images(
            n, self.images(n), lau.lm_identity(n), lau.lm_mul, lau.lm_eq)

    def degree_profile(self, r_max: int, N_max: int) -> DegreeProfile:
        """Degree within the structural fragment: sigma_X components are
        eliminated with unit pivots; the cokernel tower must become a
        system of isomorphisms (constant-like) within two steps."""
        if self.n_max < N_max + max(r_max, 0) + 1:
            raise ValueError("window too small for the requested degree "
                             "bound")
        if all(self.module_trivial(n) for n in range(N_max, self.n_max + 1)):
            return DegreeProfile("ok", -1, N_max, self.n_max)
        if r_max < 0:
            return DegreeProfile("exceeds", None, None, self.n_max)
        elims = []
        for n in range(self.n_max):
            e = lau.UnitElimination(self.sigma_mat(n))
            if not e.kernel_trivial():
                return DegreeProfile("exceeds", None, None, self.n_max)
            elims.append(e)
        coker_ranks = [e.cokernel_rank() for e in elims]
        t = self.n_max
        for n in range(self.n_max - 1, -1, -1):
            if coker_ranks[n] == 0:
                t = n
            else:
                break
        if t <= N_max:
            return DegreeProfile("ok", 0, t, self.n_max)
        if r_max < 1:
            return DegreeProfile("exceeds", None, None, self.n_max)
        # induced map on cokernels of the suspended sigma component;
        # it must be an isomorphism at every window level
        for n in range(self.n_max - 1):
            amb = self.sigma_mat(n, shift=1)     # F_{n+1} -> F_{n+2}
            t_mat = lau.lm_mul(lau.lm_mul(elims[n + 1].U, amb),
                               elims[n].Uinv)
            r_src, r_dst = elims[n].rank, elims[n + 1].rank
            for i in range(r_dst, len(t_mat)):
                for j in range(r_src):
                    if t_mat[i][j]:
                        return DegreeProfile("exceeds", None, None,
                                             self.n_max)
            block = [row[r_src:] for row in t_mat[r_dst:]]
            if len(block) != len(block[0] if block else []):
                return DegreeProfile("exceeds", None, None, self.n_max)
            e2 = lau.UnitElimination(block)
            if not (e2.kernel_trivial() and e2.cokernel_rank() == 0):
                return DegreeProfile("exceeds", None, None, self.n_max)
        return DegreeProfile("ok", 1, 0, self.n_max)


def presented_abelianization(family: PresentedGroupFamily,
                             n: int) -> FGAbelianGroup:
    """Abelianization of G_n from relator exponent sums."""
    g = family.gens(n)
    rows = []
    for word in family.relators(n):
        row = [0] * g
        for letter in word:
            row[abs(letter) - 1] += 1 if letter > 0 else -1
        rows.append(row)
    if not rows:
        return FGAbelianGroup(g, ())
    snf = smith_normal_form(rows)
    torsion = tuple(d for d in snf.factors if d > 1)
    return FGAbelianGroup(g - snf.rank, torsion)
