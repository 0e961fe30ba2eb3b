"""Semi-simplicial sets W_n(A,X), simplicial complexes S_n(A,X), chain
complexes, links, weak Cohen-Macaulay reports and connectivity
certificates."""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field

from .bracket import BracketCategory, UMorphism
from .exact_linalg import SparseCols, homology_of_pair, FGAbelianGroup


class SemiSimplicialSet:
    """Levels of p-simplices with face index arrays.

    levels[p] is a duplicate-free list; faces[p][i][s] is the index in
    levels[p-1] of d_i applied to simplex s of level p.  The identities
    d_i d_j = d_{j-1} d_i (i < j) are asserted at construction.
    """

    def __init__(self, levels, faces):
        self.levels = levels
        self.faces = faces
        self._check_identities()

    def _check_identities(self):
        for p in range(2, len(self.levels)):
            for s in range(len(self.levels[p])):
                for j in range(1, p + 1):
                    for i in range(j):
                        a = self.faces[p - 1][i][self.faces[p][j][s]]
                        b = self.faces[p - 1][j - 1][self.faces[p][i][s]]
                        assert a == b, "semi-simplicial identity violated"

    @property
    def dimension(self):
        return len(self.levels) - 1

    def level_sizes(self):
        return [len(l) for l in self.levels]

    def vertex_tuple(self, p, s):
        """Ordered vertex indices of simplex s in level p: entry i is the
        vertex obtained by dropping all slots except i."""
        out = []
        for i in range(p + 1):
            idx = s
            # repeatedly remove the last slot, then the front ones, so
            # that slot i survives: apply d_j for j != i from the top
            q = p
            pos = i
            while q > 0:
                if pos < q:
                    idx = self.faces[q][q][idx]
                else:
                    idx = self.faces[q][0][idx]
                    pos -= 1
                q -= 1
            out.append(idx)
        return tuple(out)

    def chain_complex(self) -> "ChainComplex":
        sizes = self.level_sizes()
        boundaries = [SparseCols(1, [{0: 1} for _ in range(sizes[0])])
                      if sizes else SparseCols.zero(1, 0)]
        for p in range(1, len(sizes)):
            cols = []
            for s in range(sizes[p]):
                col = {}
                for i in range(p + 1):
                    t = self.faces[p][i][s]
                    col[t] = col.get(t, 0) + (-1) ** i
                cols.append({k: v for k, v in col.items() if v})
            boundaries.append(SparseCols(sizes[p - 1], cols))
        return ChainComplex(boundaries)

    def to_json_dict(self):
        return {
            "levels": [[repr(x) for x in lv] for lv in self.levels],
            "faces": self.faces,
        }


class SimplicialComplex:
    """Vertices 0..nv-1 and a downward-closed set of sorted tuples."""

    def __init__(self, n_vertices, maximal_or_all, vertex_labels=None):
        self.n_vertices = n_vertices
        simplices = set()
        for s in maximal_or_all:
            t = tuple(sorted(set(s)))
            assert len(t) == len(s), f"degenerate simplex {s}"
            for r in range(1, len(t) + 1):
                simplices.update(itertools.combinations(t, r))
        simplices.update((v,) for v in range(n_vertices))
        self.simplices = simplices
        self.vertex_labels = vertex_labels

    def by_dimension(self, p):
        return sorted(s for s in self.simplices if len(s) == p + 1)

    @property
    def dimension(self):
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def f_vector(self):
        return [len(self.by_dimension(p)) for p in range(self.dimension + 1)]

    def has(self, s):
        return tuple(sorted(s)) in self.simplices

    def chain_complex(self) -> "ChainComplex":
        levels = [self.by_dimension(p) for p in range(self.dimension + 1)]
        if not levels:
            return ChainComplex([SparseCols.zero(1, 0)])
        index = [{s: i for i, s in enumerate(lv)} for lv in levels]
        boundaries = [SparseCols(1, [{0: 1} for _ in levels[0]])]
        for p in range(1, len(levels)):
            cols = []
            for s in levels[p]:
                col = {}
                for i in range(len(s)):
                    face = s[:i] + s[i + 1:]
                    col[index[p - 1][face]] = (-1) ** i
                cols.append(col)
            boundaries.append(SparseCols(len(levels[p - 1]), cols))
        return ChainComplex(boundaries)

    def to_json_dict(self):
        return {
            "n_vertices": self.n_vertices,
            "simplices": sorted(map(list, self.simplices)),
        }

    def is_empty(self):
        return self.n_vertices == 0


class ChainComplex:
    """Augmented integer chain complex; boundaries[0] is the augmentation
    C_0 -> Z and boundaries[p]: C_p -> C_{p-1}.  d d = 0 is asserted."""

    def __init__(self, boundaries):
        self.boundaries = boundaries
        for p in range(1, len(boundaries)):
            assert boundaries[p - 1].compose(boundaries[p]).is_zero(), \
                "boundary squared is nonzero"

    def level_dim(self, p):
        if p < 0 or p >= len(self.boundaries):
            return 0
        return self.boundaries[p].ncols

    def boundary(self, p) -> SparseCols:
        if 0 <= p < len(self.boundaries):
            return self.boundaries[p]
        return SparseCols.zero(self.level_dim(p - 1), 0)

    def reduced_homology(self, up_to):
        """H-tilde_i for 0 <= i <= up_to (augmented complex)."""
        out = []
        for i in range(up_to + 1):
            if self.level_dim(i) == 0:
                out.append(FGAbelianGroup(0))
                continue
            sq = homology_of_pair(self.boundary(i), self.boundary(i + 1),
                                  check_composition=False)
            out.append(sq.group)
        return out


# ------------------------------------------------------------------
# W and S construction


def build_W(U: BracketCategory, A: int, x: int, n: int,
            p_max: int | None = None) -> SemiSimplicialSet:
    """W_n(A,X): p-simplices are Hom(X^{p+1}, A + nX); face i forgets
    slot i."""
    if p_max is None:
        p_max = n - 1
    obj = A + n * x
    levels = []
    for p in range(p_max + 1):
        hom = U.hom_set((p + 1) * x, obj)
        levels.append(list(hom))
    # drop trailing empty levels so dimension reflects content
    while levels and not levels[-1]:
        levels.pop()
    faces = [None]
    for p in range(1, len(levels)):
        idx = {f: i for i, f in enumerate(levels[p - 1])}
        per_i = []
        for i in range(p + 1):
            inc = U.face_inclusion(p, i, x)
            per_i.append([idx[U.compose(f, inc)] for f in levels[p]])
        faces.append(per_i)
    return SemiSimplicialSet(levels, faces)


def build_S(W: SemiSimplicialSet) -> SimplicialComplex:
    """Vertices = W level 0; a vertex set spans iff some W-simplex has
    exactly that vertex set."""
    nv = len(W.levels[0]) if W.levels else 0
    spanning = []
    for p in range(len(W.levels)):
        for s in range(len(W.levels[p])):
            vs = set(W.vertex_tuple(p, s))
            if len(vs) == p + 1:
                spanning.append(tuple(sorted(vs)))
    return SimplicialComplex(nv, spanning,
                             vertex_labels=list(W.levels[0]) if W.levels else [])


@dataclass
class LiftProfile:
    counts: dict          # S-simplex tuple -> number of W-lifts
    condition: str        # "A" | "B" | "neither"
    detail: dict = field(default_factory=dict)


def lift_profile(W: SemiSimplicialSet, S: SimplicialComplex) -> LiftProfile:
    """For every S-simplex, |pi_p^{-1}(sigma)|; condition (A) requires
    every ordering of the vertex set to occur exactly once ((p+1)! lifts),
    condition (B) a single lift."""
    counts = {s: 0 for s in S.simplices}
    orderings = {s: set() for s in S.simplices}
    for p in range(len(W.levels)):
        for i in range(len(W.levels[p])):
            vt = W.vertex_tuple(p, i)
            key = tuple(sorted(set(vt)))
            if len(set(vt)) == p + 1 and key in counts:
                counts[key] += 1
                orderings[key].add(vt)
    cond_a = all(
        counts[s] == math.factorial(len(s))
        and len(orderings[s]) == counts[s]
        for s in counts)
    cond_b = all(c == 1 for c in counts.values())
    condition = "A" if cond_a else ("B" if cond_b else "neither")
    return LiftProfile(counts, condition,
                       detail={"max_count": max(counts.values(), default=0)})


def link(S: SimplicialComplex, sigma) -> SimplicialComplex:
    """Faces disjoint from sigma whose union with sigma is in S."""
    sigma = tuple(sorted(sigma))
    if not S.has(sigma):
        raise ValueError("sigma is not a simplex of S")
    sset = set(sigma)
    members = [s for s in S.simplices
               if not sset & set(s)
               and S.has(tuple(sorted(set(s) | sset)))]
    verts = sorted({v for s in members for v in s})
    relab = {v: i for i, v in enumerate(verts)}
    return SimplicialComplex(
        len(verts), [tuple(relab[v] for v in s) for s in members],
        vertex_labels=verts)


def complexes_isomorphic(S1: SimplicialComplex, S2: SimplicialComplex):
    """Backtracking isomorphism search; returns a vertex bijection or
    None.  Fine at desk scale (tens of vertices)."""
    if S1.n_vertices != S2.n_vertices or S1.f_vector() != S2.f_vector():
        return None

    def profile(S, v):
        return tuple(sorted(
            len(s) for s in S.simplices if v in s))

    p1 = {v: profile(S1, v) for v in range(S1.n_vertices)}
    p2 = {v: profile(S2, v) for v in range(S2.n_vertices)}
    cands = {v: [w for w in range(S2.n_vertices) if p2[w] == p1[v]]
             for v in range(S1.n_vertices)}
    order = sorted(range(S1.n_vertices), key=lambda v: len(cands[v]))
    max_dim = S1.dimension
    s1_by_v = {v: [s for s in S1.simplices if v in s]
               for v in range(S1.n_vertices)}

    mapping = {}
    used = set()

    def consistent(v, w):
        for s in s1_by_v[v]:
            if all(u in mapping or u == v for u in s):
                img = tuple(sorted(mapping.get(u, w) for u in s))
                if not S2.has(img):
                    return False
        return True

    def rec(i):
        if i == len(order):
            return True
        v = order[i]
        for w in cands[v]:
            if w in used and mapping.get(v) != w:
                continue
            if w in used:
                continue
            if consistent(v, w):
                mapping[v] = w
                used.add(w)
                if rec(i + 1):
                    return True
                del mapping[v]
                used.discard(w)
        return False

    if rec(0):
        # a bijection preserving all simplices both ways (counts equal)
        return dict(mapping)
    return None


def ord_of_complex(S: SimplicialComplex) -> SemiSimplicialSet:
    """Y^ord: one p-simplex per (p-simplex, vertex ordering)."""
    levels = []
    for p in range(S.dimension + 1):
        lv = []
        for s in S.by_dimension(p):
            lv.extend(itertools.permutations(s))
        levels.append(sorted(lv))
    faces = [None]
    for p in range(1, len(levels)):
        idx = {t: i for i, t in enumerate(levels[p - 1])}
        per_i = []
        for i in range(p + 1):
            per_i.append([idx[t[:i] + t[i + 1:]] for t in levels[p]])
        faces.append(per_i)
    return SemiSimplicialSet(levels, faces)


def w_isomorphic_to_ord(W: SemiSimplicialSet, ordW: SemiSimplicialSet) -> bool:
    """The natural map sending a W-simplex to its ordered vertex tuple is
    an isomorphism iff it is injective levelwise with equal counts (it
    commutes with faces by construction); checked directly."""
    if W.level_sizes() != ordW.level_sizes():
        return False
    for p in range(len(W.levels)):
        tuples = [W.vertex_tuple(p, s) for s in range(len(W.levels[p]))]
        if len(set(tuples)) != len(tuples):
            return False
        if any(len(set(t)) != p + 1 for t in tuples):
            return False
        # face compatibility: d_i of the tuple = tuple of d_i
        if p:
            for s, t in enumerate(tuples):
                for i in range(p + 1):
                    ft = W.vertex_tuple(p - 1, W.faces[p][i][s])
                    if ft != t[:i] + t[i + 1:]:
                        return False
    return True


# ------------------------------------------------------------------
# connectivity


@dataclass
class ConnectivityCertificate:
    components: int
    homology_vanishing_up_to: int     # largest i with H-tilde_j = 0, j <= i
    pi1_status: str                   # trivial | unknown(budget) | nontrivial | not attempted
    certified_connectivity: int       # topological claim (Hurewicz-safe)
    mode: str                         # homological | topological
    target: int
    meets_target: bool                # topological claim reaches target
    meets_target_homological: bool    # homology vanishing reaches target
    detail: dict = field(default_factory=dict)


def connectivity_certificate(X, target: int,
                             pi1_budget: int = 10 ** 6) -> ConnectivityCertificate:
    """Certify that X is target-connected.

    `certified_connectivity` is the topological claim: it never exceeds 0
    without a completed pi1-triviality certificate (Hurewicz packaging).
    Homological vanishing is always reported alongside.  Empty complexes
    are (-2)-connected by convention.
    """
    from . import pi1 as pi1mod

    if isinstance(X, SemiSimplicialSet):
        empty = not X.levels or not X.levels[0]
    else:
        empty = X.is_empty()

    if empty:
        return ConnectivityCertificate(
            components=0, homology_vanishing_up_to=10 ** 9,
            pi1_status="trivial (empty)", certified_connectivity=-2,
            mode="topological", target=target,
            meets_target=target <= -2, meets_target_homological=target <= -2)

    cc = X.chain_complex()
    hom = cc.reduced_homology(max(target, 0))
    vanish = -1
    for i, h in enumerate(hom):
        if h.is_trivial():
            vanish = i
        else:
            break
    components = 1 if hom[0].is_trivial() else hom[0].free_rank + 1

    pi1_status = "not attempted"
    if vanish >= 1 and target >= 1:
        if isinstance(X, SemiSimplicialSet):
            skel = pi1mod.two_skeleton_from_semisimplicial(X)
        else:
            skel = pi1mod.two_skeleton_from_complex(X)
        pi1_status, _ = pi1mod.pi1_triviality(skel, pi1_budget)

    if pi1_status == "trivial":
        cert, mode = vanish, "topological"
    else:
        # without pi1, a topological claim is safe only up to 0-connected
        cert = min(vanish, 0)
        mode = "topological" if vanish <= 0 else "homological"
        if mode == "homological":
            cert = vanish  # labeled homological; not a topological claim
    topo_conn = vanish if pi1_status == "trivial" else min(vanish, 0)
    return ConnectivityCertificate(
        components=components,
        homology_vanishing_up_to=vanish,
        pi1_status=pi1_status,
        certified_connectivity=cert,
        mode=mode, target=target,
        meets_target=topo_conn >= target,
        meets_target_homological=vanish >= target,
        detail={"reduced_homology": [str(h) for h in hom]})


@dataclass
class WeaklyCMReport:
    dimension_target: int
    complex_connectivity: ConnectivityCertificate
    worst_link_by_p: dict
    passed: bool


def weakly_cm_report(S: SimplicialComplex, n_target: int,
                     pi1_budget: int = 10 ** 6) -> WeaklyCMReport:
    """Weakly Cohen-Macaulay of dimension n_target: S is
    (n_target - 1)-connected and every p-simplex link is
    (n_target - p - 2)-connected (links certified homologically, pi1
    attempted)."""
    top = connectivity_certificate(S, n_target - 1, pi1_budget)
    worst = {}
    ok = top.meets_target_homological
    for p in range(S.dimension + 1):
        need = n_target - p - 2
        for s in S.by_dimension(p):
            cert = connectivity_certificate(link(S, s), need, pi1_budget)
            cur = worst.get(p)
            conn = cert.homology_vanishing_up_to
            if cur is None or conn < cur[0]:
                worst[p] = (conn, s, cert.meets_target_homological)
            if not cert.meets_target_homological:
                ok = False
    return WeaklyCMReport(n_target, top, worst, ok)


def export_json(obj, path):
    with open(path, "w") as fh:
        json.dump(obj.to_json_dict(), fh, sort_keys=True, indent=1)
