"""Quillen's bracket construction over a skeletal braided groupoid.

A morphism m -> n is an equivalence class [X^c, f] with f in Aut(n) and
c = n - m the complement, placed on the LEFT block; f ~ f(g + id_m) for
g in Aut(c).  The canonical representative is the minimum of that coset
under the group's total element order, making equality and hashing of
morphisms trivial.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .groupoids import BraidedGroupoidInstance


@dataclass(frozen=True)
class UMorphism:
    source: int
    target: int
    rep: object          # canonical element of Aut(target)

    @property
    def complement(self) -> int:
        return self.target - self.source

    def __repr__(self):
        return f"U({self.source}->{self.target}; {self.rep})"


class BracketCategory:
    """Hom sets, composition and monoidal structure of U(groupoid)."""

    def __init__(self, instance: BraidedGroupoidInstance):
        self.G = instance
        self._hom_cache: dict[tuple[int, int], tuple[UMorphism, ...]] = {}
        self._block_cache: dict[tuple[int, int], dict] = {}

    # -- canonical representatives ---------------------------------

    def _left_block(self, c: int, m: int):
        """The subgroup Aut(c) + id_m inside Aut(c+m), as a list of
        elements paired with their Aut(c) preimages."""
        key = (c, m)
        if key not in self._block_cache:
            G = self.G
            idm = G.identity(m)
            self._block_cache[key] = {
                G.block_sum(g, idm, c, m): g for g in G.aut(c)}
        return self._block_cache[key]

    def canonicalize(self, m: int, n: int, f) -> UMorphism:
        if m > n:
            raise ValueError("no morphisms m -> n with m > n")
        c = n - m
        if c == 0:
            return UMorphism(m, n, f)
        best = min(self.G.mul(f, b) for b in self._left_block(c, m))
        return UMorphism(m, n, best)

    def identity_mor(self, n: int) -> UMorphism:
        return UMorphism(n, n, self.G.identity(n))

    def iota(self, n: int) -> UMorphism:
        """The unique morphism 0 -> n."""
        return self.canonicalize(0, n, self.G.identity(n))

    def hom_set(self, m: int, n: int) -> tuple[UMorphism, ...]:
        """All morphisms m -> n, duplicate-free, sorted by rep."""
        if m > n:
            return ()
        key = (m, n)
        if key not in self._hom_cache:
            seen = {}
            for f in self.G.aut(n):
                u = self.canonicalize(m, n, f)
                seen[u.rep] = u
            out = tuple(seen[r] for r in sorted(seen))
            expected, rem = divmod(self.G.aut(n).order,
                                   self.G.aut(n - m).order)
            assert rem == 0 and len(out) == expected, \
                "hom set count must be |Aut(n)| / |Aut(n-m)|"
            self._hom_cache[key] = out
        return self._hom_cache[key]

    # -- categorical structure --------------------------------------

    def compose(self, g: UMorphism, f: UMorphism) -> UMorphism:
        """g after f:  [Y,g][X,f] = [Y+X, g(id_Y + f)]."""
        if f.target != g.source:
            raise ValueError("object mismatch in composition")
        G = self.G
        c2 = g.complement
        raw = G.mul(g.rep, G.block_sum(G.identity(c2), f.rep, c2, f.target))
        return self.canonicalize(f.source, g.target, raw)

    def post_compose(self, phi, f: UMorphism) -> UMorphism:
        """Automorphism phi in Aut(f.target) acting on f."""
        return self.canonicalize(f.source, f.target,
                                 self.G.mul(phi, f.rep))

    def monoidal_sum(self, f: UMorphism, g: UMorphism) -> UMorphism:
        """[X,f] + [Y,g] = [X+Y, (f+g)(id_X + b_{A,Y}^{-1} + id_C)]
        for f: A -> B, g: C -> D."""
        G = self.G
        A, B = f.source, f.target
        C, D = g.source, g.target
        X, Y = f.complement, g.complement
        fg = G.block_sum(f.rep, g.rep, B, D)
        shuffle = G.block_sum(
            G.identity(X),
            G.block_sum(G.braiding_inv(A, Y), G.identity(C), A + Y, C),
            X, A + Y + C)
        return self.canonicalize(A + C, B + D, G.mul(fg, shuffle))

    def braiding_mor(self, a: int, b: int) -> UMorphism:
        return UMorphism(a + b, a + b, self.G.braiding(a, b))

    # -- suspensions -------------------------------------------------

    def upper_suspension(self, a: int, x: int) -> UMorphism:
        """sigma^X = id_a + iota_x : a -> a + x."""
        return self.monoidal_sum(self.identity_mor(a), self.iota(x))

    def lower_suspension(self, A: int, x: int, n: int) -> UMorphism:
        """sigma_X = (b_{X,A} + id_{X^n}) (iota_X + id_{A + nx}) from
        object A + n x to A + (n+1) x."""
        G = self.G
        obj = A + n * x
        t = G.block_sum(G.braiding(x, A), G.identity(n * x), x + A, n * x)
        inc = self.monoidal_sum(self.iota(x), self.identity_mor(obj))
        return self.post_compose(t, inc)

    def sigma_upper_on_group(self, g, a: int, x: int):
        """Sigma^X(g) = g + id_x in Aut(a + x)."""
        return self.G.block_sum(g, self.G.identity(x), a, x)

    def sigma_lower_on_group(self, g, A: int, x: int, n: int):
        """Sigma_X(g) for g in Aut(A + n x): conjugate of g + id_x by
        (b_{X,A} + id_{X^n}) b_{A + nx, X}."""
        G = self.G
        obj = A + n * x
        t = G.block_sum(G.braiding(x, A), G.identity(n * x), x + A, n * x)
        u = G.braiding(obj, x)
        conj = G.mul(t, u)
        return G.mul(G.mul(conj, self.sigma_upper_on_group(g, obj, x)),
                     G.inv(conj))

    def lower_suspension_of_mor(self, f: UMorphism, A: int, x: int) -> UMorphism:
        """Sigma_X(f) for f: A+mx -> A+nx, via the conjugating isos
        lambda_n = b_{X,A} + id_{X^n}."""
        G = self.G
        m = (f.source - A) // x if x else 0
        n = (f.target - A) // x if x else 0
        assert A + m * x == f.source and A + n * x == f.target
        lam_n = G.block_sum(G.braiding(x, A), G.identity(n * x), x + A, n * x)
        lam_m_inv = G.inv(
            G.block_sum(G.braiding(x, A), G.identity(m * x), x + A, m * x))
        mid = self.monoidal_sum(self.identity_mor(x), f)
        out = self.post_compose(lam_n, mid)
        # precompose with lam_m_inv: an automorphism of the source
        return self.canonicalize(
            out.source, out.target,
            G.mul(out.rep, G.block_sum(G.identity(out.complement),
                                       lam_m_inv, out.complement,
                                       out.source)))

    # -- executable certificates --------------------------------------

    def verify_homogeneity(self, m: int, n: int) -> dict:
        """H1: Aut(n) acts transitively on Hom(m, n) by postcomposition.
        H2: the stabilizer of the canonical morphism [X^c, id] equals the
        left block Aut(c) + id_m, with injectivity of the embedding."""
        G = self.G
        hom = self.hom_set(m, n)
        base = self.canonicalize(m, n, G.identity(n))
        orbit = {self.post_compose(phi, base) for phi in G.aut(n)}
        h1 = orbit == set(hom)
        stab = {phi for phi in G.aut(n)
                if self.post_compose(phi, base) == base}
        block = self._left_block(n - m, m)
        h2_image = stab == set(block)
        h2_injective = len(block) == G.aut(n - m).order
        return {
            "m": m, "n": n,
            "H1_transitive": h1,
            "H2_stabilizer_is_block": h2_image,
            "H2_injective": h2_injective,
            "hom_size": len(hom),
            "stabilizer_size": len(stab),
            "passed": h1 and h2_image and h2_injective,
        }

    def verify_prebraid(self, n_max: int) -> dict:
        """b_{A,B} (id_A + iota_B) = iota_B + id_A as morphisms A -> B+A,
        for all A + B <= n_max; plus the coset identity
        [B, b b^{-1}] = [B, id]."""
        failures = []
        G = self.G
        for a in range(0, n_max + 1):
            for b in range(0, n_max + 1 - a):
                lhs = self.post_compose(
                    G.braiding(a, b),
                    self.monoidal_sum(self.identity_mor(a), self.iota(b)))
                rhs = self.monoidal_sum(self.iota(b), self.identity_mor(a))
                if lhs != rhs:
                    failures.append(("prebraid", a, b))
                bb = G.mul(G.braiding(a, b), G.braiding_inv(a, b))
                if self.canonicalize(a, a + b, bb) != \
                        self.canonicalize(a, a + b, G.identity(a + b)):
                    failures.append(("coset identity", a, b))
        return {"passed": not failures, "failures": failures,
                "n_max": n_max}

    def verify_local_standardness(self, A: int, x: int, n_max: int) -> dict:
        """LS1: iota_A + id_X + iota_X differs from iota_{A+X} + id_X.
        LS2: f -> f + iota_X is injective on Hom(X, A + (n-1)X) for
        n <= n_max.  Also the stabilizer condition on W-edges:
        Stab(f) = Stab(d_0 f) cap Stab(d_1 f)."""
        out = {"A": A, "X": x, "n_max": n_max}
        left = self.monoidal_sum(
            self.monoidal_sum(self.iota(A), self.identity_mor(x)),
            self.iota(x))
        right = self.monoidal_sum(self.iota(A + x), self.identity_mor(x))
        out["LS1"] = left != right
        ls2_fail = []
        for n in range(1, n_max + 1):
            src = self.hom_set(x, A + (n - 1) * x)
            images = {}
            for f in src:
                img = self.monoidal_sum(f, self.iota(x))
                if img in images:
                    ls2_fail.append((n, images[img], f))
                images[img] = f
        out["LS2"] = not ls2_fail
        out["LS2_failures"] = ls2_fail
        # edge stabilizer condition on W_n for the largest n in range
        stab_fail = []
        for n in range(2, n_max + 1):
            obj = A + n * x
            G_n = self.G.aut(obj)
            edges = self.hom_set(2 * x, obj)
            for f in edges:
                d0 = self.compose(f, self.face_inclusion(1, 0, x))
                d1 = self.compose(f, self.face_inclusion(1, 1, x))
                stab_f = {p for p in G_n if self.post_compose(p, f) == f}
                stab_faces = {
                    p for p in G_n
                    if self.post_compose(p, d0) == d0
                    and self.post_compose(p, d1) == d1}
                if stab_f != stab_faces:
                    stab_fail.append((n, f))
        out["edge_stabilizers"] = not stab_fail
        out["edge_stabilizer_failures"] = stab_fail
        out["passed"] = out["LS1"] and out["LS2"] and out["edge_stabilizers"]
        return out

    def face_inclusion(self, p: int, i: int, x: int) -> UMorphism:
        """X^p -> X^{p+1} inserting iota_X in slot i (0 <= i <= p)."""
        if not 0 <= i <= p:
            raise ValueError("face index out of range")
        left = self.identity_mor(i * x)
        mid = self.monoidal_sum(left, self.iota(x))
        return self.monoidal_sum(mid, self.identity_mor((p - i) * x))
