"""Integer Laurent polynomials in one variable and matrices over them.

Polynomials are sparse dicts {exponent: coefficient} with no explicit
zeros.  Matrix support is deliberately structural: multiplication,
identity, equality, and Gaussian elimination restricted to unit pivots
(+-t^k), with row transforms tracked.  That is enough to decide kernels
and cokernels of split structural maps; there is no Laurent SNF.
"""

from __future__ import annotations


def lp(*terms) -> dict:
    """Laurent polynomial from (exp, coeff) pairs."""
    out = {}
    for e, c in terms:
        v = out.get(e, 0) + c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


L_ZERO: dict = {}
L_ONE = lp((0, 1))
L_T = lp((1, 1))


def l_add(a, b):
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def l_neg(a):
    return {e: -c for e, c in a.items()}

def l_sub(a, b):
    return l_add(a, l_neg(b))


def l_mul(a, b):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            v = out.get(e, 0) + c1 * c2
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def l_eq(a, b):
    return a == b


def l_is_zero(a):
    return not a


def l_unit_inverse(a):
    """Inverse of a unit +-t^k; None when a is not a unit."""
    if len(a) != 1:
        return None
    (e, c), = a.items()
    if c not in (1, -1):
        return None
    return {-e: c}


# ----------------------------------------------------------------------
# matrices: list of rows, entries Laurent dicts


def lm_zero(rows, cols):
    return [[{} for _ in range(cols)] for _ in range(rows)]


def lm_identity(n):
    return [[dict(L_ONE) if i == j else {} for j in range(n)]
            for i in range(n)]


def lm_mul(A, B):
    rows = len(A)
    inner = len(B)
    cols = len(B[0]) if inner else 0
    out = lm_zero(rows, cols)
    for i in range(rows):
        Ai = A[i]
        for k in range(inner):
            a = Ai[k]
            if not a:
                continue
            Bk = B[k]
            for j in range(cols):
                if Bk[j]:
                    out[i][j] = l_add(out[i][j], l_mul(a, Bk[j]))
    return out


def lm_eq(A, B):
    if len(A) != len(B):
        return False
    for ra, rb in zip(A, B):
        if len(ra) != len(rb) or any(x != y for x, y in zip(ra, rb)):
            return False
    return True


def lm_word(images, word):
    """Product of generator images over a signed 1-based word; images is
    {i: matrix} and {-i: matrix} must both be present as needed."""
    out = None
    for letter in word:
        m = images[letter]
        out = m if out is None else lm_mul(out, m)
    if out is None:
        raise ValueError("empty word needs an explicit identity")
    return out


class UnitElimination:
    """Row reduction of a Laurent matrix using unit pivots only.

    Tracks the row transform U and its inverse so that U @ M has an
    identity block in the pivot rows/columns.  Raises ValueError when no
    unit pivot is available but nonzero entries remain: such matrices
    are outside the structural fragment this module supports.
    """

    def __init__(self, M):
        self.nrows = len(M)
        self.ncols = len(M[0]) if M else 0
        self.R = [row[:] for row in M]
        self.U = lm_identity(self.nrows)
        self.Uinv = lm_identity(self.nrows)
        self.pivots: list[tuple[int, int]] = []   # (row, col)
        self._run()

    def _row_op(self, i, j, q):
        """row_i -= q * row_j, mirrored in U; inverse op on Uinv cols."""
        for k in range(self.ncols):
            if self.R[j][k]:
                self.R[i][k] = l_sub(self.R[i][k], l_mul(q, self.R[j][k]))
        for k in range(self.nrows):
            if self.U[j][k]:
                self.U[i][k] = l_sub(self.U[i][k], l_mul(q, self.U[j][k]))
            if self.Uinv[k][i]:
                self.Uinv[k][j] = l_add(self.Uinv[k][j],
                                        l_mul(q, self.Uinv[k][i]))

    def _scale_row(self, i, u, uinv):
        for k in range(self.ncols):
            if self.R[i][k]:
                self.R[i][k] = l_mul(u, self.R[i][k])
        for k in range(self.nrows):
            if self.U[i][k]:
                self.U[i][k] = l_mul(u, self.U[i][k])
            if self.Uinv[k][i]:
                self.Uinv[k][i] = l_mul(uinv, self.Uinv[k][i])

    def _swap_rows(self, i, j):
        self.R[i], self.R[j] = self.R[j], self.R[i]
        self.U[i], self.U[j] = self.U[j], self.U[i]
        for k in range(self.nrows):
            self.Uinv[k][i], self.Uinv[k][j] = \
                self.Uinv[k][j], self.Uinv[k][i]

    def _run(self):
        used_rows: set[int] = set()
        for col in range(self.ncols):
            # find a unit entry in an unused row
            hit = None
            for r in range(self.nrows):
                if r in used_rows or not self.R[r][col]:
                    continue
                inv = l_unit_inverse(self.R[r][col])
                if inv is not None:
                    hit = (r, inv)
                    break
            if hit is None:
                if any(r not in used_rows and self.R[r][col]
                       for r in range(self.nrows)):
                    raise ValueError(
                        "no unit pivot available; matrix outside the "
                        "structural fragment")
                continue
            r, inv = hit
            self._scale_row(r, inv, self.R[r][col])
            # now pivot entry is exactly 1... recompute inverse scale
            for other in range(self.nrows):
                if other != r and self.R[other][col]:
                    self._row_op(other, r, self.R[other][col])
            used_rows.add(r)
            self.pivots.append((r, col))
        # move pivot rows to the top, in column order
        for t, (r, _c) in enumerate(sorted(self.pivots,
                                           key=lambda rc: rc[1])):
            if r != t:
                self._swap_rows(r, t)
                self.pivots = [(t if rr == r else (r if rr == t else rr), cc)
                               for rr, cc in self.pivots]
        self.pivots.sort(key=lambda rc: rc[1])

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def kernel_trivial(self) -> bool:
        """True iff the column map has zero kernel (full column rank)."""
        return self.rank == self.ncols

    def cokernel_rank(self) -> int:
        """Rank of the (free) cokernel; valid because elimination
        succeeded with unit pivots only."""
        return self.nrows - self.rank
