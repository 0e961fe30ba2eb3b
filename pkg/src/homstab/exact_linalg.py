"""Exact integer linear algebra over Z.

Everything here is exact: Smith normal form with transform tracking,
incremental column-span lattice bases in row Hermite form, kernels with
expression tracking, and subquotient presentations used for homology.
Large span computations go through the int64 fast path in
:mod:`homstab.kernels` and fall back to arbitrary precision on overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels


def xgcd(a: int, b: int):
    """Return (g, x, y) with g = gcd(a, b) = a*x + b*y, g >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


# ------------------------------------------------------------------
# sparse column matrices


class SparseCols:
    """Integer matrix stored as a list of sparse columns (dict row -> value)."""

    __slots__ = ("nrows", "cols")

    def __init__(self, nrows: int, cols: list[dict[int, int]]):
        self.nrows = nrows
        self.cols = cols

    @property
    def ncols(self) -> int:
        return len(self.cols)

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    @classmethod
    def from_dense(cls, rows: list[list[int]]) -> "SparseCols":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        cols = [{} for _ in range(ncols)]
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                if v:
                    cols[j][i] = int(v)
        return cls(nrows, cols)

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "SparseCols":
        return cls(nrows, [{} for _ in range(ncols)])

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                out[i][j] = v
        return out

    def apply(self, vec: dict[int, int]) -> dict[int, int]:
        """Matrix-vector product on a sparse vector (vec indexes columns)."""
        out: dict[int, int] = {}
        for j, c in vec.items():
            if not c:
                continue
            for i, v in self.cols[j].items():
                w = out.get(i, 0) + c * v
                if w:
                    out[i] = w
                else:
                    out.pop(i, None)
        return out

    def compose(self, other: "SparseCols") -> "SparseCols":
        """self @ other (apply other first)."""
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch in compose")
        return SparseCols(self.nrows, [self.apply(c) for c in other.cols])

    def is_zero(self) -> bool:
        return all(not c for c in self.cols)

    def __eq__(self, other) -> bool:
        return (isinstance(other, SparseCols) and self.nrows == other.nrows
                and self.cols == other.cols)

    def write_text(self, path) -> None:
        """Coordinate text format: header 'dim rows cols nnz', then one
        'row col value' line per nonzero, sorted by (row, col)."""
        entries = []
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                entries.append((i, j, v))
        entries.sort()
        with open(path, "w") as fh:
            fh.write(f"dim {self.nrows} {self.ncols} {len(entries)}\n")
            for i, j, v in entries:
                fh.write(f"{i} {j} {v}\n")

    @classmethod
    def read_text(cls, path) -> "SparseCols":
        with open(path) as fh:
            head = fh.readline().split()
            if len(head) != 4 or head[0] != "dim":
                raise ValueError("bad header, expected 'dim rows cols nnz'")
            nrows, ncols, nnz = int(head[1]), int(head[2]), int(head[3])
            mat = cls.zero(nrows, ncols)
            count = 0
            for line in fh:
                if not line.strip():
                    continue
                i, j, v = line.split()
                i, j, v = int(i), int(j), int(v)
                if not (0 <= i < nrows and 0 <= j < ncols):
                    raise ValueError(f"entry ({i},{j}) out of bounds")
                if v:
                    mat.cols[j][i] = v
                count += 1
            if count != nnz:
                raise ValueError(f"nnz mismatch: header {nnz}, found {count}")
        return mat


# ------------------------------------------------------------------
# Smith normal form (arbitrary precision, with transforms)


@dataclass
class SNFResult:
    factors: list[int]        # nonzero diagonal, d_1 | d_2 | ...
    rank: int
    nrows: int
    ncols: int
    U: list[list[int]] | None = None       # U @ M @ V = D
    V: list[list[int]] | None = None
    Uinv: list[list[int]] | None = None


def _mat_identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(mat, transforms: bool = False, verify: bool = False):
    """SNF of an integer matrix (dense list of rows or SparseCols).

    Pivot choice is the smallest nonzero magnitude with ties broken by
    (row, col), so the transforms are deterministic.
    """
    if isinstance(mat, SparseCols):
        dense = mat.to_dense()
    else:
        dense = [list(map(int, row)) for row in mat]
    m = len(dense)
    n = len(dense[0]) if m else 0
    A = [row[:] for row in dense]
    U = _mat_identity(m) if transforms else None
    Uinv = _mat_identity(m) if transforms else None
    V = _mat_identity(n) if transforms else None

    def row_op(i, j, q):
        # row_i -= q * row_j ; mirror on U, inverse op on Uinv columns
        Ai, Aj = A[i], A[j]
        for k in range(n):
            Ai[k] -= q * Aj[k]
        if transforms:
            Ui, Uj = U[i], U[j]
            for k in range(m):
                Ui[k] -= q * Uj[k]
            for r in range(m):
                Uinv[r][j] += q * Uinv[r][i]

    def col_op(j, i, q):
        # col_j -= q * col_i ; mirror on V
        for r in range(m):
            A[r][j] -= q * A[r][i]
        if transforms:
            for r in range(n):
                V[r][j] -= q * V[r][i]

    def swap_rows(i, j):
        if i == j:
            return
        A[i], A[j] = A[j], A[i]
        if transforms:
            U[i], U[j] = U[j], U[i]
            for r in range(m):
                Uinv[r][i], Uinv[r][j] = Uinv[r][j], Uinv[r][i]

    def swap_cols(i, j):
        if i == j:
            return
        for r in range(m):
            A[r][i], A[r][j] = A[r][j], A[r][i]
        if transforms:
            for r in range(n):
                V[r][i], V[r][j] = V[r][j], V[r][i]

    def negate_row(i):
        for k in range(n):
            A[i][k] = -A[i][k]
        if transforms:
            for k in range(m):
                U[i][k] = -U[i][k]
            for r in range(m):
                Uinv[r][i] = -Uinv[r][i]

    t = 0
    while True:
        # find pivot: smallest |value| among A[t:, t:], ties by (row, col)
        best = None
        for i in range(t, m):
            Ai = A[i]
            for j in range(t, n):
                v = Ai[j]
                if v:
                    a = abs(v)
                    if best is None or a < best[0]:
                        best = (a, i, j)
                        if a == 1:
                            break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, bi, bj = best
        swap_rows(t, bi)
        swap_cols(t, bj)
        # clear row and column t
        while True:
            progress = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    if q:
                        row_op(i, t, q)
                    if A[i][t]:
                        swap_rows(t, i)
                        progress = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    if q:
                        col_op(j, t, q)
                    if A[t][j]:
                        swap_cols(t, j)
                        progress = True
            if not progress:
                break
        if A[t][t] < 0:
            negate_row(t)
        t += 1
        if t >= m or t >= n:
            break

    # enforce divisibility chain d_i | d_{i+1}
    rank = t
    changed = True
    while changed:
        changed = False
        for i in range(rank - 1):
            a, b = A[i][i], A[i + 1][i + 1]
            if b % a:
                # standard 2x2 fix: gcd and lcm on the diagonal
                g, x, _ = xgcd(a, b)
                lcm = a // g * b
                if transforms:
                    # (i) col_i += col_{i+1}; (ii) clear via row/col ops
                    for r in range(m):
                        A[r][i] += A[r][i + 1]
                    for r in range(n):
                        V[r][i] += V[r][i + 1]
                    # now rows i, i+1 of the 2x2 block are (a, 0), (b, b)
                    while True:
                        p, q = A[i][i], A[i + 1][i]
                        if q == 0:
                            break
                        k = q // p
                        if k:
                            row_op(i + 1, i, k)
                        if A[i + 1][i]:
                            swap_rows(i, i + 1)
                    # clear fill in row i at column i+1
                    p = A[i][i]
                    q = A[i][i + 1]
                    if q % p == 0:
                        col_op(i + 1, i, q // p)
                    if A[i][i] < 0:
                        negate_row(i)
                    if A[i + 1][i + 1] < 0:
                        negate_row(i + 1)
                    assert abs(A[i][i]) == g and abs(A[i + 1][i + 1]) == lcm
                else:
                    A[i][i], A[i + 1][i + 1] = g, lcm
                changed = True

    factors = [A[i][i] for i in range(rank)]
    res = SNFResult(factors=factors, rank=rank, nrows=m, ncols=n,
                    U=U, V=V, Uinv=Uinv)
    if verify and transforms:
        D = _mat_mul(_mat_mul(U, dense), V)
        for i in range(m):
            for j in range(n):
                want = factors[i] if i == j and i < rank else 0
                assert D[i][j] == want, "U*M*V != D"
        assert _mat_mul(U, Uinv) == _mat_identity(m), "U*Uinv != I"
    return res


def _mat_mul(A, B):
    m, k = len(A), len(B)
    n = len(B[0]) if k else 0
    out = [[0] * n for _ in range(m)]
    for i in range(m):
        Ai = A[i]
        Oi = out[i]
        for t in range(k):
            a = Ai[t]
            if a:
                Bt = B[t]
                for j in range(n):
                    if Bt[j]:
                        Oi[j] += a * Bt[j]
    return out


# ------------------------------------------------------------------
# column-span lattice basis (row Hermite form), arbitrary precision


class LatticeSpan:
    """Row-HNF basis of a sublattice of Z^dim, built incrementally.

    Rows are keyed by their leading index; the basis is kept reduced
    against unit pivots so membership reduction of sparse vectors stays
    cheap.  This is the arbitrary-precision reference; large batches use
    the int64 fast path and fall back here on overflow.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: dict[int, list[int]] = {}

    def rank(self) -> int:
        return len(self.rows)

    def insert(self, vec) -> bool:
        """Add a vector to the lattice; returns True if the span grew
        or the basis changed."""
        v = self._to_dense(vec)
        changed = False
        i = 0
        dim = self.dim
        while i < dim:
            if v[i] == 0:
                i += 1
                continue
            row = self.rows.get(i)
            if row is None:
                if v[i] < 0:
                    v = [-x for x in v]
                self.rows[i] = v
                self._reduce_row_tail(i)
                self._clear_column(i)
                return True
            a = row[i]
            q = v[i] // a
            if q:
                for k in range(i, dim):
                    v[k] -= q * row[k]
            r = v[i]
            if r:
                g, x, y = xgcd(a, r)
                af, rf = a // g, r // g
                new_row = [x * row[k] + y * v[k] for k in range(dim)]
                v = [af * v[k] - rf * row[k] for k in range(dim)]
                self.rows[i] = new_row
                self._reduce_row_tail(i)
                self._clear_column(i)
                changed = True
            i += 1
        return changed

    def _to_dense(self, vec) -> list[int]:
        if isinstance(vec, dict):
            v = [0] * self.dim
            for i, x in vec.items():
                v[i] = int(x)
            return v
        v = [int(x) for x in vec]
        if len(v) != self.dim:
            raise ValueError("vector length mismatch")
        return v

    def _reduce_row_tail(self, i):
        row = self.rows[i]
        for j in range(i + 1, self.dim):
            c = row[j]
            if c:
                other = self.rows.get(j)
                if other is not None:
                    q = c // other[j]
                    if q:
                        for k in range(j, self.dim):
                            row[k] -= q * other[k]

    def _clear_column(self, i):
        row = self.rows[i]
        d = row[i]
        for p, other in self.rows.items():
            if p < i and other[i]:
                q = other[i] // d
                if q:
                    for k in range(i, self.dim):
                        other[k] -= q * row[k]

    def reduce(self, vec) -> list[int]:
        """Residue of vec modulo the lattice (HNF reduction)."""
        v = self._to_dense(vec)
        for i in range(self.dim):
            if v[i]:
                row = self.rows.get(i)
                if row is not None:
                    q = v[i] // row[i]
                    if q:
                        for k in range(i, self.dim):
                            v[k] -= q * row[k]
        return v

    def contains(self, vec) -> bool:
        return not any(self.reduce(vec))

    def basis(self) -> list[tuple[int, list[int]]]:
        return sorted((p, row[:]) for p, row in self.rows.items())

    def normalize(self) -> None:
        """Full HNF reduction: every off-pivot entry above a pivot is
        reduced into [0, d)."""
        for i in sorted(self.rows):
            self._reduce_row_tail(i)
        for i in sorted(self.rows, reverse=True):
            row = self.rows[i]
            d = row[i]
            for p, other in self.rows.items():
                if p < i:
                    q = other[i] // d
                    if q:
                        for k in range(i, self.dim):
                            other[k] -= q * row[k]


def span_columns(mat, dim: int | None = None, fast: bool = True) -> LatticeSpan:
    """Lattice spanned by the columns of mat (SparseCols or iterable of
    sparse dict columns).  Uses the int64 kernel when possible."""
    if isinstance(mat, SparseCols):
        cols, dim = mat.cols, mat.nrows
    else:
        cols = list(mat)
        if dim is None:
            raise ValueError("dim required for raw column lists")
    if fast and dim > 0 and cols:
        packed = _pack_columns(cols)
        if packed is not None:
            out = kernels.span_batch_int64(*packed, dim)
            if out is not None:
                H, present = out
                span = LatticeSpan(dim)
                for i in np.nonzero(present)[0]:
                    span.rows[int(i)] = [int(x) for x in H[i]]
                span.normalize()
                return span
    span = LatticeSpan(dim)
    for col in cols:
        span.insert(col)
    span.normalize()
    return span


def _pack_columns(cols):
    nnz = sum(len(c) for c in cols)
    rows = np.empty(nnz, dtype=np.int64)
    vals = np.empty(nnz, dtype=np.int64)
    colptr = np.empty(len(cols) + 1, dtype=np.int64)
    t = 0
    lim = 1 << 30
    for j, col in enumerate(cols):
        colptr[j] = t
        for i, v in col.items():
            if abs(v) >= lim:
                return None
            rows[t] = i
            vals[t] = v
            t += 1
    colptr[len(cols)] = t
    return rows, vals, colptr


# ------------------------------------------------------------------
# kernels with expression tracking


def kernel_columns(mat: SparseCols) -> tuple[list[dict[int, int]], list[int]]:
    """Kernel of the column map Z^ncols -> Z^nrows.

    Returns (basis, leads): a triangular HNF basis of the kernel lattice
    as sparse dicts over column indices, with basis[t][leads[t]] > 0 the
    leading entry.  Coordinates of any kernel vector in this basis come
    from forward substitution (see :func:`triangular_coords`).
    """
    # column reduction with expression tracking: pivots keyed by the lead
    # row of their reduced vector, each carrying (vector, expression over
    # original columns); pair replacements are unimodular so the zero
    # expressions form a genuine kernel basis
    pivots: dict[int, tuple[list[int], dict[int, int]]] = {}
    raw: list[dict[int, int]] = []
    nrows = mat.nrows
    for j, col in enumerate(mat.cols):
        v = [0] * nrows
        for i, x in col.items():
            v[i] = x
        expr = {j: 1}
        lead = 0
        while lead < nrows:
            if v[lead] == 0:
                lead += 1
                continue
            hit = pivots.get(lead)
            if hit is None:
                pivots[lead] = (v, expr)
                expr = None
                break
            pv, pexpr = hit
            a, b = pv[lead], v[lead]
            q = b // a
            if q:
                _vec_submul(v, pv, q)
                _expr_submul(expr, pexpr, q)
            r = v[lead]
            if r:
                g, x, y = xgcd(a, r)
                af, rf = a // g, r // g
                new_pv = [x * pv[k] + y * v[k] for k in range(nrows)]
                new_pexpr = _expr_comb(pexpr, x, expr, y)
                v = [af * v[k] - rf * pv[k] for k in range(nrows)]
                expr = _expr_comb(expr, af, pexpr, -rf)
                pivots[lead] = (new_pv, new_pexpr)
            lead += 1
        if expr is not None:
            raw.append(expr)
    # canonicalize: triangular reduced HNF basis of the kernel lattice
    ncols = mat.ncols
    if not raw:
        return [], []
    span = span_columns(raw, dim=ncols)
    basis, leads = [], []
    for lead, row in span.basis():
        leads.append(lead)
        basis.append({i: x for i, x in enumerate(row) if x})
    return basis, leads


def triangular_coords(vec: dict[int, int], basis, leads) -> list[int]:
    """Coordinates of vec in a triangular lattice basis; raises ValueError
    if vec is not in the lattice."""
    resid = {i: x for i, x in vec.items() if x}
    out = []
    for lead, bvec in zip(leads, basis):
        r = resid.get(lead, 0)
        d = bvec[lead]
        q, rem = divmod(r, d)
        if rem:
            raise ValueError("vector not in lattice (division failure)")
        out.append(q)
        if q:
            for i, x in bvec.items():
                w = resid.get(i, 0) - q * x
                if w:
                    resid[i] = w
                else:
                    resid.pop(i, None)
    if resid:
        raise ValueError("vector not in lattice (nonzero residue)")
    return out


def _vec_submul(v, w, q):
    for k in range(len(v)):
        if w[k]:
            v[k] -= q * w[k]


def _expr_submul(e, f, q):
    for k, x in f.items():
        w = e.get(k, 0) - q * x
        if w:
            e[k] = w
        else:
            e.pop(k, None)


def _expr_comb(e, a, f, b):
    out = {}
    for k, x in e.items():
        if x:
            out[k] = a * x
    for k, x in f.items():
        w = out.get(k, 0) + b * x
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


# ------------------------------------------------------------------
# finitely generated abelian groups and subquotients


@dataclass(frozen=True)
class FGAbelianGroup:
    """Invariant-factor form: Z^free_rank + sum Z/d_i with d_1 | d_2 | ..."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        for i, d in enumerate(self.torsion):
            assert d > 1, "torsion factors must exceed 1"
            if i:
                assert d % self.torsion[i - 1] == 0, "need d_i | d_{i+1}"

    def order(self):
        if self.free_rank:
            return None
        return math.prod(self.torsion) if self.torsion else 1

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"

    def label(self):
        return str(self)


def fgab_from_factors(diag, total_gens):
    """FGAbelianGroup for Z^total_gens modulo relations with SNF diagonal
    `diag` (nonzero invariant factors)."""
    torsion = tuple(d for d in diag if d > 1)
    free = total_gens - len(diag)
    return FGAbelianGroup(free, torsion)


@dataclass
class Subquotient:
    """Presentation of ker(out)/im(in) inside an ambient Z^ambient_dim.

    Canonical generators are listed torsion-first in divisibility order,
    then free generators.  `project` takes an ambient cycle to canonical
    coordinates; `lift` returns an ambient representative.
    """

    ambient_dim: int
    group: FGAbelianGroup
    # triangular HNF basis of the cycle lattice, with leading indices
    leads: list[int]
    kernel_basis: list[dict[int, int]]
    # row transforms: w = U @ y maps kernel coords to SNF coords
    U: list[list[int]]
    Uinv: list[list[int]]
    factors: list[int]            # full SNF diagonal of the image lattice
    torsion_pos: list[int] = field(default_factory=list)
    free_pos: list[int] = field(default_factory=list)

    def kernel_rank(self) -> int:
        return len(self.leads)

    def _kernel_coords(self, vec: dict[int, int]) -> list[int]:
        try:
            return triangular_coords(vec, self.kernel_basis, self.leads)
        except ValueError as exc:
            raise ValueError("vector is not a cycle for this subquotient") from exc

    def project(self, vec: dict[int, int]) -> tuple[int, ...]:
        y = self._kernel_coords(vec)
        k = self.kernel_rank()
        w = [sum(self.U[r][c] * y[c] for c in range(k)) for r in range(k)]
        out = []
        for p in self.torsion_pos:
            out.append(w[p] % self.factors[p])
        for p in self.free_pos:
            out.append(w[p])
        return tuple(out)

    def lift(self, gen_index: int) -> dict[int, int]:
        """Ambient representative of the gen_index-th canonical generator."""
        pos = (self.torsion_pos + self.free_pos)[gen_index]
        k = self.kernel_rank()
        out: dict[int, int] = {}
        for c in range(k):
            coeff = self.Uinv[c][pos]
            if coeff:
                for i, x in self.kernel_basis[c].items():
                    w = out.get(i, 0) + coeff * x
                    if w:
                        out[i] = w
                    else:
                        out.pop(i, None)
        return out

    def gen_orders(self) -> list[int]:
        """Order of each canonical generator (0 for infinite)."""
        return ([self.factors[p] for p in self.torsion_pos]
                + [0] * len(self.free_pos))


def homology_of_pair(d_out: SparseCols, d_in: SparseCols,
                     check_composition: bool = True) -> Subquotient:
    """ker(d_out) / im(d_in) where d_out: Z^n -> Z^m, d_in: Z^p -> Z^n.

    Asserts d_out @ d_in == 0 when check_composition is set.
    """
    n = d_out.ncols
    if d_in.nrows != n:
        raise ValueError("chain level dimension mismatch")
    if check_composition and not d_out.compose(d_in).is_zero():
        raise ValueError("boundary of boundary is nonzero")
    kbasis, leads = kernel_columns(d_out)
    k = len(kbasis)
    # image lattice, then its matrix in kernel coordinates; boundaries are
    # cycles so the coordinate extraction doubles as a containment check
    span = span_columns(d_in)
    basis_rows = span.basis()
    nb = len(basis_rows)
    X_cols = []
    for _, bvec in basis_rows:
        bd = {i: x for i, x in enumerate(bvec) if x}
        X_cols.append(triangular_coords(bd, kbasis, leads))
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


# ------------------------------------------------------------------
# induced maps between subquotients


def induced_matrix(f: SparseCols, src: Subquotient, dst: Subquotient):
    """Matrix of the induced map on canonical generators.

    f is an ambient map Z^src.ambient_dim -> Z^dst.ambient_dim carrying
    cycles to cycles (up to boundaries this is checked by project).
    """
    if f.ncols != src.ambient_dim or f.nrows != dst.ambient_dim:
        raise ValueError("ambient dimension mismatch for induced map")
    ngen_src = len(src.torsion_pos) + len(src.free_pos)
    cols = []
    for g in range(ngen_src):
        z = src.lift(g)
        fz = f.apply(z)
        cols.append(dst.project(fz))
    ngen_dst = len(dst.torsion_pos) + len(dst.free_pos)
    # rows = dst generators, cols = src generators
    return [[cols[j][i] for j in range(ngen_src)] for i in range(ngen_dst)]


def classify_induced(M, src_orders, dst_orders) -> dict:
    """Classify an induced map between f.g. abelian groups in canonical
    form.  M maps sum Z/src_orders -> sum Z/dst_orders (order 0 = Z).

    Returns {'matrix', 'is_epi', 'is_iso'}; exact, no heuristics.
    """
    nd = len(dst_orders)
    ns = len(src_orders)
    # relation columns of the codomain
    rel_dst = []
    for i, d in enumerate(dst_orders):
        if d:
            col = [0] * nd
            col[i] = d
            rel_dst.append(col)
    # epi: [M | R_dst] must span Z^nd
    aug = [[M[i][j] for j in range(ns)] + [rc[i] for rc in rel_dst]
           for i in range(nd)]
    snf = smith_normal_form(aug) if nd else SNFResult([], 0, 0, 0)
    is_epi = (snf.rank == nd) and all(d == 1 for d in snf.factors)
    # kernel: preimage of the codomain relation lattice must land in the
    # domain relation lattice
    is_iso = is_epi
    if is_epi:
        wide = SparseCols.from_dense(aug) if nd else SparseCols.zero(0, ns)
        kbasis, _ = kernel_columns(wide)
        src_lat = LatticeSpan(ns)
        for j, d in enumerate(src_orders):
            if d:
                src_lat.insert({j: d})
        for kvec in kbasis:
            x = {j: v for j, v in kvec.items() if j < ns}
            if not src_lat.contains(x):
                is_iso = False
                break
    return {"matrix": M, "is_epi": is_epi, "is_iso": is_iso}
