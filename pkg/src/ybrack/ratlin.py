"""Exact rational linear algebra on dense and sparse matrices.

Scalars are arbitrary-precision rationals (`fractions.Fraction`, with integral
values held as plain `int`).  No floating point enters anywhere: every rank,
nullspace and solution below is exact, and nullspace bases are canonical
(parametrized from the reduced row echelon form), so results are bit-stable
across runs and across the dense/sparse code paths.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Iterator, Optional, Sequence, Union

Scalar = Union[int, Fraction]

# matrices with more potential entries than this must stay sparse
DENSE_CELL_LIMIT = 1_000_000


def as_scalar(x) -> Scalar:
    """Normalize to int or reduced Fraction.  Floats are rejected."""
    if type(x) is int:
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, int):  # bool and int subclasses
        return int(x)
    if isinstance(x, str):
        f = Fraction(x)
        return f.numerator if f.denominator == 1 else f
    raise TypeError(f"not an exact rational: {x!r} of type {type(x).__name__}")


def scalar_str(x: Scalar) -> str:
    x = as_scalar(x)
    return str(x)


class RatMatrix:
    """Immutable exact rational matrix.

    `layout` is "dense" (list of row lists) or "sparse" (dict of row dicts).
    Arithmetic is layout-agnostic; elimination dispatches on layout so that
    both code paths stay exercised.  Construction is the only mutation point.
    """

    __slots__ = ("rows", "cols", "layout", "_d", "_rows")

    def __init__(self, rows: int, cols: int, entries=None, layout: str = "sparse"):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimensions")
        if layout not in ("dense", "sparse"):
            raise ValueError(f"unknown layout {layout!r}")
        if layout == "dense" and rows * cols > DENSE_CELL_LIMIT:
            raise ValueError(
                f"{rows}x{cols} exceeds the dense layout limit; use a sparse matrix"
            )
        self.rows = rows
        self.cols = cols
        self.layout = layout
        data: dict[int, dict[int, Scalar]] = {}
        if entries:
            if isinstance(entries, dict):
                items = entries.items()
            else:
                items = (((i, j), v) for i, j, v in entries)
            for (i, j), v in items:
                if not (0 <= i < rows and 0 <= j < cols):
                    raise IndexError(f"entry ({i},{j}) outside {rows}x{cols}")
                v = as_scalar(v)
                if v != 0:
                    data.setdefault(i, {})[j] = v
        if layout == "sparse":
            self._d = data
            self._rows = None
        else:
            dense = [[0] * cols for _ in range(rows)]
            for i, r in data.items():
                for j, v in r.items():
                    dense[i][j] = v
            self._rows = dense
            self._d = None

    # ---- constructors ----

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], layout: Optional[str] = None) -> "RatMatrix":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        ent = {}
        for i, row in enumerate(rows):
            if len(row) != nc:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                v = as_scalar(v)
                if v != 0:
                    ent[(i, j)] = v
        if layout is None:
            layout = "dense" if nr * nc <= DENSE_CELL_LIMIT else "sparse"
        return cls(nr, nc, ent, layout=layout)

    @classmethod
    def zeros(cls, rows: int, cols: int, layout: str = "sparse") -> "RatMatrix":
        return cls(rows, cols, layout=layout)

    @classmethod
    def identity(cls, n: int, layout: str = "sparse") -> "RatMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)}, layout=layout)

    @classmethod
    def column(cls, vec: Sequence, layout: str = "sparse") -> "RatMatrix":
        return cls(len(vec), 1, {(i, 0): v for i, v in enumerate(vec)}, layout=layout)

    @classmethod
    def from_vec(cls, rows: int, cols: int, vec, layout: str = "sparse") -> "RatMatrix":
        """Inverse of .vec(): row-major flat coordinates -> matrix."""
        if isinstance(vec, dict):
            items = vec.items()
        else:
            items = ((idx, v) for idx, v in enumerate(vec))
        ent = {}
        for idx, v in items:
            if v != 0:
                ent[(idx // cols, idx % cols)] = v
        return cls(rows, cols, ent, layout=layout)

    # ---- storage views ----

    def _rowdicts(self) -> dict[int, dict[int, Scalar]]:
        if self._d is not None:
            return self._d
        out = {}
        for i, row in enumerate(self._rows):
            r = {j: v for j, v in enumerate(row) if v != 0}
            if r:
                out[i] = r
        return out

    def to_sparse(self) -> "RatMatrix":
        if self.layout == "sparse":
            return self
        m = RatMatrix(self.rows, self.cols, layout="sparse")
        m._d = {i: dict(r) for i, r in self._rowdicts().items()}
        return m

    def to_dense(self) -> "RatMatrix":
        if self.layout == "dense":
            return self
        if self.rows * self.cols > DENSE_CELL_LIMIT:
            raise ValueError("matrix too large for the dense layout")
        m = RatMatrix(self.rows, self.cols, layout="dense")
        dense = [[0] * self.cols for _ in range(self.rows)]
        for i, r in self._d.items():
            for j, v in r.items():
                dense[i][j] = v
        m._rows = dense
        return m

    # ---- element access ----

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"({i},{j}) outside {self.rows}x{self.cols}")
        if self._rows is not None:
            return self._rows[i][j]
        return self._d.get(i, {}).get(j, 0)

    def items(self) -> Iterator[tuple[int, int, Scalar]]:
        if self._rows is not None:
            for i, row in enumerate(self._rows):
                for j, v in enumerate(row):
                    if v != 0:
                        yield i, j, v
        else:
            for i in sorted(self._d):
                r = self._d[i]
                for j in sorted(r):
                    yield i, j, r[j]

    def row_dict(self, i: int) -> dict[int, Scalar]:
        if not 0 <= i < self.rows:
            raise IndexError(i)
        if self._rows is not None:
            return {j: v for j, v in enumerate(self._rows[i]) if v != 0}
        return dict(self._d.get(i, {}))

    def col_dict(self, j: int) -> dict[int, Scalar]:
        if not 0 <= j < self.cols:
            raise IndexError(j)
        out = {}
        for i, r in self._rowdicts().items():
            v = r.get(j)
            if v:
                out[i] = v
        return out

    def nnz(self) -> int:
        return sum(len(r) for r in self._rowdicts().values())

    def is_zero(self) -> bool:
        if self._rows is not None:
            return all(v == 0 for row in self._rows for v in row)
        return not self._d

    def vec(self) -> dict[int, Scalar]:
        """Row-major flat coordinates (index i*cols + j), zero entries omitted."""
        return {i * self.cols + j: v for i, j, v in self.items()}

    def to_lists(self) -> list[list[Scalar]]:
        if self.rows * self.cols > DENSE_CELL_LIMIT:
            raise ValueError("matrix too large to materialize densely")
        out = [[0] * self.cols for _ in range(self.rows)]
        for i, j, v in self.items():
            out[i][j] = v
        return out

    # ---- arithmetic ----

    def _result_layout(self, other: "RatMatrix", rows: int, cols: int) -> str:
        if (self.layout == other.layout == "dense") and rows * cols <= DENSE_CELL_LIMIT:
            return "dense"
        return "sparse"

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in addition")
        acc = {i: dict(r) for i, r in self._rowdicts().items()}
        for i, r in other._rowdicts().items():
            tr = acc.setdefault(i, {})
            for j, v in r.items():
                w = tr.get(j, 0) + v
                if w == 0:
                    tr.pop(j, None)
                else:
                    tr[j] = w
        out = RatMatrix(self.rows, self.cols, layout="sparse")
        out._d = {i: r for i, r in acc.items() if r}
        lay = self._result_layout(other, self.rows, self.cols)
        return out.to_dense() if lay == "dense" else out

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return self + (-other)

    def __neg__(self) -> "RatMatrix":
        return self.scale(-1)

    def scale(self, s) -> "RatMatrix":
        s = as_scalar(s)
        out = RatMatrix(self.rows, self.cols, layout="sparse")
        if s != 0:
            out._d = {
                i: {j: as_scalar(s * v) for j, v in r.items()}
                for i, r in self._rowdicts().items()
            }
        return out.to_dense() if self.layout == "dense" else out

    def __mul__(self, s):
        return self.scale(s)

    __rmul__ = __mul__

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        od = other._rowdicts()
        acc: dict[int, dict[int, Scalar]] = {}
        for i, r in self._rowdicts().items():
            tr: dict[int, Scalar] = {}
            for k, v in r.items():
                orow = od.get(k)
                if not orow:
                    continue
                for j, w in orow.items():
                    tr[j] = tr.get(j, 0) + v * w
            tr = {j: as_scalar(x) for j, x in tr.items() if x != 0}
            if tr:
                acc[i] = tr
        out = RatMatrix(self.rows, other.cols, layout="sparse")
        out._d = acc
        lay = self._result_layout(other, self.rows, other.cols)
        return out.to_dense() if lay == "dense" else out

    def apply(self, vec: Sequence[Scalar]) -> list[Scalar]:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        out = [0] * self.rows
        for i, r in self._rowdicts().items():
            s = 0
            for j, v in r.items():
                x = vec[j]
                if x:
                    s += v * x
            out[i] = as_scalar(s)
        return out

    def transpose(self) -> "RatMatrix":
        acc: dict[int, dict[int, Scalar]] = {}
        for i, r in self._rowdicts().items():
            for j, v in r.items():
                acc.setdefault(j, {})[i] = v
        out = RatMatrix(self.cols, self.rows, layout="sparse")
        out._d = acc
        return out.to_dense() if self.layout == "dense" else out

    def kron(self, other: "RatMatrix") -> "RatMatrix":
        """Kronecker product in the lexicographic tensor basis."""
        acc: dict[int, dict[int, Scalar]] = {}
        obr = other._rowdicts()
        for i, ra in self._rowdicts().items():
            for k, rb in obr.items():
                row = i * other.rows + k
                tr = {}
                for j, va in ra.items():
                    base = j * other.cols
                    for l, vb in rb.items():
                        tr[base + l] = va * vb
                if tr:
                    acc[row] = tr
        out = RatMatrix(self.rows * other.rows, self.cols * other.cols, layout="sparse")
        out._d = acc
        lay = self._result_layout(other, out.rows, out.cols)
        return out.to_dense() if lay == "dense" else out

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        return self._rowdicts() == other._rowdicts()

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(sorted(self.vec().items()))))

    def __repr__(self):
        return f"RatMatrix({self.rows}x{self.cols}, {self.layout}, nnz={self.nnz()})"


# ---- elimination ----

def _rref_sparse(rowdicts: Iterable[dict[int, Scalar]]) -> dict[int, dict[int, Scalar]]:
    """Reduced row echelon form as {pivot column: row dict}, pivot value 1."""
    piv: dict[int, dict[int, Scalar]] = {}
    for r in rowdicts:
        r = dict(r)
        while r:
            c = min(r)
            if c in piv:
                f = r.pop(c)
                for j, v in piv[c].items():
                    if j == c:
                        continue
                    x = r.get(j, 0) - f * v
                    if x == 0:
                        r.pop(j, None)
                    else:
                        r[j] = as_scalar(x)
            else:
                inv = Fraction(1) / r[c]
                piv[c] = {j: as_scalar(v * inv) for j, v in r.items()}
                break
    for c in sorted(piv, reverse=True):
        r = piv[c]
        for c2 in [j for j in r if j != c and j in piv]:
            f = r.pop(c2)
            for j, v in piv[c2].items():
                if j == c2:
                    continue
                x = r.get(j, 0) - f * v
                if x == 0:
                    r.pop(j, None)
                else:
                    r[j] = as_scalar(x)
    return piv


def _rref_dense(rows: list[list[Scalar]], cols: int) -> dict[int, dict[int, Scalar]]:
    """Same RREF via fraction-free (Bareiss) forward elimination on scaled rows."""
    work = []
    for row in rows:
        den = lcm(*(Fraction(v).denominator for v in row)) if row else 1
        work.append([int(v * den) if den != 1 else int(v) for v in row])
    nrows = len(work)
    pivots: list[tuple[int, int]] = []  # (row, col)
    prev = 1
    r = 0
    for c in range(cols):
        pr = None
        for i in range(r, nrows):
            if work[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        p = work[r][c]
        for i in range(r + 1, nrows):
            fi = work[i][c]
            rowi = work[i]
            rowr = work[r]
            for j in range(c, cols):
                rowi[j] = (rowi[j] * p - fi * rowr[j]) // prev
        prev = p
        pivots.append((r, c))
        r += 1
        if r == nrows:
            break
    # rational back substitution to reduced form
    piv: dict[int, dict[int, Scalar]] = {}
    for r, c in reversed(pivots):
        p = work[r][c]
        rowd = {}
        for j in range(c, cols):
            v = work[r][j]
            if v:
                rowd[j] = as_scalar(Fraction(v, p))
        for c2 in [j for j in list(rowd) if j != c and j in piv]:
            f = rowd.pop(c2)
            for j, v in piv[c2].items():
                if j == c2:
                    continue
                x = rowd.get(j, 0) - f * v
                if x == 0:
                    rowd.pop(j, None)
                else:
                    rowd[j] = as_scalar(x)
        piv[c] = rowd
    return piv


def _rref(M: RatMatrix) -> dict[int, dict[int, Scalar]]:
    if M.layout == "dense":
        return _rref_dense([list(row) for row in M._rows], M.cols)
    return _rref_sparse(M._d.values())


class Subspace:
    """Subspace of an ambient coordinate space, spanned by independent columns."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, basis: RatMatrix):
        if basis.rows != ambient_dim:
            raise ValueError("basis vectors must live in the ambient space")
        self.ambient_dim = ambient_dim
        self.basis = basis

    @property
    def dim(self) -> int:
        return self.basis.cols

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, RatMatrix.zeros(ambient_dim, 0))

    @classmethod
    def from_columns(cls, M: RatMatrix) -> "Subspace":
        """Canonical basis of the column space (RREF of the transpose)."""
        piv = _rref(M.transpose())
        ent = {}
        for k, c in enumerate(sorted(piv)):
            for j, v in piv[c].items():
                ent[(j, k)] = v
        return cls(M.rows, RatMatrix(M.rows, len(piv), ent))

    def vectors(self) -> list[list[Scalar]]:
        cols = [[0] * self.ambient_dim for _ in range(self.dim)]
        for i, j, v in self.basis.items():
            cols[j][i] = v
        return cols

    def contains(self, vec: Sequence[Scalar]) -> bool:
        return solve_linear(self.basis, list(vec)) is not None

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def rank(M: RatMatrix) -> int:
    return len(_rref(M))


def rank_nullspace(M: RatMatrix) -> tuple[int, Subspace]:
    """Exact rank and the canonical (RREF-parametrized) nullspace basis.

    Free coordinates act as indicators: the basis vector attached to free
    column f has entry 1 there and minus the RREF entries on pivot columns.
    """
    piv = _rref(M)
    pivcols = sorted(piv)
    free = [c for c in range(M.cols) if c not in piv]
    ent = {}
    for k, f in enumerate(free):
        ent[(f, k)] = 1
        for c in pivcols:
            v = piv[c].get(f, 0)
            if v:
                ent[(c, k)] = -v
    ns = Subspace(M.cols, RatMatrix(M.cols, len(free), ent))
    return len(piv), ns


def solve_linear(M: RatMatrix, b: Sequence[Scalar]) -> Optional[list[Scalar]]:
    """Solve M x = b exactly, or None when b is outside the column space.

    The solution returned is the unique one whose coordinates on non-pivot
    columns (left-to-right echelon order) are zero.
    """
    if len(b) != M.rows:
        raise ValueError(f"rhs length {len(b)} != {M.rows} rows")
    bcol = M.cols
    if M.layout == "dense":
        rows = [list(row) + [as_scalar(v)] for row, v in zip(M._rows, b)]
        piv = _rref_dense(rows, M.cols + 1)
    else:
        rowdicts = []
        d = M._d
        for i in range(M.rows):
            r = dict(d.get(i, {}))
            v = as_scalar(b[i])
            if v != 0:
                r[bcol] = v
            if r:
                rowdicts.append(r)
        piv = _rref_sparse(rowdicts)
    if bcol in piv:
        return None
    x: list[Scalar] = [0] * M.cols
    for c, row in piv.items():
        x[c] = row.get(bcol, 0)
    return x


def quotient_dim(Z: Subspace, B: Subspace) -> tuple[int, list[list[Scalar]]]:
    """dim(Z/B) plus coset representatives completing B's basis to Z's.

    Raises ValueError when B is not contained in Z.
    """
    if Z.ambient_dim != B.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    for v in B.vectors():
        if not Z.contains(v):
            raise ValueError("B is not a subspace of Z")
    ech: list[dict[int, Scalar]] = []

    def insert(vec) -> bool:
        r = {i: v for i, v in enumerate(vec) if v != 0}
        for row in ech:
            if not r:
                break
            c = min(row)
            f = r.get(c)
            if f:
                for j, v in row.items():
                    x = r.get(j, 0) - f * v
                    if x == 0:
                        r.pop(j, None)
                    else:
                        r[j] = as_scalar(x)
        if not r:
            return False
        c = min(r)
        inv = Fraction(1) / r[c]
        ech.append({j: as_scalar(v * inv) for j, v in r.items()})
        ech.sort(key=lambda row: min(row))
        return True

    for v in B.vectors():
        insert(v)
    reps = []
    for v in Z.vectors():
        if insert(v):
            reps.append(v)
    return Z.dim - B.dim, reps


# ---- tensor-leg utilities ----

def kron(*mats: RatMatrix) -> RatMatrix:
    out = mats[0]
    for m in mats[1:]:
        out = out.kron(m)
    return out


def perm_matrix(dims: Sequence[int], perm: Sequence[int]) -> RatMatrix:
    """Permutation of tensor legs: output slot s carries input leg perm[s]."""
    total = 1
    for d in dims:
        total *= d
    strides_in = _strides(dims)
    dims_out = [dims[p] for p in perm]
    strides_out = _strides(dims_out)
    ent = {}
    for idx in range(total):
        legs = [(idx // st) % d for st, d in zip(strides_in, dims)]
        out = sum(strides_out[s] * legs[perm[s]] for s in range(len(perm)))
        ent[(out, idx)] = 1
    return RatMatrix(total, total, ent)


def _strides(dims: Sequence[int]) -> list[int]:
    strides = []
    s = 1
    for d in reversed(dims):
        strides.append(s)
        s *= d
    strides.reverse()
    return strides


def permute_legs(M: RatMatrix, dims: Sequence[int], perm: Sequence[int]) -> RatMatrix:
    """perm_matrix(dims, perm) @ M without materializing the permutation.

    M's rows must be indexed by the tensor basis of `dims`.
    """
    total = 1
    for d in dims:
        total *= d
    if M.rows != total:
        raise ValueError("row count does not match the tensor dimensions")
    strides_in = _strides(dims)
    dims_out = [dims[p] for p in perm]
    strides_out = _strides(dims_out)

    def remap(idx: int) -> int:
        legs = [(idx // st) % d for st, d in zip(strides_in, dims)]
        return sum(strides_out[s] * legs[perm[s]] for s in range(len(perm)))

    out = RatMatrix(total, M.cols, layout="sparse")
    out._d = {remap(i): dict(r) for i, r in M._rowdicts().items()}
    return out
