"""Lie algebras (binary) and 3-Lie algebras given by exact structure constants.

An algebra is a frozen value object: `dim`, `arity`, basis `names`, and the
full antisymmetric table `c` with `[e_{i_1},...,e_{i_arity}] = sum_k c[i][k] e_k`.
Validation checks antisymmetry plus the Jacobi identity (arity 2) or the
Filippov fundamental identity (arity 3) exactly, reporting every violation.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Optional, Sequence

from .ratlin import RatMatrix, Scalar, Subspace, as_scalar, rank_nullspace

Vector = tuple[Scalar, ...]


def _sort_sign(idxs: Sequence[int]) -> tuple[Optional[tuple[int, ...]], int]:
    """Sort an index tuple, tracking the permutation sign; repeats give (None, 0)."""
    t = list(idxs)
    sign = 1
    for i in range(len(t)):
        for j in range(len(t) - 1 - i):
            if t[j] > t[j + 1]:
                t[j], t[j + 1] = t[j + 1], t[j]
                sign = -sign
    if len(set(t)) != len(t):
        return None, 0
    return tuple(t), sign


@dataclass(frozen=True)
class LieAlgebra:
    dim: int
    arity: int
    names: tuple[str, ...]
    # full table: constants[(i1,...,i_arity)] -> output vector, all index tuples
    constants: tuple

    def __post_init__(self):
        if self.arity not in (2, 3):
            raise ValueError("arity must be 2 or 3")
        if len(self.names) != self.dim:
            raise ValueError("basis names do not match dim")
        expected = self.dim ** self.arity
        if len(self.constants) != expected:
            raise ValueError("structure constant table has the wrong shape")
        for vec in self.constants:
            if len(vec) != self.dim:
                raise ValueError("structure constant output has the wrong length")

    # ---- construction ----

    @classmethod
    def from_brackets(
        cls,
        dim: int,
        brackets: dict[tuple[int, ...], dict[int, object]],
        names: Optional[Sequence[str]] = None,
        arity: int = 2,
    ) -> "LieAlgebra":
        """Build from values on strictly increasing index tuples; antisymmetry fills the rest."""
        if names is None:
            names = tuple(f"e{i+1}" for i in range(dim))
        table: dict[tuple[int, ...], list[Scalar]] = {}
        for idxs, out in brackets.items():
            idxs = tuple(idxs)
            if len(idxs) != arity:
                raise ValueError(f"bracket {idxs} does not match arity {arity}")
            if any(not 0 <= i < dim for i in idxs):
                raise IndexError(f"bracket {idxs} out of range")
            if list(idxs) != sorted(set(idxs)):
                raise ValueError(f"bracket indices {idxs} must be strictly increasing")
            vec = [0] * dim
            for k, v in out.items():
                if not 0 <= k < dim:
                    raise IndexError(f"output index {k} out of range")
                vec[k] = as_scalar(v)
            table[idxs] = vec
        full = []
        for idxs in product(range(dim), repeat=arity):
            st, sign = _sort_sign(idxs)
            if st is None or st not in table:
                full.append((0,) * dim)
            else:
                full.append(tuple(as_scalar(sign * v) for v in table[st]))
        return cls(dim=dim, arity=arity, names=tuple(names), constants=tuple(full))

    # ---- bracket evaluation ----

    def _flat(self, idxs: Sequence[int]) -> int:
        f = 0
        for i in idxs:
            f = f * self.dim + i
        return f

    def bracket_basis(self, *idxs: int) -> Vector:
        if len(idxs) != self.arity:
            raise ValueError("wrong number of arguments")
        return self.constants[self._flat(idxs)]

    def bracket(self, *vectors: Sequence[Scalar]) -> list[Scalar]:
        """Multilinear bracket of coordinate vectors."""
        if len(vectors) != self.arity:
            raise ValueError("wrong number of arguments")
        out = [0] * self.dim
        for idxs in product(*(range(self.dim) for _ in vectors)):
            coef = 1
            for v, i in zip(vectors, idxs):
                coef *= v[i]
                if coef == 0:
                    break
            if coef == 0:
                continue
            for k, c in enumerate(self.constants[self._flat(idxs)]):
                if c:
                    out[k] += coef * c
        return [as_scalar(x) for x in out]

    def ad_matrix(self, i: int) -> RatMatrix:
        """Adjoint action of e_i (binary only): x -> [e_i, x]."""
        if self.arity != 2:
            raise ValueError("ad is defined for binary algebras")
        ent = {}
        for j in range(self.dim):
            for k, v in enumerate(self.bracket_basis(i, j)):
                if v:
                    ent[(k, j)] = v
        return RatMatrix(self.dim, self.dim, ent)

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, arity={self.arity}, names={self.names})"


# ---- validation ----

@dataclass(frozen=True)
class Violation:
    kind: str  # "antisymmetry" | "jacobi" | "fundamental"
    indices: tuple[int, ...]
    residual: Vector


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    violations: tuple[Violation, ...]

    def __bool__(self):
        return self.ok


def validate(L: LieAlgebra) -> ValidationResult:
    """Exact check of antisymmetry and Jacobi / fundamental identity on all tuples."""
    violations: list[Violation] = []
    n = L.dim
    for idxs in product(range(n), repeat=L.arity):
        st, sign = _sort_sign(idxs)
        vec = L.constants[L._flat(idxs)]
        if st is None:
            if any(v != 0 for v in vec):
                violations.append(Violation("antisymmetry", idxs, tuple(vec)))
        else:
            ref = L.constants[L._flat(st)]
            if tuple(vec) != tuple(as_scalar(sign * v) for v in ref):
                diff = tuple(as_scalar(a - sign * b) for a, b in zip(vec, ref))
                violations.append(Violation("antisymmetry", idxs, diff))
    if L.arity == 2:
        for i, j, k in combinations(range(n), 3):
            res = [0] * n
            for (a, b, c) in ((i, j, k), (j, k, i), (k, i, j)):
                inner = L.bracket_basis(a, b)
                for l, v in enumerate(L.bracket(inner, _unit(n, c))):
                    res[l] += v
            if any(v != 0 for v in res):
                violations.append(
                    Violation("jacobi", (i, j, k), tuple(as_scalar(v) for v in res))
                )
    else:
        for x1, x2 in combinations(range(n), 2):
            for ys in combinations(range(n), 3):
                res = [v for v in L.bracket(_unit(n, x1), _unit(n, x2),
                                            L.bracket_basis(*ys))]
                for pos in range(3):
                    args = [_unit(n, y) for y in ys]
                    args[pos] = L.bracket_basis(x1, x2, ys[pos])
                    term = L.bracket(*args)
                    res = [a - b for a, b in zip(res, term)]
                if any(v != 0 for v in res):
                    violations.append(
                        Violation("fundamental", (x1, x2) + ys,
                                  tuple(as_scalar(v) for v in res))
                    )
    return ValidationResult(ok=not violations, violations=tuple(violations))


def _unit(n: int, i: int) -> list[Scalar]:
    v = [0] * n
    v[i] = 1
    return v


# ---- structural predicates ----

@dataclass(frozen=True)
class StructureReport:
    center: Subspace
    derived_subalgebra: Subspace
    is_perfect: bool
    has_trivial_center: bool
    is_abelian: bool


def structure_report(L: LieAlgebra) -> StructureReport:
    if L.arity != 2:
        raise ValueError("structure_report supports binary algebras only")
    n = L.dim
    # center: x with [x, e_j] = 0 for all j
    ent = {}
    for j in range(n):
        for i in range(n):
            for k, v in enumerate(L.bracket_basis(i, j)):
                if v:
                    ent[(j * n + k, i)] = v
    _, center = rank_nullspace(RatMatrix(n * n, n, ent))
    cols = {}
    m = 0
    for i, j in combinations(range(n), 2):
        vec = L.bracket_basis(i, j)
        for k, v in enumerate(vec):
            if v:
                cols[(k, m)] = v
        m += 1
    derived = Subspace.from_columns(RatMatrix(n, m, cols))
    is_abelian = derived.dim == 0
    return StructureReport(
        center=center,
        derived_subalgebra=derived,
        is_perfect=derived.dim == n,
        has_trivial_center=center.dim == 0,
        is_abelian=is_abelian,
    )


@dataclass(frozen=True)
class DerivationSpaces:
    derivations: Subspace        # ambient: endomorphisms, row-major n*n coords
    inner_derivations: Subspace


def derivation_spaces(L: LieAlgebra) -> DerivationSpaces:
    """Derivations (Leibniz nullspace) and inner derivations (image of ad)."""
    if L.arity != 2:
        raise ValueError("derivation_spaces supports binary algebras only")
    n = L.dim
    # unknown D with coords D[k][m] = coefficient of e_k in D(e_m), flat k*n+m
    eqs = {}
    row = 0
    for i, j in combinations(range(n), 2):
        cij = L.bracket_basis(i, j)
        for l in range(n):
            r = {}
            for m in range(n):
                v = cij[m]
                if v:
                    r[l * n + m] = r.get(l * n + m, 0) + v
            for m in range(n):
                v = L.bracket_basis(m, j)[l]
                if v:
                    r[m * n + i] = r.get(m * n + i, 0) - v
                v = L.bracket_basis(i, m)[l]
                if v:
                    r[m * n + j] = r.get(m * n + j, 0) - v
            for col, v in r.items():
                if v:
                    eqs[(row, col)] = v
            row += 1
    _, der = rank_nullspace(RatMatrix(row, n * n, eqs))
    ad_cols = {}
    for i in range(n):
        for j in range(n):
            for k, v in enumerate(L.bracket_basis(i, j)):
                if v:
                    ad_cols[(k * n + j, i)] = v
    inner = Subspace.from_columns(RatMatrix(n * n, n, ad_cols))
    return DerivationSpaces(derivations=der, inner_derivations=inner)


# ---- catalog ----

def _abelian(n: int) -> LieAlgebra:
    if n < 1:
        raise ValueError("abelian(n) needs n >= 1")
    return LieAlgebra.from_brackets(n, {}, names=[f"e{i+1}" for i in range(n)])


def _sl2() -> LieAlgebra:
    # basis (e, h, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h
    return LieAlgebra.from_brackets(
        3,
        {(0, 1): {0: -2}, (0, 2): {1: 1}, (1, 2): {2: -2}},
        names=("e", "h", "f"),
    )


def _so3() -> LieAlgebra:
    # [e1,e2] = e3, [e2,e3] = e1, [e3,e1] = e2
    return LieAlgebra.from_brackets(
        3,
        {(0, 1): {2: 1}, (1, 2): {0: 1}, (0, 2): {1: -1}},
        names=("e1", "e2", "e3"),
    )


def _aff1() -> LieAlgebra:
    return LieAlgebra.from_brackets(2, {(0, 1): {0: 1}}, names=("a", "b"))


def _heisenberg(m: int) -> LieAlgebra:
    if m < 1:
        raise ValueError("heisenberg(m) needs m >= 1")
    names = [f"p{i+1}" for i in range(m)] + [f"q{i+1}" for i in range(m)] + ["z"]
    return LieAlgebra.from_brackets(
        2 * m + 1,
        {(i, m + i): {2 * m: 1} for i in range(m)},
        names=names,
    )


def _a4_ternary() -> LieAlgebra:
    return LieAlgebra.from_brackets(
        4,
        {
            (0, 1, 2): {3: 1},
            (0, 1, 3): {2: -1},
            (0, 2, 3): {1: 1},
            (1, 2, 3): {0: -1},
        },
        names=("e1", "e2", "e3", "e4"),
        arity=3,
    )


_CATALOG = {
    "abelian": (_abelian, ("n",)),
    "sl2": (_sl2, ()),
    "so3": (_so3, ()),
    "aff1": (_aff1, ()),
    "heisenberg": (_heisenberg, ("m",)),
    "a4_ternary": (_a4_ternary, ()),
}


def catalog_names() -> list[str]:
    return sorted(_CATALOG)


def catalog_get(name: str, **params) -> LieAlgebra:
    """Fetch a validated built-in algebra, e.g. catalog_get("heisenberg", m=2)."""
    if name not in _CATALOG:
        raise KeyError(f"unknown catalog algebra {name!r}; known: {catalog_names()}")
    builder, wanted = _CATALOG[name]
    if set(params) != set(wanted):
        raise ValueError(f"{name} takes parameters {wanted}, got {tuple(params)}")
    args = [int(params[k]) for k in wanted]
    L = builder(*args)
    result = validate(L)
    if not result.ok:
        raise AssertionError(f"catalog algebra {name} failed validation: {result.violations}")
    return L
