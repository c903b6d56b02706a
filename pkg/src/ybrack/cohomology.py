"""Chevalley-Eilenberg cochain complex with adjoint and trivial coefficients.

Cochains are alternating maps stored on strictly increasing basis tuples;
evaluation on arbitrary tuples goes through the permutation sign.  The sign
convention of the differential is fixed so that for an adjoint 2-cochain

    (d phi)(x,y,z) = phi([x,y],z) + [phi(x,y),z] - phi([x,z],y) - [phi(x,z),y]
                     - phi(x,[y,z]) - [x,phi(y,z)]

which is (-1)^(p+1) times the classical normalization; with it the order-m
deformation equation reads  d phi_m + sum_{i+j=m} G(phi_i, phi_j) = 0  with the
quadratic term G defined below, and d(d phi) = 0 still holds in every degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Literal, Optional, Sequence

from .liealg import LieAlgebra, _sort_sign, _unit
from .ratlin import (
    RatMatrix,
    Scalar,
    Subspace,
    as_scalar,
    quotient_dim,
    rank_nullspace,
    solve_linear,
)

Coefficients = Literal["adjoint", "trivial"]


@dataclass
class LieCochain:
    """Alternating p-linear map into the algebra (adjoint) or the ground field."""

    algebra: LieAlgebra
    degree: int
    coefficients: Coefficients
    # increasing tuple -> output vector (adjoint) or scalar (trivial); zeros omitted
    data: dict

    def __post_init__(self):
        n = self.algebra.dim
        if not 0 <= self.degree <= n + 1:
            raise ValueError(f"degree {self.degree} out of range for dim {n}")
        if self.coefficients not in ("adjoint", "trivial"):
            raise ValueError(f"unknown coefficients {self.coefficients!r}")

    # ---- construction and coordinates ----

    @classmethod
    def zero(cls, L, degree, coefficients="adjoint"):
        return cls(L, degree, coefficients, {})

    @classmethod
    def from_coords(cls, L, degree, coefficients, coords) -> "LieCochain":
        data = {}
        for i, (T, k) in enumerate(_basis(L.dim, degree, coefficients)):
            v = as_scalar(coords[i])
            if v == 0:
                continue
            if coefficients == "adjoint":
                vec = list(data.get(T, (0,) * L.dim))
                vec[k] = v
                data[T] = tuple(vec)
            else:
                data[T] = v
        return cls(L, degree, coefficients, data)

    def coords(self) -> list[Scalar]:
        out = []
        for T, k in _basis(self.algebra.dim, self.degree, self.coefficients):
            if self.coefficients == "adjoint":
                out.append(self.data.get(T, (0,) * self.algebra.dim)[k])
            else:
                out.append(self.data.get(T, 0))
        return out

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.coords())

    def __add__(self, other: "LieCochain") -> "LieCochain":
        self._compat(other)
        a, b = self.coords(), other.coords()
        return LieCochain.from_coords(
            self.algebra, self.degree, self.coefficients,
            [x + y for x, y in zip(a, b)],
        )

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, s) -> "LieCochain":
        s = as_scalar(s)
        return LieCochain.from_coords(
            self.algebra, self.degree, self.coefficients,
            [s * v for v in self.coords()],
        )

    def _compat(self, other: "LieCochain"):
        if (self.algebra, self.degree, self.coefficients) != (
            other.algebra, other.degree, other.coefficients
        ):
            raise ValueError("cochain mismatch")

    # ---- evaluation ----

    def eval_basis(self, idxs: Sequence[int]):
        """Value on (e_{i_1},...,e_{i_p}); alternating in the indices."""
        if len(idxs) != self.degree:
            raise ValueError("wrong number of arguments")
        st, sign = _sort_sign(idxs)
        n = self.algebra.dim
        zero = (0,) * n if self.coefficients == "adjoint" else 0
        if st is None:
            return zero
        val = self.data.get(st)
        if val is None:
            return zero
        if self.coefficients == "adjoint":
            return tuple(as_scalar(sign * v) for v in val)
        return as_scalar(sign * val)

    def eval_vectors(self, vectors: Sequence[Sequence[Scalar]]):
        """Full multilinear evaluation on coordinate vectors."""
        if len(vectors) != self.degree:
            raise ValueError("wrong number of arguments")
        n = self.algebra.dim
        adjoint = self.coefficients == "adjoint"
        acc = [0] * n if adjoint else 0
        supports = [[i for i, v in enumerate(vec) if v != 0] for vec in vectors]
        for idxs in product(*supports):
            coef = 1
            for vec, i in zip(vectors, idxs):
                coef *= vec[i]
            val = self.eval_basis(idxs)
            if adjoint:
                for k, v in enumerate(val):
                    if v:
                        acc[k] += coef * v
            else:
                acc += coef * val
        if adjoint:
            return tuple(as_scalar(v) for v in acc)
        return as_scalar(acc)


def _basis(n: int, p: int, coefficients: Coefficients):
    for T in combinations(range(n), p):
        if coefficients == "adjoint":
            for k in range(n):
                yield T, k
        else:
            yield T, None


def cochain_space_dim(L: LieAlgebra, p: int, coefficients: Coefficients = "adjoint") -> int:
    from math import comb
    base = comb(L.dim, p)
    return base * L.dim if coefficients == "adjoint" else base


def bracket_cochain(L: LieAlgebra) -> LieCochain:
    """The bracket itself as the degree-2 adjoint cochain (phi_0 of any series)."""
    data = {}
    for i, j in combinations(range(L.dim), 2):
        vec = L.bracket_basis(i, j)
        if any(v != 0 for v in vec):
            data[(i, j)] = tuple(vec)
    return LieCochain(L, 2, "adjoint", data)


# ---- the differential ----

def ce_differential(L: LieAlgebra, phi: LieCochain) -> LieCochain:
    """Degree p -> p+1 differential in the convention fixed above."""
    if phi.algebra != L:
        raise ValueError("cochain belongs to a different algebra")
    p = phi.degree
    n = L.dim
    if p > n:
        raise ValueError("degree overflow")
    adjoint = phi.coefficients == "adjoint"
    sgn_global = -1 if (p + 1) % 2 == 1 else 1  # (-1)^(p+1)
    data = {}
    for T in combinations(range(n), p + 1):
        acc = [0] * n if adjoint else 0
        if adjoint:
            for i in range(p + 1):
                rest = T[:i] + T[i + 1:]
                val = phi.eval_basis(rest)
                if any(v != 0 for v in val):
                    term = L.bracket(_unit(n, T[i]), val)
                    s = sgn_global * ((-1) ** i)
                    for k, v in enumerate(term):
                        if v:
                            acc[k] += s * v
        for i in range(p + 1):
            for j in range(i + 1, p + 1):
                rest = T[:i] + T[i + 1:j] + T[j + 1:]
                w = L.bracket_basis(T[i], T[j])
                s = sgn_global * ((-1) ** (i + j))
                for l, c in enumerate(w):
                    if c == 0:
                        continue
                    val = phi.eval_basis((l,) + rest)
                    if adjoint:
                        for k, v in enumerate(val):
                            if v:
                                acc[k] += s * c * v
                    else:
                        acc += s * c * val
        if adjoint:
            acc = tuple(as_scalar(v) for v in acc)
            if any(v != 0 for v in acc):
                data[T] = acc
        else:
            acc = as_scalar(acc)
            if acc != 0:
                data[T] = acc
    return LieCochain(L, p + 1, phi.coefficients, data)


_DIFF_CACHE: dict = {}


def ce_diff_matrix(L: LieAlgebra, p: int, coefficients: Coefficients = "adjoint") -> RatMatrix:
    """Matrix of the differential C^p -> C^(p+1); assembled once per key."""
    key = (L, p, coefficients)
    cached = _DIFF_CACHE.get(key)
    if cached is not None:
        return cached
    if not 0 <= p <= L.dim:
        raise ValueError(f"degree {p} out of range")
    dom = cochain_space_dim(L, p, coefficients)
    cod = cochain_space_dim(L, p + 1, coefficients)
    ent = {}
    for col in range(dom):
        coords = [0] * dom
        coords[col] = 1
        phi = LieCochain.from_coords(L, p, coefficients, coords)
        out = ce_differential(L, phi).coords()
        for row, v in enumerate(out):
            if v:
                ent[(row, col)] = v
    mat = RatMatrix(cod, dom, ent)
    _DIFF_CACHE[key] = mat
    return mat


@dataclass(frozen=True)
class CohomologyResult:
    degree: int
    coefficients: str
    dim_Z: int
    dim_B: int
    dim_H: int
    representatives: tuple


def ce_cohomology(L: LieAlgebra, p: int, coefficients: Coefficients = "adjoint") -> CohomologyResult:
    """dim ker / dim im of the CE complex at degree p, with class representatives."""
    if L.arity != 2:
        raise ValueError("cohomology supports binary algebras only")
    if not 0 <= p <= L.dim:
        raise ValueError(f"degree {p} out of range for dim {L.dim}")
    dp = ce_diff_matrix(L, p, coefficients)
    _, Z = rank_nullspace(dp)
    if p == 0:
        B = Subspace.zero(Z.ambient_dim)
    else:
        B = Subspace.from_columns(ce_diff_matrix(L, p - 1, coefficients))
    dim_h, reps = quotient_dim(Z, B)
    cochains = tuple(
        LieCochain.from_coords(L, p, coefficients, r) for r in reps
    )
    return CohomologyResult(
        degree=p,
        coefficients=coefficients,
        dim_Z=Z.dim,
        dim_B=B.dim,
        dim_H=dim_h,
        representatives=cochains,
    )


# ---- quadratic obstruction term ----

def quadratic_term(L: LieAlgebra, phi: LieCochain, psi: LieCochain) -> LieCochain:
    """G(phi,psi)(x,y,z) = phi(psi(x,y),z) - phi(psi(x,z),y) - phi(x,psi(y,z)).

    For alternating inputs the result is alternating; G(mu,mu) is the Jacobiator
    of an antisymmetric product mu, and the order-(m+1) obstruction equals
    -sum_{i+j=m+1, i,j>=1} G(phi_i, phi_j).
    """
    for c in (phi, psi):
        if c.degree != 2 or c.coefficients != "adjoint":
            raise ValueError("quadratic term needs adjoint 2-cochains")
    n = L.dim
    data = {}
    for T in combinations(range(n), 3):
        a, b, c = T
        acc = [0] * n
        for (pair, last, s) in (((a, b), c, 1), ((a, c), b, -1)):
            w = psi.eval_basis(pair)
            for l, wl in enumerate(w):
                if wl:
                    val = phi.eval_vectors([_unit_vec(n, l, wl), _unit(n, last)])
                    for k, v in enumerate(val):
                        if v:
                            acc[k] += s * v
        w = psi.eval_basis((b, c))
        for l, wl in enumerate(w):
            if wl:
                val = phi.eval_vectors([_unit(n, a), _unit_vec(n, l, wl)])
                for k, v in enumerate(val):
                    if v:
                        acc[k] -= v
        acc = tuple(as_scalar(v) for v in acc)
        if any(v != 0 for v in acc):
            data[T] = acc
    return LieCochain(L, 3, "adjoint", data)


def _unit_vec(n, i, scale):
    v = [0] * n
    v[i] = scale
    return v


# ---- deformation equations and the obstruction class ----

def deformation_residual(L: LieAlgebra, series: Sequence[LieCochain], order: int) -> LieCochain:
    """d phi_order + sum_{i+j=order, i,j>=1} G(phi_i, phi_j); zero iff the
    equation holds at that order.  `series` holds phi_1..phi_m."""
    res = ce_differential(L, series[order - 1])
    for i in range(1, order):
        j = order - i
        if j < 1 or j > len(series):
            continue
        res = res + quadratic_term(L, series[i - 1], series[j - 1])
    return res


def series_satisfies_equations(L: LieAlgebra, series: Sequence[LieCochain]) -> bool:
    return all(
        deformation_residual(L, series, m).is_zero() for m in range(1, len(series) + 1)
    )


@dataclass(frozen=True)
class ObstructionReport:
    order: int
    rhs: LieCochain
    is_cocycle: bool
    is_coboundary: bool
    solution: Optional[LieCochain]
    image_space: Subspace  # column space of the degree-2 differential


def obstruction_test(L: LieAlgebra, partial_series: Sequence[LieCochain]) -> ObstructionReport:
    """Obstruction to extending phi_1..phi_m one order further.

    The right-hand side is -sum_{i+j=m+1, i,j>=1} G(phi_i,phi_j); it is checked
    to be closed and tested for exactness against the degree-2 differential.
    """
    series = list(partial_series)
    if not series:
        raise ValueError("need at least phi_1")
    if not series_satisfies_equations(L, series):
        raise ValueError("input is not a valid order-m deformation series")
    m = len(series)
    rhs = LieCochain.zero(L, 3, "adjoint")
    for i in range(1, m + 1):
        j = m + 1 - i
        if 1 <= j <= m:
            rhs = rhs - quadratic_term(L, series[i - 1], series[j - 1])
    d3 = ce_differential(L, rhs)
    d2 = ce_diff_matrix(L, 2, "adjoint")
    sol = solve_linear(d2, rhs.coords())
    return ObstructionReport(
        order=m + 1,
        rhs=rhs,
        is_cocycle=d3.is_zero(),
        is_coboundary=sol is not None,
        solution=None if sol is None else LieCochain.from_coords(L, 2, "adjoint", sol),
        image_space=Subspace.from_columns(d2),
    )
