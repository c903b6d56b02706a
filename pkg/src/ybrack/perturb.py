"""Order-by-order integration of infinitesimal deformations and hbar-truncated
Yang-Baxter operators.

Starting from a 2-cocycle phi_1, each order m solves

    d phi_m = - sum_{i+j=m, i,j>=1} G(phi_i, phi_j)

with the deterministic particular solution of the linear solver (free
coordinates zero), optionally shifted by a user-supplied cocycle per order
(the gauge freedom of the construction).  The assembled operator is
R_hat = R + sum_i hbar^i Lambda^2(phi_i), and the YBE is verified
coefficient-wise in hbar up to the truncation order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .cohomology import (
    LieCochain,
    ObstructionReport,
    bracket_cochain,
    ce_diff_matrix,
    ce_differential,
    obstruction_test,
    quadratic_term,
    series_satisfies_equations,
)
from .liealg import LieAlgebra
from .rack import build_rack, theta_series, verify_sd_deformation
from .ratlin import RatMatrix, solve_linear
from .yb import build_yb, lambda2


@dataclass
class DeformationSeries:
    """phi_0..phi_N with phi_0 the bracket; valid iff every order-m equation holds."""

    algebra: LieAlgebra
    order: int
    cochains: tuple  # LieCochain, length order+1

    def tail(self) -> list[LieCochain]:
        return list(self.cochains[1:])

    def is_valid(self) -> bool:
        return series_satisfies_equations(self.algebra, self.tail())

    def truncate(self, order: int) -> "DeformationSeries":
        if not 0 <= order <= self.order:
            raise ValueError("truncation order out of range")
        return DeformationSeries(self.algebra, order, self.cochains[: order + 1])


@dataclass
class Obstructed:
    """Failed integration step: the order, the unsolvable right-hand side and
    its coset data (closedness flag plus the exact-image subspace)."""

    order: int
    report: ObstructionReport


def integrate_deformation(
    L: LieAlgebra,
    phi1: LieCochain,
    N: int,
    offsets: Optional[dict[int, LieCochain]] = None,
) -> Union[DeformationSeries, Obstructed]:
    """Extend a 2-cocycle phi_1 to an order-N series, or report the obstruction.

    offsets[m], when given, must be a 2-cocycle and is added to the particular
    solution at order m (every solution at a solvable order differs from the
    canonical one by such a cocycle).
    """
    if phi1.degree != 2 or phi1.coefficients != "adjoint":
        raise ValueError("phi_1 must be an adjoint 2-cochain")
    if not ce_differential(L, phi1).is_zero():
        raise ValueError("phi_1 is not a 2-cocycle")
    d2 = ce_diff_matrix(L, 2, "adjoint")
    series = [phi1]
    for m in range(2, N + 1):
        rhs = LieCochain.zero(L, 3, "adjoint")
        for i in range(1, m):
            j = m - i
            rhs = rhs - quadratic_term(L, series[i - 1], series[j - 1])
        sol = solve_linear(d2, rhs.coords())
        if sol is None:
            report = obstruction_test(L, series)
            return Obstructed(order=m, report=report)
        phi_m = LieCochain.from_coords(L, 2, "adjoint", sol)
        if offsets and m in offsets:
            off = offsets[m]
            if not ce_differential(L, off).is_zero():
                raise ValueError(f"offset at order {m} is not a 2-cocycle")
            phi_m = phi_m + off
        series.append(phi_m)
    return DeformationSeries(
        algebra=L, order=N, cochains=(bracket_cochain(L), *series)
    )


@dataclass
class HbarOperator:
    """Truncated formal series sum_i hbar^i C_i of operators on the tensor square."""

    truncation: int
    coefficients: tuple  # RatMatrix, length truncation+1

    def __post_init__(self):
        if len(self.coefficients) != self.truncation + 1:
            raise ValueError("coefficient count does not match the truncation order")
        d2 = self.coefficients[0].rows
        for c in self.coefficients:
            if c.rows != d2 or c.cols != d2:
                raise ValueError("coefficients must share one square shape")

    def truncate(self, order: int) -> "HbarOperator":
        if not 0 <= order <= self.truncation:
            raise ValueError("truncation order out of range")
        return HbarOperator(order, self.coefficients[: order + 1])

    def __add__(self, other: "HbarOperator") -> "HbarOperator":
        N = min(self.truncation, other.truncation)
        return HbarOperator(
            N, tuple(a + b for a, b in zip(self.coefficients, other.coefficients))
        )

    def compose(self, other: "HbarOperator") -> "HbarOperator":
        N = min(self.truncation, other.truncation)
        out = []
        for m in range(N + 1):
            acc = None
            for i in range(m + 1):
                term = self.coefficients[i] @ other.coefficients[m - i]
                acc = term if acc is None else acc + term
            out.append(acc)
        return HbarOperator(N, tuple(out))


def assemble_series(L: LieAlgebra, S: DeformationSeries) -> HbarOperator:
    """C_0 = R (the undeformed operator), C_i = Lambda^2(phi_i) for i >= 1."""
    if not S.is_valid():
        raise ValueError("series does not satisfy the deformation equations")
    X = build_rack(L)
    R = build_yb(X)
    coeffs = [R.matrix]
    for phi in S.cochains[1:]:
        coeffs.append(lambda2(L, phi).matrix)
    return HbarOperator(truncation=S.order, coefficients=tuple(coeffs))


def ybe_mod_residues(H: HbarOperator) -> list[RatMatrix]:
    """Per-degree YBE defects sum_{i+j+k=m} [(Ci x 1)(1 x Cj)(Ck x 1) - flip]."""
    d2 = H.coefficients[0].rows
    import math

    d = math.isqrt(d2)
    if d * d != d2:
        raise ValueError("coefficient space is not a tensor square")
    I = RatMatrix.identity(d)
    A = [c.kron(I) for c in H.coefficients]
    B = [I.kron(c) for c in H.coefficients]
    residues = []
    for m in range(H.truncation + 1):
        acc = RatMatrix.zeros(d ** 3, d ** 3)
        for i in range(m + 1):
            for j in range(m + 1 - i):
                k = m - i - j
                acc = acc + (A[i] @ B[j] @ A[k] - B[i] @ A[j] @ B[k])
        residues.append(acc)
    return residues


def verify_ybe_mod(H: HbarOperator) -> bool:
    """True iff the YBE holds coefficient-wise in hbar through the truncation."""
    return all(r.is_zero() for r in ybe_mod_residues(H))


def verify_series_sd(L: LieAlgebra, S: DeformationSeries) -> bool:
    """Theta-image consistency: [q, Theta^2(phi_1), ...] deforms the rack."""
    X = build_rack(L)
    return verify_sd_deformation(X, theta_series(X, list(S.cochains)))
