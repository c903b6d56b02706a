"""Rack objects X = k (+) g attached to Lie algebras, and SD cohomology.

Basis convention: b_0 = (1,0) and b_i = (0, e_i) for i = 1..n; tensor powers
are ordered lexicographically.  The structure maps are

    eps(a,x) = a
    Delta(a,x) = (a,x) (x) (1,0) + (1,0) (x) (0,x)
    q((a,x) (x) (b,y)) = (ab, bx + [x,y])            (binary)
    q((a1,x1) (x) (a2,x2) (x) (a3,x3)) = (a1 a2 a3, a2 a3 x1 + [x1,x2,x3])

and every axiom (coassociativity, counit, q a coalgebra morphism, the
self-distributivity identity, rack invertibility) is verified as an exact
matrix identity.  For a 3-Lie algebra the doubled object on V = X (x) X turns
the ternary rack into a binary SD object, which is what feeds the Yang-Baxter
construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .cohomology import LieCochain
from .liealg import LieAlgebra, validate
from .ratlin import (
    RatMatrix,
    Subspace,
    as_scalar,
    permute_legs,
    quotient_dim,
    rank_nullspace,
    solve_linear,
)


@dataclass
class RackObject:
    base: LieAlgebra
    arity: int                 # arity of the underlying algebra bracket
    dim: int                   # dimension of the carrier X (or V for doubled)
    q: RatMatrix               # X^(x)arity -> X
    delta: RatMatrix           # X -> X (x) X
    counit: RatMatrix          # X -> k
    pi0: RatMatrix             # X -> k
    pi1: RatMatrix             # X -> g
    doubled: bool = False      # True when this is the V = X (x) X object of a 3-rack

    _verify_cache: Optional["SDReport"] = None

    def __repr__(self):
        tag = "doubled " if self.doubled else ""
        return f"RackObject({tag}dim={self.dim}, arity={self.arity})"


def build_rack(L: LieAlgebra) -> RackObject:
    """Carrier, comultiplication, counit and rack operation for a valid algebra."""
    result = validate(L)
    if not result.ok:
        raise ValueError(f"algebra fails validation: {result.violations[:3]}")
    n = L.dim
    d = n + 1
    ent = {(0, 0): 1}
    if L.arity == 2:
        for i in range(1, d):
            ent[(i, i * d + 0)] = 1
            for j in range(1, d):
                for k, v in enumerate(L.bracket_basis(i - 1, j - 1)):
                    if v:
                        ent[(k + 1, i * d + j)] = v
        q = RatMatrix(d, d * d, ent)
    else:
        for i in range(1, d):
            ent[(i, (i * d + 0) * d + 0)] = 1
            for j in range(1, d):
                for k in range(1, d):
                    for l, v in enumerate(L.bracket_basis(i - 1, j - 1, k - 1)):
                        if v:
                            ent[(l + 1, (i * d + j) * d + k)] = v
        q = RatMatrix(d, d ** 3, ent)
    delta_ent = {(0, 0): 1}
    for i in range(1, d):
        delta_ent[(i * d + 0, i)] = 1
        delta_ent[(0 * d + i, i)] = 1
    delta = RatMatrix(d * d, d, delta_ent)
    counit = RatMatrix(1, d, {(0, 0): 1})
    pi0 = counit
    pi1 = RatMatrix(n, d, {(i - 1, i): 1 for i in range(1, d)})
    return RackObject(base=L, arity=L.arity, dim=d, q=q, delta=delta,
                      counit=counit, pi0=pi0, pi1=pi1)


def double_rack(X: RackObject) -> RackObject:
    """Binary SD object on V = X (x) X induced by a ternary rack:

    q_V((x (x) y) (x) (z (x) w)) = q(x (x) z' (x) w') (x) q(y (x) z'' (x) w'')
    with Delta applied to z and w, and Delta_V, eps_V the tensor coalgebra maps.
    """
    if X.arity != 3 or X.doubled:
        raise ValueError("double_rack applies to ternary rack objects")
    d = X.dim
    I = RatMatrix.identity(d)
    spread = RatMatrix.identity(d * d).kron(X.delta.kron(X.delta))  # V(x)V -> X^6
    spread = permute_legs(spread, [d] * 6, [0, 2, 4, 1, 3, 5])
    qV = X.q.kron(X.q) @ spread
    dlV = permute_legs(X.delta.kron(X.delta), [d] * 4, [0, 2, 1, 3])
    epsV = X.counit.kron(X.counit)
    return RackObject(base=X.base, arity=2, dim=d * d, q=qV, delta=dlV,
                      counit=epsV, pi0=epsV, pi1=X.pi1.kron(X.pi1), doubled=True)


# ---- verification ----

@dataclass(frozen=True)
class SDReport:
    coassociative: bool
    counit_laws: bool
    q_coalgebra_morphism: bool
    q_counit: bool
    sd_identity: bool
    invertible: bool
    inverse_two_sided: bool

    @property
    def all_ok(self) -> bool:
        return all((self.coassociative, self.counit_laws, self.q_coalgebra_morphism,
                    self.q_counit, self.sd_identity, self.invertible,
                    self.inverse_two_sided))

    def failures(self) -> list[str]:
        return [k for k in ("coassociative", "counit_laws", "q_coalgebra_morphism",
                            "q_counit", "sd_identity", "invertible", "inverse_two_sided")
                if not getattr(self, k)]


def verify_sd(X: RackObject) -> SDReport:
    """Exact check of every rack-object axiom; the report lists any failures."""
    if X._verify_cache is not None:
        return X._verify_cache
    d = X.dim
    I = RatMatrix.identity(d)
    dl, q, ep = X.delta, X.q, X.counit
    coassoc = (dl.kron(I) @ dl) == (I.kron(dl) @ dl)
    counit_laws = (ep.kron(I) @ dl) == I and (I.kron(ep) @ dl) == I

    if X.arity == 2:
        shuffle4 = lambda m: permute_legs(m, [d] * 4, [0, 2, 1, 3])
        q_morph = (dl @ q) == (q.kron(q) @ shuffle4(dl.kron(dl)))
        q_counit = (ep @ q) == ep.kron(ep)
        lhs = q @ q.kron(I)
        rhs = q @ q.kron(q) @ shuffle4(RatMatrix.identity(d * d).kron(dl))
        sd = lhs == rhs
        # rack invertibility: A = (q (x) 1)(1 (x) Delta) must be invertible and
        # qt := (1 (x) eps) A^{-1} must also satisfy q (qt (x) 1)(1 (x) Delta) = 1 (x) eps
        A = q.kron(I) @ I.kron(dl)
        one_eps = _one_eps(d, ep)
        qt = _solve_right_inverse(one_eps, A)
        invertible = qt is not None
        two_sided = False
        if invertible:
            two_sided = (q @ qt.kron(I) @ I.kron(dl)) == one_eps
        report = SDReport(coassoc, counit_laws, q_morph, q_counit, sd,
                          invertible, two_sided)
    else:
        # ternary coalgebra morphism and SD identity
        dl3 = dl.kron(dl).kron(dl)
        shuffle6 = permute_legs(dl3, [d] * 6, [0, 2, 4, 1, 3, 5])
        q_morph = (dl @ q) == (q.kron(q) @ shuffle6)
        q_counit = (ep @ q) == ep.kron(ep).kron(ep)
        dl2 = dl.kron(I) @ dl  # X -> X^3
        E = RatMatrix.identity(d ** 3).kron(dl2.kron(dl2))  # X^5 -> X^9
        Ep = permute_legs(E, [d] * 9, [0, 3, 6, 1, 4, 7, 2, 5, 8])
        rhs = q @ (q.kron(q).kron(q) @ Ep)
        lhs = q @ q.kron(RatMatrix.identity(d * d))
        sd = lhs == rhs
        # right-translation invertibility: x(y,z) -> q(x, y', z') (x) y'' (x) z''
        A = q.kron(RatMatrix.identity(d * d)) @ permute_legs(
            RatMatrix.identity(d).kron(dl.kron(dl)), [d] * 5, [0, 1, 3, 2, 4]
        )
        one_eps2 = _one_eps3(d, ep)
        qt = _solve_right_inverse(one_eps2, A)
        invertible = qt is not None
        two_sided = False
        if invertible:
            two_sided = (q @ qt.kron(RatMatrix.identity(d * d)) @ permute_legs(
                RatMatrix.identity(d).kron(dl.kron(dl)), [d] * 5, [0, 1, 3, 2, 4]
            )) == one_eps2
        report = SDReport(coassoc, counit_laws, q_morph, q_counit, sd,
                          invertible, two_sided)
    X._verify_cache = report
    return report


def _one_eps(d, ep):
    """x (x) y -> eps(y) x as a d x d^2 matrix."""
    ent = {}
    for i in range(d):
        for j in range(d):
            v = ep[0, j]
            if v:
                ent[(i, i * d + j)] = v
    return RatMatrix(d, d * d, ent)


def _one_eps3(d, ep):
    """x (x) y (x) z -> eps(y) eps(z) x."""
    ent = {}
    for i in range(d):
        for j in range(d):
            for k in range(d):
                v = ep[0, j] * ep[0, k]
                if v:
                    ent[(i, (i * d + j) * d + k)] = v
    return RatMatrix(d, d ** 3, ent)


def _solve_right_inverse(target: RatMatrix, A: RatMatrix) -> Optional[RatMatrix]:
    """Solve Q @ A = target for Q, or None (solved row by row against A^T)."""
    At = A.transpose()
    rows = {}
    for i in range(target.rows):
        col = [target[i, j] for j in range(target.cols)]
        x = solve_linear(At, col)
        if x is None:
            return None
        for j, v in enumerate(x):
            if v:
                rows[(i, j)] = v
    return RatMatrix(target.rows, A.rows, rows)


# ---- SD cochain spaces ----

@dataclass
class SDCochain:
    degree: int
    matrix: RatMatrix  # X^(x)degree -> X


def _hom_dims(d: int, k: int) -> tuple[int, int]:
    return d, d ** k


def coderivation_constraint(X: RackObject, f: RatMatrix) -> RatMatrix:
    I = RatMatrix.identity(X.dim)
    return X.delta @ f - (f.kron(I) + I.kron(f)) @ X.delta


def c2_constraint(X: RackObject, psi: RatMatrix) -> RatMatrix:
    d = X.dim
    DD = permute_legs(X.delta.kron(X.delta), [d] * 4, [0, 2, 1, 3])
    return X.delta @ psi - (psi.kron(X.q) + X.q.kron(psi)) @ DD


def sd_cochain_space(X: RackObject, k: int) -> Subspace:
    """C^k_SD inside Hom(X^(x)k, X): coderivations (k=1), the comultiplicative
    2-cochains (k=2), or all of Hom (k=3)."""
    if X.arity != 2:
        raise ValueError("SD cochain spaces are implemented for binary racks")
    d = X.dim
    if k == 1:
        constraint = coderivation_constraint
    elif k == 2:
        constraint = c2_constraint
    elif k == 3:
        dim = d * d ** 3
        return Subspace(dim, RatMatrix.identity(dim))
    else:
        raise ValueError("degree must be 1, 2 or 3")
    rows_out, cols_in = _hom_dims(d, k)
    ambient = rows_out * cols_in
    res_dim = (d * d) * (d ** (k - 1) * d)  # constraint lands in Hom(X^k, X^2) coords
    ent = {}
    for col in range(ambient):
        elem = RatMatrix.from_vec(rows_out, cols_in, {col: 1})
        res = constraint(X, elem)
        for idx, v in res.vec().items():
            ent[(idx, col)] = v
    _, space = rank_nullspace(RatMatrix(res_dim, ambient, ent))
    return space


def in_sd_cochain_space(X: RackObject, k: int, psi: RatMatrix) -> bool:
    if k == 1:
        return coderivation_constraint(X, psi).is_zero()
    if k == 2:
        return c2_constraint(X, psi).is_zero()
    if k == 3:
        return True
    raise ValueError("degree must be 1, 2 or 3")


def sd_differential(X: RackObject, k: int, psi: Union[SDCochain, RatMatrix],
                    check: bool = True) -> SDCochain:
    """delta^1 f = f q - q(f (x) 1) - q(1 (x) f);  delta^2 as the five-term sum.

    check=False skips the C^k membership test and applies the bare formula
    (useful for illustrations like f = identity, which is not a coderivation).
    """
    if X.arity != 2:
        raise ValueError("SD differentials are implemented for binary racks")
    mat = psi.matrix if isinstance(psi, SDCochain) else psi
    d = X.dim
    I = RatMatrix.identity(d)
    if mat.rows != d or mat.cols != d ** k:
        raise ValueError("cochain shape does not match the degree")
    if check and not in_sd_cochain_space(X, k, mat):
        raise ValueError(f"cochain is not in C^{k}_SD")
    if k == 1:
        out = mat @ X.q - X.q @ mat.kron(I) - X.q @ I.kron(mat)
    elif k == 2:
        S = permute_legs(RatMatrix.identity(d * d).kron(X.delta), [d] * 4, [0, 2, 1, 3])
        out = (X.q @ mat.kron(I) + mat @ X.q.kron(I)
               - mat @ X.q.kron(X.q) @ S
               - X.q @ mat.kron(X.q) @ S
               - X.q @ X.q.kron(mat) @ S)
    else:
        raise ValueError("the differential is implemented for degrees 1 and 2")
    return SDCochain(degree=k + 1, matrix=out)


@dataclass(frozen=True)
class OperatorCohomology:
    degree: int
    dim_Z: int
    dim_B: int
    dim_H: int
    representatives: tuple  # matrices


def sd_h2(X: RackObject) -> OperatorCohomology:
    """H^2_SD = (ker delta^2 within C^2_SD) / delta^1(C^1_SD)."""
    if X.arity != 2:
        raise ValueError("sd_h2 is implemented for binary racks")
    d = X.dim
    c2 = sd_cochain_space(X, 2)
    # kernel of delta^2 restricted to C^2 coordinates
    ent = {}
    for jc in range(c2.dim):
        col = c2.basis.col_dict(jc)
        mat = RatMatrix.from_vec(d, d * d, col)
        out = sd_differential(X, 2, mat).matrix
        for idx, v in out.vec().items():
            ent[(idx, jc)] = v
    sys = RatMatrix(d ** 4, c2.dim, ent)
    _, inner = rank_nullspace(sys)
    # Z in ambient Hom coordinates
    z_basis = c2.basis @ inner.basis
    Z = Subspace(d ** 3, z_basis)
    c1 = sd_cochain_space(X, 1)
    cols = {}
    for jc in range(c1.dim):
        f = RatMatrix.from_vec(d, d, c1.basis.col_dict(jc))
        out = sd_differential(X, 1, f).matrix
        for idx, v in out.vec().items():
            cols[(idx, jc)] = v
    B = Subspace.from_columns(RatMatrix(d ** 3, c1.dim, cols))
    dim_h, reps = quotient_dim(Z, B)
    mats = tuple(RatMatrix.from_vec(d, d * d, {i: v for i, v in enumerate(r) if v})
                 for r in reps)
    return OperatorCohomology(degree=2, dim_Z=Z.dim, dim_B=B.dim, dim_H=dim_h,
                              representatives=mats)


# ---- special cochains and the Theta correspondence ----

def theta(L: LieAlgebra, phi: LieCochain, k: Optional[int] = None) -> SDCochain:
    """Theta^k(phi): (a_1,x_1)(x)...(x)(a_k,x_k) -> (0, phi(x_1 (x) ... (x) x_k))."""
    if phi.coefficients != "adjoint":
        raise ValueError("theta needs adjoint-valued cochains")
    if k is None:
        k = phi.degree
    if k != phi.degree or k not in (2, 3):
        raise ValueError("theta is implemented for degrees 2 and 3")
    n = L.dim
    d = n + 1
    ent = {}
    for idxs in _tensor_indices(d, k):
        if any(i == 0 for i in idxs):
            continue
        val = phi.eval_basis(tuple(i - 1 for i in idxs))
        col = 0
        for i in idxs:
            col = col * d + i
        for l, v in enumerate(val):
            if v:
                ent[(l + 1, col)] = v
    return SDCochain(degree=k, matrix=RatMatrix(d, d ** k, ent))


def _tensor_indices(d, k):
    from itertools import product as _product
    return _product(range(d), repeat=k)


@dataclass(frozen=True)
class NotSpecial:
    violating_blocks: tuple[str, ...]


def special_decompose(X: RackObject, psi: Union[SDCochain, RatMatrix]):
    """Invert Theta^2: recover phi with Theta^2(phi) = psi, or report why not.

    psi must vanish on every tensor with a b_0 tensorand, take values in the
    g summand, and restrict to an alternating bilinear map on g.
    """
    mat = psi.matrix if isinstance(psi, SDCochain) else psi
    d = X.dim
    n = d - 1
    if mat.rows != d or mat.cols != d * d:
        raise ValueError("expected a degree-2 cochain matrix")
    bad = []
    for j in range(d):
        if mat.col_dict(0 * d + j) or (j and mat.col_dict(j * d + 0)):
            bad.append("b0_tensorand")
            break
    for i in range(1, d):
        for j in range(1, d):
            if mat[0, i * d + j] != 0:
                bad.append("k_component")
                break
        else:
            continue
        break
    table = {}
    alternating = True
    for i in range(1, d):
        if mat[0, i * d + i] == 0 and any(mat[k + 1, i * d + i] != 0 for k in range(n)):
            alternating = False
        for j in range(i + 1, d):
            vec = tuple(mat[k + 1, i * d + j] for k in range(n))
            neg = tuple(as_scalar(-mat[k + 1, j * d + i]) for k in range(n))
            if vec != neg:
                alternating = False
            if any(v != 0 for v in vec):
                table[(i - 1, j - 1)] = vec
    if not alternating:
        bad.append("alternation")
    if bad:
        return NotSpecial(tuple(dict.fromkeys(bad)))
    return LieCochain(X.base, 2, "adjoint", table)


def theta_series(X: RackObject, cochains: Sequence[LieCochain]) -> list[RatMatrix]:
    """[q, Theta^2(phi_1), ...]: the SD image of a bracket-led deformation series."""
    out = [X.q]
    for phi in cochains[1:]:
        out.append(theta(X.base, phi).matrix)
    return out


def sd_deformation_residues(X: RackObject, psis: Sequence[Union[SDCochain, RatMatrix]]):
    """Per-hbar-degree residues of the SD identity for q + hbar psi_1 + ...

    Degree m residue: sum_{i+j=m} psi_i(psi_j (x) 1)
                    - sum_{i+j+k=m} psi_i(psi_j (x) psi_k) shuffle (1 (x) 1 (x) Delta).
    """
    mats = [p.matrix if isinstance(p, SDCochain) else p for p in psis]
    d = X.dim
    I = RatMatrix.identity(d)
    S = permute_legs(RatMatrix.identity(d * d).kron(X.delta), [d] * 4, [0, 2, 1, 3])
    N = len(mats) - 1
    residues = []
    for m in range(N + 1):
        acc = RatMatrix.zeros(d, d ** 3)
        for i in range(0, m + 1):
            j = m - i
            acc = acc + mats[i] @ mats[j].kron(I)
        for i in range(0, m + 1):
            for j in range(0, m + 1 - i):
                k = m - i - j
                acc = acc - mats[i] @ mats[j].kron(mats[k]) @ S
        residues.append(acc)
    return residues


def verify_sd_deformation(X: RackObject, psis: Sequence[Union[SDCochain, RatMatrix]]) -> bool:
    """True iff sum hbar^i psi_i satisfies self-distributivity mod hbar^(N+1)."""
    first = psis[0].matrix if isinstance(psis[0], SDCochain) else psis[0]
    if first != X.q:
        raise ValueError("psi_0 must be the undeformed rack operation q")
    return all(r.is_zero() for r in sd_deformation_residues(X, psis))
