import pytest

from ybrack.cohomology import (
    LieCochain,
    bracket_cochain,
    ce_differential,
    cochain_space_dim,
    quadratic_term,
)
from ybrack.perturb import (
    DeformationSeries,
    HbarOperator,
    Obstructed,
    assemble_series,
    integrate_deformation,
    verify_series_sd,
    verify_ybe_mod,
    ybe_mod_residues,
)
from ybrack.rack import build_rack, theta_series, verify_sd_deformation
from ybrack.yb import build_yb, lambda2


def _non_cocycle(L):
    dim = cochain_space_dim(L, 2)
    for i in range(dim):
        coords = [0] * dim
        coords[i] = 1
        phi = LieCochain.from_coords(L, 2, "adjoint", coords)
        if not ce_differential(L, phi).is_zero():
            return phi
    raise AssertionError


def test_zero_seed_gives_zero_series(h2):
    S = integrate_deformation(h2, LieCochain.zero(h2, 2, "adjoint"), 3)
    assert isinstance(S, DeformationSeries)
    assert all(c.is_zero() for c in S.cochains[1:])
    H = assemble_series(h2, S)
    R = build_yb(build_rack(h2))
    assert H.coefficients[0] == R.matrix
    assert all(c.is_zero() for c in H.coefficients[1:])
    assert verify_ybe_mod(H)


def test_rejects_non_cocycle_seed(h2):
    with pytest.raises(ValueError):
        integrate_deformation(h2, _non_cocycle(h2), 2)


def test_coboundary_seed_integrates_sl2(sl2):
    h = LieCochain(sl2, 1, "adjoint", {(0,): (0, 0, 1), (1,): (1, 0, 0)})
    phi1 = ce_differential(sl2, h)
    assert not phi1.is_zero()
    S = integrate_deformation(sl2, phi1, 4)
    assert isinstance(S, DeformationSeries)
    assert S.is_valid()
    assert verify_ybe_mod(assemble_series(sl2, S))


def test_integration_with_nonzero_quadratic_terms(h2, h2_lie_h2):
    # pick classes whose self-bracket is nonzero so the solver genuinely works
    hit = 0
    for phi in h2_lie_h2.representatives:
        if quadratic_term(h2, phi, phi).is_zero():
            continue
        hit += 1
        S = integrate_deformation(h2, phi, 4)
        assert isinstance(S, DeformationSeries)
        assert S.is_valid()
        assert not S.cochains[2].is_zero()
        H = assemble_series(h2, S)
        assert verify_ybe_mod(H)
        assert verify_series_sd(h2, S)
        if hit == 2:
            break
    assert hit >= 2


def test_obstructed_integration_reports_coset_data(h1):
    from ybrack.cohomology import ce_cohomology

    reps = ce_cohomology(h1, 2, "adjoint").representatives
    found = None
    for a in range(len(reps)):
        for b in range(a + 1, len(reps)):
            res = integrate_deformation(h1, reps[a] + reps[b], 4)
            if isinstance(res, Obstructed):
                found = res
                break
        if found:
            break
    assert found is not None, "no obstructed pair found"
    assert found.order >= 2
    rep = found.report
    assert rep.is_cocycle           # the rhs is always closed
    assert not rep.is_coboundary    # and here genuinely non-exact
    assert not rep.rhs.is_zero()
    # the coset certificate: rhs not in the image space
    assert not rep.image_space.contains(rep.rhs.coords())


def test_gauge_offset_changes_solution_but_stays_valid(h2, h2_lie_h2):
    phi1 = h2_lie_h2.representatives[0]
    off = h2_lie_h2.representatives[1]
    S0 = integrate_deformation(h2, phi1, 3)
    S1 = integrate_deformation(h2, phi1, 3, offsets={2: off})
    assert isinstance(S1, DeformationSeries)
    assert S1.is_valid()
    assert S1.cochains[2].coords() == (S0.cochains[2] + off).coords()
    assert verify_ybe_mod(assemble_series(h2, S1))


def test_offset_must_be_cocycle(h2, h2_lie_h2):
    with pytest.raises(ValueError):
        integrate_deformation(
            h2, h2_lie_h2.representatives[0], 3, offsets={2: _non_cocycle(h2)}
        )


def test_truncation_preserves_validity(h2, h2_lie_h2):
    S = integrate_deformation(h2, h2_lie_h2.representatives[4], 4)
    assert isinstance(S, DeformationSeries)
    for M in range(S.order + 1):
        T = S.truncate(M)
        assert T.is_valid()
        assert verify_ybe_mod(assemble_series(h2, T))


def test_assemble_order_one_is_infinitesimal(h2, h2_lie_h2):
    phi1 = h2_lie_h2.representatives[0]
    S = DeformationSeries(h2, 1, (bracket_cochain(h2), phi1))
    H = assemble_series(h2, S)
    R = build_yb(build_rack(h2))
    assert H.coefficients[0] == R.matrix
    assert H.coefficients[1] == lambda2(h2, phi1).matrix
    assert verify_ybe_mod(H)


def test_assembled_series_closed_form(h2, h2_lie_h2):
    # sum_m C_m acts on b_i (x) b_j as b_j (x) b_i + b_0 (x) (0, phihat(e_i, e_j))
    S = integrate_deformation(h2, h2_lie_h2.representatives[4], 3)
    H = assemble_series(h2, S)
    d = h2.dim + 1
    total = H.coefficients[0]
    for c in H.coefficients[1:]:
        total = total + c
    phihat = S.cochains[0]
    for c in S.cochains[1:]:
        phihat = phihat + c
    for i in range(1, d):
        for j in range(1, d):
            col = total.col_dict(i * d + j)
            want = {j * d + i: 1}
            for k, v in enumerate(phihat.eval_basis((i - 1, j - 1))):
                if v:
                    want[0 * d + (k + 1)] = want.get(0 * d + (k + 1), 0) + v
            assert col == {r: v for r, v in want.items() if v != 0}


def test_verify_ybe_mod_negative_control(h2):
    bad = _non_cocycle(h2)
    R = build_yb(build_rack(h2))
    H = HbarOperator(1, (R.matrix, lambda2(h2, bad).matrix))
    residues = ybe_mod_residues(H)
    assert residues[0].is_zero()
    assert not residues[1].is_zero()
    assert not verify_ybe_mod(H)


def test_theta_image_consistency(h2, h2_lie_h2):
    X = build_rack(h2)
    S = integrate_deformation(h2, h2_lie_h2.representatives[5], 3)
    psis = theta_series(X, list(S.cochains))
    assert verify_sd_deformation(X, psis)


def test_hbar_operator_arithmetic(h2, h2_lie_h2):
    S = integrate_deformation(h2, h2_lie_h2.representatives[0], 2)
    H = assemble_series(h2, S)
    two = H + H
    assert two.coefficients[1] == H.coefficients[1] + H.coefficients[1]
    prod = H.compose(H)
    assert prod.coefficients[0] == H.coefficients[0] @ H.coefficients[0]
    assert prod.coefficients[1] == (
        H.coefficients[0] @ H.coefficients[1] + H.coefficients[1] @ H.coefficients[0]
    )


def test_series_invariant_enforced(h2, h2_lie_h2):
    phi1 = h2_lie_h2.representatives[0]
    bad = DeformationSeries(h2, 1, (bracket_cochain(h2), _non_cocycle(h2)))
    assert not bad.is_valid()
    with pytest.raises(ValueError):
        assemble_series(h2, bad)
