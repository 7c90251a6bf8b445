import pytest
from oracles import free_algebra_relations

from weylbrauer import templates
from weylbrauer.azalg import (
    AlgebraError,
    AlgebraHom,
    FreeAlgebra,
    GeneratingSet,
    action_map_matrix,
    azumaya_check,
    basis_generators,
    check_hom,
    diffop_representation,
    matrix_algebra,
    opposite,
    pure_tensor,
    pushforward,
    restricted_weyl_algebra,
    tensor_over_R,
    verify_by_generators,
    weyl_structure_constants,
)
from weylbrauer.brauer import (
    _ordered_power_products,
    omega_automorphism,
    tensor_square_relations,
)
from weylbrauer.cli.suites import dual_numbers
from weylbrauer.ring.fields import PrimeField
from weylbrauer.ring.matrix import poly_det
from weylbrauer.ring.poly import PolyRing
from weylbrauer.weyl import WeylContext, central_coordinates

F3 = PolyRing(PrimeField(3), 0)


@pytest.fixture(scope="module")
def A():
    return weyl_structure_constants(3, 1)


def idx(A, label):
    return A.labels.index(label)


def test_weyl_constants_shape(A):
    assert A.rank == 9
    assert A.base == WeylContext(3, 1).center
    assert A.verify()["triples_checked"] == 729


def test_weyl_constants_examples(A):
    x1, x2 = A.basis(idx(A, "x1")), A.basis(idx(A, "x2"))
    assert (x2 * x1).coordinates() == {idx(A, "x1*x2"): A.base.one(), idx(A, "1"): A.base.one()}
    z1 = A.base.gen(0)
    sq = A.basis(idx(A, "x1^2"))
    assert (sq * sq).coordinates() == {idx(A, "x1"): z1}


def test_weyl_constants_match_pbw(A):
    ctx = A.weyl
    mons = [ctx.monomial(e) for e in A.exponents]
    for i in range(A.rank):
        for j in range(A.rank):
            expected = {A.exponents.index(e): f for e, f in central_coordinates(mons[i] * mons[j]).items()}
            assert (A.basis(i) * A.basis(j)).coordinates() == expected


def test_verify_rejects_non_associative():
    one = F3.one()
    unit_rows = {(0, k): {k: one} for k in range(3)} | {(k, 0): {k: one} for k in range(3)}
    # basis 1, u, v with u*u = v, u*v = 0, v*u = 1: (u u) u = 1 but u (u u) = 0
    bad = FreeAlgebra(F3, 3, unit_rows | {(1, 1): {2: one}, (2, 1): {0: one}}, {0: one}, ["1", "u", "v"])
    with pytest.raises(AlgebraError, match="non-associative"):
        bad.verify()
    assert bad.verify("skip")["unit"]


def test_matrix_algebra():
    M1 = matrix_algebra(1, F3)
    assert M1.rank == 1
    M2 = matrix_algebra(2, F3)
    E = [M2.basis(k) for k in range(4)]
    assert E[1] * E[2] == E[0]
    assert (E[2] * E[2]).is_zero()
    assert M2.verify()["triples_checked"] == 64


def test_tensor_rank_and_identity_case(A):
    T = tensor_over_R(A, A)
    assert T.rank == 81
    assert T.verify(associativity="generators", generators=list(range(T.rank)))["triples_checked"] == 81**3
    T1 = tensor_over_R(A, matrix_algebra(1, A.base))
    assert T1.rank == A.rank and T1.constants_dict() == A.constants_dict()


def test_pure_tensors_commute(A):
    T = tensor_over_R(A, A)
    a = A.basis(idx(A, "x2"))
    b = A.basis(idx(A, "x1"))
    left = pure_tensor(T, a, A.one())
    right = pure_tensor(T, A.one(), b)
    assert left * right == right * left == pure_tensor(T, a, b)


def test_opposite(A):
    Aop = opposite(A)
    x1, x2 = Aop.basis(idx(A, "x1")), Aop.basis(idx(A, "x2"))
    assert x1 * x2 - x2 * x1 == Aop.one()
    assert opposite(Aop) == A


def test_pushforward_changes_pth_powers(A):
    B = pushforward(A, omega_automorphism(3, 1, 2))
    x1, x2 = B.basis(idx(A, "x1")), B.basis(idx(A, "x2"))
    z1, z2 = B.base.gens()
    assert x1**3 == B.central(z1)
    assert x2**3 == B.central(z2.scale(2))
    assert pushforward(A, omega_automorphism(3, 1, 1)) == A


def test_action_map_small_cases():
    M = action_map_matrix(matrix_algebra(1, F3))
    assert M.shape == (1, 1) and M.entries[0][0] == F3.one()
    M2 = action_map_matrix(matrix_algebra(2, F3))
    assert M2.shape == (16, 16) and not poly_det(M2).is_zero()
    D = action_map_matrix(dual_numbers(F3))
    assert D.shape == (4, 4) and poly_det(D).is_zero()


def test_azumaya_small_cases():
    assert azumaya_check(matrix_algebra(2, F3)).is_azumaya
    assert not azumaya_check(dual_numbers(F3)).is_azumaya


def test_azumaya_budget_falls_back_to_grid():
    cert = azumaya_check(matrix_algebra(3, F3), budget_seconds=0.0)
    assert cert.is_azumaya
    assert cert.det_report.ran() == ["grid"]
    assert cert.det_report.strategies["bareiss"].startswith("skipped")


def test_check_hom_identity(A):
    h = AlgebraHom(A, A, [A.basis(k) for k in range(A.rank)])
    v = check_hom(h)
    assert v.is_hom and v.is_iso


def test_check_hom_rejects_non_multiplicative(A):
    x1 = A.basis(idx(A, "x1"))
    images = _ordered_power_products([x1, x1], A.exponents, A.one())
    v = check_hom(AlgebraHom(A, A, images))
    assert not v.is_hom and v.failures


def test_diffop_representation():
    d = diffop_representation(3)
    assert d.verdict.is_hom and d.verdict.is_iso
    assert d.rank_of_image == 9
    assert (d.nilpotency_t, d.nilpotency_d) == (3, 3)
    R = restricted_weyl_algebra(3)
    assert R.verify()["unit"]


@pytest.mark.parametrize("c,cp", [(1, 1), (2, 2)])
@pytest.mark.parametrize("swapped", [False, True])
def test_tensor_bridge_matches_structure_constants(c, cp, swapped):
    zt, at = (templates.ZETA_SWAPPED, templates.ALPHA_SWAPPED) if swapped else (templates.ZETA, templates.ALPHA)
    bridge = tensor_square_relations(3, 1, c, cp, zt, at)
    direct = free_algebra_relations(3, 1, c, cp, zt, at)
    assert bridge == direct
    assert all(r["holds"] for r in bridge) != swapped


def test_generator_rows_agree_with_full_check(A):
    M3 = matrix_algebra(3, A.base)
    for X in (A, tensor_over_R(A, A), tensor_over_R(A, M3), M3):
        rows, gset = basis_generators(X)
        gset.verify(X)
        assert verify_by_generators(X)["generator_rows"] == len(rows) <= X.rank
        assert X.verify()["associativity"] == "full"
    assert len(basis_generators(tensor_over_R(A, A))[0]) == 4
    assert len(basis_generators(tensor_over_R(A, M3))[0]) == 2 * 3 + 9


def test_generator_certificate_rejects_bad_words(A):
    rows, gset = basis_generators(A)
    broken = GeneratingSet(gset.elements, dict(gset.words))
    broken.words[A.labels.index("x1*x2")] = [(1, (1, 0))]  # x2*x1 != x1*x2
    with pytest.raises(AlgebraError, match="evaluates to"):
        broken.verify(A)
