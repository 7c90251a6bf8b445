import pytest

from weylbrauer import templates
from weylbrauer.azalg import azumaya_check
from weylbrauer.brauer import (
    InfeasibleError,
    PreconditionError,
    QuaternionClass,
    UnsupportedComposition,
    br_compose,
    br_inverse,
    class_order,
    csa_conjugate_test,
    evidently_split,
    field_automorphisms_qsqrt,
    is_sum_of_two_squares_witness,
    nontriviality_chain,
    omega_algebra,
    omega_automorphism,
    omega_class,
    quaternion,
    sum_of_squares_signs_refute,
    tensor_square_relations,
    trivial_quaternion,
    verify_group_law_concretely,
    verify_opposite_iso,
)
from weylbrauer.ring.fields import QuadraticField, QuadraticFieldElement


def test_omega_class_examples():
    assert omega_class(3, 1, 0).is_trivial
    assert omega_class(3, 1, 4) == omega_class(3, 1, 1)
    assert omega_class(3, 1, 2) == br_compose(omega_class(3, 1, 1), omega_class(3, 1, 1))


def test_br_compose_examples():
    assert br_compose(omega_class(3, 1, 1), omega_class(3, 1, 2)).is_trivial
    assert br_compose(omega_class(5, 1, 1), omega_class(5, 1, 1)) == omega_class(5, 1, 2)
    for c in range(5):
        assert br_compose(omega_class(5, 1, c), omega_class(5, 1, 0)) == omega_class(5, 1, c)


def test_br_compose_rejects_mixed_families():
    with pytest.raises(ValueError):
        br_compose(omega_class(3, 1, 1), omega_class(5, 1, 1))
    with pytest.raises(ValueError):
        br_compose(omega_class(3, 1, 1), trivial_quaternion(None))
    K = QuadraticField(2)
    with pytest.raises(UnsupportedComposition):
        br_compose(QuaternionClass(2, -1, -K.sqrt), QuaternionClass(2, -1, K.sqrt))


def test_inverse_and_order():
    assert br_inverse(omega_class(3, 1, 0)).is_trivial
    assert br_inverse(omega_class(3, 1, 1)) == omega_class(3, 1, 2)
    for c in range(5):
        assert br_compose(omega_class(5, 1, c), br_inverse(omega_class(5, 1, c))).is_trivial
    assert class_order(omega_class(3, 1, 0)) == 1
    assert class_order(omega_class(3, 1, 1)) == 3
    assert class_order(omega_class(5, 1, 4)) == 5


def test_omega_automorphism():
    phi = omega_automorphism(3, 1, 2)
    z1, z2 = phi.ring.components[0].gens()
    assert phi.images[0] == (z1, z2.scale(2))  # c^-1 = 2 in F_3
    assert phi.compose(phi.inverse()).is_identity()
    with pytest.raises(PreconditionError):
        omega_automorphism(3, 1, 0)


def test_omega_zero_algebra_is_matrix_algebra():
    M = omega_algebra(3, 1, 0)
    assert M.rank == 9 and M.matrix_size == 3


def test_group_law_certificate_31():
    cert = verify_group_law_concretely(3, 1, 1, 1)
    assert cert.passed
    assert cert.verdict.iso_witness["method"] == "determinant"
    assert cert.source.rank == cert.target.rank == 81


def test_group_law_certificate_51_uses_generators_and_inverse():
    cert = verify_group_law_concretely(5, 1, 2, 1)
    assert cert.passed
    assert cert.verdict.mode == "generators"
    assert cert.extras["methods"] == {"hom": "generators", "iso": "inverse"}


def test_group_law_negative_control():
    cert = verify_group_law_concretely(3, 1, 1, 1, zeta_template=templates.ZETA_SWAPPED, alpha_template=templates.ALPHA_SWAPPED)
    assert not cert.passed


def test_group_law_preconditions():
    with pytest.raises(PreconditionError):
        verify_group_law_concretely(3, 1, 1, 2)
    with pytest.raises(PreconditionError):
        verify_group_law_concretely(3, 1, 0, 1)
    with pytest.raises(InfeasibleError):
        verify_group_law_concretely(3, 2, 1, 1)
    with pytest.raises(ValueError):
        verify_group_law_concretely(2, 1, 1, 1)


@pytest.mark.parametrize("p,n", [(3, 1), (5, 1), (3, 2)])
def test_relations_all_parameters(p, n):
    for c in range(1, p):
        for cp in range(1, p):
            if (c + cp) % p:
                assert all(r["holds"] for r in tensor_square_relations(p, n, c, cp))


@pytest.mark.parametrize("p", [3, 5])
def test_opposite_certificate(p):
    assert verify_opposite_iso(p, 1).passed
    control = verify_opposite_iso(p, 1, templates.OPPOSITE_IMAGE_WRONG)
    assert not control.verdict.is_hom


def test_nontriviality_chain():
    chain = nontriviality_chain(3, 1, 2, trials=100)
    assert chain["premise"]["pairs_checked"] == 100
    assert chain["deduction"]
    with pytest.raises(PreconditionError):
        nontriviality_chain(3, 1, 0)


def test_quaternions_are_azumaya():
    K = QuadraticField(2)
    for a, b, field in ((-1, -1, None), (-1, -K.sqrt, K), (1, 1, None)):
        A = quaternion(a, b, field)
        A.verify()
        assert azumaya_check(A).is_azumaya


def test_quaternion_relations():
    H = quaternion(-1, -1)
    i, j, k = (H.basis(t) for t in (1, 2, 3))
    assert i * i == H.scalar(-1) and j * j == H.scalar(-1)
    assert i * j == k and j * i == -k


def test_split_and_sums_of_squares():
    K = QuadraticField(2)
    assert evidently_split(None, 1, 1)
    assert not evidently_split(None, -1, -1)
    w = is_sum_of_two_squares_witness(K, 2)
    assert w == (1, 1)
    refute = sum_of_squares_signs_refute(K, QuadraticFieldElement(-1, 0, 2))
    assert refute["refuted"]


def test_field_automorphisms_and_csa_test():
    data = field_automorphisms_qsqrt(2)
    assert len(data["labels"]) == 2
    out = csa_conjugate_test(2)
    assert out["out_A_trivial"]
    assert not out["minus_one_sum_of_two_squares"]


def test_quaternion_class_identity():
    assert trivial_quaternion(2).is_trivial
    assert QuaternionClass(2, 1, 1).is_trivial
