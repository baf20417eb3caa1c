import pytest

from src.models.algebra.relations import RelationSet
from src.models.diagram.diagram import Sign
from src.models.exceptions import AlgebraError
from src.models.properties.biserial import SpecialBiserialVerifier, check_special_biserial
from src.models.properties.frobenius import (
    FrobeniusVerifier,
    check_frobenius,
    frobenius_form,
    gram_table,
    nakayama_permutation,
)
from src.models.properties.structure import check_associativity, check_basic, check_unit
from src.models.quiver.quiver import SignedArrow, SignedQuiver
from src.models.scalars.scalars import FieldContext
from tests.conftest import BUILTIN_NAMES, FIELDS, algebra_of

P, M = Sign.POSITIVE, Sign.NEGATIVE


@pytest.mark.parametrize("name", BUILTIN_NAMES)
@pytest.mark.parametrize("variant", ["lambda", "monomial"])
def test_special_biserial(name, variant):
    report = SpecialBiserialVerifier().verify(algebra_of(name, variant=variant))
    assert report.passed
    assert report.witness is None
    assert all(row["out"] == 2 and row["in"] == 2 for row in report.details["vertices"])


def test_three_outgoing_arrows_break_the_first_condition():
    arrows = [
        SignedArrow(1, 0, P, 1, M, 0),
        SignedArrow(2, 0, M, 1, P, 0),
        SignedArrow(3, 0, P, 1, P, 0),
        SignedArrow(4, 1, M, 0, M, 0),
    ]
    q = SignedQuiver([0, 1], arrows, validate=False)
    report = check_special_biserial(q, RelationSet((), (), ()))
    assert not report.passed
    assert report.witness == {"condition": 1, "vertex": 0, "out": 3, "in": 1}


def test_missing_monomials_break_the_second_condition(kink):
    report = check_special_biserial(kink.quiver, RelationSet((), (), ()))
    assert not report.passed
    assert report.witness == {"condition": 2, "arrow": 1, "continuations": [1, 2]}


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_frobenius_form(name):
    A = algebra_of(name)
    report = check_frobenius(A)
    assert report.passed, report.witness
    assert report.details["triples_checked"] == A.dimension ** 3
    assert nakayama_permutation(A) == {vertex: vertex for vertex in A.quiver.vertices}


@pytest.mark.parametrize("name", BUILTIN_NAMES)
@pytest.mark.parametrize("field, q", FIELDS)
def test_structure_over_each_field(name, field, q):
    A = algebra_of(name, FieldContext.from_string(field), q)
    assert SpecialBiserialVerifier().verify(A).passed
    assert check_basic(A).passed
    assert check_unit(A).passed
    assert check_associativity(A).passed
    report = check_frobenius(A)
    assert report.passed, report.witness


def test_perturbed_form_is_caught(trefoil_algebra):
    A = trefoil_algebra
    report = check_frobenius(A, frobenius_form(A).perturbed())
    assert not report.passed
    assert report.witness["x"] == "e0"
    assert report.witness["y"] == "gamma+(0)"
    assert report.witness["z"] == "e0"
    assert report.witness["beta(xy,z)"] == "2"
    assert report.witness["beta(x,yz)"] == "1"


def test_perturbation_must_change_the_form():
    A = algebra_of("3_1", FieldContext.prime_field(2), "1")
    with pytest.raises(AlgebraError):
        frobenius_form(A).perturbed(factor=1)


def test_frobenius_pairing(kink):
    F = frobenius_form(kink)
    q = kink.field.indeterminate()
    assert F.partner == (3, 2, 1, 0)
    assert F.weight[2] == q
    assert F.beta(2, 1) == 1
    assert F.beta(1, 2) == q
    assert F.beta(1, 1).is_zero
    assert F.trace(kink.basis_element(3)) == 1
    assert F.trace(kink.basis_element(0)).is_zero
    assert gram_table(F)["partner"].tolist() == ["gamma+(0)", "follow(2,1)", "follow(1,1)", "e0"]


def test_form_is_nondegenerate(trefoil_algebra):
    A = trefoil_algebra
    F = frobenius_form(A)
    for index in range(A.dimension):
        x = A.basis_element(index)
        assert any(not F.form(x, A.basis_element(other)).is_zero for other in range(A.dimension))


def test_form_is_the_cycle_coefficient_of_the_product(trefoil_algebra):
    A = trefoil_algebra
    F = frobenius_form(A)
    cycles = {A.cycle_index(vertex) for vertex in A.quiver.vertices}
    for i in range(A.dimension):
        for j in range(A.dimension):
            product = A.product(i, j)
            expected = product[1] if product is not None and product[0] in cycles else A.field.zero()
            assert F.beta(i, j) == expected


def test_monomial_variant_has_no_frobenius_form():
    with pytest.raises(AlgebraError):
        frobenius_form(algebra_of("3_1", variant="monomial"))


def test_frobenius_verifier_reports_the_nakayama_permutation(kink):
    report = FrobeniusVerifier().verify(kink)
    assert report.passed
    assert report.details["nakayama_permutation"] == {"0": 0}


@pytest.mark.parametrize("name", BUILTIN_NAMES)
@pytest.mark.parametrize("variant", ["lambda", "monomial"])
def test_structure_checks(name, variant):
    A = algebra_of(name, variant=variant)
    assert check_unit(A).passed
    basic = check_basic(A)
    assert basic.passed
    assert basic.details["top_radical_power_dimension"] == A.c * (1 if variant == "lambda" else 2)
    report = check_associativity(A)
    assert report.passed
    assert report.details["triples_checked"] == A.dimension ** 3


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_admissible(name):
    report = algebra_of(name).verify_admissible()
    assert report.passed
    # one type-I monomial per arrow, and n_D arrows
    assert report.details["nilpotency_index"] == report.details["type_one"] + 1
