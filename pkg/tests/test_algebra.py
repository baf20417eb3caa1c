import numpy as np
import pytest

from src.data.knot_helper import builtin
from src.models.algebra.algebra import BasisKind, Variant, build_algebra
from src.models.algebra.oracle import QuotientOracle, compare_with_oracle
from src.models.algebra.relations import written
from src.models.algebra.tau import TauAssignment
from src.models.diagram.diagram import Sign
from src.models.exceptions import AlgebraError
from src.models.quiver.quiver import build_quiver
from src.models.scalars.scalars import FieldContext
from tests.conftest import BUILTIN_NAMES, FIELDS, algebra_of


def test_kink_basis(kink):
    assert [path.describe() for path in kink.basis] == ["e0", "follow(1,1)", "follow(2,1)", "gamma+(0)"]


def test_kink_products(kink):
    q = kink.field.indeterminate()
    assert kink.product(2, 1) == (3, kink.field.one())
    assert kink.product(1, 2) == (3, q)
    assert kink.product(1, 1) is None
    assert kink.product(2, 2) is None
    assert kink.product(0, 3) == (3, kink.field.one())


def test_kink_statistics(kink):
    assert kink.dimension == 4
    assert kink.radical_series() == [4, 3, 1, 0]
    assert kink.loewy_length() == 3
    assert kink.socle_indices() == [3]
    assert kink.cartan_matrix().tolist() == [[4]]


def test_kink_reduce_path(kink):
    q = kink.field.indeterminate()
    assert kink.reduce_path([1, 1]).is_zero
    assert kink.reduce_path([2, 1]) == kink.basis_element(3)
    assert kink.reduce_path([1, 2]) == kink.basis_element(3, q)
    assert kink.reduce_path([1, 2, 1]).is_zero


def test_reduce_path_rejects_non_composable_arrows(trefoil_algebra):
    with pytest.raises(AlgebraError, match="not composable"):
        trefoil_algebra.reduce_path([1, 2])
    with pytest.raises(AlgebraError):
        trefoil_algebra.reduce_path([])
    with pytest.raises(AlgebraError):
        trefoil_algebra.reduce_path([7])


def test_monomial_kink():
    A = algebra_of("unknot_1", variant="monomial")
    assert A.dimension == 5
    negative_cycle = A.follow_index(2, 2)
    assert A.product(1, 2) == (negative_cycle, A.field.one())
    assert A.socle_dimension() == 2


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_lambda_dimension(name):
    A = algebra_of(name)
    c = A.c
    assert A.dimension == 4 * c * c
    assert int(A.cartan_matrix().sum()) == A.dimension
    assert A.socle_dimension() == c
    assert A.semisimple_quotient_dimension() == c
    assert A.radical_series()[1] == A.dimension - c
    assert A.loewy_length() == A.n_D + 1


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_monomial_dimension(name):
    A = algebra_of(name, variant="monomial")
    c = A.c
    assert A.dimension == 4 * c * c + c


def test_unknot_with_two_kinks():
    A = algebra_of("unknot_2")
    assert A.dimension == 16
    assert A.c == 2


def test_trefoil_dimension(trefoil_algebra):
    assert trefoil_algebra.dimension == 36


@pytest.mark.parametrize("name", BUILTIN_NAMES)
@pytest.mark.parametrize("field, q", FIELDS)
def test_builtins_over_each_field(name, field, q):
    A = algebra_of(name, FieldContext.from_string(field), q)
    assert A.dimension == 4 * A.c * A.c
    assert A.verify_admissible().passed
    report = compare_with_oracle(A)
    assert report.passed, report.witness


@pytest.mark.parametrize("name", BUILTIN_NAMES)
@pytest.mark.parametrize("variant", ["lambda", "monomial"])
def test_oracle_agrees(name, variant):
    A = algebra_of(name, variant=variant)
    report = compare_with_oracle(A)
    assert report.passed, report.witness
    assert report.details["oracle_dimension"] == A.dimension


def test_oracle_kills_sign_mismatches():
    context = FieldContext.rational_functions()
    quiver = build_quiver(builtin("unknot_1"))
    oracle = QuotientOracle(quiver, TauAssignment.alpha_length_power(quiver, context), context, Variant.LAMBDA)
    assert oracle.rewrite((1, 1)) is None
    assert oracle.dimension() == 4


def test_exchange_relation(trefoil_algebra):
    A = trefoil_algebra
    q = A.quiver
    for vertex in q.vertices:
        minus = written(q.path_arrows(q.fundamental_cycle(vertex, Sign.NEGATIVE)))
        plus = written(q.path_arrows(q.fundamental_cycle(vertex, Sign.POSITIVE)))
        assert A.reduce_path(minus) == A.reduce_path(plus).scale(A.tau(vertex))
        assert A.reduce_path(plus) == A.basis_element(A.cycle_index(vertex))


def test_paths_longer_than_a_turn_vanish(trefoil_algebra):
    A = trefoil_algebra
    q = A.quiver
    for arrow in q.arrows:
        path = written(q.path_arrows(q.follow_path(arrow.id, A.n_D + 1)))
        assert A.reduce_path(path).is_zero


def test_unit_and_elements(trefoil_algebra):
    A = trefoil_algebra
    x = A.basis_element(5) + A.basis_element(9).scale(3)
    assert A.one() * x == x
    assert x * A.one() == x
    assert (x - x).is_zero
    assert A.zero() * x == A.zero()


def test_elements_of_different_algebras_do_not_mix(kink, trefoil_algebra):
    with pytest.raises(AlgebraError):
        kink.one() + trefoil_algebra.one()


def test_tau_must_live_in_the_algebra_field():
    quiver = build_quiver(builtin("3_1"))
    tau = TauAssignment.constant(quiver, FieldContext.rationals().from_integer(2))
    with pytest.raises(AlgebraError):
        build_algebra(quiver, tau, FieldContext.prime_field(5))


def test_zero_tau_is_rejected():
    quiver = build_quiver(builtin("3_1"))
    with pytest.raises(AlgebraError):
        TauAssignment.constant(quiver, FieldContext.rationals().zero())


def test_relations(trefoil_algebra):
    relations = trefoil_algebra.relations()
    assert len(relations.type_one) == 6
    assert len(relations.type_two) == 3
    assert relations.type_two_prime == ()
    monomial = algebra_of("3_1", variant="monomial").relations()
    assert monomial.type_two == ()
    assert len(monomial.type_two_prime) == 6
    assert all(len(path) == 7 for path in monomial.type_two_prime)


def test_basis_order_and_export(trefoil_algebra):
    A = trefoil_algebra
    kinds = [path.kind for path in A.basis]
    assert kinds[:3] == [BasisKind.TRIVIAL] * 3
    assert kinds[-3:] == [BasisKind.CYCLE_PLUS] * 3
    table = A.basis_table()
    assert len(table) == 36
    payload = A.to_json()
    assert payload["dimension"] == 36
    assert payload["tau"]["values"]["0"] == "q^3"
    assert np.array_equal(np.array(payload["cartan_matrix"]), A.cartan_matrix())
