import pytest

from src.data.knot_helper import builtin
from src.models.algebra.algebra import build_algebra
from src.models.algebra.tau import TauAssignment
from src.models.grading.budgets import SearchBudgets
from src.models.quiver.quiver import build_quiver
from src.models.scalars.scalars import FieldContext

BUILTIN_NAMES = ["unknot_1", "unknot_2", "3_1", "4_1", "5_1", "5_2", "6_1", "6_2", "6_3"]
KNOT_NAMES = ["3_1", "4_1", "5_1", "5_2", "6_1", "6_2", "6_3"]

FIELDS = [("rational", "2"), ("fp:5", "2"), ("ratfunc", None)]

TREFOIL_PD = "X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)"


@pytest.fixture(autouse=True)
def no_time_budget(monkeypatch):
    monkeypatch.delenv("KNOTALG_BUDGET_SECONDS", raising=False)


@pytest.fixture
def ratfunc():
    return FieldContext.rational_functions()


@pytest.fixture
def rationals():
    return FieldContext.rationals()


@pytest.fixture
def f5():
    return FieldContext.prime_field(5)


def algebra_of(name, context=None, q=None, variant="lambda"):
    """Algebra of a builtin with tau = q^length(alpha) in the given context (ratfunc by default)."""
    context = context or FieldContext.rational_functions()
    quiver = build_quiver(builtin(name))
    tau = TauAssignment.alpha_length_power(quiver, context, None if q is None else context.parse(q))
    return build_algebra(quiver, tau, context, variant)


@pytest.fixture
def kink():
    return algebra_of("unknot_1")


@pytest.fixture
def trefoil():
    return builtin("3_1")


@pytest.fixture
def trefoil_algebra():
    return algebra_of("3_1")


@pytest.fixture
def small_budgets():
    return SearchBudgets(max_degree=4, max_conjugator=6, max_relators=4, max_states=5000, seconds=None)
