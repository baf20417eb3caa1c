import pytest
from sympy.combinatorics import Permutation

from src.data.knot_helper import builtin
from src.models.exceptions import BudgetError
from src.models.grading.budgets import BUDGET_SECONDS_ENV, SearchBudgets
from src.models.grading.certificates import Certificate, Representation, RelatorStep, Verdict
from src.models.grading.checks import ConnectedVerdict, HomogeneityVerdict, check_connected, check_homogeneity
from src.models.grading.decider import RelatorSearch, decide_trivial, verify_certificate
from src.models.grading.degrees import arrow_degrees, basis_degrees, homogeneity_words, walk_degree
from src.models.grading.representations import (
    RepresentationSearch,
    canonical_permutation,
    conjugacy_class,
    cycle_types,
    enumerate_representations,
)
from src.models.grading.wirtinger import abelianization_rank, wirtinger
from src.models.grading.words import GroupWord, commutator
from src.models.quiver.quiver import build_quiver, reverse_walk
from tests.conftest import BUILTIN_NAMES, KNOT_NAMES, algebra_of

A, B, C = 0, 1, 2


def word(*letters):
    return GroupWord(tuple(letters))


def s3_representation():
    return Representation(
        3,
        (
            Permutation([[0, 1]], size=3),
            Permutation([[1, 2]], size=3),
            Permutation([[0, 2]], size=3),
        ),
    )


# words


def test_free_reduction():
    assert word((A, 1), (B, 1), (B, -1), (A, -1)).is_identity
    assert word((A, 1), (B, -1)).render() == "x1 x2^-1"
    assert GroupWord.identity().render() == "1"
    g = word((A, 1), (C, -1), (B, 1))
    assert (g * g.inverse()).is_identity
    assert len(g * word((B, -1), (C, 1))) == 1


def test_exponents():
    with pytest.raises(ValueError):
        word((A, 2))
    g = word((A, 1), (B, 1), (A, 1), (C, -1))
    assert g.exponent_sum() == 2
    assert g.inverse().exponent_sum() == -2
    assert g.to_json() == [[A, 1], [B, 1], [A, 1], [C, -1]]


def test_commutator():
    a, b = GroupWord.generator(A), GroupWord.generator(B)
    assert commutator(a, a).is_identity
    assert commutator(a, b) == word((A, 1), (B, 1), (A, -1), (B, -1))
    assert commutator(a, b).inverse() == commutator(b, a)


# budgets


def test_default_budgets():
    budgets = SearchBudgets()
    assert (budgets.max_degree, budgets.max_conjugator, budgets.max_relators) == (6, 12, 8)
    assert budgets.max_states == 200000
    assert budgets.seconds is None
    assert budgets.deadline() is None


@pytest.mark.parametrize(
    "values", [{"max_degree": 0}, {"max_conjugator": -1}, {"max_relators": 1.5}, {"max_states": 0}, {"seconds": 0}]
)
def test_budgets_must_be_positive(values):
    with pytest.raises(BudgetError):
        SearchBudgets(**values)


def test_budget_seconds_from_environment(monkeypatch):
    monkeypatch.setenv(BUDGET_SECONDS_ENV, "2.5")
    assert SearchBudgets().seconds == 2.5
    monkeypatch.setenv(BUDGET_SECONDS_ENV, "soon")
    with pytest.raises(BudgetError):
        SearchBudgets()


def test_decide_requires_budgets(trefoil):
    with pytest.raises(BudgetError):
        decide_trivial(GroupWord.generator(A), wirtinger(trefoil), {"max_degree": 3})


# presentation and degrees


def test_trefoil_presentation(trefoil):
    p = wirtinger(trefoil)
    assert p.rank == 3
    assert p.names() == ["x1", "x2", "x3"]
    assert p.relators == (
        word((A, 1), (B, -1), (C, -1), (B, 1)),
        word((B, 1), (C, -1), (A, -1), (C, 1)),
        word((C, 1), (A, -1), (B, -1), (A, 1)),
    )
    assert p.to_json()["relators"][0] == {"crossing": 0, "sign": "-", "word": "x1 x2^-1 x3^-1 x2"}


def test_kink_relator_is_trivial():
    p = wirtinger(builtin("unknot_1"))
    assert p.rank == 1
    assert p.relators[0].is_identity
    assert abelianization_rank(p) == 1


@pytest.mark.parametrize("name", KNOT_NAMES)
def test_abelianization_rank(name):
    assert abelianization_rank(wirtinger(builtin(name))) == 1


def test_s3_representation_satisfies_the_trefoil(trefoil):
    representation = s3_representation()
    assert representation.satisfies(wirtinger(trefoil).relators)
    assert representation.image_group().order() == 6
    assert representation.to_json()["images"]["x1"] == [1, 0, 2]


def test_trefoil_degrees(trefoil):
    q = build_quiver(trefoil)
    degrees = arrow_degrees(q, trefoil)
    assert degrees.graded_arrows() == [1, 2, 3, 4, 5, 6]
    assert [degrees[arrow].letters[0][0] for arrow in range(1, 7)] == [C, A, A, B, B, C]
    assert degrees.to_json()["1"] == "x3"


def test_mixed_signs_leave_arrows_ungraded():
    d = builtin("4_1")
    degrees = arrow_degrees(build_quiver(d), d)
    assert 0 < len(degrees.graded_arrows()) < 8


def test_reversed_walk_has_the_inverse_degree(trefoil):
    q = build_quiver(trefoil)
    degrees = arrow_degrees(q, trefoil)
    for walk in q.closed_walk_generators():
        assert walk_degree(degrees, reverse_walk(walk)) == walk_degree(degrees, walk).inverse()


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_walk_exponent_sums_count_graded_steps(name):
    d = builtin(name)
    q = build_quiver(d)
    degrees = arrow_degrees(q, d)
    graded = set(degrees.graded_arrows())
    for walk in q.closed_walk_generators():
        letters = walk_degree(degrees, walk).letters
        steps = [(q.arrow(arrow_id).arc, direction) for arrow_id, direction in walk if arrow_id in graded]
        assert sum(exponent for _, exponent in letters) == sum(direction for _, direction in steps)
        for generator in {arc for arc, _ in steps}:
            assert sum(e for g, e in letters if g == generator) == sum(s for a, s in steps if a == generator)


def test_trefoil_commutator_words(trefoil, trefoil_algebra):
    words = homogeneity_words(trefoil_algebra, arrow_degrees(trefoil_algebra.quiver, trefoil))
    assert words[0] == commutator(word((C, 1), (C, 1), (B, 1)), word((B, 1), (A, 1), (A, 1)))
    assert all(len(w) == 12 for w in words.values())


def test_kink_basis_degrees(kink):
    degrees = basis_degrees(kink, arrow_degrees(kink.quiver, builtin("unknot_1")))
    x = GroupWord.generator(0)
    assert degrees[0].is_identity
    assert degrees[1] == x
    assert degrees[3] == x * x


# representations


def test_cycle_types_and_classes():
    assert len(cycle_types(3)) == 2
    assert len(cycle_types(4)) == 4
    assert len(conjugacy_class(4, ((1, 2), (2, 1)))) == 6
    assert canonical_permutation(4, ((1, 1), (3, 1))).cycle_structure == {3: 1, 1: 1}


def test_trefoil_representations(trefoil):
    p = wirtinger(trefoil)
    found = list(enumerate_representations(p, 3))
    assert found
    assert all(representation.satisfies(p.relators) for representation in found)
    assert any(representation.image_group().order() == 6 for representation in found)


def test_representation_search_caches_complete_runs(trefoil):
    p = wirtinger(trefoil)
    search = RepresentationSearch(SearchBudgets(max_degree=3))
    first = list(search.representations(p))
    assert list(search.representations(p)) == first


# deciding words


def test_empty_word_is_trivial(trefoil):
    p = wirtinger(trefoil)
    certificate = decide_trivial(GroupWord.identity(), p, SearchBudgets(max_degree=2))
    assert certificate.verdict is Verdict.PROVED_TRIVIAL
    assert certificate.steps == ()
    assert verify_certificate(certificate, GroupWord.identity(), p)


def test_generator_is_nontrivial(trefoil):
    p = wirtinger(trefoil)
    x1 = GroupWord.generator(A)
    certificate = decide_trivial(x1, p, SearchBudgets(max_degree=3))
    assert certificate.is_nontrivial
    assert verify_certificate(certificate, x1, p)
    assert certificate.to_json()["relator_product"] is None


def test_relator_is_trivial(trefoil):
    p = wirtinger(trefoil)
    relator = p.relators[0]
    certificate = RelatorSearch(SearchBudgets()).decide(relator, p)
    assert certificate.is_trivial
    assert len(certificate.steps) == 1
    assert verify_certificate(certificate, relator, p)


def test_forged_certificates_are_rejected(trefoil):
    p = wirtinger(trefoil)
    x1 = GroupWord.generator(A)
    forged = Certificate(Verdict.PROVED_TRIVIAL, x1, steps=(RelatorStep(GroupWord.identity(), 0, 1),))
    assert not verify_certificate(forged, x1, p)
    commuting = word((A, 1), (B, 1), (A, -1), (B, -1))
    assert not verify_certificate(Certificate(Verdict.PROVED_NONTRIVIAL, commuting), commuting, p)
    assert not verify_certificate(Certificate(Verdict.INCONCLUSIVE, x1), x1, p)
    assert not verify_certificate(Certificate(Verdict.PROVED_NONTRIVIAL, x1, representation=s3_representation()),
                                  x1.inverse(), p)


def test_relator_step_word(trefoil):
    relators = wirtinger(trefoil).relators
    step = RelatorStep(GroupWord.generator(B), 2, -1)
    assert step.word(relators) == GroupWord.product(
        (GroupWord.generator(B), relators[2].inverse(), GroupWord.generator(B, -1))
    )


# homogeneity and connectedness


def test_trefoil_is_homogeneous(trefoil, trefoil_algebra):
    p = wirtinger(trefoil)
    degrees = arrow_degrees(trefoil_algebra.quiver, trefoil)
    report = check_homogeneity(trefoil_algebra, degrees, p, SearchBudgets(max_degree=4))
    assert report.verdict is HomogeneityVerdict.HOMOGENEOUS
    assert all(certificate.is_trivial for certificate in report.certificates.values())
    assert all(report.verified.values())
    payload = report.to_json()
    assert payload["vertices"][0]["certificate"]["relator_product"]


def test_trefoil_grading_is_not_connected(trefoil):
    q = build_quiver(trefoil)
    degrees = arrow_degrees(q, trefoil)
    report = check_connected(q, degrees, wirtinger(trefoil), SearchBudgets(max_degree=3))
    assert all(w.exponent_sum() % 3 == 0 for w in report.walk_degrees)
    assert report.verdict is ConnectedVerdict.NOT_CONNECTED
    assert report.witness.satisfies(wirtinger(trefoil).relators)
    assert report.details["walk_group_order"] < report.details["image_group_order"]
    assert report.to_json()["witness"]["walk_group_order"] == report.details["walk_group_order"]
    assert report.to_json()["exponent_sums"] == [w.exponent_sum() for w in report.walk_degrees]


def test_kink_grading():
    d = builtin("unknot_1")
    A = algebra_of("unknot_1")
    p = wirtinger(d)
    degrees = arrow_degrees(A.quiver, d)
    budgets = SearchBudgets(max_degree=3)
    assert check_homogeneity(A, degrees, p, budgets).verdict is HomogeneityVerdict.HOMOGENEOUS
    connected = check_connected(A.quiver, degrees, p, budgets)
    assert connected.verdict is ConnectedVerdict.CONNECTED
    assert connected.reached_generators == [0]


@pytest.mark.parametrize("name", ["4_1", "6_3"])
def test_exchange_words_are_proved_nontrivial(name):
    d = builtin(name)
    A = algebra_of(name)
    p = wirtinger(d)
    degrees = arrow_degrees(A.quiver, d)
    report = check_homogeneity(A, degrees, p, SearchBudgets())
    assert report.verdict is HomogeneityVerdict.NOT_HOMOGENEOUS
    assert sorted(report.certificates) == list(A.quiver.vertices)
    for vertex, certificate in report.certificates.items():
        assert certificate.verdict is Verdict.PROVED_NONTRIVIAL
        assert certificate.representation is not None
        assert verify_certificate(certificate, report.words[vertex], p)
    assert all(report.verified.values())


def test_six_crossing_search_stops_within_small_budgets(small_budgets):
    d = builtin("6_3")
    A = algebra_of("6_3")
    p = wirtinger(d)
    degrees = arrow_degrees(A.quiver, d)
    search = RepresentationSearch(small_budgets)
    homogeneity = check_homogeneity(A, degrees, p, small_budgets, search)
    connected = check_connected(A.quiver, degrees, p, small_budgets, search)
    assert homogeneity.verdict is not HomogeneityVerdict.HOMOGENEOUS
    assert not any(certificate.is_trivial for certificate in homogeneity.certificates.values())
    assert len(homogeneity.certificates) == 6
    assert connected.to_json()["verdict"] == connected.verdict.value
