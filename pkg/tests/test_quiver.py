import random

import pytest

from src.data.knot_helper import builtin
from src.models.diagram.gauss_parser import parse_gauss
from src.models.algebra.tau import TauAssignment
from src.models.diagram.diagram import Sign
from src.models.exceptions import AlgebraError, ConfigError, DiagramError
from src.models.quiver.quiver import SignedArrow, SignedQuiver, build_quiver, reverse_walk
from src.models.scalars.scalars import FieldContext
from tests.conftest import BUILTIN_NAMES

P, M = Sign.POSITIVE, Sign.NEGATIVE


def test_kink_arrows():
    q = build_quiver(builtin("unknot_1"))
    assert [arrow.signs for arrow in q.arrows] == ["+-", "-+"]
    assert q.successor(1) == 2
    assert q.successor(2) == 1
    assert q.alpha(0).length == 1
    assert q.beta(0).length == 1


def test_trefoil_arrows(trefoil):
    q = build_quiver(trefoil)
    assert [(arrow.source, arrow.target) for arrow in q.arrows] == [(1, 0), (0, 2), (2, 1), (1, 0), (0, 2), (2, 1)]
    assert q.path_arrows(q.alpha(0)) == [5, 6, 1]
    assert q.path_arrows(q.beta(0)) == [2, 3, 4]


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_quiver_invariants(name):
    d = builtin(name)
    q = build_quiver(d)
    assert q.n_D == 2 * d.c
    for vertex in q.vertices:
        assert {q.outgoing(vertex, P).source_sign, q.outgoing(vertex, M).source_sign} == {P, M}
        assert q.alpha(vertex).length + q.beta(vertex).length == q.n_D
        assert q.alpha(vertex).target_sign is M
        assert q.beta(vertex).target_sign is P
        assert q.fundamental_cycle(vertex, P).is_cycle
    for arrow in q.arrows:
        assert q.walk(arrow.id, q.n_D) == arrow.id
        assert q.arrow(q.successor(arrow.id)).source_sign is arrow.target_sign


def random_gauss_code(rng, c):
    tokens = [(kind, label) for label in range(1, c + 1) for kind in "OU"]
    rng.shuffle(tokens)
    signs = {label: rng.choice("+-") for label in range(1, c + 1)}
    return "".join(f"{kind}{label}{signs[label]}" for kind, label in tokens)


def test_random_diagrams_keep_two_signed_arrows_each_way():
    rng = random.Random(20240603)
    for _ in range(200):
        d = parse_gauss(random_gauss_code(rng, rng.randint(1, 6)))
        q = build_quiver(d)
        assert q.n_D == 2 * d.c
        for vertex in q.vertices:
            out = [arrow.source_sign for arrow in q.arrows if arrow.source == vertex]
            into = [arrow.target_sign for arrow in q.arrows if arrow.target == vertex]
            assert len(out) == 2 and set(out) == {P, M}
            assert len(into) == 2 and set(into) == {P, M}


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_closed_walk_generators_span_the_cycle_space(name):
    q = build_quiver(builtin(name))
    walks = q.closed_walk_generators()
    assert len(walks) == q.n_D - len(q.vertices) + 1
    for walk in walks:
        position = 0
        for arrow_id, direction in walk:
            arrow = q.arrow(arrow_id)
            start, end = (arrow.source, arrow.target) if direction == 1 else (arrow.target, arrow.source)
            assert start == position
            position = end
        assert position == 0


def test_reverse_walk():
    assert reverse_walk([(1, 1), (3, -1)]) == [(3, 1), (1, -1)]


def test_validation_rejects_a_vertex_without_both_signs():
    arrows = [SignedArrow(1, 0, P, 0, M, 0), SignedArrow(2, 0, P, 0, P, 0)]
    with pytest.raises(DiagramError):
        SignedQuiver([0], arrows)


def test_validation_rejects_two_cycles():
    arrows = [
        SignedArrow(1, 0, P, 0, P, 0),
        SignedArrow(2, 0, M, 0, M, 0),
    ]
    q = SignedQuiver([0], arrows, validate=False)
    assert q.successor(1) == 1
    with pytest.raises(DiagramError):
        q.validate()


def test_to_dot_and_json(trefoil):
    q = build_quiver(trefoil)
    dot = q.to_dot()
    assert dot.startswith("digraph Q_D {")
    assert '1 -> 0 [label="1 +-"];' in dot
    payload = q.to_json()
    assert payload["n_D"] == 6
    assert payload["arrows"][0]["successor"] == 2


def test_alpha_length_tau(trefoil):
    context = FieldContext.rational_functions()
    q = build_quiver(trefoil)
    tau = TauAssignment.alpha_length_power(q, context)
    assert all(value == context.indeterminate() ** 3 for value in tau.values)
    assert tau.to_json() == {"mode": "alpha-length", "values": {"0": "q^3", "1": "q^3", "2": "q^3"}}


def test_tau_specs(trefoil):
    q = build_quiver(trefoil)
    rationals = FieldContext.rationals()
    assert TauAssignment.from_spec(q, rationals, "alpha-length", rationals.from_integer(2))(0) == 8
    assert TauAssignment.from_spec(q, rationals, "const:3/2")(1) == rationals.parse("3/2")
    with pytest.raises(ConfigError):
        TauAssignment.from_spec(q, rationals, "alpha-length")
    with pytest.raises(ConfigError):
        TauAssignment.from_spec(q, rationals, "random")


def test_tau_from_file(trefoil, tmp_path):
    q = build_quiver(trefoil)
    context = FieldContext.rational_functions()
    path = tmp_path / "tau.json"
    path.write_text('{"0": "q^2", "1": "3/2", "2": "q + 1"}')
    tau = TauAssignment.from_spec(q, context, f"file:{path}")
    assert tau(0) == context.parse("q^2")
    assert tau(2) == context.indeterminate() + 1
    path.write_text('{"0": "1"}')
    with pytest.raises(AlgebraError, match="missing"):
        TauAssignment.from_spec(q, context, f"file:{path}")
