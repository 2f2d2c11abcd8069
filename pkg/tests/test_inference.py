"""Tests for posterior computation."""

import random

import pytest

from schemanet.errors import ImpossibleEvidence, TooLargeForOracle, UnknownNode
from schemanet.grounding import ground
from schemanet.inference import elimination_order, joint_enumerate, oracle_posterior, posterior, prune_barren
from schemanet.models import GroundAtom, TypeDecl
from schemanet.parsing import parse_kb
from tests.conftest import load_fixture

TOLERANCE = 1e-9


def g(predicate: str, *args: str) -> GroundAtom:
    return GroundAtom(predicate=predicate, args=args)


def chain():
    return ground(parse_kb(
        "schema a -> b.\np(b | a) = 0.7.\np(b | ~a) = 0.2.\n"
        "schema b -> c.\np(c | b) = 0.6.\np(c | ~b) = 0.1.\n"
        "p(a) = 0.4.\n"
    ).unwrap())


def or_of_two_coins():
    return ground(parse_kb(
        "type t = { x, y }.\n"
        "schema exists X in t . heads(X) -> win.\n"
        "p(win | exists X in t . heads(X)) = 1.0.\n"
        "p(win | ~exists X in t . heads(X)) = 0.0.\n"
        "p(heads(X)) = 0.5.\n"
    ).unwrap())


class TestPosterior:
    """Tests for variable elimination."""

    def test_bayes_rule(self, fire_smoke):
        """Test P(fire | smoke) against Bayes' rule."""
        result = posterior(ground(fire_smoke), "fire", {"smoke": True})
        assert result.query == "fire"
        assert result.p_true == pytest.approx(0.09 / 0.099, abs=TOLERANCE)
        assert round(result.p_true, 6) == 0.909091
        assert result.evidence_probability == pytest.approx(0.099, abs=TOLERANCE)

    def test_root_marginal_is_prior(self, fire_smoke):
        """Test that a root's marginal is its prior."""
        result = posterior(ground(fire_smoke), "fire")
        assert result.p_true == pytest.approx(0.1, abs=TOLERANCE)
        assert result.evidence_probability == 1.0

    def test_query_nodes_by_id(self, fire_smoke):
        """Test querying by node instead of name."""
        result = posterior(ground(fire_smoke), g("smoke"))
        assert result.p_true == pytest.approx(0.1 * 0.9 + 0.9 * 0.01, abs=TOLERANCE)

    def test_observed_query(self, fire_smoke):
        """Test querying an observed node."""
        net = ground(fire_smoke)
        assert posterior(net, "fire", {"fire": True}).p_true == 1.0
        assert posterior(net, "fire", {"fire": False}).p_true == 0.0

    def test_deterministic_or(self):
        """Test the Or node of two fair coins."""
        net = or_of_two_coins()
        assert posterior(net, "exists(t, heads/1)").p_true == pytest.approx(0.75, abs=TOLERANCE)
        assert posterior(net, "win").p_true == pytest.approx(0.75, abs=TOLERANCE)
        assert posterior(net, "heads(x)", {"win": True}).p_true == pytest.approx(2 / 3, abs=TOLERANCE)

    def test_empty_universal_is_exactly_true(self, board_meeting):
        """Test forall over no members."""
        net = ground(board_meeting)
        assert posterior(net, "forall(board_members, present/1)").p_true == 1.0
        assert posterior(net, "meeting").p_true == pytest.approx(0.99, abs=TOLERANCE)

    def test_empty_existential_is_exactly_false(self, fire_alarm):
        """Test exists over no members."""
        kb = fire_alarm.model_copy(update={"types": (TypeDecl(name="person", members=()),)})
        net = ground(kb)
        assert posterior(net, "exists(person, sets_off_alarm/1)").p_true == 0.0
        assert posterior(net, "alarm_sounds").p_true == pytest.approx(0.0332, abs=TOLERANCE)

    def test_observed_parents_fix_deterministic_or(self, fire_alarm):
        """With every gathered parent observed the Or node is exactly 0 or 1."""
        net = ground(fire_alarm)
        node = "exists(person, sets_off_alarm/1)"
        one_true = {"sets_off_alarm(john)": False, "sets_off_alarm(mary)": True}
        none_true = {"sets_off_alarm(john)": False, "sets_off_alarm(mary)": False}
        for prune in (True, False):
            assert posterior(net, node, one_true, prune=prune).p_true == 1.0
            assert posterior(net, node, none_true, prune=prune).p_true == 0.0

    def test_observed_parents_fix_deterministic_and(self, board_meeting):
        """The same holds for And nodes."""
        kb = board_meeting.with_member("board_members", "ann").with_member("board_members", "bob")
        net = ground(kb)
        node = "forall(board_members, present/1)"
        assert posterior(net, node, {"present(ann)": True, "present(bob)": True}).p_true == 1.0
        assert posterior(net, node, {"present(ann)": True, "present(bob)": False}).p_true == 0.0

    def test_impossible_evidence(self, board_meeting):
        """Test evidence with zero probability."""
        net = ground(board_meeting)
        with pytest.raises(ImpossibleEvidence):
            posterior(net, "meeting", {"buy_out": True, "meeting": False})

    def test_unknown_node(self, fire_smoke):
        """Test misspelled query and evidence names."""
        with pytest.raises(UnknownNode):
            posterior(ground(fire_smoke), "smok")
        with pytest.raises(UnknownNode):
            posterior(ground(fire_smoke), "fire", {g("steam"): True})

    def test_pruning_does_not_change_answers(self, fire_alarm):
        """Test barren-node pruning against the full network."""
        net = ground(fire_alarm)
        ev = {"smells_smoke(john)": True}
        pruned = posterior(net, "fire", ev, prune=True)
        full = posterior(net, "fire", ev, prune=False)
        assert pruned.p_true == pytest.approx(full.p_true, abs=TOLERANCE)

    def test_explicit_order(self):
        """Test a caller-supplied order on a chain."""
        net = chain()
        a, b = g("a"), g("b")
        assert posterior(net, "c", order=[b, a]).p_true == pytest.approx(posterior(net, "c").p_true, abs=TOLERANCE)

    def test_burglary_matches_oracle(self, burglary):
        """Test two testimonies against enumeration."""
        net = ground(burglary.with_individual("watson").with_individual("gibbons"))
        ev = {"testimony(watson)": True, "testimony(gibbons)": True}
        fast = posterior(net, "burglary", ev)
        slow = oracle_posterior(net, "burglary", ev)
        assert fast.p_true == pytest.approx(slow.p_true, abs=TOLERANCE)
        assert fast.p_true > 0.001

    def test_board_meeting_matches_oracle(self, board_meeting):
        """Test a sick board member against enumeration."""
        kb = board_meeting.with_member("board_members", "ann").with_member("board_members", "bob")
        net = ground(kb)
        ev = {"sick(ann)": True}
        fast = posterior(net, "buy_out", ev)
        slow = oracle_posterior(net, "buy_out", ev)
        assert fast.p_true == pytest.approx(slow.p_true, abs=TOLERANCE)


class TestEliminationOrder:
    """Tests for the greedy elimination order."""

    def test_chain(self):
        """Test the order on a three-node chain."""
        net = chain()
        assert elimination_order(net, {g("c")}) == [g("a"), g("b")]

    def test_order_skips_kept_nodes(self, fire_alarm):
        """Test that kept nodes are not eliminated."""
        net = ground(fire_alarm)
        order = elimination_order(net, {g("fire")})
        assert g("fire") not in order
        assert len(order) == len(net) - 1

    @pytest.mark.parametrize("name, individuals, query, ev", [
        ("fire_alarm", (), "fire", {"leaves_building(mary)": True}),
        ("fire_alarm", (), "smells_smoke(john)", {"alarm_sounds": True, "sets_off_alarm(mary)": False}),
        ("burglary", ("watson", "gibbons"), "burglary", {"testimony(watson)": True, "testimony(gibbons)": True}),
    ])
    def test_any_order_gives_the_same_posterior(self, name, individuals, query, ev):
        """Shuffled elimination orders agree with the greedy one."""
        kb = load_fixture(name)
        for constant in individuals:
            kb = kb.with_individual(constant)
        net = ground(kb)
        expected = posterior(net, query, ev, prune=False).p_true
        hidden = [n for n in net.nodes if str(n) != query and str(n) not in ev]
        rng = random.Random(name)
        for _ in range(25):
            order = list(hidden)
            rng.shuffle(order)
            result = posterior(net, query, ev, prune=False, order=order)
            assert result.p_true == pytest.approx(expected, abs=TOLERANCE)


class TestPruneBarren:
    """Tests for barren-node removal."""

    def test_leaves_outside_query_are_dropped(self, fire_alarm):
        """Test pruning everything below the query."""
        net = ground(fire_alarm)
        pruned = prune_barren(net, {g("sets_off_alarm", "john")})
        assert set(pruned.nodes) == {g("fire"), g("smells_smoke", "john"), g("sets_off_alarm", "john")}


class TestOracle:
    """Tests for joint enumeration."""

    def test_joint_table(self, fire_smoke):
        """Test the full joint of two nodes."""
        joint = joint_enumerate(ground(fire_smoke))
        assert [str(v) for v in joint.scope] == ["fire", "smoke"]
        assert joint.flat.tolist() == pytest.approx([0.891, 0.009, 0.01, 0.09], abs=TOLERANCE)

    def test_too_large(self, fire_alarm):
        """Test the size guard."""
        with pytest.raises(TooLargeForOracle):
            joint_enumerate(ground(fire_alarm), max_nodes=5)

    def test_reuses_joint(self, fire_smoke):
        """Test passing a precomputed joint."""
        net = ground(fire_smoke)
        joint = joint_enumerate(net)
        result = oracle_posterior(net, "fire", {"smoke": True}, joint=joint)
        assert result.p_true == pytest.approx(0.909091, abs=1e-6)
