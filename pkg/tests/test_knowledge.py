"""Tests for schema classification, unification and validation."""

import pytest

from schemanet.knowledge import atoms_unify, classify, match_ground, subsumes, validate_kb
from schemanet.models import Classification, DiagnosticCode, GroundAtom, SchemaAtom
from schemanet.parsing import parse_kb
from tests.conftest import load_fixture


def atom(predicate: str, *args: str) -> SchemaAtom:
    return SchemaAtom(predicate=predicate, args=args)


def schema_of(line: str):
    return parse_kb(line + "\n").unwrap().schemata[0]


def codes(text: str) -> list[DiagnosticCode]:
    return [d.code for d in validate_kb(parse_kb(text).unwrap())]


class TestClassify:
    """Tests for schema classification."""

    @pytest.mark.parametrize("line,expected", [
        ("schema a(X), b -> c(X).", Classification.UNIQUE),
        ("schema foo(X, a), bar(a) -> foobar(X).", Classification.UNIQUE),
        ("schema alarm_sound -> testimony(X).", Classification.RIGHT_MULTIPLE),
        ("schema a(X) -> c(X, Y).", Classification.RIGHT_MULTIPLE),
        ("schema a(X) -> b.", Classification.LEFT_MULTIPLE),
        ("schema a(X) -> c(Y).", Classification.LEFT_MULTIPLE),
        ("schema exists X in person . a(X) -> b.", Classification.QUANTIFIED),
        ("schema fire -> smoke.", Classification.UNIQUE),
    ])
    def test_classification(self, line, expected):
        """Test each schema class on a minimal schema."""
        assert classify(schema_of(line)) == expected


class TestUnify:
    """Tests for atom unification and matching."""

    def test_unify_renames_apart(self):
        """Test that the two atoms' parameters are kept apart."""
        assert atoms_unify(atom("p", "X", "a"), atom("p", "b", "X"))

    def test_unify_respects_repeated_parameters(self):
        """Test that a repeated parameter binds one value."""
        assert not atoms_unify(atom("p", "X", "X"), atom("p", "a", "b"))
        assert atoms_unify(atom("p", "X", "X"), atom("p", "Y", "b"))

    def test_unify_needs_same_signature(self):
        """Test that predicate and arity must agree."""
        assert not atoms_unify(atom("p", "X"), atom("p", "X", "Y"))
        assert not atoms_unify(atom("p"), atom("q"))

    def test_subsumes(self):
        """Test generality between parameterized atoms."""
        assert subsumes(atom("p", "X", "Y"), atom("p", "Z", "a"))
        assert not subsumes(atom("p", "X", "a"), atom("p", "Z", "W"))
        assert not subsumes(atom("p", "X", "X"), atom("p", "Z", "W"))

    def test_match_ground(self):
        """Test matching a pattern against a ground atom."""
        assert match_ground(atom("foo", "X", "a"), GroundAtom(predicate="foo", args=("b", "a"))) == {"X": "b"}
        assert match_ground(atom("foo", "X", "X"), GroundAtom(predicate="foo", args=("b", "a"))) is None
        assert match_ground(atom("foo", "X", "a"), GroundAtom(predicate="bar", args=("b", "a"))) is None


class TestValidateKb:
    """Tests for knowledge-base validation."""

    @pytest.mark.parametrize("name", ["two_parents", "fire_smoke", "burglary", "fire_alarm", "board_meeting", "cycle"])
    def test_fixtures_are_valid(self, name):
        """Test that the example knowledge bases validate."""
        assert validate_kb(load_fixture(name)) == []

    def test_incomplete_table(self):
        """Test a table with a missing row."""
        [diagnostic] = validate_kb(load_fixture("incomplete_cpt"))
        assert diagnostic.code == DiagnosticCode.INCOMPLETE_CPT
        assert "3 of 4" in diagnostic.message
        assert diagnostic.schema_index == 0

    def test_ambiguous_head(self):
        """Test two schemata defining the same child."""
        [diagnostic] = validate_kb(load_fixture("ambiguous_head"))
        assert diagnostic.code == DiagnosticCode.AMBIGUOUS_HEAD
        assert diagnostic.schema_index == 1

    def test_left_multiple_cites_combination(self):
        """Test that the message names the schema and both combinations."""
        [diagnostic] = validate_kb(load_fixture("left_multiple"))
        assert diagnostic.code == DiagnosticCode.LEFT_MULTIPLE_REQUIRES_QUANTIFIER
        assert "a(X) -> b" in diagnostic.message
        assert "exists X in type" in diagnostic.message
        assert "forall X in type" in diagnostic.message

    def test_undeclared_quantifier_type(self):
        """Test quantifying over an unknown type."""
        text = (
            "schema exists X in person . a(X) -> b.\n"
            "p(b | exists X in person . a(X)) = 0.7.\n"
            "p(b | ~exists X in person . a(X)) = 0.1.\n"
            "p(a(X)) = 0.5.\n"
        )
        assert codes(text) == [DiagnosticCode.UNDECLARED_TYPE]

    def test_unbound_quantifier_parameter(self):
        """Test a free body parameter missing from the child."""
        text = (
            "type person = {}.\n"
            "schema exists X in person . likes(X, Y) -> popular.\n"
            "p(popular | exists X in person . likes(X, Y)) = 0.7.\n"
            "p(popular | ~exists X in person . likes(X, Y)) = 0.1.\n"
            "p(likes(X, Y)) = 0.5.\n"
        )
        assert codes(text) == [DiagnosticCode.UNBOUND_QUANTIFIER_PARAMETER]

    def test_free_quantifier_parameter_in_child(self):
        """Test a free body parameter that the child carries."""
        text = (
            "type person = {}.\n"
            "schema exists X in person . likes(X, Y) -> popular(Y).\n"
            "p(popular(Y) | exists X in person . likes(X, Y)) = 0.7.\n"
            "p(popular(Y) | ~exists X in person . likes(X, Y)) = 0.1.\n"
            "p(likes(X, Y)) = 0.5.\n"
        )
        assert codes(text) == []

    def test_prior_on_schema_child(self):
        """Test a prior on a node defined by a schema."""
        text = "schema a -> b.\np(b | a) = 0.5.\np(b | ~a) = 0.5.\np(a) = 0.5.\np(b) = 0.5.\n"
        assert codes(text) == [DiagnosticCode.PRIOR_ON_SCHEMA_CHILD]

    def test_overlapping_priors(self):
        """Test two priors for the same instance."""
        text = "schema a(X) -> b(X).\np(b(X) | a(X)) = 0.5.\np(b(X) | ~a(X)) = 0.5.\np(a(X)) = 0.5.\np(a(c)) = 0.2.\n"
        assert codes(text) == [DiagnosticCode.AMBIGUOUS_PRIOR]

    def test_undefined_parent(self):
        """Test a parent with neither a schema nor a prior."""
        text = "schema a -> b.\np(b | a) = 0.5.\np(b | ~a) = 0.5.\n"
        diagnostics = validate_kb(parse_kb(text).unwrap())
        assert [d.code for d in diagnostics] == [DiagnosticCode.UNDEFINED_PARENT]
        assert "parent a " in diagnostics[0].message

    def test_prior_with_constant_does_not_cover_parameter(self):
        """Test that `a(c)` is no prior for every `a(X)`."""
        text = "schema a(X) -> b(X).\np(b(X) | a(X)) = 0.5.\np(b(X) | ~a(X)) = 0.5.\np(a(c)) = 0.5.\n"
        assert codes(text) == [DiagnosticCode.UNDEFINED_PARENT]

    def test_reports_every_problem(self):
        """Test that all problems are listed together."""
        text = (
            "schema a(X) -> b.\n"
            "p(b | a(X)) = 0.5.\n"
            "schema c -> b.\n"
        )
        found = set(codes(text))
        assert {
            DiagnosticCode.INCOMPLETE_CPT,
            DiagnosticCode.LEFT_MULTIPLE_REQUIRES_QUANTIFIER,
            DiagnosticCode.AMBIGUOUS_HEAD,
            DiagnosticCode.UNDEFINED_PARENT,
        } <= found
