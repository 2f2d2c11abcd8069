"""Shared fixtures: the `.skb` knowledge bases under tests/fixtures."""

from pathlib import Path

import pytest

from schemanet.models import KnowledgeBase
from schemanet.parsing import parse_kb

FIXTURES = Path(__file__).parent / "fixtures"


def load_fixture(name: str) -> KnowledgeBase:
    """Parse tests/fixtures/<name>.skb, failing the test on any error."""
    return parse_kb((FIXTURES / f"{name}.skb").read_bytes()).unwrap()


@pytest.fixture
def fixture_path():
    """Path of a fixture file by stem."""
    return lambda name: FIXTURES / f"{name}.skb"


@pytest.fixture
def fire_smoke() -> KnowledgeBase:
    return load_fixture("fire_smoke")


@pytest.fixture
def fire_alarm() -> KnowledgeBase:
    return load_fixture("fire_alarm")


@pytest.fixture
def burglary() -> KnowledgeBase:
    return load_fixture("burglary")


@pytest.fixture
def board_meeting() -> KnowledgeBase:
    return load_fixture("board_meeting")


@pytest.fixture
def two_parents() -> KnowledgeBase:
    return load_fixture("two_parents")
