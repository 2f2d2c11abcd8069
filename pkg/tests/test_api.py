"""Tests for the HTTP API."""

import pytest
from fastapi.testclient import TestClient

from schemanet.api import app
from tests.conftest import FIXTURES


def skb(name: str) -> str:
    return (FIXTURES / f"{name}.skb").read_text(encoding="utf-8")


@pytest.fixture
def client():
    return TestClient(app)


class TestHealth:
    """Tests for GET /api/health."""

    def test_health(self, client):
        """Test the health endpoint."""
        response = client.get("/api/health")
        assert response.status_code == 200
        assert response.json()["status"] == "ok"


class TestValidateEndpoint:
    """Tests for POST /api/validate."""

    def test_valid(self, client):
        """Test validating a valid knowledge base."""
        response = client.post("/api/validate", json={"kb": skb("fire_alarm")})
        assert response.json() == {"ok": True, "diagnostics": []}

    def test_invalid(self, client):
        """Test that diagnostics are returned for an invalid knowledge base."""
        body = client.post("/api/validate", json={"kb": skb("incomplete_cpt")}).json()
        assert body["ok"] is False
        assert body["diagnostics"][0].startswith("IncompleteCpt")

    def test_parse_error(self, client):
        """Test a positioned parse error."""
        body = client.post("/api/validate", json={"kb": "schema a -> b$.\n"}).json()
        assert body == {"ok": False, "diagnostics": ["1:14: error: unknown token '$'"]}


class TestGroundEndpoint:
    """Tests for POST /api/ground."""

    def test_members(self, client):
        """Test grounding with run-time members."""
        response = client.post("/api/ground", json={"kb": skb("fire_alarm"), "members": {"person": ["sue"]}})
        assert response.status_code == 200
        body = response.json()
        assert len(body["nodes"]) == 12
        assert ["sets_off_alarm(sue)", "exists(person, sets_off_alarm/1)"] in body["arcs"]
        assert "dot" not in body

    def test_dot(self, client):
        """Test the optional DOT rendering."""
        body = client.post("/api/ground", json={"kb": skb("two_parents"), "dot": True}).json()
        assert body["dot"].startswith("digraph g {")

    def test_cycle(self, client):
        """Test that a cycle answers 422."""
        response = client.post("/api/ground", json={"kb": skb("cycle")})
        assert response.status_code == 422
        assert response.json()["detail"]["error"] == "CycleDetected"

    @pytest.mark.parametrize("members", [{"person": ["Sue"]}, {"Person": ["sue"]}])
    def test_malformed_member_name(self, client, members):
        """Malformed run-time names answer 422, not a server error."""
        response = client.post("/api/ground", json={"kb": skb("fire_alarm"), "members": members})
        assert response.status_code == 422
        assert response.json()["detail"]["error"] == "InvalidMember"


class TestQueryEndpoint:
    """Tests for POST /api/query."""

    def test_posterior(self, client):
        """Test a posterior given evidence."""
        response = client.post("/api/query", json={
            "kb": skb("fire_smoke"),
            "evidence": {"smoke": True},
            "queries": ["fire"],
        })
        assert response.status_code == 200
        [result] = response.json()["results"]
        assert result["query"] == "fire"
        assert result["p_true"] == pytest.approx(0.909091, abs=1e-6)

    def test_oracle(self, client):
        """Test elimination against joint enumeration."""
        request = {"kb": skb("fire_alarm"), "evidence": {"leaves_building(john)": True}, "queries": ["fire"]}
        fast = client.post("/api/query", json=request).json()["results"][0]["p_true"]
        slow = client.post("/api/query", json={**request, "oracle": True}).json()["results"][0]["p_true"]
        assert fast == pytest.approx(slow, abs=1e-9)

    def test_unknown_node(self, client):
        """Test that an unknown node answers 422."""
        response = client.post("/api/query", json={"kb": skb("fire_smoke"), "queries": ["firee"]})
        assert response.status_code == 422
        assert response.json()["detail"]["error"] == "UnknownNode"

    def test_invalid_knowledge_base(self, client):
        """Test that an invalid knowledge base answers 422 with diagnostics."""
        response = client.post("/api/query", json={"kb": skb("left_multiple"), "queries": ["b"]})
        assert response.status_code == 422
        detail = response.json()["detail"]
        assert detail["error"] == "InvalidKnowledgeBase"
        assert detail["diagnostics"][0].startswith("LeftMultipleRequiresQuantifier")

    def test_queries_required(self, client):
        """Test that an empty query list is rejected."""
        response = client.post("/api/query", json={"kb": skb("fire_smoke"), "queries": []})
        assert response.status_code == 422
