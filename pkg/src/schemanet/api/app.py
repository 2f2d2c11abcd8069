"""
FastAPI application for schemanet.

Provides REST endpoints mirroring the CLI: validate a knowledge base, ground
it with run-time members, and answer posterior queries. Knowledge bases are
sent as `.skb` text in the request body.
"""

import logging

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from .. import __version__
from ..errors import InvalidKnowledgeBase, ParseError, SchemaNetError
from ..grounding import to_dot
from ..knowledge import validate_kb
from ..parsing import parse_kb
from ..session import Session

logger = logging.getLogger(__name__)

app = FastAPI(
    title="schemanet API",
    description="Ground probabilistic schemata into Bayesian networks and query them",
    version=__version__,
)


class KbRequest(BaseModel):
    """Request body carrying a knowledge base."""
    kb: str = Field(..., description="Knowledge base text (.skb)")


class GroundRequest(KbRequest):
    """Request body for the ground endpoint."""
    members: dict[str, list[str]] = Field(default_factory=dict, description="Run-time members per type")
    dot: bool = False


class QueryRequest(GroundRequest):
    """Request body for the query endpoint."""
    evidence: dict[str, bool] = Field(default_factory=dict, description="Observed node values by name")
    queries: list[str] = Field(..., min_length=1, description="Nodes to query")
    oracle: bool = False


def _detail(error: SchemaNetError):
    if isinstance(error, (ParseError, InvalidKnowledgeBase)):
        return {"error": type(error).__name__, "diagnostics": [str(d) for d in error.diagnostics]}
    return {"error": type(error).__name__, "message": str(error)}


def _session(request: GroundRequest, oracle: bool = False) -> Session:
    session = Session(parse_kb(request.kb).unwrap(), oracle=oracle)
    for type_name, constants in request.members.items():
        try:
            session.add_members(type_name, constants)
        except ValueError as e:
            raise HTTPException(status_code=422, detail={"error": "InvalidMember", "message": str(e)})
    return session


@app.get("/api/health")
async def health():
    """Health check endpoint."""
    return {"status": "ok", "service": "schemanet", "version": __version__}


@app.post("/api/validate")
async def validate(request: KbRequest):
    """
    Validate a knowledge base.

    Always answers 200; `ok` is false when there are parse or validation errors.
    """
    parsed = parse_kb(request.kb)
    diagnostics = [str(d) for d in parsed.diagnostics]
    if parsed.kb is None:
        return {"ok": False, "diagnostics": diagnostics}
    problems = validate_kb(parsed.kb)
    diagnostics.extend(str(d) for d in problems)
    return {"ok": not problems, "diagnostics": diagnostics}


@app.post("/api/ground")
async def ground(request: GroundRequest):
    """Ground a knowledge base and describe the network."""
    try:
        net = _session(request).net
    except SchemaNetError as e:
        raise HTTPException(status_code=422, detail=_detail(e))

    response = {
        "nodes": [str(n) for n in net.nodes],
        "arcs": [[str(p), str(c)] for p, c in net.arcs()],
    }
    if request.dot:
        response["dot"] = to_dot(net)
    return response


@app.post("/api/query")
async def query(request: QueryRequest):
    """Answer posterior queries under the given evidence."""
    try:
        session = _session(request, oracle=request.oracle)
        for name, value in request.evidence.items():
            session.observe(name, value)
        results = [session.query(name) for name in request.queries]
    except SchemaNetError as e:
        logger.info("query failed: %s", e)
        raise HTTPException(status_code=422, detail=_detail(e))

    return {
        "evidence": session.evidence,
        "results": [r.model_dump() for r in results],
    }
