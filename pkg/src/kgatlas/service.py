"""Read-only HTTP API over a loaded, preprocessed graph snapshot.

The snapshot is immutable; every endpoint is a pure function of
(snapshot, query), so per-query response bodies are cached and identical
requests return identical bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import List, Optional

from fastapi import FastAPI, Request, Response
from fastapi.responses import FileResponse, JSONResponse

from kgatlas import __version__
from kgatlas.graph import (
    KnowledgeGraph,
    compute_stats,
    expand_neighborhood,
    filter_by_degree,
    graph_to_json,
    search,
)
from kgatlas.model import AbbrevTable


@dataclass(frozen=True)
class Snapshot:
    graph: KnowledgeGraph
    abbrev: AbbrevTable


def _payload_dict(graph: KnowledgeGraph, subgraph: KnowledgeGraph, min_degree: int) -> dict:
    body = graph_to_json(subgraph)
    body["meta"] = {
        "total_nodes": subgraph.node_count,
        "total_edges": subgraph.edge_count,
        "min_degree_applied": min_degree,
        "max_degree": graph.max_degree,
    }
    return body


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": code, "message": message})


def _json_bytes(payload: dict) -> bytes:
    return json.dumps(payload, separators=(",", ":")).encode("utf-8")


def create_app(
    graph: KnowledgeGraph,
    abbrev: Optional[AbbrevTable] = None,
    static_dir: Optional[str] = None,
) -> FastAPI:
    app = FastAPI(title="kgatlas", version=__version__)
    snapshot = Snapshot(graph=graph, abbrev=abbrev or AbbrevTable())
    app.state.snapshot = snapshot
    stats_body = _json_bytes(compute_stats(graph).to_dict())
    abbrev_body = _json_bytes(snapshot.abbrev.entries)

    @lru_cache(maxsize=256)
    def graph_body(min_degree: int) -> bytes:
        sub = graph if min_degree == 0 else filter_by_degree(graph, min_degree)
        return _json_bytes(_payload_dict(graph, sub, min_degree))

    @lru_cache(maxsize=1024)
    def search_body(query: str, depth: int) -> bytes:
        matches = search(graph, query)
        sub = expand_neighborhood(graph, matches, depth)
        payload = _payload_dict(graph, sub, 0)
        # Matched ids are reported in the subgraph's id space for highlighting.
        original_labels = {n.id: n.label for n in graph.nodes}
        sub_ids = {n.label: n.id for n in sub.nodes}
        payload["matches"] = [sub_ids[original_labels[m]] for m in matches]
        return _json_bytes(payload)

    @app.get("/api/graph")
    def api_graph(request: Request):
        raw = request.query_params.get("min_degree", "0")
        try:
            min_degree = int(raw)
            if min_degree < 0:
                raise ValueError
        except ValueError:
            return _error(400, "E_BAD_PARAM", f"min_degree must be a non-negative integer, got {raw!r}")
        return Response(content=graph_body(min_degree), media_type="application/json")

    @app.get("/api/search")
    def api_search(request: Request):
        q = request.query_params.get("q", "")
        if not q:
            return _error(400, "E_BAD_PARAM", "query parameter q is required")
        raw_depth = request.query_params.get("depth", "1")
        try:
            depth = int(raw_depth)
            if depth < 0:
                raise ValueError
        except ValueError:
            return _error(400, "E_BAD_PARAM", f"depth must be a non-negative integer, got {raw_depth!r}")
        return Response(content=search_body(q, depth), media_type="application/json")

    @app.get("/api/abbreviations")
    def api_abbreviations():
        return Response(content=abbrev_body, media_type="application/json")

    @app.get("/api/stats")
    def api_stats():
        return Response(content=stats_body, media_type="application/json")

    @app.get("/healthz")
    def healthz():
        return {"status": "ok", "version": __version__}

    if static_dir:
        root = Path(static_dir)

        @app.get("/")
        def index():
            index_file = root / "index.html"
            if index_file.is_file():
                return FileResponse(index_file)
            return _error(404, "E_NOT_FOUND", "no UI bundle installed")

        @app.get("/static/{name:path}")
        def static_asset(name: str):
            target = (root / name).resolve()
            if root.resolve() not in target.parents and target != root.resolve():
                return _error(404, "E_NOT_FOUND", "not found")
            if target.is_file():
                return FileResponse(target)
            return _error(404, "E_NOT_FOUND", f"no such asset {name!r}")
    else:

        @app.get("/")
        def index_placeholder():
            return {
                "service": "kgatlas",
                "endpoints": ["/api/graph", "/api/search", "/api/abbreviations", "/api/stats", "/healthz"],
            }

    return app
