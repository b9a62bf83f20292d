"""HTTP facade: annotate, ruleset upload/download, dictionary builder, health.

Request text is never logged or persisted; the annotate route is stateless
with respect to its input.  Rule packages are accepted either as a zip body
(``application/zip``) or as a JSON file map {session_id, files}, mirroring
the on-disk bundle layout.
"""

from __future__ import annotations

import secrets
from datetime import date
from pathlib import Path

from fastapi import Depends, FastAPI, HTTPException, Query, Request, Response
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from ..baseline import load_baseline_package
from ..engine import annotate_with_temporal
from ..model import Document, mention_to_dict
from ..ruleset import (
    RulePackage,
    RulePackageError,
    parse_rule_package,
    validate_rule_package,
)
from .ontology import OntologyStore, load_ontology
from .sessions import SessionRuleset, SessionStore, build_bundle

MAX_TEXT_CHARS = 3000


class AnnotateRequest(BaseModel):
    text: str
    doc_date: str | None = None
    session_id: str | None = None


class RulesetFilesUpload(BaseModel):
    session_id: str = Field(min_length=1)
    files: dict[str, str]


class ExtractRequest(BaseModel):
    node_ids: list[str]
    concept: str = Field(min_length=1)
    descendants: bool = False


def create_app(
    rules_path: str | None = None,
    ontology_path: str | None = None,
    token: str | None = None,
    session_ttl: float = 24 * 3600,
    spill_dir: str | None = None,
    webui_dir: str | None = None,
) -> FastAPI:
    app = FastAPI(title="clinotate", docs_url=None, redoc_url=None)

    package: RulePackage = (
        parse_rule_package(rules_path) if rules_path else load_baseline_package()
    )
    default_bundle = build_bundle(package)
    sessions = SessionStore(ttl_seconds=session_ttl,
                            spill_dir=Path(spill_dir) if spill_dir else None)
    ontology: OntologyStore | None = load_ontology(ontology_path) if ontology_path else None

    def require_token(request: Request) -> None:
        if token is None:
            return
        supplied = request.headers.get("authorization", "")
        expected = f"Bearer {token}"
        if not secrets.compare_digest(supplied, expected):
            raise HTTPException(status_code=401, detail="missing or invalid bearer token")

    def bundle_for(session_id: str | None) -> SessionRuleset:
        if session_id:
            bundle = sessions.get(session_id)
            if bundle is not None:
                return bundle
        return default_bundle

    @app.post("/annotate")
    def annotate_route(body: AnnotateRequest) -> dict:
        if len(body.text) > MAX_TEXT_CHARS:
            raise HTTPException(
                status_code=413,
                detail=f"text exceeds {MAX_TEXT_CHARS} characters ({len(body.text)})",
            )
        doc_date = None
        if body.doc_date:
            try:
                doc_date = date.fromisoformat(body.doc_date)
            except ValueError:
                raise HTTPException(status_code=422, detail="doc_date must be an ISO date")
        bundle = bundle_for(body.session_id)
        if not body.text:
            return {"mentions": [], "temporal": []}
        doc = Document(doc_id="request", text=body.text, doc_date=doc_date)
        mentions, temporal = annotate_with_temporal(doc, bundle.compiled)
        return {
            "mentions": [mention_to_dict(doc.doc_id, m) for m in mentions],
            "temporal": [
                {
                    "start": t.span.start,
                    "end": t.span.end,
                    "kind": t.kind.value,
                    "resolved": t.resolved.isoformat() if t.resolved else "",
                }
                for t in temporal
            ],
        }

    @app.post("/ruleset", dependencies=[Depends(require_token)])
    async def upload_ruleset(request: Request, session_id: str | None = Query(None)) -> dict:
        content_type = request.headers.get("content-type", "").split(";")[0].strip()
        if content_type == "application/json":
            try:
                upload = RulesetFilesUpload.model_validate_json(await request.body())
            except ValueError as exc:
                raise HTTPException(status_code=422, detail=str(exc))
            sid = upload.session_id
            source: object = upload.files
        else:
            if not session_id:
                raise HTTPException(
                    status_code=422,
                    detail="session_id query parameter is required for archive uploads",
                )
            sid = session_id
            source = await request.body()
        try:
            parsed = parse_rule_package(source)
            report = validate_rule_package(parsed)
            if not report.ok:
                raise HTTPException(status_code=400, detail={
                    "message": "package does not validate",
                    "violations": list(report.violations),
                })
            bundle = build_bundle(parsed)
        except RulePackageError as exc:
            raise HTTPException(status_code=400, detail={
                "message": exc.message,
                "file": exc.file,
                "line": exc.line,
            })
        sessions.put(sid, bundle)
        return {"ok": True, "warnings": list(report.warnings)}

    @app.get("/ruleset/{session_id}")
    def download_ruleset(session_id: str) -> Response:
        bundle = sessions.get(session_id)
        if bundle is None:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id!r}")
        return Response(content=bundle.archive, media_type="application/zip")

    @app.get("/ontology/tree")
    def ontology_tree(root: str | None = Query(None), depth: int | None = Query(None)) -> dict:
        if ontology is None:
            raise HTTPException(status_code=404, detail="no ontology loaded")
        if root is None:
            return {"roots": ontology.top_level(depth=depth if depth is not None else 1)}
        try:
            return ontology.subtree(root, depth=depth)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown ontology node {root!r}")

    @app.post("/dictionary/extract", dependencies=[Depends(require_token)])
    def dictionary_extract(body: ExtractRequest) -> dict:
        if ontology is None:
            raise HTTPException(status_code=404, detail="no ontology loaded")
        if not body.node_ids:
            raise HTTPException(status_code=422, detail="node_ids must not be empty")
        try:
            entries = ontology.extract_entries(body.node_ids, body.concept, body.descendants)
        except KeyError as exc:
            raise HTTPException(status_code=404, detail=f"unknown ontology node {exc.args[0]!r}")
        return {
            "entries": [
                {
                    "term": e.term,
                    "concept": e.concept,
                    "source_code": e.source_code,
                    "source_ontology": e.source_ontology,
                }
                for e in entries
            ]
        }

    @app.get("/health")
    def health() -> dict:
        return {
            "status": "ok",
            "package_name": default_bundle.package.name,
            "package_version": default_bundle.package.version,
            "concepts_count": len(default_bundle.package.concepts),
        }

    if webui_dir and Path(webui_dir).is_dir():
        app.mount("/", StaticFiles(directory=webui_dir, html=True), name="webui")

    return app
