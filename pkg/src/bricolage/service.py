"""HTTP service over a collection index: filters, layouts, images, sessions.

The index is immutable and shared by all request handlers; the only mutable
state is per-session layout, persisted as one JSON file per session under
the data directory. Session files are written atomically (temp file +
rename) so a crash between requests never leaves a torn file, and every
mutation bumps the layout version, giving movers optimistic concurrency.
"""

from __future__ import annotations

import json
import math
import os
import secrets
import tempfile
import threading
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import FileResponse, JSONResponse
from fastapi.staticfiles import StaticFiles

from .collection import anthology_to_manifest, year_span
from .errors import (
    BricolageError,
    InvalidFilter,
    UnknownId,
)
from .facets import FilterState, avg_story_count, evaluate, resolve_texture_refs
from .index import CollectionIndex, collection_summary, load_index
from .layout import (
    LayoutState,
    move_item,
    pile_layout,
    set_pile_label,
    shelf_layout,
    thickness_mm,
)

DEFAULT_SHELF_WIDTH_MM = 1000.0

_STATUS_BY_CODE = {
    "unknown_id": 404,
    "version_conflict": 409,
}


class VersionConflict(BricolageError):
    code = "version_conflict"


def _error(code: str, message: str, **details) -> JSONResponse:
    status = _STATUS_BY_CODE.get(code, 400)
    return JSONResponse(
        status_code=status,
        content={"error": {"code": code, "message": message, **details}},
    )


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def default_pile_count(n_items: int) -> int:
    """Rough half-dozen books per pile."""
    return max(1, math.ceil(n_items / 6))


@dataclass
class Session:
    session_id: str
    created: str
    modified: str
    layout: LayoutState
    layout_params: dict

    def to_json(self) -> dict:
        return {
            "session_id": self.session_id,
            "created": self.created,
            "modified": self.modified,
            "layout": self.layout.to_json(),
            "layout_params": self.layout_params,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Session":
        return cls(
            session_id=obj["session_id"],
            created=obj["created"],
            modified=obj["modified"],
            layout=LayoutState.from_json(obj["layout"]),
            layout_params=obj["layout_params"],
        )


class SessionStore:
    """File-backed sessions with per-session exclusive mutation."""

    def __init__(self, data_dir: str | Path):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self._sessions: dict[str, Session] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()

    def _path(self, sid: str) -> Path:
        return self.data_dir / f"{sid}.json"

    def lock(self, sid: str) -> threading.Lock:
        with self._registry_lock:
            return self._locks.setdefault(sid, threading.Lock())

    def _persist(self, session: Session) -> None:
        payload = json.dumps(session.to_json(), indent=2)
        fd, tmp = tempfile.mkstemp(dir=self.data_dir, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(payload)
                fh.flush()
                os.fsync(fh.fileno())
            os.replace(tmp, self._path(session.session_id))
        finally:
            if os.path.exists(tmp):
                os.unlink(tmp)

    def create(self, layout: LayoutState, layout_params: dict) -> Session:
        sid = secrets.token_hex(12)
        now = _now()
        session = Session(
            session_id=sid,
            created=now,
            modified=now,
            layout=layout,
            layout_params=layout_params,
        )
        with self.lock(sid):
            self._sessions[sid] = session
            self._persist(session)
        return session

    def get(self, sid: str) -> Session:
        session = self._sessions.get(sid)
        if session is None:
            path = self._path(sid)
            if not path.is_file():
                raise UnknownId(f"unknown session {sid!r}", id=sid)
            session = Session.from_json(json.loads(path.read_text(encoding="utf-8")))
            self._sessions[sid] = session
        return session

    def update(self, sid: str, new_layout: LayoutState, layout_params=None) -> Session:
        """Caller must hold the session lock."""
        session = self.get(sid)
        session = replace(
            session,
            layout=new_layout,
            modified=_now(),
            layout_params=session.layout_params
            if layout_params is None
            else layout_params,
        )
        self._sessions[sid] = session
        self._persist(session)
        return session


def _normalize_layout_params(
    n_items: int,
    kind: str | None,
    group_by: str | None,
    n_piles: int | None,
    filter_json: str | None,
    shelf_width_mm: float | None,
) -> dict:
    if kind not in (None, "shelf", "pile"):
        raise InvalidFilter(f"kind must be 'shelf' or 'pile', got {kind!r}")
    if group_by not in (None, "none", "color"):
        raise InvalidFilter(f"group_by must be 'none' or 'color', got {group_by!r}")
    if n_piles is not None and n_piles < 1:
        raise InvalidFilter(f"n_piles must be positive, got {n_piles}")
    if shelf_width_mm is not None and shelf_width_mm <= 0:
        raise InvalidFilter(f"shelf_width_mm must be positive, got {shelf_width_mm}")
    filter_state = None
    if filter_json:
        try:
            filter_state = FilterState.from_json(json.loads(filter_json))
        except json.JSONDecodeError as exc:
            raise InvalidFilter(f"filter is not valid JSON: {exc}") from None
    return {
        "kind": kind or "pile",
        "group_by": group_by or "none",
        "n_piles": n_piles or default_pile_count(n_items),
        "filter": filter_state.to_json() if filter_state else None,
        "shelf_width_mm": shelf_width_mm or DEFAULT_SHELF_WIDTH_MM,
    }


def _layout_for_params(index: CollectionIndex, params: dict, seed: int) -> LayoutState:
    """Deterministic layout for normalized params; carries the session seed."""
    c = index.collection
    if params["filter"] is not None:
        f = FilterState.from_json(params["filter"])
        ids = evaluate(f, c, index.size_categories)
    else:
        ids = c.ids()
    if params["kind"] == "shelf":
        layout = shelf_layout(ids, c, shelf_width_mm=params["shelf_width_mm"])
    elif not ids:
        layout = LayoutState(kind="pile", placements=(), piles={}, seed=seed, version=0)
    else:
        layout = pile_layout(
            ids,
            c,
            n_piles=min(params["n_piles"], len(ids)),
            group_by=params["group_by"],
            seed=seed,
        )
    return replace(layout, seed=seed)


def create_app(
    index: CollectionIndex,
    image_root: str | Path,
    data_dir: str | Path,
    ui_dir: str | Path | None = None,
) -> FastAPI:
    image_root = Path(image_root)
    app = FastAPI(title="bricolage", docs_url=None, redoc_url=None)
    store = SessionStore(data_dir)
    app.state.index = index
    app.state.sessions = store
    collection = index.collection

    @app.exception_handler(BricolageError)
    async def bricolage_error(request: Request, exc: BricolageError):
        return _error(exc.code, str(exc), **exc.details)

    @app.exception_handler(RequestValidationError)
    async def invalid_body(request: Request, exc: RequestValidationError):
        return _error("invalid_body", str(exc))

    def _get_anthology(anthology_id: str):
        if anthology_id not in collection:
            raise UnknownId(f"unknown anthology id {anthology_id!r}", id=anthology_id)
        return collection[anthology_id]

    def _image_response(rel_path: str) -> FileResponse:
        path = image_root / rel_path
        if not path.is_file():
            raise UnknownId(f"image not found: {rel_path}", path=rel_path)
        media = "image/png" if path.suffix.lower() == ".png" else "image/jpeg"
        return FileResponse(path, media_type=media)

    @app.get("/api/collection")
    def get_collection():
        return collection_summary(index)

    @app.get("/api/anthologies/{anthology_id}")
    def get_anthology(anthology_id: str):
        a = _get_anthology(anthology_id)
        record = anthology_to_manifest(a)
        record["palette"] = a.palette.to_json()
        lo, hi = year_span(a)
        record["year_span"] = [lo, hi]
        record["thickness_mm"] = thickness_mm(a.page_count)
        return record

    @app.get("/api/anthologies/{anthology_id}/cover")
    def get_cover(anthology_id: str):
        return _image_response(_get_anthology(anthology_id).cover_image)

    @app.get("/api/anthologies/{anthology_id}/spine")
    def get_spine(anthology_id: str):
        a = _get_anthology(anthology_id)
        if a.spine_image is None:
            raise UnknownId(
                f"anthology {anthology_id!r} has no spine image", id=anthology_id
            )
        return _image_response(a.spine_image)

    @app.post("/api/filter")
    async def post_filter(request: Request):
        try:
            body = await request.json()
        except json.JSONDecodeError as exc:
            raise InvalidFilter(f"body is not valid JSON: {exc}") from None
        f = FilterState.from_json(body)
        ids = evaluate(f, collection, index.size_categories)
        f = resolve_texture_refs(f, collection)
        return {
            "ids": ids,
            "avg_story_count": avg_story_count(collection, ids),
            "color_samples": [s.to_json() for s in f.color_samples],
        }

    @app.get("/api/timeline")
    def get_timeline():
        return index.timeline.to_json()

    @app.get("/api/sizes")
    def get_sizes():
        return [cat.to_json() for cat in index.size_categories]

    @app.post("/api/sessions")
    def create_session():
        seed = secrets.randbits(63)
        params = _normalize_layout_params(len(collection), None, None, None, None, None)
        layout = _layout_for_params(index, params, seed)
        session = store.create(layout, params)
        return {"session_id": session.session_id, "layout": session.layout.to_json()}

    @app.get("/api/sessions/{sid}/layout")
    def get_layout(
        sid: str,
        kind: str | None = None,
        group_by: str | None = None,
        n_piles: int | None = None,
        filter: str | None = None,
        shelf_width_mm: float | None = None,
    ):
        with store.lock(sid):
            session = store.get(sid)
            if all(v is None for v in (kind, group_by, n_piles, filter, shelf_width_mm)):
                return session.layout.to_json()
            params = _normalize_layout_params(
                len(collection), kind, group_by, n_piles, filter, shelf_width_mm
            )
            if params == session.layout_params:
                return session.layout.to_json()
            layout = _layout_for_params(index, params, session.layout.seed)
            layout = replace(layout, version=session.layout.version + 1)
            session = store.update(sid, layout, layout_params=params)
            return session.layout.to_json()

    @app.post("/api/sessions/{sid}/move")
    async def post_move(sid: str, request: Request):
        try:
            body = await request.json()
        except json.JSONDecodeError as exc:
            raise InvalidFilter(f"body is not valid JSON: {exc}") from None
        try:
            anthology_id = body["id"]
            x_mm = float(body["x_mm"])
            y_mm = float(body["y_mm"])
            expected_version = int(body["expected_version"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidFilter(f"bad move body: {exc}") from None
        with store.lock(sid):
            session = store.get(sid)
            if session.layout.version != expected_version:
                raise VersionConflict(
                    "layout version changed",
                    expected=expected_version,
                    actual=session.layout.version,
                )
            layout = move_item(session.layout, anthology_id, x_mm, y_mm)
            session = store.update(sid, layout)
            return session.layout.to_json()

    @app.post("/api/sessions/{sid}/pile-label")
    async def post_pile_label(sid: str, request: Request):
        try:
            body = await request.json()
        except json.JSONDecodeError as exc:
            raise InvalidFilter(f"body is not valid JSON: {exc}") from None
        pile_id = body.get("pile_id")
        label = body.get("label")
        if not isinstance(pile_id, str) or not (label is None or isinstance(label, str)):
            raise InvalidFilter("pile-label body needs pile_id (string) and label")
        with store.lock(sid):
            session = store.get(sid)
            layout = set_pile_label(session.layout, pile_id, label)
            session = store.update(sid, layout)
            return session.layout.to_json()

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app


def serve(
    index_path: str | Path,
    image_root: str | Path,
    data_dir: str | Path,
    port: int = 8000,
    host: str = "127.0.0.1",
    ui_dir: str | Path | None = None,
) -> None:
    """Load the index and run the service until shutdown."""
    import uvicorn

    index = load_index(index_path)
    app = create_app(index, image_root, data_dir, ui_dir=ui_dir)
    uvicorn.run(app, host=host, port=port, log_level="info")
