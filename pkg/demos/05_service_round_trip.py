"""
Ingest, serve, curate: the HTTP round trip
==========================================

The service exposes the ingested index over HTTP and persists each
visitor's pile arrangement in a session file. This script builds an index
from the sample manifest, mounts the app in-process, and plays through a
short curation session.
"""

# %%
# Ingest the sample manifest
# --------------------------
# Ingest validates, extracts palettes, clusters sizes, buckets the
# timeline, and writes one self-contained JSON index. Re-running produces
# byte-identical output.
import json
import tempfile
from pathlib import Path

from bricolage.index import ingest, load_index

SAMPLE = Path(__file__).resolve().parent.parent / "sample" / "manifest.json"
workdir = Path(tempfile.mkdtemp(prefix="bricolage-demo-"))
index_path = workdir / "index.json"
ingest(SAMPLE, SAMPLE.parent, index_path)
index = load_index(index_path)
print(f"index: {len(index.collection)} anthologies, "
      f"{len(index.size_categories)} size categories")

# %%
# Mount the service
# -----------------
# In production this runs under uvicorn (`bricolage serve`); the test
# client drives the very same app object here.
from fastapi.testclient import TestClient

from bricolage.service import create_app

app = create_app(index, SAMPLE.parent, workdir / "sessions")
client = TestClient(app)

summary = client.get("/api/collection").json()
print("summary:", summary["anthology_count"], "items,",
      "years", summary["year_extent"])

detail = client.get("/api/anthologies/g-003").json()
print("g-003:", detail["title"], "-", detail["cover_material"],
      "/", detail["binding"])

# %%
# Filter over the wire
# --------------------
# The endpoint accepts the same filter document the engine evaluates
# in-process, and returns ids plus widget payloads.
body = {
    "color_samples": [
        {"hue_deg": 40.0, "radius": 0.9, "tolerance_de": 30.0,
         "min_proportion": 0.15}
    ],
    "year_range": [1880, 1960],
    "size_categories": [],
}
result = client.post("/api/filter", json=body).json()
print("matches:", result["ids"])
print("avg stories:", result["avg_story_count"])
print("texture ref:", result["color_samples"][0]["texture_ref"])

# %%
# A curation session
# ------------------
# Sessions start as a seeded pile layout over the full collection. Every
# mutation bumps the version; a stale version is refused, which is how
# two browser tabs avoid trampling each other.
session = client.post("/api/sessions", json={}).json()
sid = session["session_id"]
layout = client.get(f"/api/sessions/{sid}/layout").json()
print("session", sid[:8], "kind", layout["kind"],
      "version", layout["version"])

move = {"id": "g-001", "x_mm": 500.0, "y_mm": 400.0,
        "expected_version": layout["version"]}
after = client.post(f"/api/sessions/{sid}/move", json=move).json()
print("moved g-001, version now", after["version"])

stale = client.post(f"/api/sessions/{sid}/move", json=move)
print("replaying the same move:", stale.status_code,
      stale.json()["error"]["code"])

# %%
# Sessions survive restarts
# -------------------------
# Session files are written atomically; a brand-new app instance over the
# same data directory picks the layout right back up.
app2 = create_app(index, SAMPLE.parent, workdir / "sessions")
reloaded = TestClient(app2).get(f"/api/sessions/{sid}/layout").json()
assert reloaded == client.get(f"/api/sessions/{sid}/layout").json()
print("layout intact after restart; g-001 at",
      [(p["x_mm"], p["y_mm"]) for p in reloaded["placements"]
       if p["id"] == "g-001"])
