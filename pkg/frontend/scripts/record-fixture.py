"""Record real service responses into tests/fixtures/wire.json.

The frontend test double replays these payloads so its wire shapes cannot
drift from the actual server. Rerun after any change to the service JSON:

    python3 scripts/record-fixture.py
"""
import json
import sys
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from bricolage.collection import load_manifest_file
from bricolage.index import build_index
from bricolage.service import create_app

ROOT = Path(__file__).resolve().parent.parent
SAMPLE = ROOT.parent / "sample"


def main() -> int:
    index = build_index(load_manifest_file(SAMPLE / "manifest.json"))
    with tempfile.TemporaryDirectory() as data_dir:
        client = TestClient(create_app(index, SAMPLE, data_dir))

        collection = client.get("/api/collection").json()
        ids = sorted(
            {i for cat in collection["size_categories"] for i in cat["member_ids"]}
        )
        anthologies = {
            aid: client.get(f"/api/anthologies/{aid}").json() for aid in ids
        }

        session = client.post("/api/sessions").json()
        sid = session["session_id"]
        shelf = client.get(f"/api/sessions/{sid}/layout", params={"kind": "shelf"}).json()

        fixture = {
            "collection": collection,
            "anthologies": anthologies,
            "timeline": client.get("/api/timeline").json(),
            "sizes": client.get("/api/sizes").json(),
            "pile_layout": session["layout"],
            "shelf_layout": shelf,
        }

    out = ROOT / "tests" / "fixtures" / "wire.json"
    out.write_text(json.dumps(fixture, indent=2, sort_keys=True) + "\n")
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
