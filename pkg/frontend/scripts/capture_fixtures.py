"""Regenerate tests/fixtures/*.json from a live backend.

Run from the repository root with the backend installed:

    python3 -c "import json; from tests.corpus import build_corpus; \
        json.dump(build_corpus(), open('/tmp/fixture.json', 'w'))"
    citesuggest serve --fixture /tmp/fixture.json --current-year 2025 --port 8742 &
    python3 frontend/scripts/capture_fixtures.py

The captured payloads are checked in; the UI tests replay them through a
scripted fetch stub so the frontend suite needs no running backend.
"""

from __future__ import annotations

import json
import pathlib
import sys

import requests

BASE = sys.argv[1] if len(sys.argv) > 1 else "http://127.0.0.1:8742"
OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"
SEEDS = ["10.5000/s1", "10.5000/s2", "10.5000/s3"]


def save(name: str, payload: dict) -> None:
    path = OUT / f"{name}.json"
    path.write_text(
        json.dumps(payload, indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
    )
    print("wrote", path)


def main() -> None:
    created = requests.post(BASE + "/sessions").json()
    save("session_created", created)
    sid = created["id"]

    requests.post(f"{BASE}/sessions/{sid}/select", json={"dois": SEEDS})
    save("session_before", requests.get(f"{BASE}/sessions/{sid}").json())
    sugg = requests.get(
        f"{BASE}/sessions/{sid}/suggestions", params={"limit": 50}
    ).json()
    save("suggestions_before", sugg)
    save("network_before", requests.get(f"{BASE}/sessions/{sid}/network").json())

    staged = [e["publication"]["doi"] for e in sugg["entries"][:2]]
    save(
        "session_staged",
        requests.post(f"{BASE}/sessions/{sid}/stage", json={"include": staged}).json(),
    )
    save("session_after", requests.post(f"{BASE}/sessions/{sid}/update").json())
    save(
        "suggestions_after",
        requests.get(
            f"{BASE}/sessions/{sid}/suggestions", params={"limit": 50}
        ).json(),
    )
    save("network_after", requests.get(f"{BASE}/sessions/{sid}/network").json())

    save(
        "session_keyworded",
        requests.put(
            f"{BASE}/sessions/{sid}/keywords",
            json={"text": "citation|network, survey", "boost_enabled": True},
        ).json(),
    )
    save(
        "suggestions_keyworded",
        requests.get(
            f"{BASE}/sessions/{sid}/suggestions", params={"limit": 50}
        ).json(),
    )
    save("network", requests.get(f"{BASE}/sessions/{sid}/network").json())
    save("authors", requests.get(f"{BASE}/sessions/{sid}/authors").json())


if __name__ == "__main__":
    main()
