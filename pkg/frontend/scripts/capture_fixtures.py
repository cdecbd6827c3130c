"""Regenerate tests/fixtures/*.json from the real gateway.

Spins the service up in-process on the scripted backend and records the
payloads the browser client is tested against, so snapshots always reflect
genuine API output.  Run from the frontend directory:

    python3 scripts/capture_fixtures.py
"""

import json
import shutil
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from logictutor.corpus import data_path
from logictutor.service import ServiceConfig, create_app

WORD_FOR_WORD = "For all x, if x is a dog and x barks, then x does not bite."
STEPS = [
    "The cat still sits on the roof.",
    "Hence the dog did not bark.",
    "Consequently, Hans did not take his dog for a walk.",
    "So Hans did not go for a walk.",
    "Thus the sun does not shine.",
]

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def main() -> None:
    with tempfile.TemporaryDirectory() as tmp:
        shutil.copy(data_path("exercises.json"), tmp)
        shutil.copy(data_path("arguments.json"), tmp)
        config = ServiceConfig(corpus_dir=tmp, backend={
            "type": "scripted",
            "replies": {
                WORD_FOR_WORD: "∀x((D(x)∧B(x))→¬S(x))",
                "Andreas attends on Mondays.": "M→A",
            },
        })
        client = TestClient(create_app(config))

        out = {}
        out["exercise_deformalize.json"] = client.get(
            "/api/exercises/barking-dogs?mode=deformalize").json()
        out["exercise_formalize.json"] = client.get(
            "/api/exercises/barking-dogs?mode=formalize").json()
        out["deformalization_equivalent.json"] = client.post(
            "/api/exercises/barking-dogs/deformalization",
            json={"text": WORD_FOR_WORD}).json()
        out["formalization_sufficient.json"] = client.post(
            "/api/exercises/party-monday/formalization",
            json={"formula": "M -> A"}).json()
        out["deformalization_sufficient.json"] = client.post(
            "/api/exercises/party-monday/deformalization",
            json={"text": "Andreas attends on Mondays."}).json()
        out["argument_report.json"] = client.post(
            "/api/arguments/sunshine-walk", json={"steps": STEPS}).json()
        out["argument_summary.json"] = next(
            e for e in client.get("/api/arguments").json()
            if e["id"] == "sunshine-walk")

        FIXTURES.mkdir(parents=True, exist_ok=True)
        for name, payload in out.items():
            path = FIXTURES / name
            path.write_text(json.dumps(payload, indent=2, ensure_ascii=False) + "\n",
                            encoding="utf-8")
            print(f"wrote {path}")


if __name__ == "__main__":
    main()
