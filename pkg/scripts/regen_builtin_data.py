"""Regenerate the shipped instruction-set and program data files from code.

Run from the repository root after changing the builtin definitions:

    python3 scripts/regen_builtin_data.py
"""
from pathlib import Path

from spinqc import algolib, model
from spinqc.program import save_program

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "src" / "spinqc" / "data"


def main() -> None:
    sets_dir = DATA / "sets"
    progs_dir = DATA / "programs"
    sets_dir.mkdir(parents=True, exist_ok=True)
    progs_dir.mkdir(parents=True, exist_ok=True)

    for sid in model.BUILTIN_SET_IDS:
        path = sets_dir / (sid.lower().replace("-", "_") + ".json")
        model.save_set(model.builtin_set(sid), path)
        print(f"wrote {path}")

    for name, qp in algolib.builtin_library().items():
        path = progs_dir / (name.replace("/", "_") + ".json")
        save_program(qp, path)
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
