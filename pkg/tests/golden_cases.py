"""CLI invocations whose machine-format output is stored under goldens/.

Run this file directly to regenerate the stored outputs.
"""

from __future__ import annotations

import contextlib
import io
from pathlib import Path

from hypetruth.cli import main

ROOT = Path(__file__).resolve().parent.parent
GOLDENS = ROOT / "goldens"

CASES = {
    "regress": ["regress", "--all", "--root", str(ROOT)],
    "ord_cmp": ["ord", "cmp", "phi(w,0)", "w^w"],
    "check_identity_lem": ["check", str(ROOT / "proofs" / "identity_lem.kfl")],
    "models_lem": ["models", "find", "--sequent", "=> p | !p"],
    "fixpoint_liar": ["fixpoint", "--universe", str(ROOT / "universes" / "liar.toml")],
    "translate_liar": ["translate", "audit", "--universe", str(ROOT / "universes" / "liar.toml")],
    "derive_ti2": ["derive", "ti", "--formula", "v0. v0=v0", "--tower", "2"],
}


def run(argv) -> tuple[int, str]:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(["--format", "machine", *argv])
    return code, buf.getvalue()


if __name__ == "__main__":
    GOLDENS.mkdir(exist_ok=True)
    for name, argv in CASES.items():
        code, out = run(argv)
        (GOLDENS / f"{name}.txt").write_text(out, encoding="utf-8")
        print(name, code)
