"""Regenerate the CLI golden files under tests/golden from tests/fixtures/golden_cases.json."""

import contextlib
import io
import json
import sys
from pathlib import Path

from dhopf.cli import main

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "tests" / "fixtures"
GOLDEN = ROOT / "tests" / "golden"


def run_case(argv: list[str]) -> tuple[int, str]:
    argv = [a.replace("{fixtures}", str(FIXTURES)) for a in argv]
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


def regen(names=None) -> None:
    cases = json.loads((FIXTURES / "golden_cases.json").read_text())
    GOLDEN.mkdir(exist_ok=True)
    for name, argv in cases.items():
        if names and name not in names:
            continue
        code, out = run_case(argv)
        (GOLDEN / f"{name}.out").write_text(out)
        print(f"{name}: exit {code}, {len(out)} bytes")


if __name__ == "__main__":
    regen(sys.argv[1:] or None)
