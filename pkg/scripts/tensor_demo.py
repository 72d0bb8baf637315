#!/usr/bin/env python3
"""Build the three reference tensors and print the full CLI tensor report."""

from __future__ import annotations

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from mlacalc.cli import main  # noqa: E402

if __name__ == "__main__":
    rc = 0
    for name in ("z2-trivial", "s3-improper-star", "q8-trivial"):
        print(f"=== {name} ===")
        rc |= main(["tensor", str(ROOT / "fixtures" / "tensors" / f"{name}.json")])
        print()
    sys.exit(rc)
