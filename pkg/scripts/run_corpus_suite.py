#!/usr/bin/env python3
"""Run the whole statement catalogue across the bundled corpus.

Axioms and identity suites on every order <= 12 group under both canonical
stars, then the full ledger on each reference pair's tensor.  Exits 1 if
anything fails.
"""

from __future__ import annotations

import sys
import time
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from mlacalc.corpus import all_groups, corpus_pairs  # noqa: E402
from mlacalc.harness import Instance, run_suite  # noqa: E402
from mlacalc.mla import make_improper_star, make_trivial_star  # noqa: E402
from mlacalc.tensor import build_tensor_algebra  # noqa: E402


def main() -> int:
    bad = 0
    t0 = time.perf_counter()
    for name, group in sorted(all_groups().items()):
        for star, make in (("trivial", make_trivial_star), ("improper", make_improper_star)):
            inst = Instance.from_algebra(make(group), f"{name}-{star}")
            led = run_suite(inst, "identities")
            axioms = run_suite(inst, "axioms")
            ok = led.ok and axioms.ok
            bad += not ok
            print(f"{name+'-'+star:<22} axioms+identities: {'pass' if ok else 'FAIL'}")
    for name, pair in corpus_pairs().items():
        t = build_tensor_algebra(pair)
        led = run_suite(Instance.from_tensor(t, name), "all")
        c = led.counts()
        bad += not led.ok
        print(
            f"{name:<22} full ledger: {'pass' if led.ok else 'FAIL'} "
            f"({c['pass']} pass, {c['fail']} fail, {c['inapplicable']} n/a)"
        )
        for v in led.failures:
            print(f"    {v.statement}: {v.detail}")
    print(f"total wall time: {time.perf_counter() - t0:.1f}s")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
