#!/usr/bin/env python3
"""Regenerate the bundled fixture corpus and the CLI golden files.

Everything written here is deterministic; re-running on a clean checkout
must produce no diff.  Wall-clock fields in golden files are zeroed.
"""

from __future__ import annotations

import contextlib
import io
import json
import re
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from mlacalc.cli import main  # noqa: E402
from mlacalc.corpus import all_groups, corpus_pairs  # noqa: E402
from mlacalc.docs import (  # noqa: E402
    algebra_document,
    document_to_json,
    pair_document,
    tensor_job_document,
)
from mlacalc.mla import make_improper_star, make_trivial_star  # noqa: E402

FIXTURES = ROOT / "fixtures"
GOLDEN = ROOT / "tests" / "golden"


def write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    print(f"wrote {path.relative_to(ROOT)}")


def gen_algebras() -> None:
    for name, group in all_groups().items():
        for star, make in (("trivial", make_trivial_star), ("improper", make_improper_star)):
            doc = algebra_document(make(group), name=f"{name}-{star}")
            write(FIXTURES / "algebras" / f"{name}-{star}.json", document_to_json(doc))


def gen_pairs_and_tensors() -> None:
    for name, pair in corpus_pairs().items():
        write(FIXTURES / "pairs" / f"{name}.json", document_to_json(pair_document(pair, name)))
        write(
            FIXTURES / "tensors" / f"{name}.json",
            document_to_json(tensor_job_document(pair, name)),
        )


def gen_bad() -> None:
    groups = all_groups()
    pairs = corpus_pairs()

    # single-entry star perturbations; each must fail an axiom with a witness
    doc = algebra_document(make_trivial_star(groups["C4"]), name="c4-star-perturbed")
    doc["star"][1][2] = doc["elements"][3]
    write(FIXTURES / "bad" / "star-perturbed-c4.json", document_to_json(doc))

    doc = algebra_document(make_improper_star(groups["S3"]), name="s3-star-perturbed")
    old = doc["elements"].index(doc["star"][1][2])
    doc["star"][1][2] = doc["elements"][(old + 1) % 6]
    write(FIXTURES / "bad" / "star-perturbed-s3.json", document_to_json(doc))

    # single-entry bracket perturbation inside a pair document
    doc = pair_document(pairs["q8-trivial"], name="q8-bracket-perturbed")
    doc["g_on_h"]["bracket"][1][2] = doc["g"]["elements"][1]
    write(FIXTURES / "bad" / "bracket-perturbed-q8.json", document_to_json(doc))

    # structurally fine JSON, mathematically not a group
    write(
        FIXTURES / "bad" / "not-a-group.json",
        document_to_json(
            {
                "kind": "algebra",
                "name": "not-a-group",
                "elements": ["e", "a"],
                "table": [["e", "a"], ["a", "a"]],
                "star": "trivial",
            }
        ),
    )

    # undeclared name in a table
    write(
        FIXTURES / "bad" / "unknown-name.json",
        document_to_json(
            {
                "kind": "algebra",
                "name": "unknown-name",
                "elements": ["e", "a"],
                "table": [["e", "a"], ["a", "z"]],
                "star": "trivial",
            }
        ),
    )

    # not JSON at all
    write(FIXTURES / "bad" / "malformed.json", "{this is not json\n")

    # a tensor job whose coset cap is far too small
    write(
        FIXTURES / "bad" / "tiny-cap-tensor.json",
        document_to_json(
            tensor_job_document(pairs["s3-improper-star"], "s3-tiny-cap", max_cosets=4)
        ),
    )


def _zero_wall_ms(obj):
    if isinstance(obj, dict):
        return {k: (0 if k == "wall_ms" else _zero_wall_ms(v)) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_zero_wall_ms(v) for v in obj]
    return obj


def normalize_report(text: str, as_json: bool) -> str:
    if as_json:
        return json.dumps(_zero_wall_ms(json.loads(text)), indent=2, ensure_ascii=False) + "\n"
    return re.sub(r"(?m)^(\S+ +\S+ +\d+ +)(\d+)", r"\g<1>0", text)


def capture(argv: list[str]) -> tuple[int, str]:
    out = io.StringIO()
    with contextlib.redirect_stdout(out):
        rc = main(argv)
    return rc, out.getvalue()


def gen_goldens() -> None:
    cases = [
        ("validate-s3-improper.txt", ["validate", str(FIXTURES / "algebras" / "S3-improper.json")], False),
        ("series-s3-trivial.txt", ["series", str(FIXTURES / "algebras" / "S3-trivial.json")], False),
        ("action-check-z2.txt", ["action-check", str(FIXTURES / "pairs" / "z2-trivial.json")], False),
        ("tensor-z2.json", ["tensor", str(FIXTURES / "tensors" / "z2-trivial.json"), "--json"], True),
        ("verify-s3-tensor.txt", ["verify", str(FIXTURES / "tensors" / "s3-improper-star.json")], False),
        ("verify-q8-tensor.json", ["verify", str(FIXTURES / "tensors" / "q8-trivial.json"), "--json"], True),
        (
            "verify-s3-identities.txt",
            ["verify", str(FIXTURES / "algebras" / "S3-improper.json"), "--suite", "identities"],
            False,
        ),
    ]
    for fname, argv, as_json in cases:
        rc, out = capture(argv)
        if rc != 0:
            raise SystemExit(f"golden case {fname} exited {rc}")
        write(GOLDEN / fname, normalize_report(out, as_json))


if __name__ == "__main__":
    gen_algebras()
    gen_pairs_and_tensors()
    gen_bad()
    gen_goldens()
