"""Shared fixtures: the bundled group corpus, reference pairs, built tensors."""

from __future__ import annotations

from pathlib import Path

import pytest

from mlacalc.corpus import all_groups, corpus_pairs
from mlacalc.mla import make_improper_star, make_trivial_star
from mlacalc.tensor import build_tensor_algebra

ROOT = Path(__file__).resolve().parent.parent


@pytest.fixture(scope="session")
def groups():
    return all_groups()


@pytest.fixture(scope="session")
def corpus_algebras(groups):
    out = {}
    for name, G in groups.items():
        out[f"{name}-trivial"] = make_trivial_star(G)
        out[f"{name}-improper"] = make_improper_star(G)
    return out


@pytest.fixture(scope="session")
def pairs():
    return corpus_pairs()


@pytest.fixture(scope="session")
def tensors(pairs):
    return {name: build_tensor_algebra(pair) for name, pair in pairs.items()}


@pytest.fixture(scope="session")
def fixtures_dir():
    return ROOT / "fixtures"


@pytest.fixture(scope="session")
def golden_dir():
    return ROOT / "tests" / "golden"
