from __future__ import annotations

from pathlib import Path

import pytest

REPO = Path(__file__).resolve().parent.parent


@pytest.fixture(scope="session")
def corpus_path() -> Path:
    return REPO / "corpus" / "base.catt"


@pytest.fixture(scope="session")
def inv_path() -> Path:
    return REPO / "corpus" / "inv.catt"


@pytest.fixture(scope="session")
def corpus_text(corpus_path: Path) -> str:
    return corpus_path.read_text(encoding="utf-8")
