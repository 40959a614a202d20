from __future__ import annotations

import json
import pathlib

import pytest

DATA_DIR = pathlib.Path(__file__).resolve().parent / "data"


@pytest.fixture(scope="session")
def data_dir() -> pathlib.Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def falcone_source() -> str:
    return (DATA_DIR / "falcone.dot").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def fixture_records() -> list[dict]:
    rows = []
    with open(DATA_DIR / "fixture_corpus.jsonl", encoding="utf-8") as fh:
        for line in fh:
            rows.append(json.loads(line))
    return rows


@pytest.fixture(scope="session")
def frozen_stats() -> dict:
    with open(DATA_DIR / "fixture_stats.json", encoding="utf-8") as fh:
        return json.load(fh)


@pytest.fixture()
def engine():
    from dotscore import make_engine

    return make_engine()
