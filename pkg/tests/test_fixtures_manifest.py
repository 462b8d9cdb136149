import hashlib
from pathlib import Path

import pytest

from surfk6.embedding import format_emb, read_emb
from surfk6.fixtures import NAMED

ROOT = Path(__file__).resolve().parent.parent / "fixtures"


def _manifest():
    out = {}
    for line in (ROOT / "MANIFEST.sha256").read_text().splitlines():
        digest, name = line.split()
        out[name] = digest
    return out


def test_manifest_covers_every_file():
    files = {p.name for p in ROOT.iterdir() if p.name != "MANIFEST.sha256"}
    assert set(_manifest()) == files


@pytest.mark.parametrize("name", sorted(_manifest()))
def test_hash(name):
    assert hashlib.sha256((ROOT / name).read_bytes()).hexdigest() == _manifest()[name]


@pytest.mark.parametrize("name", sorted(NAMED))
def test_emb_fixture_matches_generator(name):
    assert format_emb(read_emb(ROOT / f"{name}.emb")) == format_emb(NAMED[name]())
