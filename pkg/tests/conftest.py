import hashlib
import os
from pathlib import Path

import pytest

AEMET_ENV = "FPCLOGIT_AEMET_DIR"
AEMET_FILES = ("temp_monthly.csv", "prec_monthly.csv", "stations.csv")


def _aemet_root() -> Path:
    return Path(os.environ.get(AEMET_ENV, Path(__file__).parent / "data" / "aemet"))


def locate_aemet() -> tuple[Path | None, str]:
    """Find the externally exported weather fixture, checksum-gated.

    Returns (directory, "") when present and verified, else (None, reason).
    The fixture is not bundled; see README for the export recipe.
    """
    root = _aemet_root()
    manifest = root / "checksums.sha256"
    if not root.is_dir() or not manifest.is_file():
        return None, f"external weather fixture not present under {root}"
    expected = {}
    for line in manifest.read_text().splitlines():
        line = line.strip()
        if not line:
            continue
        digest, name = line.split(None, 1)
        expected[name.strip()] = digest.lower()
    for name in AEMET_FILES:
        path = root / name
        if not path.is_file():
            return None, f"fixture file {name} missing under {root}"
        if name not in expected:
            return None, f"fixture manifest has no checksum for {name}"
        actual = hashlib.sha256(path.read_bytes()).hexdigest()
        if actual != expected[name]:
            return None, f"fixture file {name} fails its checksum; re-export it"
    return root, ""


@pytest.fixture(scope="session")
def aemet_dir():
    root, reason = locate_aemet()
    if root is None:
        pytest.skip(reason)
    return root
