"""Dataset checksums, the bundled toy fixtures, and an optional downloader.

Public network files are not redistributed with the package.  ``fetch``
downloads a registered source and pins its SHA-256 in a lock file the
first time; later fetches are verified against the pin.
"""

from __future__ import annotations

import hashlib
import json
import shutil
import urllib.request
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

__all__ = ["DatasetSource", "REGISTRY", "sha256_file", "fixture_path", "FIXTURES", "fetch"]


@dataclass(frozen=True)
class DatasetSource:
    filename: str
    url: str | None
    format: str
    note: str = ""


# url=None: no stable direct download is known; place the file manually.
REGISTRY: dict[str, DatasetSource] = {
    "USAir": DatasetSource(
        "USAir97.net", "http://vlado.fmf.uni-lj.si/pub/networks/data/mix/USAir97.net", "pajek",
        "Pajek USAir97 (Batagelj & Mrvar), weights are normalised flight counts"),
    "Moreno_health": DatasetSource(
        "out.moreno_health_health", None, "edgelist",
        "KONECT moreno_health; extract out.moreno_health_health from the KONECT archive"),
    "Bible": DatasetSource("bible.txt", None, "edgelist", "KONECT Bible noun co-occurrence"),
    "CE-GN": DatasetSource("bio-CE-GN.edges", None, "edgelist", "Network Repository bio-CE-GN"),
    "Collaboration": DatasetSource("hep-th.txt", None, "edgelist", "Newman hep-th collaborations"),
    "Twitter": DatasetSource("twitter.txt", None, "edgelist", "Weng et al. Twitter interactions"),
}

FIXTURES = ("triangle", "tree", "chorded_square")


def sha256_file(path: str | Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def fixture_path(name: str) -> Path:
    """Path of a bundled toy edge list (``triangle``, ``tree``, ``chorded_square``)."""
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}")
    return Path(str(resources.files("wcycle") / "data" / f"{name}.txt"))


def fetch(name: str, dest_dir: str | Path, lock_file: str | Path | None = None,
          timeout: float = 60.0) -> Path:
    """Download ``name`` into ``dest_dir`` and verify or pin its checksum.

    Raises
    ------
    KeyError
        Unknown dataset.
    RuntimeError
        No download URL, or checksum mismatch against the lock file.
    """
    src = REGISTRY[name]
    dest_dir = Path(dest_dir)
    dest_dir.mkdir(parents=True, exist_ok=True)
    target = dest_dir / src.filename
    lock_path = Path(lock_file) if lock_file else dest_dir / "datasets.lock.json"
    lock = json.loads(lock_path.read_text()) if lock_path.exists() else {}
    if not target.exists():
        if src.url is None:
            raise RuntimeError(f"{name}: no download URL registered ({src.note})")
        tmp = target.with_suffix(target.suffix + ".part")
        with urllib.request.urlopen(src.url, timeout=timeout) as resp, open(tmp, "wb") as out:
            shutil.copyfileobj(resp, out)
        tmp.replace(target)
    digest = sha256_file(target)
    pinned = lock.get(name)
    if pinned is not None and pinned != digest:
        raise RuntimeError(f"{name}: checksum {digest} does not match pinned {pinned}")
    if pinned is None:
        lock[name] = digest
        lock_path.write_text(json.dumps(lock, indent=2, sort_keys=True) + "\n")
    return target
