"""Dataset walkers: flat directories of images plus the two tree layouts used
for face/iris corpora (nested PGM subject folders, nested BMP folders)."""

from __future__ import annotations

from pathlib import Path

DATASET_KINDS = ("orl-pgm", "iitd-bmp", "flat")


class EmptyCorpusError(ValueError):
    """No decodable images were found under the dataset root."""


def corpus_paths(root: str | Path, kind: str) -> list[Path]:
    """Image paths for a dataset, in deterministic (relative-path) order."""
    root = Path(root)
    if not root.is_dir():
        raise FileNotFoundError(f"dataset root is not a directory: {root}")
    if kind == "orl-pgm":
        paths = [p for p in root.rglob("*") if p.is_file() and p.suffix.lower() == ".pgm"]
    elif kind == "iitd-bmp":
        paths = [p for p in root.rglob("*") if p.is_file() and p.suffix.lower() == ".bmp"]
    elif kind == "flat":
        paths = [
            p for p in root.iterdir() if p.is_file() and p.suffix.lower() in (".pgm", ".bmp")
        ]
    else:
        raise ValueError(f"unknown dataset kind {kind!r}; expected one of {DATASET_KINDS}")
    return sorted(paths, key=lambda p: p.relative_to(root).as_posix())
