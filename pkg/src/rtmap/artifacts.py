"""Result persistence: deterministic CSV, binary P5 graymaps, manifest.

Floats are written with repr (shortest round-trip form), newlines are
'\\n', and rows follow input order, so identical runs produce
byte-identical files.  The manifest lists every emitted file with its
sha256; it is written last and excludes itself.
"""

from __future__ import annotations

import hashlib
from pathlib import Path

import numpy as np


def fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if value is None:
        return ""
    return str(value)


def write_csv(path: str | Path, header: list[str], rows) -> Path:
    path = Path(path)
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt(v) for v in row))
    path.write_bytes(("\n".join(lines) + "\n").encode("ascii"))
    return path


def write_pgm(path: str | Path, values: np.ndarray) -> Path:
    """Binary P5 graymap; float arrays are scaled to 0..255 by their max."""
    path = Path(path)
    arr = np.asarray(values)
    if arr.dtype != np.uint8:
        peak = float(arr.max())
        scaled = (arr.astype(float) * (255.0 / peak)) if peak > 0 else np.zeros_like(arr, dtype=float)
        arr = np.clip(np.rint(scaled), 0, 255).astype(np.uint8)
    h, w = arr.shape
    header = f"P5\n{w} {h}\n255\n".encode("ascii")
    path.write_bytes(header + arr.tobytes())
    return path


def sha256_file(path: Path) -> str:
    digest = hashlib.sha256()
    digest.update(Path(path).read_bytes())
    return digest.hexdigest()


def write_manifest(out_dir: str | Path, name: str = "manifest.txt") -> Path:
    out_dir = Path(out_dir)
    entries = []
    for p in sorted(out_dir.rglob("*")):
        if p.is_file() and p.name != name:
            entries.append(f"{sha256_file(p)}  {p.relative_to(out_dir)}")
    target = out_dir / name
    target.write_bytes(("\n".join(entries) + "\n").encode("ascii"))
    return target
