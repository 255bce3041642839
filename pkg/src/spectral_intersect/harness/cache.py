"""Versioned JSON-lines store for the curve-independent psi and kappa caches.

Line 1 is a header; every other line is {"kind", "key", "value"}.  A file
with a bad header, a bad record or the wrong version is discarded whole.
"""

from __future__ import annotations

import json
import os
import tempfile
from fractions import Fraction
from pathlib import Path

from .. import intersect

FORMAT = "spectral-intersect-cache"
VERSION = 1


def _key_string(kind: str, key) -> str:
    if kind == "psi":
        g, ds = key
        return f"{g}|{','.join(map(str, ds))}"
    g, ds, ks = key
    return f"{g}|{','.join(map(str, ds))}|{','.join(map(str, ks))}"


def _parse_key(kind: str, text: str):
    parts = text.split("|")

    def ints(s):
        return tuple(int(x) for x in s.split(",")) if s else ()

    if kind == "psi" and len(parts) == 2:
        return int(parts[0]), ints(parts[1])
    if kind == "kappa" and len(parts) == 3:
        return int(parts[0]), ints(parts[1]), ints(parts[2])
    raise ValueError(f"bad {kind} key {text!r}")


def _tables():
    return {"psi": intersect.PSI_CACHE, "kappa": intersect.KAPPA_CACHE}


def read_records(path) -> dict | None:
    """{kind: {key: Fraction}} or None when the file is missing or unusable."""
    p = Path(path)
    if not p.exists():
        return None
    out = {"psi": {}, "kappa": {}}
    try:
        with p.open(encoding="utf-8") as fh:
            header = json.loads(fh.readline())
            if header != {"format": FORMAT, "version": VERSION}:
                return None
            for line in fh:
                if not line.strip():
                    continue
                rec = json.loads(line)
                kind = rec["kind"]
                if kind not in out:
                    return None
                out[kind][_parse_key(kind, rec["key"])] = Fraction(rec["value"])
    except (ValueError, KeyError, TypeError):
        return None
    return out


def load(path) -> int:
    """Merge a cache file into memory; returns the number of records (0 if discarded)."""
    records = read_records(path)
    if records is None:
        return 0
    tables = _tables()
    with intersect._LOCK:
        for kind, entries in records.items():
            for key, value in entries.items():
                tables[kind].setdefault(key, value)
    return sum(len(v) for v in records.values())


def save(path) -> int:
    """Write the in-memory caches atomically (temp file + rename)."""
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    with intersect._LOCK:
        snapshot = {kind: dict(t) for kind, t in _tables().items()}
    fd, tmp = tempfile.mkstemp(prefix=p.name, dir=p.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(json.dumps({"format": FORMAT, "version": VERSION}) + "\n")
            for kind in ("psi", "kappa"):
                for key, value in sorted(snapshot[kind].items()):
                    fh.write(json.dumps({"kind": kind, "key": _key_string(kind, key),
                                         "value": str(value)}) + "\n")
        os.replace(tmp, p)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise
    return sum(len(v) for v in snapshot.values())


def stats(path) -> dict:
    p = Path(path)
    records = read_records(p)
    return {
        "path": str(p),
        "exists": p.exists(),
        "valid": records is not None,
        "version": VERSION,
        "psi": len(records["psi"]) if records else 0,
        "kappa": len(records["kappa"]) if records else 0,
        "bytes": p.stat().st_size if p.exists() else 0,
    }


def clear(path) -> bool:
    p = Path(path)
    if p.exists():
        p.unlink()
        return True
    return False


def clear_memory() -> None:
    from ..toprec import clear_cache

    with intersect._LOCK:
        intersect.PSI_CACHE.clear()
        intersect.KAPPA_CACHE.clear()
    clear_cache()
