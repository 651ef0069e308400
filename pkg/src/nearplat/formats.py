"""planar_code streams, DOT export and JSON report documents."""

from __future__ import annotations

import base64
import hashlib
import json
from fractions import Fraction
from typing import Iterable

from . import __version__
from .counting import Signature
from .planar_map import (
    DisconnectedError,
    InconsistentInvolutionError,
    MapError,
    NonSimpleError,
    PlanarMap,
    face_vector,
)

HEADER = b">>planar_code<<"
SCHEMA_VERSION = 1


class PlanarCodeError(ValueError):
    """Any malformed planar_code input."""


class BadHeader(PlanarCodeError):
    pass


class TruncatedRecord(PlanarCodeError):
    pass


class TooLarge(PlanarCodeError):
    pass


class NonSimple(PlanarCodeError, NonSimpleError):
    pass


class InconsistentInvolution(PlanarCodeError, InconsistentInvolutionError):
    pass


class DisconnectedRecord(PlanarCodeError, DisconnectedError):
    pass


def read_planar_code(data: bytes) -> list[PlanarMap]:
    """Decode a single-byte planar_code stream (neighbours are 1-based on disk)."""
    if not data.startswith(HEADER):
        raise BadHeader(f"stream does not start with {HEADER!r}")
    maps = []
    pos = len(HEADER)
    end = len(data)
    while pos < end:
        start = pos
        n = data[pos]
        pos += 1
        if n == 0:
            raise TooLarge(f"record at byte {start} uses the two-byte variant")
        rots = []
        for u in range(n):
            rot = []
            while True:
                if pos >= end:
                    raise TruncatedRecord(
                        f"record at byte {start} ends inside vertex {u + 1} of {n}"
                    )
                b = data[pos]
                pos += 1
                if b == 0:
                    break
                if b > n:
                    raise PlanarCodeError(f"neighbour {b} out of range in record at byte {start}")
                rot.append(b - 1)
            rots.append(rot)
        try:
            maps.append(PlanarMap(rots))
        except NonSimpleError as exc:
            raise NonSimple(f"record at byte {start}: {exc}") from exc
        except InconsistentInvolutionError as exc:
            raise InconsistentInvolution(f"record at byte {start}: {exc}") from exc
        except DisconnectedError as exc:
            raise DisconnectedRecord(f"record at byte {start}: {exc}") from exc
        except MapError as exc:
            raise PlanarCodeError(f"record at byte {start}: {exc}") from exc
    return maps


def encode_record(pm: PlanarMap) -> bytes:
    n = pm.vertex_count
    if n > 255:
        raise TooLarge(f"{n} vertices do not fit the single-byte format")
    out = bytearray([n])
    for rot in pm.rotations:
        out.extend(w + 1 for w in rot)
        out.append(0)
    return bytes(out)


def write_planar_code(maps: Iterable[PlanarMap]) -> bytes:
    """Encode maps; each rotation starts at its lowest neighbour."""
    return HEADER + b"".join(encode_record(pm) for pm in maps)


def export_dot(pm: PlanarMap, face_annotations: bool = True, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    if face_annotations:
        vec = face_vector(pm)
        body = ", ".join(f"{d}: {c}" for d, c in vec.items())
        lines.append(f"  /* face vector {{{body}}}")
        for i, f in enumerate(pm.faces):
            walk = " ".join(str(x) for x in f.vertices)
            lines.append(f"     face {i} degree {f.degree}: {walk}")
        lines.append("  */")
    for u in range(pm.vertex_count):
        lines.append(f"  {u};")
    for u, w in sorted(pm.edges()):
        lines.append(f"  {u} -- {w};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- report documents ----------------------------------------------------------------

TIMING_KEYS = frozenset({"seconds", "elapsed_seconds"})


def _num(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    return x


def config_hash(tasks: list[dict]) -> str:
    blob = json.dumps(tasks, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def _cells_and_witnesses(reports):
    cells, pruned, witnesses = [], [], []
    for rep in reports:
        t = rep.task
        for c in rep.cells:
            cells.append(
                {
                    "k": c.k,
                    "d2": c.d2,
                    "f1": c.f1,
                    "d1": list(c.degrees) if c.degrees is not None else None,
                    "v": c.v,
                    "class_count": c.class_count,
                    "status": c.status,
                    "signatures": c.signatures(),
                    "rooted_maps": c.rooted_maps,
                    "nodes": c.nodes,
                    "chord_prunes": c.chord_prunes,
                    "seconds": round(c.seconds, 4),
                }
            )
            for code, pm in c.witnesses:
                witnesses.append(
                    {
                        "k": c.k,
                        "d2": c.d2,
                        "v": c.v,
                        "signature": str(Signature(c.k, face_vector(pm))),
                        "planar_code": base64.b64encode(write_planar_code([pm])).decode(),
                        "canonical_code": code.hex(),
                    }
                )
        for p in rep.pruned:
            pruned.append(
                {"k": t.k, "d2": t.d2, "f1": t.f1, "v": _num(p.v), "label": p.label, "reason": p.reason}
            )
    return cells, pruned, witnesses


def report_document(kind: str, reports, summary: dict | None = None, elapsed: float = 0.0) -> dict:
    """JSON-ready report.  Only ``COMPLETE`` cells with ``class_count`` 0 show nonexistence."""
    tasks = [r.task.as_dict() for r in reports]
    cells, pruned, witnesses = _cells_and_witnesses(reports)
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "nearplat", "version": __version__},
        "kind": kind,
        "config_hash": config_hash(tasks),
        "tasks": tasks,
        "complete": all(c["status"] == "COMPLETE" for c in cells),
        "cells": cells,
        "pruned": pruned,
        "witnesses": witnesses,
        "summary": summary or {},
        "elapsed_seconds": round(elapsed, 4),
    }


def strip_timing(doc):
    """Copy of ``doc`` without wall-clock fields, for byte comparisons."""
    if isinstance(doc, dict):
        return {k: strip_timing(v) for k, v in doc.items() if k not in TIMING_KEYS}
    if isinstance(doc, list):
        return [strip_timing(x) for x in doc]
    return doc


def dumps_report(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
