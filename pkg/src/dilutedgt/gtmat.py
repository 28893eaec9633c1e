"""GTMAT v1 matrix files and ``supp=`` signal lines.

A GTMAT file is a header line::

    GTMAT v1 m=<m> n=<n> kind=<kind> seed=<u64|none>

followed by ``m`` lines of ``n`` characters from ``{0, 1}``.  ``kind`` is
``none`` for matrices without design metadata, otherwise
``name(param,param,...)`` or a bare ``name``.
"""

from __future__ import annotations

import os
import re

import numpy as np

from .model import ContactMatrix, DesignMeta, Outcome, SparseSignal

_HEADER = re.compile(
    r"^GTMAT v1 m=(?P<m>\d+) n=(?P<n>\d+) kind=(?P<kind>\S+) seed=(?P<seed>\d+|none)$"
)
_KIND = re.compile(r"^(?P<name>[A-Za-z_][\w\-]*)(?:\((?P<args>[^()\s]*)\))?$")


class GTMATError(ValueError):
    pass


class MalformedHeader(GTMATError):
    pass


class RaggedRow(GTMATError):
    pass


class BadCharacter(GTMATError):
    pass


def _number(tok: str):
    try:
        return int(tok)
    except ValueError:
        return float(tok)


def format_header(mc: ContactMatrix) -> str:
    meta = mc.design_meta
    kind = meta.label if meta is not None else "none"
    seed = "none" if meta is None or meta.seed is None else str(meta.seed)
    return f"GTMAT v1 m={mc.m} n={mc.n} kind={kind} seed={seed}"


def dumps(mc: ContactMatrix) -> str:
    rows = ("".join("1" if b else "0" for b in row) for row in mc.dense)
    return "\n".join([format_header(mc), *rows]) + "\n"


def _parse_kind(kind: str, seed, lineno: int) -> DesignMeta | None:
    if kind == "none":
        return None
    km = _KIND.match(kind)
    if km is None:
        raise MalformedHeader(f"line {lineno}: cannot parse kind={kind!r}")
    args = km.group("args")
    try:
        params = tuple(_number(t) for t in args.split(",")) if args else ()
    except ValueError:
        raise MalformedHeader(f"line {lineno}: non-numeric design parameter in {kind!r}")
    return DesignMeta(km.group("name"), params, seed)


def loads(text: str) -> ContactMatrix:
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise MalformedHeader("line 1: empty file")
    hm = _HEADER.match(lines[0].strip())
    if hm is None:
        raise MalformedHeader(f"line 1: bad GTMAT header {lines[0]!r}")
    m, n = int(hm.group("m")), int(hm.group("n"))
    if m < 1 or n < 1:
        raise MalformedHeader(f"line 1: dimensions must be positive (m={m}, n={n})")
    seed = None if hm.group("seed") == "none" else int(hm.group("seed"))
    meta = _parse_kind(hm.group("kind"), seed, 1)
    body = lines[1:]
    if len(body) != m:
        raise RaggedRow(f"header declares m={m} rows but file has {len(body)}")
    dense = np.zeros((m, n), dtype=bool)
    for r, raw in enumerate(body):
        lineno = r + 2
        row = raw.strip()
        if len(row) != n:
            raise RaggedRow(f"line {lineno}: expected {n} characters, got {len(row)}")
        bad = set(row) - {"0", "1"}
        if bad:
            raise BadCharacter(f"line {lineno}: characters outside {{0,1}}: {sorted(bad)}")
        dense[r] = np.frombuffer(row.encode(), dtype=np.uint8) == ord("1")
    return ContactMatrix(dense, meta)


def save_matrix(mc: ContactMatrix, path: str | os.PathLike) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(dumps(mc))


def load_matrix(path: str | os.PathLike) -> ContactMatrix:
    with open(path) as fh:
        return loads(fh.read())


def format_signal(x: SparseSignal) -> str:
    return "supp=" + ",".join(str(i) for i in x.one_based)


def parse_signal(text: str, n: int) -> SparseSignal:
    text = text.strip()
    if not text.startswith("supp="):
        raise GTMATError(f"signal must look like 'supp=3,4', got {text!r}")
    body = text[len("supp="):].strip()
    try:
        idx = [int(t) for t in body.split(",")] if body else []
    except ValueError:
        raise GTMATError(f"non-integer index in {text!r}")
    return SparseSignal.from_one_based(n, idx)


def parse_outcome(text: str) -> Outcome:
    text = "".join(text.split())
    if not text or set(text) - {"0", "1"}:
        raise GTMATError(f"outcome must be a non-empty string of 0/1, got {text!r}")
    return Outcome(np.frombuffer(text.encode(), dtype=np.uint8) == ord("1"))
