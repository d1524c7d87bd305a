"""Catalogue files: one isomorphism class per record, text or JSON lines.

Text layout::

    # simparr-catalogue 1
    # n=12 include_near_pencils=0 simpobstr7=0
    <certificate>\t<wiring>\t<fingerprint>\t<invariants>\taut=<k>\t<flags>

``flags`` is a space-separated ``key=value`` list (``np``, ``pappus``,
``real``).  Printing a parsed catalogue reproduces the input bytes.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .iso import ArrangementRecord, Fingerprint
from .wiring import AllowableSequence, WiringError

FORMAT_VERSION = 1
TEXT_MAGIC = f"# simparr-catalogue {FORMAT_VERSION}"


class CatalogueError(ValueError):
    def __init__(self, msg: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line is not None else msg)


def fingerprint_text(fp: Fingerprint) -> str:
    runs: List[str] = []
    for d in sorted(set(fp.degrees), reverse=True):
        runs.append(f"{d}^{fp.degrees.count(d)}")
    digest = hashlib.sha1(repr(fp.neighbourhoods).encode()).hexdigest()[:16]
    return ",".join(runs) + "/" + digest


@dataclass
class CatalogueRecord:
    certificate: str
    wiring: AllowableSequence
    fingerprint: str
    invariants: str
    automorphisms: int
    flags: Dict[str, str] = field(default_factory=dict)

    @classmethod
    def from_arrangement(cls, rec: ArrangementRecord) -> "CatalogueRecord":
        flags = {"np": "1" if rec.near_pencil else "0"}
        if rec.pappus is not None:
            flags["pappus"] = "1" if rec.pappus else "0"
        flags.update(rec.extra)
        return cls(rec.certificate, rec.wiring, fingerprint_text(rec.fingerprint),
                   rec.invariants.to_text(), rec.automorphisms, flags)

    def flag_text(self) -> str:
        return " ".join(f"{k}={v}" for k, v in sorted(self.flags.items()))

    def to_text(self) -> str:
        return "\t".join([self.certificate, self.wiring.compact(), self.fingerprint,
                          self.invariants, f"aut={self.automorphisms}", self.flag_text()])

    def to_json(self) -> dict:
        return {"certificate": self.certificate, "wiring": self.wiring.compact(),
                "fingerprint": self.fingerprint, "invariants": self.invariants,
                "automorphisms": self.automorphisms, "flags": dict(sorted(self.flags.items()))}


@dataclass
class Catalogue:
    n: int
    options: Dict[str, str]
    records: List[CatalogueRecord]

    def sort(self) -> None:
        self.records.sort(key=lambda r: r.certificate)

    def dumps(self, fmt: str = "text") -> str:
        if fmt == "text":
            opts = " ".join(f"{k}={v}" for k, v in sorted(self.options.items()))
            head = [TEXT_MAGIC, f"# n={self.n}" + (f" {opts}" if opts else "")]
            return "\n".join(head + [r.to_text() for r in self.records]) + "\n"
        if fmt == "jsonl":
            dump = lambda obj: json.dumps(obj, sort_keys=True, separators=(",", ":"))
            head = {"format": "simparr-catalogue", "version": FORMAT_VERSION, "n": self.n,
                    "options": dict(sorted(self.options.items()))}
            return "\n".join([dump(head)] + [dump(r.to_json()) for r in self.records]) + "\n"
        raise ValueError(f"unknown format {fmt!r}")


def _parse_wiring(text: str, line: int) -> AllowableSequence:
    try:
        return AllowableSequence.from_compact(text)
    except (ValueError, WiringError) as exc:
        raise CatalogueError(f"bad wiring {text!r}: {exc}", line) from exc


def _parse_flags(text: str, line: int) -> Dict[str, str]:
    flags = {}
    for tok in text.split():
        k, sep, v = tok.partition("=")
        if not sep:
            raise CatalogueError(f"flag {tok!r} is not key=value", line)
        flags[k] = v
    return flags


def _parse_text(lines: List[str]) -> Catalogue:
    if not lines or lines[0] != TEXT_MAGIC:
        raise CatalogueError("missing catalogue header", 1)
    if len(lines) < 2 or not lines[1].startswith("# n="):
        raise CatalogueError("missing '# n=' line", 2)
    opts = _parse_flags(lines[1][2:], 2)
    try:
        n = int(opts.pop("n"))
    except ValueError as exc:
        raise CatalogueError("n is not an integer", 2) from exc
    records = []
    for i, raw in enumerate(lines[2:], start=3):
        cols = raw.split("\t")
        if len(cols) != 6:
            raise CatalogueError(f"expected 6 tab-separated fields, got {len(cols)}", i)
        cert, wtxt, fp, inv, aut, flags = cols
        if not aut.startswith("aut="):
            raise CatalogueError("automorphism field must start with 'aut='", i)
        try:
            k = int(aut[4:])
        except ValueError as exc:
            raise CatalogueError(f"bad automorphism order {aut!r}", i) from exc
        records.append(CatalogueRecord(cert, _parse_wiring(wtxt, i), fp, inv, k,
                                       _parse_flags(flags, i)))
    return Catalogue(n, opts, records)


def _parse_jsonl(lines: List[str]) -> Catalogue:
    try:
        head = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise CatalogueError(f"bad JSON: {exc.msg}", 1) from exc
    if head.get("format") != "simparr-catalogue":
        raise CatalogueError("missing catalogue header", 1)
    records = []
    for i, raw in enumerate(lines[1:], start=2):
        try:
            obj = json.loads(raw)
            records.append(CatalogueRecord(obj["certificate"], _parse_wiring(obj["wiring"], i),
                                           obj["fingerprint"], obj["invariants"],
                                           int(obj["automorphisms"]), dict(obj["flags"])))
        except json.JSONDecodeError as exc:
            raise CatalogueError(f"bad JSON: {exc.msg}", i) from exc
        except (KeyError, TypeError) as exc:
            raise CatalogueError(f"missing field {exc}", i) from exc
    return Catalogue(int(head["n"]), dict(head.get("options", {})), records)


def loads(text: str) -> Catalogue:
    lines = text.rstrip("\n").split("\n") if text else []
    if not lines or not lines[0]:
        raise CatalogueError("empty catalogue", 1)
    if lines[0].startswith("{"):
        return _parse_jsonl(lines)
    return _parse_text(lines)


def detect_format(text: str) -> str:
    return "jsonl" if text.startswith("{") else "text"


def from_records(n: int, recs: List[ArrangementRecord], options: Dict[str, str]) -> Catalogue:
    cat = Catalogue(n, dict(options), [CatalogueRecord.from_arrangement(r) for r in recs])
    cat.sort()
    return cat
