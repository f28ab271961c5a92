"""Loader for the versioned certified data file.

The file ships with the package and carries the cohomology tables with
their named generators, the homotopy table, the self-cohomology of the
integral Eilenberg-MacLane spectrum, every recorded generator map, and
the manifold catalog.  Tests diff it bit-exactly; the environment
variable MTSPEC_DATA overrides the path.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from pathlib import Path

from .abelian import FgAbGroup, GroupHom, IntMatrix
from .charclasses import CohomologyEntry
from .errors import DataFormatError

ENV_DATA_PATH = "MTSPEC_DATA"

_TERM_RE = re.compile(r"([+-]?\d+)\*([A-Za-z][A-Za-z0-9^]*)")


@dataclass(frozen=True)
class ArrowRecord:
    """One recorded generator map between table entries."""

    kind: str        # cover | dim | covdim | unit
    d: int
    k: int
    to_d: int | None
    provenance: str  # diagram | names | square | forced | unit
    assignments: tuple  # ((source name, ((target name, coeff), ...)), ...)

    def assignment_map(self) -> dict:
        return {src: dict(combo) for src, combo in self.assignments}


@dataclass(frozen=True)
class ManifoldRecord:
    name: str
    dim: int
    euler: int
    signature: int
    p1: int
    kr: int | None


@dataclass(frozen=True)
class FamilyRecord:
    name: str       # pattern like Sigma_g; g is the nonnegative parameter
    dim: int
    euler0: int
    eulerg: int
    signature: int
    p1: int


def hz_entry(group: FgAbGroup, k: int) -> CohomologyEntry:
    """A synthetic named entry for the Eilenberg-MacLane self-cohomology."""
    gens = []
    for _ in range(group.free_rank):
        gens.append(("hz%d" % k, None))
    for order in group.torsion:
        gens.append(("hz%d" % k, order))
    return CohomologyEntry(group, tuple(gens))


def assignments_to_group_hom(source: CohomologyEntry,
                             target: CohomologyEntry,
                             assignments) -> GroupHom:
    """Build a canonical-coordinate GroupHom from named generator images."""
    amap = {src: dict(combo) for src, combo in assignments}
    if set(amap) != set(source.names):
        raise DataFormatError("assignments do not cover the source generators")
    tgt_names = list(target.names)
    n_src = len(source.names)
    n_tgt = len(tgt_names)
    listed = [[0] * n_src for _ in range(n_tgt)]
    for j, src_name in enumerate(source.names):
        for tgt_name, coeff in amap[src_name].items():
            if tgt_name not in tgt_names:
                raise DataFormatError("unknown target generator %r" % tgt_name)
            listed[tgt_names.index(tgt_name)][j] = coeff
    src_perm = source.canonical_index()
    tgt_perm = target.canonical_index()
    canonical = [[0] * n_src for _ in range(n_tgt)]
    for i in range(n_tgt):
        for j in range(n_src):
            canonical[tgt_perm[i]][src_perm[j]] = listed[i][j]
    matrix = (IntMatrix.from_rows(canonical) if n_tgt
              else IntMatrix(0, n_src, ()))
    try:
        return GroupHom(source.group, target.group, matrix)
    except ValueError as exc:
        raise DataFormatError("recorded map is not well-defined: %s" % exc)


class CertifiedData:
    """Parsed, validated contents of one certified data file."""

    def __init__(self, version, cohomology, homotopy, hz, arrows,
                 manifolds, families, path):
        self.version = version
        self.cohomology = cohomology    # (d, cover, k) -> CohomologyEntry
        self.homotopy = homotopy        # (d, k) -> FgAbGroup
        self.hz = hz                    # k -> FgAbGroup
        self.arrows = arrows            # list of ArrowRecord
        self.manifolds = manifolds      # name -> ManifoldRecord
        self.families = families        # name -> FamilyRecord
        self.path = path
        self._arrow_index = {(a.kind, a.d, a.k, a.to_d): a for a in arrows}

    def entry(self, d: int, cover: int, k: int) -> CohomologyEntry | None:
        return self.cohomology.get((d, cover, k))

    def arrow(self, kind: str, d: int, k: int, to_d=None) -> ArrowRecord | None:
        return self._arrow_index.get((kind, d, k, to_d))


def _parse_combo(text: str):
    if text == "0":
        return ()
    terms = []
    consumed = 0
    for match in _TERM_RE.finditer(text):
        if match.start() != consumed:
            raise DataFormatError("cannot parse combo %r" % text)
        terms.append((match.group(2), int(match.group(1))))
        consumed = match.end()
    if consumed != len(text) or not terms:
        raise DataFormatError("cannot parse combo %r" % text)
    return tuple(terms)


def _parse_map(text: str):
    out = []
    for item in text.split(";"):
        if ":" not in item:
            raise DataFormatError("bad map item %r" % item)
        src, combo = item.split(":", 1)
        out.append((src, _parse_combo(combo)))
    return tuple(out)


def _parse_gens(text: str):
    gens = []
    if text:
        for item in text.split(","):
            if ":" in item:
                name, order = item.split(":", 1)
                gens.append((name, int(order)))
            else:
                gens.append((item, None))
    return tuple(gens)


def _parse_fields(parts):
    fields = {}
    for part in parts:
        if "=" not in part:
            raise DataFormatError("bad field %r" % part)
        key, value = part.split("=", 1)
        fields[key] = value
    return fields


def default_data_path() -> Path:
    return Path(__file__).resolve().parent / "data" / "certified_data.txt"


def _arrow_endpoints(data: CertifiedData, arrow: ArrowRecord):
    if arrow.kind == "cover":
        return data.entry(arrow.d, 0, arrow.k), data.entry(arrow.d, 1, arrow.k)
    if arrow.kind == "dim":
        return data.entry(arrow.d, 0, arrow.k), data.entry(arrow.to_d, 0, arrow.k)
    if arrow.kind == "covdim":
        return data.entry(arrow.d, 1, arrow.k), data.entry(arrow.to_d, 1, arrow.k)
    if arrow.kind == "unit":
        if arrow.k not in data.hz:
            return None, None
        return hz_entry(data.hz[arrow.k], arrow.k), data.entry(arrow.d, 0, arrow.k)
    raise DataFormatError("unknown arrow kind %r" % arrow.kind)


def _validate(data: CertifiedData):
    for arrow in data.arrows:
        source, target = _arrow_endpoints(data, arrow)
        if source is None or target is None:
            raise DataFormatError("arrow %s references a missing table entry" % (arrow,))
        assignments_to_group_hom(source, target, arrow.assignments)


def parse_data(text: str, path="<memory>") -> CertifiedData:
    version = None
    cohomology = {}
    homotopy = {}
    hz = {}
    arrows = []
    manifolds = {}
    families = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("version="):
            version = int(line.split("=", 1)[1])
            continue
        parts = line.split()
        rectype, fields = parts[0], _parse_fields(parts[1:])
        try:
            if rectype == "cohomology":
                key = (int(fields["d"]), int(fields["cover"]), int(fields["k"]))
                entry = CohomologyEntry(FgAbGroup.from_text(fields["group"]),
                                        _parse_gens(fields.get("gens", "")))
                cohomology[key] = entry
            elif rectype == "homotopy":
                homotopy[(int(fields["d"]), int(fields["k"]))] = \
                    FgAbGroup.from_text(fields["group"])
            elif rectype == "hz":
                hz[int(fields["k"])] = FgAbGroup.from_text(fields["group"])
            elif rectype == "arrow":
                arrows.append(ArrowRecord(
                    kind=fields["kind"],
                    d=int(fields["d"]),
                    k=int(fields["k"]),
                    to_d=int(fields["to"]) if "to" in fields else None,
                    provenance=fields["prov"],
                    assignments=_parse_map(fields["map"]),
                ))
            elif rectype == "manifold":
                rec = ManifoldRecord(
                    name=fields["name"], dim=int(fields["dim"]),
                    euler=int(fields["euler"]),
                    signature=int(fields.get("signature", 0)),
                    p1=int(fields.get("p1", 0)),
                    kr=int(fields["kr"]) if "kr" in fields else None)
                manifolds[rec.name] = rec
            elif rectype == "family":
                rec = FamilyRecord(
                    name=fields["name"], dim=int(fields["dim"]),
                    euler0=int(fields["euler0"]), eulerg=int(fields["eulerg"]),
                    signature=int(fields.get("signature", 0)),
                    p1=int(fields.get("p1", 0)))
                families[rec.name] = rec
            else:
                raise DataFormatError("unknown record type %r" % rectype)
        except (KeyError, ValueError) as exc:
            raise DataFormatError("bad record %r: %s" % (line, exc))
    if version is None:
        raise DataFormatError("data file lacks a version line")
    data = CertifiedData(version, cohomology, homotopy, hz, arrows,
                         manifolds, families, path)
    _validate(data)
    return data


_CACHE = {}


def load_data(path=None) -> CertifiedData:
    if path is None:
        path = os.environ.get(ENV_DATA_PATH) or default_data_path()
    path = str(Path(path).resolve())
    if path not in _CACHE:
        _CACHE[path] = parse_data(Path(path).read_text(), path)
    return _CACHE[path]
