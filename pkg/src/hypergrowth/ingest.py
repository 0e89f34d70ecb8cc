"""Parsing, validation and aggregation of historical GDP tables.

The canonical on-disk format is the long CSV (``entity,year,value``); the
wide parser is an adapter for Maddison-style layouts (rows = entities,
columns = years).  Values are converted to billions of 1990 Geary-Khamis
dollars at ingestion via ``unit_scale`` (e.g. 1e-3 for million-denominated
sources) and must be positive after scaling.  Nothing is interpolated: years
missing from a source stay missing.
"""

from __future__ import annotations

import configparser
import csv
import io
from dataclasses import dataclass, field

import numpy as np

from .errors import ParseError, RegionError, SeriesError
from .series import YearValueSeries


@dataclass(frozen=True)
class RegionDefinition:
    """A named aggregate of source entities, summed per year."""

    name: str
    members: tuple[str, ...]
    require_complete: bool = True

    def __post_init__(self):
        if not self.members:
            raise RegionError(f"region {self.name!r} has no members")
        object.__setattr__(self, "members", tuple(self.members))


@dataclass
class DatasetTable:
    """Sparse (entity, year) -> value mapping, already unit-converted."""

    entities: list[str]
    years: list[float]
    cells: dict[tuple[str, float], float]

    def value(self, entity: str, year: float) -> float | None:
        return self.cells.get((entity, year))

    def entity_series(self, entity: str, label: str | None = None) -> YearValueSeries:
        if entity not in self.entities:
            raise RegionError(f"unknown entity {entity!r}")
        pairs = sorted(
            (year, v) for (e, year), v in self.cells.items() if e == entity
        )
        if not pairs:
            raise RegionError(f"entity {entity!r} has no observations")
        years, values = zip(*pairs)
        return YearValueSeries(np.array(years), np.array(values), label or entity)


def _parse_number(text: str, what: str, line_no: int) -> float:
    try:
        return float(text)
    except ValueError:
        raise ParseError(f"line {line_no}: {what} {text!r} is not a number") from None


def _add_cell(table: DatasetTable, entity: str, year: float, value: float, line_no: int):
    key = (entity, year)
    if key in table.cells:
        raise ParseError(f"line {line_no}: duplicate cell for ({entity}, {year:g})")
    if value <= 0:
        raise ParseError(
            f"line {line_no}: value {value:g} for ({entity}, {year:g}) is not positive"
        )
    table.cells[key] = value
    if entity not in table.entities:
        table.entities.append(entity)
    if year not in table.years:
        table.years.append(year)


def parse_long_csv(data: bytes, unit_scale: float = 1.0) -> DatasetTable:
    """Parse the canonical long format: header ``entity,year,value``.

    Rows with an empty value field are skipped (missing observation); any
    malformed row raises ParseError naming its line number.
    """
    text = data.decode("utf-8")
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("line 1: empty file") from None
    if [h.strip().lower() for h in header] != ["entity", "year", "value"]:
        raise ParseError(f"line 1: expected header entity,year,value, got {header}")
    table = DatasetTable([], [], {})
    for line_no, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 3:
            raise ParseError(f"line {line_no}: expected 3 fields, got {len(row)}")
        entity, year_s, value_s = (c.strip() for c in row)
        if not value_s:
            continue
        year = _parse_number(year_s, "year", line_no)
        value = _parse_number(value_s, "value", line_no) * unit_scale
        _add_cell(table, entity, year, value, line_no)
    table.years.sort()
    return table


def parse_wide_table(data: bytes, unit_scale: float = 1.0) -> DatasetTable:
    """Parse a wide layout: row 1 = ``entity`` plus year headers.

    The delimiter (comma or tab) is auto-detected from the header row.
    Blank cells mean missing; every present cell must be numeric.
    """
    text = data.decode("utf-8")
    first_line = text.splitlines()[0] if text.splitlines() else ""
    delimiter = "\t" if first_line.count("\t") >= first_line.count(",") and "\t" in first_line else ","
    reader = csv.reader(io.StringIO(text), delimiter=delimiter)
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("line 1: empty file") from None
    if len(header) < 2:
        raise ParseError("line 1: wide table needs an entity column plus year columns")
    years = [
        _parse_number(h.strip(), "year header", 1) for h in header[1:]
    ]
    table = DatasetTable([], [], {})
    for line_no, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        entity = row[0].strip()
        for year, cell in zip(years, row[1:]):
            cell = cell.strip()
            if not cell:
                continue
            value = _parse_number(cell, "cell", line_no) * unit_scale
            _add_cell(table, entity, year, value, line_no)
    table.years.sort()
    return table


def serialize_long_csv(table: DatasetTable) -> bytes:
    """Deterministic long-CSV encoding; inverse of parse_long_csv."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["entity", "year", "value"])
    for entity in table.entities:
        pairs = sorted(
            (year, v) for (e, year), v in table.cells.items() if e == entity
        )
        for year, value in pairs:
            writer.writerow([entity, f"{int(year)}" if year == int(year) else repr(year), repr(value)])
    return out.getvalue().encode("utf-8")


def series_to_long_csv(series: YearValueSeries) -> bytes:
    """Long-CSV encoding of a single series (entity = label)."""
    table = DatasetTable([], [], {})
    entity = series.label or "series"
    for i, (year, value) in enumerate(zip(series.years, series.values)):
        _add_cell(table, entity, float(year), float(value), i + 2)
    return serialize_long_csv(table)


def build_region_series(table: DatasetTable, region: RegionDefinition) -> YearValueSeries:
    """Sum member entities per year into one series.

    With ``require_complete`` (the default) a year is kept only when every
    member reports it; summing over a changing member set would fabricate
    growth.  Otherwise the sum runs over whichever members are present.
    """
    for member in region.members:
        if member not in table.entities:
            raise RegionError(
                f"region {region.name!r}: member {member!r} not in table"
            )
    years, values = [], []
    for year in table.years:
        cells = [table.value(m, year) for m in region.members]
        present = [c for c in cells if c is not None]
        if not present:
            continue
        if region.require_complete and len(present) < len(region.members):
            continue
        years.append(year)
        values.append(sum(present))
    if not years:
        raise RegionError(f"region {region.name!r} has no usable years")
    try:
        return YearValueSeries(np.array(years), np.array(values), region.name)
    except SeriesError as exc:  # pragma: no cover - positivity is inherited
        raise RegionError(f"region {region.name!r}: {exc}") from exc


@dataclass(frozen=True)
class RegionConfig:
    """One region's analysis settings from a config file."""

    definition: RegionDefinition
    window: tuple[float, float] | None = None
    two_regime: bool = False
    takeoff_year: float | None = None
    takeoff_halfwidth: float = 50.0


@dataclass(frozen=True)
class AnalysisConfigFile:
    unit_scale: float
    regions: tuple[RegionConfig, ...]


def parse_region_config(text: str) -> AnalysisConfigFile:
    """Parse the plain key-value region config.

    INI layout: an optional ``[global]`` section with ``unit_scale``; one
    section per region with ``members`` (comma-separated), and optional
    ``require_complete``, ``window`` (``START:END``), ``two_regime`` and
    ``takeoff_year`` keys.
    """
    parser = configparser.ConfigParser()
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ParseError(f"bad region config: {exc}") from exc
    unit_scale = 1.0
    regions = []
    names = set()
    for section in parser.sections():
        if section.lower() == "global":
            unit_scale = parser.getfloat(section, "unit_scale", fallback=1.0)
            continue
        if section in names:
            raise ParseError(f"duplicate region {section!r}")
        names.add(section)
        if not parser.has_option(section, "members"):
            raise ParseError(f"region {section!r} is missing the members key")
        members = tuple(
            m.strip() for m in parser.get(section, "members").split(",") if m.strip()
        )
        definition = RegionDefinition(
            name=section,
            members=members,
            require_complete=parser.getboolean(section, "require_complete", fallback=True),
        )
        window = None
        if parser.has_option(section, "window"):
            raw = parser.get(section, "window")
            parts = raw.split(":")
            if len(parts) != 2:
                raise ParseError(f"region {section!r}: window must be START:END, got {raw!r}")
            window = (
                _parse_number(parts[0].strip(), "window start", 0),
                _parse_number(parts[1].strip(), "window end", 0),
            )
        takeoff_year = (
            parser.getfloat(section, "takeoff_year")
            if parser.has_option(section, "takeoff_year")
            else None
        )
        regions.append(
            RegionConfig(
                definition=definition,
                window=window,
                two_regime=parser.getboolean(section, "two_regime", fallback=False),
                takeoff_year=takeoff_year,
                takeoff_halfwidth=parser.getfloat(
                    section, "takeoff_halfwidth", fallback=50.0
                ),
            )
        )
    return AnalysisConfigFile(unit_scale=unit_scale, regions=tuple(regions))
