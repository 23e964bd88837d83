"""Event records and schema-driven ingestion of delimited log files.

Parsing collects malformed rows into a reject report instead of failing on
the first bad line; the whole file is rejected only when more than 1% of
its data rows are malformed. Events come back sorted by timestamp (stable)
with dense ordinal keys assigned after sorting.
"""

import calendar
import csv
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from ..errors import ConfigurationError, DataError
from .schema import FeatureSchema, FieldKind

REJECT_ABORT_FRACTION = 0.01


@dataclass
class Event:
    """One audit-log line as an attributed edge."""
    key: int
    timestamp: float                       # seconds since epoch, UTC
    source: str
    destinations: dict[str, tuple[str, ...]]   # field name -> one or more values
    numeric: dict[str, float] = field(default_factory=dict)
    categorical: dict[str, str] = field(default_factory=dict)
    text: dict[str, str] = field(default_factory=dict)
    malicious: bool = False
    scenario: str | None = None

    @property
    def day(self) -> str:
        return timestamp_day(self.timestamp)

    @property
    def user_day(self) -> tuple[str, str]:
        return (self.source, self.day)

    def all_destinations(self) -> tuple[str, ...]:
        out: list[str] = []
        for values in self.destinations.values():
            out.extend(values)
        return tuple(out)


def timestamp_day(ts: float) -> str:
    return datetime.fromtimestamp(ts, tz=timezone.utc).date().isoformat()


def parse_timestamp(value: str, date_format: str) -> float:
    if date_format == "epoch":
        return float(int(value))
    dt = datetime.strptime(value, date_format)
    return float(calendar.timegm(dt.timetuple()))


def format_timestamp(ts: float, date_format: str) -> str:
    if date_format == "epoch":
        return str(int(ts))
    return datetime.fromtimestamp(ts, tz=timezone.utc).strftime(date_format)


@dataclass(frozen=True)
class ParseOptions:
    """Row filters and seeded user sampling applied during ingestion."""
    row_filters: dict[str, frozenset[str]] = field(default_factory=dict)
    user_sample_rate: float = 1.0
    sample_seed: int = 0
    exclude_from_sample: frozenset[str] = frozenset()

    def __post_init__(self):
        if not 0.0 < self.user_sample_rate <= 1.0:
            raise ConfigurationError("user_sample_rate must be in (0, 1]")


@dataclass
class ParseResult:
    events: list[Event]
    rejects: list[tuple[int, str]]
    total_rows: int
    filtered_rows: int = 0
    sampled_users: tuple[str, ...] | None = None


def _parse_row(row: list[str], schema: FeatureSchema) -> Event:
    width = max(f.column for f in schema.fields) + 1
    if len(row) < width:
        raise ValueError(f"expected at least {width} columns, got {len(row)}")
    ts_field = schema.timestamp_field
    timestamp = parse_timestamp(row[ts_field.column].strip(), ts_field.date_format)
    source = row[schema.source_field.column].strip()
    if not source:
        raise ValueError("empty source entity")
    destinations: dict[str, tuple[str, ...]] = {}
    for f in schema.destination_fields:
        raw = row[f.column].strip()
        if f.multi:
            values = tuple(v.strip() for v in raw.split(f.list_delimiter) if v.strip())
        else:
            if not raw:
                raise ValueError(f"empty destination field {f.name!r}")
            values = (raw,)
        destinations[f.name] = values
    numeric = {}
    for f in schema.numeric_fields:
        numeric[f.name] = float(row[f.column].strip())
    categorical = {f.name: row[f.column].strip() for f in schema.categorical_fields}
    text = {f.name: row[f.column] for f in schema.text_fields}
    return Event(key=-1, timestamp=timestamp, source=source, destinations=destinations,
                 numeric=numeric, categorical=categorical, text=text)


def sample_users(users, rate: float, seed: int,
                 exclude: frozenset[str] = frozenset()) -> tuple[str, ...]:
    """Seeded without-replacement draw over the sorted candidate user set."""
    candidates = sorted(set(users) - set(exclude))
    if not candidates:
        return ()
    k = max(1, round(rate * len(candidates)))
    rng = np.random.default_rng(seed)
    chosen = rng.choice(len(candidates), size=min(k, len(candidates)), replace=False)
    return tuple(candidates[i] for i in sorted(chosen))


def parse_events(path, schema: FeatureSchema,
                 options: ParseOptions | None = None) -> ParseResult:
    """Parse a delimited log file into chronologically sorted events."""
    options = options or ParseOptions()
    path = Path(path)
    if not path.exists():
        raise ConfigurationError(f"log file not found: {path}")
    events: list[Event] = []
    rejects: list[tuple[int, str]] = []
    filtered = 0
    total = 0
    with path.open(newline="") as fh:
        reader = csv.reader(fh, delimiter=schema.delimiter)
        for line_no, row in enumerate(reader, start=1):
            if not row or all(not cell.strip() for cell in row):
                continue
            total += 1
            try:
                event = _parse_row(row, schema)
            except (ValueError, OverflowError) as exc:
                rejects.append((line_no, str(exc)))
                continue
            keep = True
            for field_name, allowed in options.row_filters.items():
                spec = schema.field_by_name(field_name)
                raw = event.categorical.get(field_name)
                if raw is None and spec.kind == FieldKind.SOURCE:
                    raw = event.source
                if raw is None:
                    raw = event.text.get(field_name)
                if raw not in allowed:
                    keep = False
                    break
            if keep:
                events.append(event)
            else:
                filtered += 1
    if total > 0 and len(rejects) > REJECT_ABORT_FRACTION * total:
        raise DataError(
            f"{path}: {len(rejects)} of {total} rows rejected "
            f"(> {REJECT_ABORT_FRACTION:.0%}); first: line {rejects[0][0]}: {rejects[0][1]}")
    sampled = None
    if options.user_sample_rate < 1.0:
        sampled = sample_users((e.source for e in events), options.user_sample_rate,
                               options.sample_seed, options.exclude_from_sample)
        keep_set = set(sampled)
        events = [e for e in events if e.source in keep_set]
    events.sort(key=lambda e: e.timestamp)
    for i, e in enumerate(events):
        e.key = i
    return ParseResult(events=events, rejects=rejects, total_rows=total,
                       filtered_rows=filtered, sampled_users=sampled)


def write_events(path, events, schema: FeatureSchema):
    """Write events back to the delimited format described by the schema."""
    width = max(f.column for f in schema.fields) + 1
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh, delimiter=schema.delimiter, lineterminator="\n")
        for e in events:
            row = [""] * width
            ts_field = schema.timestamp_field
            row[ts_field.column] = format_timestamp(e.timestamp, ts_field.date_format)
            row[schema.source_field.column] = e.source
            for f in schema.destination_fields:
                row[f.column] = f.list_delimiter.join(e.destinations.get(f.name, ()))
            for f in schema.numeric_fields:
                v = e.numeric[f.name]
                row[f.column] = str(int(v)) if v == int(v) else repr(v)
            for f in schema.categorical_fields:
                row[f.column] = e.categorical[f.name]
            for f in schema.text_fields:
                row[f.column] = e.text.get(f.name, "")
            writer.writerow(row)


def copy_event(event: Event, **changes) -> Event:
    """Shallow copy with fresh attribute dicts, applying keyword overrides."""
    base = replace(event,
                   destinations=dict(event.destinations),
                   numeric=dict(event.numeric),
                   categorical=dict(event.categorical),
                   text=dict(event.text))
    for key, value in changes.items():
        setattr(base, key, value)
    return base
