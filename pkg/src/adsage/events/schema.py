"""Declarative description of an event source's fields.

A schema names each column of a delimited log file and assigns it a kind:
timestamp, source entity, destination entity (single- or multi-valued),
numeric, categorical or text. Entity fields can share an embedding space,
e.g. email sender and receiver addresses.
"""

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from ..errors import ConfigurationError


class FieldKind(str, Enum):
    TIMESTAMP = "timestamp"
    SOURCE = "entity_source"
    DESTINATION = "entity_destination"
    NUMERIC = "numeric"
    CATEGORICAL = "categorical"
    TEXT = "text"


@dataclass(frozen=True)
class FieldSpec:
    name: str
    kind: FieldKind
    column: int
    multi: bool = False             # destination fields only: several values per cell
    space: str | None = None        # shared embedding space; defaults to the field name
    date_format: str = "%m/%d/%Y %H:%M:%S"   # timestamp fields; "epoch" = raw seconds
    list_delimiter: str = ";"

    @property
    def embedding_space(self) -> str:
        return self.space or self.name


@dataclass(frozen=True)
class FeatureSchema:
    name: str
    fields: tuple[FieldSpec, ...]
    delimiter: str = ","

    def __post_init__(self):
        kinds = [f.kind for f in self.fields]
        if kinds.count(FieldKind.TIMESTAMP) != 1:
            raise ConfigurationError("schema needs exactly one timestamp field")
        if kinds.count(FieldKind.SOURCE) != 1:
            raise ConfigurationError("schema needs exactly one entity_source field")
        if kinds.count(FieldKind.DESTINATION) < 1:
            raise ConfigurationError("schema needs at least one entity_destination field")
        names = [f.name for f in self.fields]
        if len(set(names)) != len(names):
            raise ConfigurationError("duplicate field names in schema")

    def _of_kind(self, kind: FieldKind) -> tuple[FieldSpec, ...]:
        return tuple(f for f in self.fields if f.kind == kind)

    @property
    def timestamp_field(self) -> FieldSpec:
        return self._of_kind(FieldKind.TIMESTAMP)[0]

    @property
    def source_field(self) -> FieldSpec:
        return self._of_kind(FieldKind.SOURCE)[0]

    @property
    def destination_fields(self) -> tuple[FieldSpec, ...]:
        return self._of_kind(FieldKind.DESTINATION)

    @property
    def numeric_fields(self) -> tuple[FieldSpec, ...]:
        return self._of_kind(FieldKind.NUMERIC)

    @property
    def categorical_fields(self) -> tuple[FieldSpec, ...]:
        return self._of_kind(FieldKind.CATEGORICAL)

    @property
    def text_fields(self) -> tuple[FieldSpec, ...]:
        return self._of_kind(FieldKind.TEXT)

    @property
    def entity_spaces(self) -> tuple[str, ...]:
        """Distinct embedding spaces, in first-appearance order."""
        seen = []
        for f in (self.source_field,) + self.destination_fields:
            if f.embedding_space not in seen:
                seen.append(f.embedding_space)
        return tuple(seen)

    def field_by_name(self, name: str) -> FieldSpec:
        for f in self.fields:
            if f.name == name:
                return f
        raise ConfigurationError(f"schema {self.name!r} has no field {name!r}")

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "delimiter": self.delimiter,
            "fields": [
                {"name": f.name, "kind": f.kind.value, "column": f.column,
                 "multi": f.multi, "space": f.space, "date_format": f.date_format,
                 "list_delimiter": f.list_delimiter}
                for f in self.fields
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FeatureSchema":
        try:
            fields = tuple(
                FieldSpec(name=f["name"], kind=FieldKind(f["kind"]), column=int(f["column"]),
                          multi=bool(f.get("multi", False)), space=f.get("space"),
                          date_format=f.get("date_format", "%m/%d/%Y %H:%M:%S"),
                          list_delimiter=f.get("list_delimiter", ";"))
                for f in data["fields"])
            return cls(name=data.get("name", "custom"), fields=fields,
                       delimiter=data.get("delimiter", ","))
        except (KeyError, ValueError) as exc:
            raise ConfigurationError(f"bad schema description: {exc}") from exc


_DATE_CERT = "%m/%d/%Y %H:%M:%S"

PRESETS: dict[str, FeatureSchema] = {
    "cert_logon": FeatureSchema(
        name="cert_logon",
        fields=(
            FieldSpec("date", FieldKind.TIMESTAMP, 0, date_format=_DATE_CERT),
            FieldSpec("user", FieldKind.SOURCE, 1),
            FieldSpec("pc", FieldKind.DESTINATION, 2),
            FieldSpec("activity", FieldKind.CATEGORICAL, 3),
        )),
    "cert_email": FeatureSchema(
        name="cert_email",
        fields=(
            FieldSpec("date", FieldKind.TIMESTAMP, 0, date_format=_DATE_CERT),
            FieldSpec("from", FieldKind.SOURCE, 1, space="address"),
            FieldSpec("to", FieldKind.DESTINATION, 2, multi=True, space="address"),
            FieldSpec("cc", FieldKind.DESTINATION, 3, multi=True, space="address"),
            FieldSpec("bcc", FieldKind.DESTINATION, 4, multi=True, space="address"),
            FieldSpec("size", FieldKind.NUMERIC, 5),
            FieldSpec("content", FieldKind.TEXT, 6),
        )),
    "cert_http": FeatureSchema(
        name="cert_http",
        fields=(
            FieldSpec("date", FieldKind.TIMESTAMP, 0, date_format=_DATE_CERT),
            FieldSpec("user", FieldKind.SOURCE, 1),
            FieldSpec("domain", FieldKind.DESTINATION, 2),
        )),
    "lanl_auth": FeatureSchema(
        name="lanl_auth",
        fields=(
            FieldSpec("time", FieldKind.TIMESTAMP, 0, date_format="epoch"),
            FieldSpec("user", FieldKind.SOURCE, 1),
            FieldSpec("src_pc", FieldKind.DESTINATION, 2, space="computer"),
            FieldSpec("dst_pc", FieldKind.DESTINATION, 3, space="computer"),
        )),
}


def load_schema(name_or_path: str) -> FeatureSchema:
    """Resolve a preset name or read a JSON schema description file."""
    if name_or_path in PRESETS:
        return PRESETS[name_or_path]
    path = Path(name_or_path)
    if not path.exists():
        raise ConfigurationError(
            f"{name_or_path!r} is neither a schema preset {sorted(PRESETS)} nor a file")
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"cannot parse schema file {path}: {exc}") from exc
    return FeatureSchema.from_dict(data)
