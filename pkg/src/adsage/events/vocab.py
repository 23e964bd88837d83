"""Deterministic vocabularies over entity and categorical values.

Index 0 is reserved for unknown names, so entities first seen at test time
stay encodable. Building is a pure function of the sorted distinct name
set observed in training data.
"""

import hashlib
from dataclasses import dataclass

from .schema import FeatureSchema

UNKNOWN = "<unk>"


@dataclass(frozen=True)
class Vocabulary:
    names: tuple[str, ...]   # index i+1 maps to names[i]; 0 is unknown

    def __post_init__(self):
        object.__setattr__(self, "_index", {n: i + 1 for i, n in enumerate(self.names)})

    @classmethod
    def from_names(cls, names) -> "Vocabulary":
        return cls(tuple(sorted(set(names))))

    @property
    def size(self) -> int:
        return len(self.names) + 1

    def index(self, name: str) -> int:
        return self._index.get(name, 0)

    def name(self, index: int) -> str:
        return UNKNOWN if index == 0 else self.names[index - 1]

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def fingerprint(self) -> str:
        digest = hashlib.sha256("\n".join(self.names).encode("utf-8"))
        return digest.hexdigest()


@dataclass(frozen=True)
class Vocabularies:
    spaces: dict[str, Vocabulary]        # entity embedding space -> vocabulary
    categorical: dict[str, Vocabulary]   # categorical field name -> vocabulary

    def fingerprints(self) -> dict[str, str]:
        out = {f"space:{k}": v.fingerprint() for k, v in self.spaces.items()}
        out.update({f"cat:{k}": v.fingerprint() for k, v in self.categorical.items()})
        return out


def build_vocabularies(events, schema: FeatureSchema) -> Vocabularies:
    """Collect per-space entity names and per-field categorical values."""
    space_names: dict[str, set[str]] = {s: set() for s in schema.entity_spaces}
    cat_names: dict[str, set[str]] = {f.name: set() for f in schema.categorical_fields}
    src_space = schema.source_field.embedding_space
    for e in events:
        space_names[src_space].add(e.source)
        for f in schema.destination_fields:
            space_names[f.embedding_space].update(e.destinations.get(f.name, ()))
        for name, value in e.categorical.items():
            cat_names[name].add(value)
    return Vocabularies(
        spaces={s: Vocabulary.from_names(names) for s, names in space_names.items()},
        categorical={n: Vocabulary.from_names(v) for n, v in cat_names.items()},
    )
