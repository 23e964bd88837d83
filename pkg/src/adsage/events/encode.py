"""Encoding of events into fixed-length numeric vectors.

Layout per event, groups in this order and fields within a group in schema
order:

    source embedding | destination embeddings (bags pooled by average) |
    time features | numeric values | one-hot categoricals | pooled text

The encoder owns the embedding-table bindings, so it can also scatter
gradients from an encoded batch back into the tables.
"""

from dataclasses import dataclass

import numpy as np

from ..errors import ConfigurationError
from ..nn.layers import EmbeddingTable
from .schema import FeatureSchema, FieldKind
from .vocab import Vocabularies
from .wordvec import WordVectorTable, tokenize

MINUTES_PER_DAY = 1440.0
SECONDS_PER_DAY = 86400.0


def encode_time(timestamp: float) -> np.ndarray:
    """Cos/sin of the minute of day and of the day of week (Monday = 0)."""
    minute = (timestamp % SECONDS_PER_DAY) / 60.0
    ang_minute = 2.0 * np.pi * minute / MINUTES_PER_DAY
    # epoch day 0 (1970-01-01) was a Thursday, offset 3 from Monday
    weekday = (int(timestamp // SECONDS_PER_DAY) + 3) % 7
    ang_day = 2.0 * np.pi * weekday / 7.0
    return np.array([np.cos(ang_minute), np.sin(ang_minute),
                     np.cos(ang_day), np.sin(ang_day)])


@dataclass(frozen=True)
class LayoutSlot:
    field: str
    kind: str          # "entity" | "time" | "numeric" | "categorical" | "text"
    start: int
    width: int
    space: str | None = None

    @property
    def slice(self) -> slice:
        return slice(self.start, self.start + self.width)


class EncodedBatch:
    """Dense encodings plus the index bookkeeping needed for embedding grads."""

    def __init__(self, X: np.ndarray, entity_rows: dict[str, list[list[int]]]):
        self.X = X
        self.entity_rows = entity_rows   # field name -> per-row index lists

    def __len__(self) -> int:
        return self.X.shape[0]


class EventEncoder:
    """Maps events to vectors through shared embedding tables and word vectors."""

    def __init__(self, schema: FeatureSchema, vocabs: Vocabularies,
                 tables: dict[str, EmbeddingTable],
                 word_vectors: WordVectorTable | None = None, token_cap: int = 200,
                 include_time: bool = True):
        self.schema = schema
        self.vocabs = vocabs
        self.tables = tables
        self.word_vectors = word_vectors
        self.token_cap = token_cap
        self.include_time = include_time
        if schema.text_fields and word_vectors is None:
            raise ConfigurationError(
                f"schema {schema.name!r} has text fields; word vectors are required")
        for space in schema.entity_spaces:
            if space not in tables:
                raise ConfigurationError(f"no embedding table for space {space!r}")
            if tables[space].vocab_size != vocabs.spaces[space].size:
                raise ConfigurationError(
                    f"embedding table for space {space!r} has {tables[space].vocab_size} "
                    f"rows, vocabulary has {vocabs.spaces[space].size}")
        slots = []
        offset = 0

        def add(field, kind, width, space=None):
            nonlocal offset
            slots.append(LayoutSlot(field, kind, offset, width, space))
            offset += width

        src = schema.source_field
        add(src.name, "entity", tables[src.embedding_space].dim, src.embedding_space)
        for f in schema.destination_fields:
            add(f.name, "entity", tables[f.embedding_space].dim, f.embedding_space)
        if include_time:
            add(schema.timestamp_field.name, "time", 4)
        for f in schema.numeric_fields:
            add(f.name, "numeric", 1)
        for f in schema.categorical_fields:
            add(f.name, "categorical", vocabs.categorical[f.name].size)
        for f in schema.text_fields:
            add(f.name, "text", word_vectors.dim)
        self.layout: tuple[LayoutSlot, ...] = tuple(slots)
        self.width = offset
        self._slot_by_field = {s.field: s for s in self.layout}

    def slot(self, field_name: str) -> LayoutSlot:
        return self._slot_by_field[field_name]

    def entity_indices(self, event, field_name: str) -> list[int]:
        """Vocabulary indices of an entity field's values (source or destination)."""
        schema = self.schema
        if field_name == schema.source_field.name:
            vocab = self.vocabs.spaces[schema.source_field.embedding_space]
            return [vocab.index(event.source)]
        spec = schema.field_by_name(field_name)
        vocab = self.vocabs.spaces[spec.embedding_space]
        return [vocab.index(v) for v in event.destinations.get(field_name, ())]

    def categorical_index(self, event, field_name: str) -> int:
        return self.vocabs.categorical[field_name].index(event.categorical[field_name])

    def encode_events(self, events) -> EncodedBatch:
        n = len(events)
        X = np.zeros((n, self.width))
        entity_rows: dict[str, list[list[int]]] = {}
        for s in self.layout:
            sl = s.slice
            if s.kind == "entity":
                table = self.tables[s.space]
                rows = [self.entity_indices(e, s.field) for e in events]
                entity_rows[s.field] = rows
                X[:, sl] = table.bag_mean(rows)
            elif s.kind == "time":
                for i, e in enumerate(events):
                    X[i, sl] = encode_time(e.timestamp)
            elif s.kind == "numeric":
                X[:, s.start] = [e.numeric[s.field] for e in events]
            elif s.kind == "categorical":
                for i, e in enumerate(events):
                    X[i, s.start + self.categorical_index(e, s.field)] = 1.0
            else:  # text
                for i, e in enumerate(events):
                    tokens = tokenize(e.text.get(s.field, ""), cap=self.token_cap)
                    X[i, sl] = self.word_vectors.pooled(tokens)
        return EncodedBatch(X, entity_rows)

    def add_embedding_grads(self, batch: EncodedBatch, dX: np.ndarray,
                            rows: np.ndarray | None = None):
        """Scatter encoded-batch gradients back into the embedding tables.

        ``rows`` restricts the scatter to a subset of batch rows (used when
        only some rows of a padded block correspond to real events).
        """
        if rows is None:
            rows = np.arange(len(batch))
        for s in self.layout:
            if s.kind != "entity":
                continue
            table = self.tables[s.space]
            all_rows = batch.entity_rows[s.field]
            table.add_bag_grad([all_rows[r] for r in rows], dX[rows][:, s.slice])

    def entity_slots(self) -> tuple[LayoutSlot, ...]:
        return tuple(s for s in self.layout if s.kind == "entity")
