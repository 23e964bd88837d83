"""Event schema, log ingestion, vocabularies and numeric encoding."""

from .encode import EncodedBatch, EventEncoder, LayoutSlot, encode_time
from .parse import (Event, ParseOptions, ParseResult, copy_event, format_timestamp,
                    parse_events, parse_timestamp, sample_users, timestamp_day,
                    write_events)
from .schema import PRESETS, FeatureSchema, FieldKind, FieldSpec, load_schema
from .vocab import Vocabularies, Vocabulary, build_vocabularies
from .wordvec import WordVectorTable, load_word_vectors, tokenize

__all__ = [
    "EncodedBatch", "Event", "EventEncoder", "FeatureSchema", "FieldKind", "FieldSpec",
    "LayoutSlot", "PRESETS", "ParseOptions", "ParseResult", "Vocabularies", "Vocabulary",
    "WordVectorTable", "build_vocabularies", "copy_event", "encode_time",
    "format_timestamp", "load_schema", "load_word_vectors", "parse_events",
    "parse_timestamp", "sample_users", "timestamp_day", "tokenize", "write_events",
]
