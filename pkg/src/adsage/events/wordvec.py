"""Pretrained word vectors in the common whitespace-delimited text format.

One line per token: the token followed by its vector components. Unknown
tokens map to the zero vector; text features are the average of their
token vectors.
"""

import re
import warnings
from pathlib import Path

import numpy as np

from ..errors import ConfigurationError, DataError

_TOKEN_SPLIT = re.compile(r"[^a-z0-9]+")


def tokenize(text: str, cap: int = 200) -> tuple[str, ...]:
    """Lowercase, split on non-alphanumeric runs, cap the token count."""
    tokens = [t for t in _TOKEN_SPLIT.split(text.lower()) if t]
    return tuple(tokens[:cap])


class WordVectorTable:
    def __init__(self, vectors: dict[str, np.ndarray], dim: int):
        self.dim = dim
        self._vectors = vectors
        self._zero = np.zeros(dim)

    def __len__(self) -> int:
        return len(self._vectors)

    def __contains__(self, token: str) -> bool:
        return token in self._vectors

    def vector(self, token: str) -> np.ndarray:
        return self._vectors.get(token, self._zero)

    def pooled(self, tokens) -> np.ndarray:
        """Average over token vectors; unknown tokens contribute zeros."""
        if not tokens:
            return self._zero.copy()
        out = np.zeros(self.dim)
        for t in tokens:
            out += self.vector(t)
        return out / len(tokens)


def load_word_vectors(path, limit: int | None = None) -> WordVectorTable:
    path = Path(path)
    if not path.exists():
        raise ConfigurationError(f"word-vector file not found: {path}")
    vectors: dict[str, np.ndarray] = {}
    dim = None
    with path.open() as fh:
        for line_no, line in enumerate(fh, start=1):
            parts = line.split()
            if not parts:
                continue
            token, values = parts[0], parts[1:]
            if dim is None:
                dim = len(values)
                if dim == 0:
                    raise DataError(f"{path}: line {line_no} has no vector components")
            elif len(values) != dim:
                raise DataError(
                    f"{path}: line {line_no} has {len(values)} components, expected {dim}")
            if token in vectors:
                warnings.warn(f"duplicate word vector for {token!r}; keeping the first")
                continue
            try:
                vectors[token] = np.array([float(v) for v in values])
            except ValueError as exc:
                raise DataError(f"{path}: line {line_no}: {exc}") from exc
            if limit is not None and len(vectors) >= limit:
                break
    if dim is None:
        raise DataError(f"{path}: no word vectors found")
    return WordVectorTable(vectors, dim)
