from __future__ import annotations

import hashlib

import numpy as np

from .core import Numbering, Tournament, build_tournament


def substream(seed: int, label: str) -> np.random.Generator:
    """An independent generator for one named stage of a seeded run."""
    digest = hashlib.sha256(label.encode()).digest()
    words = [int.from_bytes(digest[i : i + 4], "big") for i in range(0, 32, 4)]
    entropy = [seed & 0xFFFF_FFFF_FFFF_FFFF, *words]
    return np.random.default_rng(np.random.SeedSequence(entropy))


def random_tournament(n: int, rng: np.random.Generator) -> Tournament:
    forward = rng.random((n, n)) < 0.5
    return build_tournament(
        n,
        (
            (i, j) if forward[i, j] else (j, i)
            for i in range(n)
            for j in range(i + 1, n)
        ),
    )


def random_numbering(n: int, rng: np.random.Generator) -> Numbering:
    return tuple(int(v) for v in rng.permutation(n))
