"""Deterministic random streams shared by the experiment harnesses.

Stream contract: every trial owns an independent PCG64 generator keyed by
``(seed, trial)`` (purchase-day sampling additionally keys on the algorithm
name via CRC-32), so results do not depend on execution order.  Gaussians
are produced by the basic Box-Muller transform, consuming exactly two
uniform draws per variate; with the generator pinned, the entire draw
sequence is reproducible.
"""

from __future__ import annotations

import math
import zlib

import numpy as np


def substream(seed: int, *key: int) -> np.random.Generator:
    """Independent generator for an experiment sub-stream."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence((seed, *key))))


def algorithm_stream(seed: int, trial: int, name: str) -> np.random.Generator:
    """Per-(trial, algorithm) stream; the name is hashed with CRC-32 so the
    keying is stable across processes and algorithm orderings."""
    return substream(seed, trial, zlib.crc32(name.encode("utf-8")))


def standard_normal(gen: np.random.Generator) -> float:
    """Box-Muller (cosine form): z = sqrt(-2 ln(1-u1)) * cos(2 pi u2).

    Exactly two uniform draws per Gaussian; ``1 - u1`` keeps the log away
    from zero since uniforms live in [0, 1).
    """
    u1 = gen.random()
    u2 = gen.random()
    return math.sqrt(-2.0 * math.log(1.0 - u1)) * math.cos(2.0 * math.pi * u2)
