"""Memoryless broadcast erasure channel, noiseless feedback and seeding.

Seed derivation
---------------
Every trial is driven by a 64-bit trial seed. Within a trial, independent
streams come from ``numpy.random.SeedSequence(trial_seed, spawn_key=(k,))``
wrapped in a PCG64 ``Generator``, with fixed labels:

    k = 0  channel   one uniform per (transmission, receiver)
    k = 1  greedy    one permutation of 1..n per retransmission
    k = 2  payload   packet contents (payload mode only)

An estimate over many trials derives trial ``i``'s seed from the master
seed as the first uint64 word of
``SeedSequence(master_seed, spawn_key=(i,)).generate_state(1, np.uint64)``.
Trial seeds do not depend on the protocol, so different protocols run with
the same master seed see identical erasure realizations.

Receiver ``i`` loses transmission ``t`` iff the ``((t-1)*m + i)``-th uniform
of the channel stream is below epsilon. Drawing ``k`` rows of ``m`` at once
yields the same numbers as ``k`` single rows, so engines can prefetch.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .model import ERASED

CHANNEL, GREEDY, PAYLOAD = 0, 1, 2
MAX_ROUNDS_FACTOR = 50


@dataclass(frozen=True)
class ChannelConfig:
    m: int
    epsilon: float
    seed: int = 0
    max_rounds: int = None

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 1:
            raise ConfigError(f"m must be a positive integer, got {self.m!r}")
        if not 0.0 <= self.epsilon < 1.0:
            raise ConfigError(f"epsilon must lie in [0, 1), got {self.epsilon!r}")
        if self.max_rounds is not None and self.max_rounds < 1:
            raise ConfigError(f"max_rounds must be positive, got {self.max_rounds!r}")

    def rounds_for(self, n):
        """Transmission cap for ``n`` packets; default ``50 * n``."""
        cap = MAX_ROUNDS_FACTOR * n if self.max_rounds is None else self.max_rounds
        if cap < n:
            raise ConfigError(f"max_rounds={cap} is below n={n}")
        return cap


def stream(seed, label):
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(label,))))


@dataclass
class RngStreams:
    channel_stream: np.random.Generator
    greedy_stream: np.random.Generator
    payload_stream: np.random.Generator

    @classmethod
    def from_seed(cls, seed):
        return cls(stream(seed, CHANNEL), stream(seed, GREEDY), stream(seed, PAYLOAD))


def trial_seed(master_seed, trial_index):
    ss = np.random.SeedSequence(master_seed, spawn_key=(trial_index,))
    return int(ss.generate_state(1, np.uint64)[0])


def broadcast(x, cfg, channel_stream):
    """Deliver ``x`` to each receiver independently with probability ``1 - epsilon``.

    Consumes exactly ``m`` draws, in receiver order.
    """
    u = channel_stream.random(cfg.m)
    return [ERASED if ui < cfg.epsilon else x for ui in u]


def feedback(receivers):
    """Snapshot of every receiver's wanted set, ordered by receiver id."""
    return [(r.id, frozenset(r.wanted)) for r in sorted(receivers, key=lambda r: r.id)]


class ErasureSource:
    """Block-prefetching view of the channel stream for the fast engines.

    ``next()`` returns the delivery vector of the next transmission and
    ``next_mask()`` the same as an int bitmask. Both advance the stream by
    ``m`` draws, exactly as :func:`broadcast` does.
    """

    def __init__(self, m, epsilon, channel_stream, block=256):
        self.m = m
        self.epsilon = epsilon
        self.rng = channel_stream
        self.block = block
        self._rows = None
        self._masks = None
        self._pos = 0

    def _refill(self):
        self._rows = self.rng.random((self.block, self.m)) >= self.epsilon
        self._masks = None
        self._pos = 0

    def take(self, k):
        """Delivery matrix for the next ``k`` transmissions, shape ``(k, m)``."""
        out = []
        while k > 0:
            if self._rows is None or self._pos == len(self._rows):
                self._refill()
            step = min(k, len(self._rows) - self._pos)
            out.append(self._rows[self._pos:self._pos + step])
            self._pos += step
            k -= step
        return np.concatenate(out) if len(out) != 1 else out[0]

    def next(self):
        return self.take(1)[0]

    def next_mask(self):
        if self._rows is None or self._pos == len(self._rows):
            self._refill()
        if self._masks is None:
            packed = np.packbits(self._rows, axis=1, bitorder="little")
            self._masks = [int.from_bytes(r.tobytes(), "little") for r in packed]
        mask = self._masks[self._pos]
        self._pos += 1
        return mask
