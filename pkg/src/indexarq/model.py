"""Domain types shared by the protocol engines.

Packet indices are 1-based on every public surface (receiver wanted sets,
coded-packet headers). The state matrix is a plain ``(m, n)`` numpy bool
array where ``C[i, j]`` is True iff receiver ``i + 1`` knows packet ``j + 1``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from . import gf

COUNTING = "counting"
PAYLOAD = "payload"
MODES = (COUNTING, PAYLOAD)


@dataclass(frozen=True)
class PacketSequence:
    """``n`` packets of ``payload_len`` bytes, stored as an ``(n, L)`` uint8 array."""

    packets: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.packets, dtype=np.uint8)
        if p.ndim != 2 or p.shape[0] < 1 or p.shape[1] < 1:
            raise DimensionMismatch(f"packets must be a non-empty 2-D array, got shape {p.shape}")
        p = p.copy()
        p.flags.writeable = False
        object.__setattr__(self, "packets", p)

    @classmethod
    def random(cls, n, payload_len, rng):
        return cls(rng.integers(0, 256, size=(n, payload_len), dtype=np.uint8))

    @property
    def n(self):
        return self.packets.shape[0]

    @property
    def payload_len(self):
        return self.packets.shape[1]

    def __getitem__(self, j):
        """Packet ``p_j`` for a 1-based index ``j``."""
        if not 1 <= j <= self.n:
            raise IndexError(f"packet index {j} outside [1, {self.n}]")
        return self.packets[j - 1]

    def superpose(self, indices):
        """Field sum of the packets at the given 1-based indices."""
        return gf.xor_sum(self.packets[np.asarray(indices, dtype=np.intp) - 1])


@dataclass(frozen=True)
class CodedPacket:
    """A broadcast packet: header ``indices`` plus optional payload.

    In counting mode ``payload`` is None. For Metzner packets ``indices`` is
    the full range and ``coefficients`` carries the Vandermonde row.
    """

    time: int
    indices: tuple
    payload: np.ndarray = None
    coefficients: np.ndarray = None

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        if not idx:
            raise ValueError("coded packet needs at least one index")
        if any(a >= b for a, b in zip(idx, idx[1:])):
            raise ValueError(f"indices must be strictly increasing, got {idx}")
        object.__setattr__(self, "indices", idx)


class Erased:
    """The erasure symbol. Header and payload are lost together."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ERASED"


ERASED = Erased()


def is_erased(y):
    return y is ERASED


@dataclass
class ReceiverState:
    """Knowledge of one receiver.

    ``wanted`` is stored explicitly; ``known`` is its complement in
    ``[1, n]``. ``store`` maps known indices to recovered payloads and is
    only populated in payload mode.
    """

    id: int
    n: int
    wanted: set = None
    store: dict = None

    def __post_init__(self):
        if self.wanted is None:
            self.wanted = set(range(1, self.n + 1))
        else:
            self.wanted = set(self.wanted)
            if not self.wanted <= set(range(1, self.n + 1)):
                raise DimensionMismatch(f"wanted set of receiver {self.id} exceeds [1, {self.n}]")

    @property
    def known(self):
        return set(range(1, self.n + 1)) - self.wanted

    @property
    def complete(self):
        return not self.wanted

    def reconstructed(self):
        """Recovered packets as an ``(n, L)`` array; requires a complete store."""
        return np.stack([self.store[j] for j in range(1, self.n + 1)])


def fresh_receivers(m, n, payload=False):
    return [ReceiverState(id=i, n=n, store={} if payload else None) for i in range(1, m + 1)]


def state_matrix_from_receivers(receivers):
    """Build the ``(m, n)`` state matrix from receiver knowledge."""
    if not receivers:
        raise DimensionMismatch("no receivers")
    n = receivers[0].n
    ids = [r.id for r in receivers]
    if ids != list(range(1, len(receivers) + 1)):
        raise DimensionMismatch(f"receiver ids must be 1..m in order, got {ids}")
    C = np.ones((len(receivers), n), dtype=bool)
    for row, r in zip(C, receivers):
        if r.n != n:
            raise DimensionMismatch(f"receiver {r.id} has n={r.n}, expected {n}")
        if r.wanted:
            row[np.fromiter(r.wanted, dtype=np.intp) - 1] = False
    return C


def is_complete(C):
    """True iff every receiver knows every packet."""
    return bool(np.all(C))


def empty_state(m, n):
    return np.zeros((m, n), dtype=bool)
