"""Comparison protocols: Selective-Repeat ARQ and Metzner's MDS-coded ARQ.

Selective-Repeat sends ``p_1..p_n`` once, then always the smallest index
still wanted by some receiver. It is index-ARQ restricted to singleton
cliques, and its payload mode reuses the index-ARQ receiver decoder.

Metzner's protocol sends MDS-coded packets; a receiver holding any ``n`` of
them solves a linear system. Counting mode treats the code as ideal MDS (any
``n`` deliveries suffice), which is what throughput sweeps use. Payload mode
uses non-systematic Vandermonde rows ``alpha_t^(j-1)`` with ``alpha_t = t``,
so it is limited to 255 transmissions.
"""

from dataclasses import dataclass, field

import numpy as np

from . import gf
from .channel import ChannelConfig, ErasureSource, RngStreams, broadcast
from .errors import (
    ConfigError,
    FieldExhausted,
    IntegrityError,
    InvalidStateError,
    MaxRoundsExceeded,
)
from .model import COUNTING, PAYLOAD, CodedPacket, PacketSequence, fresh_receivers, is_erased
from .protocol import receiver_step


def ideal_fec_bound(epsilon):
    """Erasure-channel capacity ``1 - epsilon``, the throughput ceiling."""
    if not 0.0 <= epsilon < 1.0:
        raise ConfigError(f"epsilon must lie in [0, 1), got {epsilon!r}")
    return 1.0 - epsilon


# -- Selective-Repeat ---------------------------------------------------------


@dataclass
class SrServerState:
    m: int
    n: int
    t: int = 1
    pending: list = None

    def __post_init__(self):
        if self.pending is None:
            self.pending = [set(range(1, self.n + 1)) for _ in range(self.m)]

    @property
    def complete(self):
        return not any(self.pending)


def sr_server_step(s, n):
    """Index of the packet sent at time ``s.t``; advances ``s.t``."""
    if s.t <= n:
        j = s.t
    else:
        wanted = set().union(*s.pending)
        if not wanted:
            raise InvalidStateError("no receiver wants any packet")
        j = min(wanted)
    s.t += 1
    return j


def sr_run_stepwise(m, n, epsilon, seed, mode=COUNTING, payload_len=64, max_rounds=None):
    """One Selective-Repeat trial through the step machine.

    Returns ``(N, receivers, sequence)``.
    """
    cfg = ChannelConfig(m=m, epsilon=epsilon, seed=seed, max_rounds=max_rounds)
    cap = cfg.rounds_for(n)
    streams = RngStreams.from_seed(seed)
    seq = PacketSequence.random(n, payload_len, streams.payload_stream) if mode == PAYLOAD else None
    receivers = fresh_receivers(m, n, payload=mode == PAYLOAD)
    s = SrServerState(m=m, n=n)
    while not s.complete:
        if s.t > cap:
            raise MaxRoundsExceeded(cap)
        t = s.t
        j = sr_server_step(s, n)
        x = CodedPacket(time=t, indices=(j,), payload=seq[j].copy() if seq is not None else None)
        for r, y in zip(receivers, broadcast(x, cfg, streams.channel_stream)):
            receiver_step(r, y)
        s.pending = [set(r.wanted) for r in receivers]
    if mode == PAYLOAD:
        for r in receivers:
            if not np.array_equal(r.reconstructed(), seq.packets):
                raise IntegrityError(f"receiver {r.id} reconstructed a different sequence")
    return s.t - 1, receivers, seq


def sr_run_counting(m, n, epsilon, seed, max_rounds=None):
    """Total transmissions for one counting-mode Selective-Repeat trial.

    The smallest wanted index is resent until every receiver missing it has
    it, then the next one; this is the step machine's schedule.
    """
    cap = ChannelConfig(m=m, epsilon=epsilon, seed=seed, max_rounds=max_rounds).rounds_for(n)
    streams = RngStreams.from_seed(seed)
    chan = ErasureSource(m, epsilon, streams.channel_stream)
    missing = ~chan.take(n)  # (n, m)
    t = n
    for j in np.flatnonzero(missing.any(axis=1)):
        need = missing[j].copy()
        while need.any():
            if t >= cap:
                raise MaxRoundsExceeded(cap)
            t += 1
            need &= ~chan.next()
    return t


# -- Metzner ------------------------------------------------------------------


@dataclass
class MetznerServerState:
    m: int
    n: int
    t: int = 1
    received_counts: np.ndarray = None
    mode: str = COUNTING
    sequence: PacketSequence = None
    coefficients: list = field(default_factory=list)

    def __post_init__(self):
        if self.received_counts is None:
            self.received_counts = np.zeros(self.m, dtype=np.int64)
        if self.mode == PAYLOAD and self.sequence is None:
            raise ValueError("payload mode needs a packet sequence")

    @property
    def complete(self):
        return bool(np.all(self.received_counts >= self.n))


def evaluation_point(t):
    """The ``t``-th distinct nonzero field element (``alpha_t = t``)."""
    if not 1 <= t <= gf.ORDER:
        raise FieldExhausted(f"GF(256) has only {gf.ORDER} nonzero evaluation points, need #{t}")
    return t


def metzner_server_step(s, n):
    """Emit the next MDS-coded packet; advances ``s.t``.

    In payload mode the packet is ``sum_j alpha_t^(j-1) p_j`` and its
    coefficient row is recorded on the state.
    """
    if s.complete:
        raise InvalidStateError("every receiver already holds n coded packets")
    t = s.t
    payload = coeffs = None
    if s.mode == PAYLOAD:
        coeffs = gf.vandermonde([evaluation_point(t)], n)[0]
        payload = gf.matmul(coeffs[None, :], s.sequence.packets)[0]
        s.coefficients.append(coeffs)
    s.t += 1
    return CodedPacket(time=t, indices=tuple(range(1, n + 1)), payload=payload, coefficients=coeffs)


@dataclass
class MetznerReceiver:
    """Collects coded packets until ``n`` are held, then solves for the sequence."""

    id: int
    n: int
    rows: list = field(default_factory=list)
    payloads: list = field(default_factory=list)
    count: int = 0
    decoded: np.ndarray = None

    @property
    def complete(self):
        return self.count >= self.n

    def receive(self, y):
        if is_erased(y) or self.complete:
            return False
        self.count += 1
        if y.payload is not None:
            self.rows.append(y.coefficients)
            self.payloads.append(y.payload)
            if self.complete:
                self.decoded = gf.solve_linear(np.stack(self.rows), np.stack(self.payloads))
        return True


def metzner_run_stepwise(m, n, epsilon, seed, mode=COUNTING, payload_len=64, max_rounds=None):
    """One Metzner trial through the step machine; returns ``(N, receivers, sequence)``."""
    cfg = ChannelConfig(m=m, epsilon=epsilon, seed=seed, max_rounds=max_rounds)
    cap = cfg.rounds_for(n)
    streams = RngStreams.from_seed(seed)
    seq = PacketSequence.random(n, payload_len, streams.payload_stream) if mode == PAYLOAD else None
    s = MetznerServerState(m=m, n=n, mode=mode, sequence=seq)
    receivers = [MetznerReceiver(id=i, n=n) for i in range(1, m + 1)]
    while not s.complete:
        if s.t > cap:
            raise MaxRoundsExceeded(cap)
        x = metzner_server_step(s, n)
        for r, y in zip(receivers, broadcast(x, cfg, streams.channel_stream)):
            r.receive(y)
        s.received_counts = np.array([r.count for r in receivers])
    if mode == PAYLOAD:
        for r in receivers:
            if not np.array_equal(r.decoded, seq.packets):
                raise IntegrityError(f"receiver {r.id} decoded a different sequence")
    return s.t - 1, receivers, seq


def metzner_run_counting(m, n, epsilon, seed, max_rounds=None):
    """Total transmissions for one counting-mode Metzner trial.

    ``N`` is the time of the last receiver's ``n``-th delivery.
    """
    cap = ChannelConfig(m=m, epsilon=epsilon, seed=seed, max_rounds=max_rounds).rounds_for(n)
    streams = RngStreams.from_seed(seed)
    chan = ErasureSource(m, epsilon, streams.channel_stream)
    counts = np.zeros(m, dtype=np.int64)
    t = 0
    chunk = n
    while True:
        block = chan.take(chunk)
        cum = counts + np.cumsum(block, axis=0)
        done = cum[-1] >= n
        if done.all():
            # first row at which each receiver reached n; the trial ends at the latest one
            first = np.argmax(cum >= n, axis=0)
            N = t + int(first.max()) + 1
            if N > cap:
                raise MaxRoundsExceeded(cap)
            return N
        counts = cum[-1]
        t += chunk
        if t >= cap:
            raise MaxRoundsExceeded(cap)
        chunk = max(16, int((n - counts.min()) / max(1e-9, 1 - epsilon)) + 1)
