"""Index-ARQ server encoder and receiver decoder.

The step functions below are the reference state machines: encode, broadcast,
decode at each receiver, feed the wanted sets back, repeat. They work in
either counting mode (headers only) or payload mode (real bytes).

:func:`run_counting` is a bookkeeping-only engine for throughput sweeps. It
consumes the channel and greedy streams in exactly the same pattern as the
state machines, so both produce the same transcript for the same seed.
"""

from dataclasses import dataclass

import numpy as np

from . import clique
from .channel import ChannelConfig, ErasureSource, RngStreams, broadcast, feedback
from .errors import (
    IntegrityError,
    InvalidStateError,
    MaxRoundsExceeded,
    MonotonicityViolation,
    ProtocolViolation,
)
from .model import (
    COUNTING,
    PAYLOAD,
    CodedPacket,
    PacketSequence,
    empty_state,
    fresh_receivers,
    is_complete,
    is_erased,
)

RECOVERED = "recovered"
ERASED_INPUT = "erased"
NO_OVERLAP = "no-wanted-overlap"
ALREADY_COMPLETE = "already-complete"


@dataclass
class ServerState:
    m: int
    n: int
    sequence: PacketSequence = None
    state_matrix: np.ndarray = None
    t: int = 1
    mode: str = COUNTING

    def __post_init__(self):
        if self.state_matrix is None:
            self.state_matrix = empty_state(self.m, self.n)
        if self.mode == PAYLOAD and self.sequence is None:
            raise ValueError("payload mode needs a packet sequence")


@dataclass(frozen=True)
class DecodeOutcome:
    status: str
    index: int = None
    payload: np.ndarray = None

    @property
    def recovered(self):
        return self.status == RECOVERED


def server_step(s, order_source):
    """Encode and return the next coded packet; advances ``s.t``.

    The state matrix is left alone; it changes only through
    :func:`apply_feedback`.
    """
    if is_complete(s.state_matrix):
        raise InvalidStateError("every receiver already holds every packet")
    indices = clique.index_generator(s.state_matrix, s.t, s.n, order_source)
    # a column with a zero is a valid clique on its own, so the greedy never comes back empty here
    assert indices, "greedy returned no clique for an incomplete state"
    payload = s.sequence.superpose(indices) if s.mode == PAYLOAD else None
    x = CodedPacket(time=s.t, indices=indices, payload=payload)
    s.t += 1
    return x


def receiver_step(r, y):
    """Decode one received symbol at receiver ``r`` (mutates ``r``)."""
    if is_erased(y):
        return DecodeOutcome(ERASED_INPUT)
    if r.complete:
        return DecodeOutcome(ALREADY_COMPLETE)
    overlap = [j for j in y.indices if j in r.wanted]
    if not overlap:
        return DecodeOutcome(NO_OVERLAP)
    if len(overlap) > 1:
        raise ProtocolViolation(
            f"receiver {r.id} wants {overlap} from coded packet {y.indices} at t={y.time}"
        )
    k = overlap[0]
    payload = None
    if y.payload is not None and r.store is not None:
        payload = y.payload.copy()
        for j in y.indices:
            if j != k:
                payload ^= r.store[j]
        r.store[k] = payload
    r.wanted.discard(k)
    return DecodeOutcome(RECOVERED, k, payload)


def apply_feedback(s, reports):
    """Overwrite each reported receiver's row with the complement of its wanted set."""
    C = s.state_matrix
    if len(reports) != s.m:
        raise ValueError(f"expected {s.m} reports, got {len(reports)}")
    new = np.ones_like(C)
    for rid, wanted in reports:
        if wanted:
            new[rid - 1, np.fromiter(wanted, dtype=np.intp) - 1] = False
    lost = C & ~new
    if lost.any():
        i, j = np.argwhere(lost)[0]
        raise MonotonicityViolation(f"receiver {i + 1} reported known packet {j + 1} as wanted")
    s.state_matrix = new
    return s


@dataclass
class Transcript:
    """Per-step record of a trial: clique headers and delivery patterns."""

    cliques: list
    deliveries: list


def run_stepwise(m, n, epsilon, seed, mode=COUNTING, payload_len=64, max_rounds=None,
                 transcript=None):
    """Run one index-ARQ trial through the reference state machines.

    Returns ``(N, receivers, sequence)``. In payload mode every receiver's
    store is checked byte-for-byte against the server's packets at the end.
    """
    cfg = ChannelConfig(m=m, epsilon=epsilon, seed=seed, max_rounds=max_rounds)
    cap = cfg.rounds_for(n)
    streams = RngStreams.from_seed(seed)
    seq = PacketSequence.random(n, payload_len, streams.payload_stream) if mode == PAYLOAD else None
    server = ServerState(m=m, n=n, sequence=seq, mode=mode)
    receivers = fresh_receivers(m, n, payload=mode == PAYLOAD)
    while not is_complete(server.state_matrix):
        if server.t > cap:
            raise MaxRoundsExceeded(cap)
        x = server_step(server, streams.greedy_stream)
        ys = broadcast(x, cfg, streams.channel_stream)
        for r, y in zip(receivers, ys):
            receiver_step(r, y)
        apply_feedback(server, feedback(receivers))
        if transcript is not None:
            transcript.cliques.append(x.indices)
            transcript.deliveries.append(tuple(not is_erased(y) for y in ys))
    N = server.t - 1
    if mode == PAYLOAD:
        for r in receivers:
            if not np.array_equal(r.reconstructed(), seq.packets):
                raise IntegrityError(f"receiver {r.id} reconstructed a different sequence")
    return N, receivers, seq


def run_counting(m, n, epsilon, seed, max_rounds=None, transcript=None):
    """Total transmissions ``N`` for one counting-mode index-ARQ trial.

    Column ``j``'s missing receivers are an int bitmask; a delivered clique
    clears the delivered bits of every selected column, since each receiver
    misses at most one packet of a clique.
    """
    cap = ChannelConfig(m=m, epsilon=epsilon, seed=seed, max_rounds=max_rounds).rounds_for(n)
    streams = RngStreams.from_seed(seed)
    chan = ErasureSource(m, epsilon, streams.channel_stream)
    greedy_rng = streams.greedy_stream

    delivered = chan.take(n)  # first phase: p_1..p_n, shape (n, m)
    masks = clique.zero_masks(delivered.T)
    if transcript is not None:
        transcript.cliques.extend((t,) for t in range(1, n + 1))
        transcript.deliveries.extend(tuple(row) for row in delivered.tolist())
    active = [j for j in range(n) if masks[j]]
    t = n
    while active:
        if t >= cap:
            raise MaxRoundsExceeded(cap)
        t += 1
        order = greedy_rng.permutation(n).tolist()
        picked = clique.greedy_masks(masks, order)
        got = chan.next_mask()
        keep = ~got
        for c in picked:
            masks[c] &= keep
        if transcript is not None:
            transcript.cliques.append(tuple(sorted(c + 1 for c in picked)))
            transcript.deliveries.append(tuple(bool(got >> i & 1) for i in range(m)))
        if any(masks[c] == 0 for c in picked):
            active = [j for j in active if masks[j]]
    return t
