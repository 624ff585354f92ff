"""
Metzner's protocol with Vandermonde rows
========================================

Transmission t carries sum_j t^(j-1) p_j over GF(256). Any n distinct rows
form a nonsingular Vandermonde matrix, so a receiver decodes as soon as it
has collected n packets, whichever ones they were.
"""

import numpy as np

from indexarq import gf
from indexarq.baselines import MetznerReceiver, MetznerServerState, metzner_server_step
from indexarq.model import PAYLOAD, PacketSequence

rng = np.random.default_rng(1)
seq = PacketSequence.random(8, 16, rng)
server = MetznerServerState(m=1, n=8, mode=PAYLOAD, sequence=seq)
sent = [metzner_server_step(server, 8) for _ in range(14)]

###############################################################################
# Keep a random subset of 8 out of 14 transmissions and decode.

kept = sorted((rng.choice(14, size=8, replace=False) + 1).tolist())
rx = MetznerReceiver(id=1, n=8)
for x in sent:
    if x.time in kept:
        rx.receive(x)
print("kept transmissions:", kept)
print("decoded exactly:", np.array_equal(rx.decoded, seq.packets))

###############################################################################
# The same solve by hand.

A = gf.vandermonde(kept, 8)
B = np.stack([sent[t - 1].payload for t in kept])
print("by hand:", np.array_equal(gf.solve_linear(A, B), seq.packets))
