"""
Parameter sweeps written to CSV
===============================

Sweeps over the erasure probability or the number of packets. Rows are one
per protocol and point, plus an ``ideal-fec`` reference row per point. The
same thing is available from the shell::

    indexarq --m 100 --n 1000 --epsilon 0:0.1:0.01 --out fig3.csv
    indexarq --m 100 --n-sweep 10,50,100,200,500 --epsilon 0.05 --out fig5.csv
"""

import sys

from indexarq import PROTOCOLS, sweep
from indexarq.harness import parse_epsilons

trials = int(sys.argv[1]) if len(sys.argv) > 1 else 20

sweep(PROTOCOLS, m=20, n_values=[200], epsilons=parse_epsilons("0:0.1:0.02"), trials=trials,
      out=sys.stdout)

###############################################################################
# Packet-count axis at a fixed erasure probability.

sweep(PROTOCOLS, m=20, n_values=[10, 50, 200], epsilons=[0.05], trials=trials, out=sys.stdout)
