"""
State matrices and clique indices
=================================

Two receivers, three packets. Receiver 1 holds p3, receiver 2 holds p1 and
p2. We build the state matrix, try a few column subsets, and run the greedy
search with a fixed and then a random column order.
"""

import numpy as np

from indexarq import clique
from indexarq.model import ReceiverState, state_matrix_from_receivers

receivers = [ReceiverState(1, 3, wanted={1, 2}), ReceiverState(2, 3, wanted={3})]
C = state_matrix_from_receivers(receivers)
print("state matrix:\n", C.astype(int))

###############################################################################
# A column subset is usable when every receiver misses at most one of the
# selected packets and every selected packet is missing somewhere.

for cols in [(1,), (1, 2), (1, 3), (2, 3), (1, 2, 3)]:
    print(cols, clique.is_clique_matrix(clique.submatrix(C, cols)))

###############################################################################
# Greedy search. With order 2, 1, 3 the first column is rejected once
# column 2 is in, so the result is (2, 3).

print("order (2,1,3):", clique.greedy_search(C, (2, 1, 3)))
print("order (1,2,3):", clique.greedy_search(C, (1, 2, 3)))
print("largest:", clique.brute_force_max_clique(C))

###############################################################################
# A larger random state: the greedy picks one missing packet per receiver at
# most, so one coded packet can repair many receivers at once.

rng = np.random.default_rng(0)
C = rng.random((30, 200)) > 0.05
picked = clique.greedy_search(C, clique.random_order(200, rng))
print(f"{len(picked)} packets superposed, repairing "
      f"{int((~clique.submatrix(C, picked)).sum())} receivers")
