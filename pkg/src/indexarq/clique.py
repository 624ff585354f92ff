"""Clique matrices and the randomized greedy index generator.

A binary ``s x r`` matrix is a clique matrix when every row has weight at
least ``r - 1`` (each receiver misses at most one selected packet) and no
column is all ones (every selected packet is wanted by someone).

The greedy search keeps, per row, the number of zeros already selected.
A column can be appended iff none of its zero rows has been hit before, so
each column costs O(m). The zero rows of a column are held as a Python int
bitmask, which turns that test into a single ``&``.
"""

from itertools import combinations

import numpy as np

from .errors import SizeLimitError

BRUTE_FORCE_MAX_N = 20


def is_clique_matrix(A):
    A = np.asarray(A, dtype=bool)
    if A.ndim != 2 or A.shape[0] < 1 or A.shape[1] < 1:
        return False
    s, r = A.shape
    if np.any(A.sum(axis=0) == s):
        return False
    return bool(np.all(A.sum(axis=1) >= r - 1))


def submatrix(C, indices):
    """Columns of ``C`` at the 1-based ``indices``, in the given order."""
    C = np.asarray(C)
    idx = np.asarray(indices, dtype=np.intp)
    n = C.shape[1]
    if idx.size and (idx.min() < 1 or idx.max() > n):
        raise IndexError(f"column index outside [1, {n}]: {list(indices)}")
    return C[:, idx - 1]


def zero_masks(C):
    """Per column, the bitmask of rows that hold a zero (bit ``i`` = row ``i``)."""
    C = np.asarray(C, dtype=bool)
    m, n = C.shape
    if n == 0:
        return []
    packed = np.packbits(~C, axis=0, bitorder="little")
    return [int.from_bytes(packed[:, j].tobytes(), "little") for j in range(n)]


def greedy_masks(masks, order):
    """Greedy core on column bitmasks.

    ``order`` holds 0-based column positions. Returns the accepted
    positions in acceptance order.
    """
    hit = 0
    accepted = []
    for c in order:
        z = masks[c]
        if z and not z & hit:
            hit |= z
            accepted.append(c)
    return accepted


def greedy_search(C, order):
    """Randomized greedy clique search driven by a fixed column ``order``.

    ``order`` is a permutation of ``1..n``. All-ones columns are skipped;
    any other column is appended iff the extended submatrix is still a
    clique matrix. Returns the accepted indices sorted ascending (empty when
    every column is all ones).
    """
    masks = zero_masks(C)
    picked = greedy_masks(masks, [int(j) - 1 for j in order])
    return tuple(sorted(c + 1 for c in picked))


def random_order(n, rng):
    """Uniform random permutation of ``1..n`` drawn from ``rng``."""
    return rng.permutation(n) + 1


def index_generator(C, t, n, order_source):
    """Clique indices for transmission ``t`` (1-based).

    The first ``n`` transmissions send ``p_t`` alone. Afterwards the greedy
    search runs on a fresh permutation drawn from ``order_source``.
    """
    if t < 1:
        raise ValueError(f"transmission counter starts at 1, got {t}")
    if t <= n:
        return (t,)
    return greedy_search(C, random_order(n, order_source))


def brute_force_max_clique(C):
    """Largest clique index set by exhaustive enumeration (``n <= 20``).

    Ties go to the lexicographically smallest set. Returns ``()`` when no
    column qualifies.
    """
    C = np.asarray(C, dtype=bool)
    n = C.shape[1]
    if n > BRUTE_FORCE_MAX_N:
        raise SizeLimitError(f"brute force limited to n <= {BRUTE_FORCE_MAX_N}, got {n}")
    for size in range(n, 0, -1):
        # combinations() yields in lexicographic order
        for cols in combinations(range(1, n + 1), size):
            if is_clique_matrix(submatrix(C, cols)):
                return cols
    return ()
