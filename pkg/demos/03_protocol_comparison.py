"""
Throughput of index-ARQ, Selective-Repeat and Metzner
=====================================================

Throughput is the mean of n/N over seeded trials, where N is the number of
transmissions until every receiver holds every packet. The three protocols
share trial seeds, so they face the same erasure realizations.
"""

from indexarq import PROTOCOLS, estimate_throughput, ideal_fec_bound

m, n, eps, trials = 100, 1000, 0.1, 30

for p in PROTOCOLS:
    est = estimate_throughput(p, m, n, eps, trials=trials, master_seed=0)
    print(f"{p:>10}: {est.mean:.4f} +/- {est.stderr:.4f}   mean N = {est.mean_N:.1f}")
print(f"{'ideal FEC':>10}: {ideal_fec_bound(eps):.4f}")
