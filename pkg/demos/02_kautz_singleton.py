"""
Explicit design from Reed-Solomon codes
=======================================

Each column is an RS codeword with every symbol replaced by a one-hot block,
so every column has weight n' and two columns share fewer than k' ones.
"""

import itertools

import numpy as np

from dilutedgt import (
    ChannelSpec,
    SparseSignal,
    build_kautz_singleton,
    derive_ks_params,
    distance_decode,
    end_to_end_sample,
    ks_guarantee_margin,
    verify_disjunct,
)
from dilutedgt.analysis import column_weight_stats
from dilutedgt.gf import field

params = derive_ks_params(n=30, k=2, p=0.9, delta=0.05)
print(params)
print("field:", field(params.nprime))
print("margin n' - k k' - e =", ks_guarantee_margin(params))

mc = build_kautz_singleton(params)
print(mc, column_weight_stats(mc))

inter = mc.dense.T.astype(int) @ mc.dense.astype(int)
np.fill_diagonal(inter, 0)
print("max pairwise intersection:", inter.max(), "< k' =", params.kprime)

###############################################################################
# A positive margin certifies (k, e)-disjunctness; check it exhaustively.

print(verify_disjunct(mc, params.k, params.e).to_json())

###############################################################################
# So every 2-sparse signal survives any e erasures per column.

failures = 0
for S in itertools.combinations(range(mc.n), 2):
    x = SparseSignal.from_indices(mc.n, S)
    _, y = end_to_end_sample(mc, x, ChannelSpec.adversarial(params.e, "max-random"), sum(S))
    failures += distance_decode(mc, y, params.e).candidates != x.support
print("adversarial failures over all pairs:", failures)
