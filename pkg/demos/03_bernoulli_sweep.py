"""
Random design and a Monte Carlo sweep
=====================================

Bernoulli(alpha/k) contact matrices, diluted measurements, distance decoding.
The sweep prints the same CSV the ``dilutedgt sweep`` command writes.
"""

from dilutedgt import SweepSpec, derive_prob_params, run_sweep, sweep_csv
from dilutedgt.analysis import prob_design_failure_bound

for p in (0.6, 0.8, 1.0):
    params = derive_prob_params(n=200, k=2, p=p)
    print(f"p={p}: q={params.q:.3g} gamma={params.gamma:.4g} m={params.m} e={params.e}")

params = derive_prob_params(n=200, k=2, p=0.8, m_multiplier=4)
print(prob_design_failure_bound(200, 2, params.q, params.m, params.e, params.gamma).to_json())

###############################################################################
# Success rate against the row multiplier c.  Failures at p < 1 are false
# negatives: a defective column lost more than e contacts.

spec = SweepSpec(
    design="bernoulli",
    n=(200,),
    k=(2,),
    p=(0.6, 0.8, 1.0),
    c=(0.5, 1.0, 2.0, 4.0),
    trials=200,
    base_seed=1,
)
print(sweep_csv(run_sweep(spec)))
