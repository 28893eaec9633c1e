"""
The six-person toy problem
==========================

Three agents, six people, persons 3 and 4 infected.  Only the second agent
ends up infected, and we look at what the distance decoder can say.
"""

import numpy as np

from dilutedgt import (
    ContactMatrix,
    Outcome,
    SparseSignal,
    distance_decode,
    measure,
    oracle_consistent_supports,
    verify_disjunct,
)
from dilutedgt import gtmat

contact = ContactMatrix(
    [
        [1, 0, 1, 0, 1, 0],
        [0, 1, 0, 1, 0, 1],
        [0, 1, 1, 0, 1, 1],
    ]
)
print(gtmat.dumps(contact))

# One sampling matrix consistent with the story: column 3 lost both contacts.
sampling = ContactMatrix(
    [
        [1, 0, 0, 0, 1, 0],
        [0, 1, 0, 1, 0, 1],
        [0, 1, 0, 0, 1, 1],
    ]
)
x = SparseSignal.from_one_based(6, [3, 4])
y = measure(sampling, x)
print("outcome:", y)

###############################################################################
# The decoder keeps a column when at most ``e`` of its contacts tested
# negative.  With e=0 it misses person 3; with e=1 it over-reports.

for e in (0, 1, 2):
    res = distance_decode(contact, y, e)
    print(f"e={e}: candidates", [i + 1 for i in res.candidates])

###############################################################################
# The matrix is too small to be disjunct: columns 3 and 5 are identical.

print(verify_disjunct(contact, 1, 0).to_json())

###############################################################################
# Every support of size <= 2 that some 2-flips-per-column erasure explains.

for S in oracle_consistent_supports(contact, y, k=2, e=2):
    print("consistent:", [i + 1 for i in S])

assert np.array_equal(y.bits, [False, True, False])
assert Outcome([0, 1, 0]) == y
