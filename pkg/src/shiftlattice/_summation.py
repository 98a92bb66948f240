import math

import numpy as np

_FSUM_LIMIT = 1 << 16


def compensated_sum(values) -> float:
    """Accurate float sum of a 1-d array.

    Short inputs go through ``math.fsum``.  Long ones are split into 1024
    lanes that each run Neumaier's compensated summation, and the lane
    totals and carries are combined with ``fsum``.
    """
    a = np.asarray(values, dtype=float).ravel()
    if a.size <= _FSUM_LIMIT:
        return math.fsum(a.tolist())
    lanes = 1024
    pad = (-a.size) % lanes
    if pad:
        a = np.concatenate([a, np.zeros(pad)])
    blocks = a.reshape(-1, lanes)
    s = np.zeros(lanes)
    c = np.zeros(lanes)
    for row in blocks:
        t = s + row
        big = np.abs(s) >= np.abs(row)
        c += np.where(big, (s - t) + row, (row - t) + s)
        s = t
    return math.fsum(np.concatenate([s, c]).tolist())

