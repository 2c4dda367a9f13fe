"""Published Morse-index tables for the triangle and rhombus families.

Kept as plain lookup helpers so sweeps can report match/mismatch columns;
the direct eigendecomposition is the ground truth, not these values (two
entries are known to disagree with it, see the sweep output).
"""

from __future__ import annotations

import numpy as np

RHOMBUS_DEGENERACY = -2.0 + np.sqrt(3.0)

# real root of 9 m^3 + 3 m^2 + 7 m + 5, where the rhombus-B eigenvalue
# type changes
RHOMBUS_B_CUBIC = (9.0, 3.0, 7.0, 5.0)


def rhombus_b_transition() -> float:
    roots = np.roots(RHOMBUS_B_CUBIC)
    real = roots[np.abs(roots.imag) < 1e-10].real
    return float(real[0])


def triangle_table_index(g1: float, g2: float, g3: float) -> int:
    """Published triangle Morse index by circulation sign pattern."""
    negatives = sum(1 for g in (g1, g2, g3) if g < 0)
    if negatives in (0, 3):
        return 0
    if negatives == 1:
        return 1
    return 2


def rhombus_a_table_index(m: float) -> int:
    if 0.0 < m <= 1.0:
        return 0
    if RHOMBUS_DEGENERACY < m < 0.0:
        return 3
    if -1.0 < m < RHOMBUS_DEGENERACY:
        return 4
    raise ValueError(f"m = {m} outside the tabulated range")


def rhombus_b_table_index(m: float) -> int:
    mstar = rhombus_b_transition()
    if RHOMBUS_DEGENERACY < m < 0.0:
        return 2
    if mstar < m < RHOMBUS_DEGENERACY:
        return 4
    if -1.0 < m < mstar:
        return 3
    raise ValueError(f"m = {m} outside the tabulated range")
