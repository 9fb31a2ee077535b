"""Pure-numpy law scans over operation tables.

Every function scans all element triples of one law and returns the
lexicographically first violating tuple, or None.  The scans are the only
O(n^3) paths in the package; :mod:`cmvalg._kernels_numba` carries jitted
twins with identical signatures and witness order.
"""

from __future__ import annotations

import numpy as np


def _first(mask: np.ndarray, x: int):
    hits = np.argwhere(mask)
    if hits.size == 0:
        return None
    y, z = hits[0]
    return x, int(y), int(z)


def assoc_witness(op: np.ndarray):
    """First (x, y, z) with op(op(x,y),z) != op(x,op(y,z))."""
    n = op.shape[0]
    for x in range(n):
        w = _first(op[op[x], :] != op[x, op], x)
        if w is not None:
            return w
    return None


def right_compat_witness(op: np.ndarray, dia: np.ndarray):
    """First (a, b, y) with op(a,b)<>y != op(a<>y, b<>y)."""
    n = op.shape[0]
    for a in range(n):
        lhs = dia[op[a], :]
        rhs = op[dia[a][None, :], dia]
        w = _first(lhs != rhs, a)
        if w is not None:
            return w
    return None


def residuation_witness(odot: np.ndarray, imp: np.ndarray, le: np.ndarray):
    """First (x, y, z) with (x.y <= z) != (x <= y->z)."""
    n = odot.shape[0]
    for x in range(n):
        lhs = le[odot[x], :]
        rhs = le[x, imp]
        w = _first(lhs != rhs, x)
        if w is not None:
            return w
    return None


def le_right_monotone_witness(le: np.ndarray, dia: np.ndarray):
    """First (y, z, x) with y <= z but not y<>x <= z<>x."""
    n = le.shape[0]
    for y in range(n):
        # index (z, x): le[dia[y, x], dia[z, x]]
        bad = le[y][:, None] & ~le[dia[y][None, :], dia]
        w = _first(bad, y)
        if w is not None:
            return w
    return None


def least_upper_witness(le: np.ndarray, join: np.ndarray):
    """First (x, y, z) with x <= z and y <= z but not join(x,y) <= z."""
    n = le.shape[0]
    for x in range(n):
        both = le[x][None, :] & le  # (y, z): y <= z and x <= z
        bad = both & ~le[join[x], :]
        w = _first(bad, x)
        if w is not None:
            return w
    return None


def greatest_lower_witness(le: np.ndarray, meet: np.ndarray):
    """First (x, y, z) with z <= x and z <= y but not z <= meet(x,y)."""
    n = le.shape[0]
    for x in range(n):
        both = le[:, x][None, :] & le.T  # (y, z): z <= y and z <= x
        bad = both & ~le[:, meet[x]].T
        w = _first(bad, x)
        if w is not None:
            return w
    return None


def left_compat_witness(dia: np.ndarray, dist: np.ndarray, in_ideal: np.ndarray):
    """First (a, x, y) with d(x,y) in I but d(a<>x, a<>y) not in I."""
    n = dia.shape[0]
    related = in_ideal[dist]
    for a in range(n):
        da = dist[dia[a][:, None], dia[a][None, :]]
        bad = related & ~in_ideal[da]
        w = _first(bad, a)
        if w is not None:
            return w
    return None
