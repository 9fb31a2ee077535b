"""Jitted twins of the numpy law scans.

Importing this module requires numba.  Each function mirrors the
corresponding one in :mod:`cmvalg._kernels_numpy`: same signature, same
lexicographically-first witness, None on success.
"""

from __future__ import annotations

from numba import njit


@njit(cache=True)
def _assoc(op):
    n = op.shape[0]
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if op[op[x, y], z] != op[x, op[y, z]]:
                    return x, y, z
    return -1, -1, -1


@njit(cache=True)
def _right_compat(op, dia):
    n = op.shape[0]
    for a in range(n):
        for b in range(n):
            for y in range(n):
                if dia[op[a, b], y] != op[dia[a, y], dia[b, y]]:
                    return a, b, y
    return -1, -1, -1


@njit(cache=True)
def _residuation(odot, imp, le):
    n = odot.shape[0]
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if le[odot[x, y], z] != le[x, imp[y, z]]:
                    return x, y, z
    return -1, -1, -1


@njit(cache=True)
def _le_right_monotone(le, dia):
    n = le.shape[0]
    for y in range(n):
        for z in range(n):
            if le[y, z]:
                for x in range(n):
                    if not le[dia[y, x], dia[z, x]]:
                        return y, z, x
    return -1, -1, -1


@njit(cache=True)
def _least_upper(le, join):
    n = le.shape[0]
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if le[x, z] and le[y, z] and not le[join[x, y], z]:
                    return x, y, z
    return -1, -1, -1


@njit(cache=True)
def _greatest_lower(le, meet):
    n = le.shape[0]
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if le[z, x] and le[z, y] and not le[z, meet[x, y]]:
                    return x, y, z
    return -1, -1, -1


@njit(cache=True)
def _left_compat(dia, dist, in_ideal):
    n = dia.shape[0]
    for a in range(n):
        for x in range(n):
            for y in range(n):
                if in_ideal[dist[x, y]] and not in_ideal[dist[dia[a, x], dia[a, y]]]:
                    return a, x, y
    return -1, -1, -1


def _unpack(res):
    return None if res[0] < 0 else (int(res[0]), int(res[1]), int(res[2]))


def assoc_witness(op):
    return _unpack(_assoc(op))


def right_compat_witness(op, dia):
    return _unpack(_right_compat(op, dia))


def residuation_witness(odot, imp, le):
    return _unpack(_residuation(odot, imp, le))


def le_right_monotone_witness(le, dia):
    return _unpack(_le_right_monotone(le, dia))


def least_upper_witness(le, join):
    return _unpack(_least_upper(le, join))


def greatest_lower_witness(le, meet):
    return _unpack(_greatest_lower(le, meet))


def left_compat_witness(dia, dist, in_ideal):
    return _unpack(_left_compat(dia, dist, in_ideal))
