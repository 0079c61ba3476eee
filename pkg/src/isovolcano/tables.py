"""Batched tables over all discriminants |D| <= limit.

One vectorized sweep over reduced triples (a, b, c) yields, for every
negative discriminant in range, the class number and the count of ambiguous
reduced forms (which equals the 2-torsion cardinality of the class group).
"""

from __future__ import annotations

from math import isqrt

import numpy as np


def class_number_table(limit: int) -> np.ndarray:
    """Array t with t[|D|] = h(D) for all 0 < |D| <= limit; 0 elsewhere."""
    h = np.zeros(limit + 1, dtype=np.int64)
    amax = isqrt(limit // 3)
    for a in range(1, amax + 1):
        idx_parts = []
        w_parts = []
        cmax = (a * a + limit) // (4 * a)
        c_all = np.arange(a, cmax + 1, dtype=np.int64)
        for b in range(0, a + 1):
            absD = 4 * a * c_all - b * b
            m = (absD > 0) & (absD <= limit)
            if not m.any():
                continue
            c = c_all[m]
            absDm = absD[m]
            g = np.gcd(np.gcd(a, b), c)
            prim = g == 1
            if not prim.any():
                continue
            c = c[prim]
            absDm = absDm[prim]
            if 0 < b < a:
                w = np.where(c > a, 2, 1).astype(np.int64)
            else:
                w = np.ones(len(c), dtype=np.int64)
            idx_parts.append(absDm)
            w_parts.append(w)
        if idx_parts:
            idx = np.concatenate(idx_parts)
            w = np.concatenate(w_parts)
            h += np.bincount(idx, weights=w, minlength=limit + 1).astype(np.int64)
    return h


def two_torsion_table(limit: int) -> np.ndarray:
    """Array t with t[|D|] = #Cl(D)[2], counted via ambiguous reduced forms.

    A class has order dividing 2 iff its reduced form satisfies b = 0,
    a = b, or a = c; each such class contains exactly one such form.
    """
    t = np.zeros(limit + 1, dtype=np.int64)
    amax = isqrt(limit // 3)
    for a in range(1, amax + 1):
        cmax = (a * a + limit) // (4 * a)
        c_all = np.arange(a, cmax + 1, dtype=np.int64)
        for b in range(0, a + 1):
            absD = 4 * a * c_all - b * b
            amb = (b == 0) | (b == a) | (c_all == a)
            m = (absD > 0) & (absD <= limit) & amb
            if not m.any():
                continue
            c = c_all[m]
            g = np.gcd(np.gcd(a, b), c)
            keep = g == 1
            if not keep.any():
                continue
            t += np.bincount(absD[m][keep], minlength=limit + 1).astype(np.int64)
    return t


def fundamental_mask(limit: int) -> np.ndarray:
    """Boolean array f with f[|D|] true iff -|D| is a fundamental discriminant."""
    n = limit + 1
    sqfree = np.ones(n, dtype=bool)
    for p in range(2, isqrt(limit) + 1):
        sqfree[p * p :: p * p] = False
    f = np.zeros(n, dtype=bool)
    # D = -m, m = 3 mod 4 squarefree  (D = 1 mod 4)
    idx = np.arange(n)
    f[(idx % 4 == 3) & sqfree] = True
    # D = -4m, m squarefree, m = 1, 2 mod 4
    m_vals = np.arange(n // 4 + 1)
    for r in (1, 2):
        ms = m_vals[(m_vals % 4 == r) & (m_vals > 0)]
        ms = ms[sqfree[ms]]
        f[4 * ms] = True
    return f
