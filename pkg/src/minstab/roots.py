"""Positive real roots of real polynomials.

Roots are isolated on ``(0, B]`` with ``B`` the Cauchy bound.  Each interval
is mapped to ``(0, inf)`` by a Moebius substitution and Descartes' rule of
signs counts (an upper bound on) its roots: zero variations discards the
interval, one variation means exactly one simple root, anything else splits
the interval in half.  Isolated roots are refined by bisection down to
floating point resolution.

Transformed coefficients that sit inside their own rounding bound may have
either sign and are counted pessimistically.  An interval on which every
coefficient is at that noise level is reported as a root cluster, which is
how multiple roots show up in floating point.
"""

from __future__ import annotations

import numpy as np
from numpy.polynomial import polynomial as npoly


def _trim(p) -> np.ndarray:
    p = np.asarray(p, dtype=float).ravel()
    nz = np.flatnonzero(p)
    if nz.size == 0:
        raise ValueError("polynomial is identically zero")
    # roots at zero are not positive; drop them
    return p[nz[0]:nz[-1] + 1]


def cauchy_bound(p) -> float:
    """``1 + max |p_i / p_n|``: every root has modulus below this."""
    p = _trim(p)
    if p.size == 1:
        return 0.0
    return 1.0 + float(np.max(np.abs(p[:-1] / p[-1])))


def sign_variations(p) -> int:
    s = np.sign(np.asarray(p, dtype=float))
    s = s[s != 0]
    return int(np.count_nonzero(s[1:] != s[:-1]))


def _moebius(p, lo: float, hi: float) -> tuple[np.ndarray, np.ndarray, bool]:
    """``q(t) = (1+t)^n p((lo + hi t)/(1 + t))``, a noise mask and a flatness flag.

    Masked entries are set to zero; their sign is unknown.  ``flat`` means every
    entry is within a small multiple of its noise bound.
    """
    p = np.asarray(p, dtype=float)
    n = p.size - 1
    q = np.zeros(n + 1)
    bound = np.zeros(n + 1)  # same sums with absolute values, for a rounding bound
    num = np.array([lo, hi])
    den = np.array([1.0, 1.0])
    for i, c in enumerate(p):
        if c == 0:
            continue
        term = npoly.polymul(npoly.polypow(num, i), npoly.polypow(den, n - i))
        q[:term.size] += c * term
        bound[:term.size] += abs(c) * np.abs(term)
    # entries indistinguishable from rounding noise carry no sign
    noise = 8 * (n + 2) * np.finfo(float).eps * bound
    noisy = (bound > 0) & (np.abs(q) <= noise)
    flat = bool(np.all(np.abs(q) <= 64 * noise))
    q[noisy] = 0.0
    return q, noisy, flat


def _max_variations(q, noisy) -> int:
    # noisy entries may take either sign; alternating greedily maximises the count
    count, prev = 0, 0.0
    for c, wild in zip(q, noisy):
        sgn = -prev if wild and prev != 0 else (1.0 if wild else np.sign(c))
        if sgn == 0:
            continue
        if prev != 0 and sgn != prev:
            count += 1
        prev = sgn
    return count


def descartes_count(p, lo: float, hi: float) -> int:
    """Descartes bound on the number of roots of ``p`` in ``(lo, hi)``.

    Coefficients that cannot be told apart from rounding noise are counted
    pessimistically, so the bound stays valid in floating point.
    """
    q, noisy, _ = _moebius(p, lo, hi)
    return _max_variations(q, noisy)


def _bisect(p, lo: float, hi: float, flo: float, tol: float) -> float:
    while True:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi or hi - lo <= tol:
            return mid
        fm = npoly.polyval(mid, p)
        if fm == 0:
            return mid
        if np.sign(fm) == np.sign(flo):
            lo, flo = mid, fm
        else:
            hi = mid


def _noise(p, x: float) -> float:
    """Rounding bound for evaluating ``p`` at ``x``."""
    return 8 * p.size * np.finfo(float).eps * float(npoly.polyval(abs(x), np.abs(p)))


def isolate_positive_roots(p, rel_width: float = 1e-10) -> list[tuple[float, float]]:
    """Disjoint intervals ``(lo, hi]`` holding the positive roots, ascending.

    Each interval holds one simple root (with a sign change) or a cluster of
    roots narrower than ``rel_width`` times the Cauchy bound on which ``p``
    is indistinguishable from zero.
    """
    p = _trim(p)
    bound = cauchy_bound(p)
    if bound == 0.0:
        return []
    min_width = rel_width * max(1.0, bound)
    out = []
    stack = [(0.0, bound)]
    while stack:
        lo, hi = stack.pop()
        q, noisy, flat = _moebius(p, lo, hi)
        v = _max_variations(q, noisy)
        if v == 0:
            continue
        if flat:
            # p is within rounding of zero on the whole interval
            out.append((lo, hi, True))
            continue
        flo, fhi = npoly.polyval(lo, p), npoly.polyval(hi, p)
        if v == 1 and (fhi == 0 or np.sign(flo) != np.sign(fhi)):
            out.append((lo, hi, False))
            continue
        mid = 0.5 * (lo + hi)
        if hi - lo <= min_width or not lo < mid < hi:
            if np.sign(flo) != np.sign(fhi) or abs(npoly.polyval(mid, p)) <= _noise(p, mid):
                out.append((lo, hi, True))
            continue
        # push the right half first so the left half is processed first
        stack.append((mid, hi))
        stack.append((lo, mid))
    out.sort()
    merged = []
    for lo, hi, cluster in out:
        if cluster and merged and merged[-1][2] and merged[-1][1] >= lo:
            merged[-1] = (merged[-1][0], max(hi, merged[-1][1]), True)
        else:
            merged.append((lo, hi, cluster))
    return [(lo, hi) for lo, hi, _ in merged]


def smallest_positive_root(p, tol: float = 0.0):
    """Smallest positive root of the real polynomial with ascending coefficients ``p``.

    Returns ``None`` when ``p`` has no positive root.  ``tol`` is an absolute
    bracket width; the default refines to floating point resolution.
    """
    p = _trim(p)
    for lo, hi in isolate_positive_roots(p):
        flo, fhi = npoly.polyval(lo, p), npoly.polyval(hi, p)
        if fhi == 0:
            return hi
        if flo == 0:
            if lo > 0:
                return lo
            continue
        if np.sign(flo) != np.sign(fhi):
            return _bisect(p, lo, hi, flo, tol)
        # no sign change: an even-multiplicity cluster; locate the minimum of |p|
        xs = np.linspace(lo, hi, 257)[1:]
        return float(xs[np.argmin(np.abs(npoly.polyval(xs, p)))])
    return None
