# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled kernel for itinerary-join statistics.

Walks the dependency-window word space with an odometer, recomputes each
word's itinerary and Markov measure in tight C loops, and accumulates class
masses in a hash map keyed by the packed base-m itinerary.  Keys must fit
63 bits; the dispatcher falls back to the pure kernel otherwise.
"""

from cython.operator cimport dereference as deref, preincrement as inc
from libc.math cimport log
from libcpp.algorithm cimport sort as csort
from libcpp.pair cimport pair
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector

ctypedef unsigned long long u64


def join_stats(int m, int l, int r, coeffs, int base_lo, int base_hi,
               int steps, const double[::1] pi, const double[:, ::1] P, u64 total):
    """Entropy (nats) and positive-measure class count of the n-fold join."""
    cdef int span = l + r
    cdef int w = base_hi - base_lo + 1
    cdef int K = w + (steps - 1) * span
    cdef vector[int] cf
    cdef int t, j, k, off, ln, s
    for t in range(span + 1):
        cf.push_back(coeffs[t])

    cdef vector[int] digits = vector[int](K, 0)
    cdef vector[int] row = vector[int](K, 0)
    cdef vector[int] nxt = vector[int](K, 0)
    cdef unordered_map[u64, double] acc
    cdef u64 widx, key
    cdef double mass

    for widx in range(total):
        mass = pi[digits[0]]
        for j in range(K - 1):
            mass *= P[digits[j], digits[j + 1]]

        for j in range(K):
            row[j] = digits[j]
        key = 0
        ln = K
        for k in range(steps):
            off = (steps - 1 - k) * l
            for t in range(w):
                key = key * m + row[off + t]
            if k < steps - 1:
                for j in range(ln - span):
                    s = 0
                    for t in range(span + 1):
                        s += cf[t] * row[j + t]
                    nxt[j] = s % m
                row.swap(nxt)
                ln -= span
        acc[key] = acc[key] + mass

        j = K - 1
        while j >= 0:
            digits[j] += 1
            if digits[j] == m:
                digits[j] = 0
                j -= 1
            else:
                break

    # canonical order: ascending packed key, then Kahan-summed entropy
    cdef vector[pair[u64, double]] items
    cdef unordered_map[u64, double].iterator it = acc.begin()
    while it != acc.end():
        items.push_back(deref(it))
        inc(it)
    csort(items.begin(), items.end())

    cdef double H = 0.0, comp = 0.0, v, term, tmp
    cdef size_t i
    cdef long long count = 0
    for i in range(items.size()):
        v = items[i].second
        if v > 0.0:
            count += 1
            term = (-v * log(v)) - comp
            tmp = H + term
            comp = (tmp - H) - term
            H = tmp
    return H, count
