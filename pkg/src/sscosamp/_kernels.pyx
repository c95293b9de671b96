# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels; see ``_kernels_py`` for the reference versions."""
import numpy as np

from libc.math cimport INFINITY, sqrt
from libc.stdlib cimport free, malloc


cdef double _chain_dp(const double[::1] w, Py_ssize_t lo, Py_ssize_t hi,
                      Py_ssize_t h, Py_ssize_t count, Py_ssize_t first) nogil:
    # first >= 0 pins the first point there; otherwise it is free in [lo, hi]
    cdef Py_ssize_t length, i, c
    cdef double *best
    cdef double *new
    cdef double *tmp
    cdef double run, out
    if count == 0:
        return 0.0
    if hi < lo:
        return -INFINITY
    length = hi - lo + 1
    best = <double *> malloc(length * sizeof(double))
    new = <double *> malloc(length * sizeof(double))
    for i in range(length):
        best[i] = -INFINITY
    if first >= 0:
        if lo <= first <= hi:
            best[first - lo] = w[first]
    else:
        for i in range(length):
            best[i] = w[lo + i]
    for c in range(count - 1):
        # best <- prefix max, then shift by h
        run = -INFINITY
        for i in range(length):
            if best[i] > run:
                run = best[i]
            best[i] = run
        for i in range(length):
            if i >= h and best[i - h] > -INFINITY:
                new[i] = w[lo + i] + best[i - h]
            else:
                new[i] = -INFINITY
        tmp = best
        best = new
        new = tmp
    out = -INFINITY
    for i in range(length):
        if best[i] > out:
            out = best[i]
    free(best)
    free(new)
    return out


def eta_dp(const double[::1] w, Py_ssize_t h, Py_ssize_t k):
    cdef Py_ssize_t d = w.shape[0]
    if k <= 1:
        return 0.0
    return _chain_dp(w, h, d - h, h, k - 1, -1)


def eta_prime_dp(const double[::1] w, Py_ssize_t h, Py_ssize_t k):
    cdef Py_ssize_t d = w.shape[0]
    cdef Py_ssize_t a, i
    cdef double best, val
    if d < 2:
        return 0.0
    if k <= 1:
        best = -INFINITY
        for i in range(1, d):
            if w[i] > best:
                best = w[i]
        return best
    best = _chain_dp(w, h, d - 1, h, k, -1)
    for a in range(1, h):
        val = _chain_dp(w, a, d - h + a, h, k, a)
        if val > best:
            best = val
    return best


def enumerate_separated(const double[::1] w, Py_ssize_t h, Py_ssize_t k):
    cdef Py_ssize_t d = w.shape[0]
    cdef Py_ssize_t *idx
    cdef char *inside
    cdef double *col
    cdef Py_ssize_t j, p, q, top
    cdef long long count = 0
    cdef double eta = -INFINITY
    cdef double eta_p = -INFINITY
    cdef double s, row
    cdef bint any_outside = False
    if k < 1 or k > d:
        return -INFINITY, -INFINITY, 0
    idx = <Py_ssize_t *> malloc(k * sizeof(Py_ssize_t))
    inside = <char *> malloc(d * sizeof(char))
    col = <double *> malloc(d * sizeof(double))
    with nogil:
        for p in range(d):
            inside[p] = 0
        top = 0
        idx[0] = 0
        while True:
            if idx[top] > d - 1:
                # exhausted this level
                if top == 0:
                    break
                top -= 1
                idx[top] += 1
                continue
            if top == k - 1:
                if k >= 2 and idx[0] + d - idx[k - 1] < h:
                    idx[top] += 1
                    continue
                count += 1
                for j in range(k):
                    inside[idx[j]] = 1
                for p in range(d):
                    s = 0.0
                    for j in range(k):
                        q = p - idx[j]
                        if q < 0:
                            q += d
                        s += w[q]
                    col[p] = s
                for p in range(d):
                    if inside[p]:
                        row = col[p] - w[0]
                        if row > eta:
                            eta = row
                    else:
                        any_outside = True
                        if col[p] > eta_p:
                            eta_p = col[p]
                for j in range(k):
                    inside[idx[j]] = 0
                idx[top] += 1
            else:
                idx[top + 1] = idx[top] + h
                top += 1
    free(idx)
    free(inside)
    free(col)
    if count == 0:
        return -INFINITY, -INFINITY, 0
    if k < 2:
        eta = 0.0
    if not any_outside:
        eta_p = 0.0
    return eta, eta_p, count


def dr_update(double complex[::1] z, const double complex[::1] a,
              double gamma, double relax):
    cdef Py_ssize_t i, m = z.shape[0]
    cdef double tr, ti, mag, scale, br, bi
    out = np.empty(m, dtype=np.complex128)
    cdef double complex[::1] b = out
    with nogil:
        for i in range(m):
            tr = 2.0 * a[i].real - z[i].real
            ti = 2.0 * a[i].imag - z[i].imag
            mag = sqrt(tr * tr + ti * ti)
            if mag > gamma:
                scale = 1.0 - gamma / mag
                br = tr * scale
                bi = ti * scale
            else:
                br = 0.0
                bi = 0.0
            b[i] = br + 1j * bi
            z[i] = (z[i].real + relax * (br - a[i].real)) + 1j * (z[i].imag + relax * (bi - a[i].imag))
    return out
