# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled dialogue engine.

Line-for-line translation of `_engine_py`. Both backends pull doubles
from the same PCG64 stream (here via the bit generator capsule) and
order every floating point operation identically, so advancing a world
with either backend produces bit-identical state. Keep the two in sync;
the parity tests compare them draw by draw.

Build with -ffp-contract=off: fused multiply-adds would change results.
"""
from cpython.pycapsule cimport PyCapsule_GetPointer, PyCapsule_IsValid
from libc.stdlib cimport free, malloc

cimport numpy as cnp
from numpy.random cimport bitgen_t

import numpy as np

cnp.import_array()

MODE_HOMOPHILY = 0
MODE_ATTITUDE = 1
MODE_COMBINED = 2
MODE_JAGER = 3


cdef inline double next_unit(bitgen_t *bg) noexcept nogil:
    return bg.next_double(bg.state)


cdef inline double stmt_weight(int mode, double pi, double v, unsigned char rej,
                               double s_h, double s_a, double alpha, double beta) noexcept nogil:
    cdef double d, a, w, lo
    if mode == 0:
        d = v - pi
        if d < 0.0:
            d = -d
        w = 1.0 - s_h * d
        lo = -1.0 if rej else 0.0
        if w < lo:
            w = lo
        elif w > 1.0:
            w = 1.0
        return w
    if mode == 1:
        a = pi if pi >= 0.0 else -pi
        w = 1.0 - s_a * a
        if w < 0.0:
            w = 0.0
        elif w > 1.0:
            w = 1.0
        return w
    if mode == 2:
        d = v - pi
        if d < 0.0:
            d = -d
        a = pi if pi >= 0.0 else -pi
        w = 1.0 - s_h * d - s_a * a
        if w < 0.0:
            w = 0.0
        elif w > 1.0:
            w = 1.0
        return w
    d = v - pi
    if d < 0.0:
        d = -d
    if d < alpha:
        return 0.5
    if d > beta:
        return -0.5
    return 0.0


cdef bitgen_t *get_bitgen(object capsule) except NULL:
    if not PyCapsule_IsValid(capsule, "BitGenerator"):
        raise ValueError("expected a BitGenerator capsule")
    return <bitgen_t *>PyCapsule_GetPointer(capsule, "BitGenerator")


def raw_doubles(object capsule, Py_ssize_t count):
    """Pull `count` uniform doubles straight off the bit generator.

    Debug aid for the backend parity tests: these must equal scalar
    Generator.random() draws from the same stream position.
    """
    cdef bitgen_t *bg = get_bitgen(capsule)
    out = np.empty(count, dtype=np.float64)
    cdef double[::1] view = out
    cdef Py_ssize_t i
    for i in range(count):
        view[i] = next_unit(bg)
    return out


def advance(double[::1] private, double[::1] expressed, double[::1] conformity,
            unsigned char[::1] is_rejector,
            cnp.int64_t[::1] indptr, cnp.int64_t[::1] indices,
            int mode, double s_h, double s_a, double s_c,
            double alpha, double beta, bint conformity_on,
            Py_ssize_t n_steps, object capsule, cnp.int64_t[::1] tallies):
    """Run n_steps dialogues in place; mirrors `_engine_py.advance`."""
    cdef bitgen_t *bg = get_bitgen(capsule)
    cdef Py_ssize_t n = private.shape[0]
    cdef Py_ssize_t i, step, initiator, deg, n_p, k, j, t, idx, jdx, sp, p, lo_, hi_
    cdef Py_ssize_t maxd = 0
    cdef double u, acc, norm, gap, c, e, p_sp, pi, v, w, impact, np_val, a
    cdef unsigned char rej
    cdef Py_ssize_t tmp

    for i in range(n):
        deg = indptr[i + 1] - indptr[i]
        if deg > maxd:
            maxd = deg

    cdef Py_ssize_t *parts = <Py_ssize_t *>malloc((maxd + 1) * sizeof(Py_ssize_t))
    cdef double *stmt_val = <double *>malloc((maxd + 1) * sizeof(double))
    cdef double *new_private = <double *>malloc((maxd + 1) * sizeof(double))
    if parts == NULL or stmt_val == NULL or new_private == NULL:
        free(parts)
        free(stmt_val)
        free(new_private)
        raise MemoryError

    with nogil:
        for step in range(n_steps):
            while True:
                u = next_unit(bg)
                initiator = <Py_ssize_t>(u * n)
                if initiator >= n:
                    initiator = n - 1
                if indptr[initiator + 1] - indptr[initiator] > 0:
                    break

            deg = indptr[initiator + 1] - indptr[initiator]
            n_p = deg + 1
            parts[0] = initiator
            idx = 1
            for t in range(indptr[initiator], indptr[initiator + 1]):
                parts[idx] = indices[t]
                idx += 1

            for k in range(n_p - 1, 0, -1):
                u = next_unit(bg)
                j = <Py_ssize_t>(u * (k + 1))
                if j >= k + 1:
                    j = k
                tmp = parts[k]
                parts[k] = parts[j]
                parts[j] = tmp

            for idx in range(n_p):
                sp = parts[idx]
                p_sp = private[sp]
                if conformity_on:
                    lo_ = indptr[sp]
                    hi_ = indptr[sp + 1]
                    acc = 0.0
                    for t in range(lo_, hi_):
                        acc += expressed[indices[t]]
                    norm = acc / (hi_ - lo_)
                    gap = p_sp - norm
                    if gap < 0.0:
                        gap = -gap
                    c = s_c * gap
                    if c > 1.0:
                        c = 1.0
                    e = (1.0 - c) * p_sp + c * norm
                    conformity[sp] = c
                    expressed[sp] = e
                else:
                    conformity[sp] = 0.0
                    e = p_sp
                    expressed[sp] = e
                stmt_val[idx] = e
                a = e if e >= 0.0 else -e
                if a <= 0.33:
                    tallies[0] += 1
                elif a <= 0.66:
                    tallies[1] += 1
                else:
                    tallies[2] += 1

            for idx in range(n_p):
                p = parts[idx]
                pi = private[p]
                rej = is_rejector[p]
                acc = 0.0
                for jdx in range(n_p):
                    if jdx == idx:
                        continue
                    v = stmt_val[jdx]
                    w = stmt_weight(mode, pi, v, rej, s_h, s_a, alpha, beta)
                    acc += w * (v - pi)
                impact = acc / (n_p - 1)
                np_val = pi + impact
                if np_val > 1.0:
                    np_val = 1.0
                elif np_val < -1.0:
                    np_val = -1.0
                new_private[idx] = np_val

            for idx in range(n_p):
                private[parts[idx]] = new_private[idx]
            if not conformity_on:
                for idx in range(n_p):
                    expressed[parts[idx]] = new_private[idx]

    free(parts)
    free(stmt_val)
    free(new_private)
