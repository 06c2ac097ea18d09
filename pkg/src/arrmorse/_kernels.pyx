# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sign-vector kernels. Same contracts as ``_kernels_py``."""
import numpy as np
cimport numpy as cnp

cnp.import_array()


def _as2d(rows):
    a = np.ascontiguousarray(rows, dtype=np.int8)
    if a.ndim != 2:
        if len(rows):
            a = a.reshape(len(rows), -1)
        else:
            a = a.reshape(0, 0)
    return np.ascontiguousarray(a)


def face_leq_matrix(upper, lower):
    cdef cnp.int8_t[:, ::1] u = _as2d(upper)
    cdef cnp.int8_t[:, ::1] l = _as2d(lower)
    cdef Py_ssize_t p = u.shape[0], q = l.shape[0], m, i, j, h
    out = np.zeros((p, q), dtype=np.uint8)
    cdef cnp.uint8_t[:, ::1] o = out
    cdef cnp.int8_t s
    if p == 0 or q == 0:
        return out.astype(bool)
    m = u.shape[1]
    for i in range(p):
        for j in range(q):
            for h in range(m):
                s = l[j, h]
                if s != 0 and s != u[i, h]:
                    break
            else:
                o[i, j] = 1
    return out.astype(bool)


def compose_rows(chambers, face):
    cdef cnp.int8_t[:, ::1] c = np.ascontiguousarray(chambers, dtype=np.int8)
    cdef cnp.int8_t[::1] f = np.ascontiguousarray(face, dtype=np.int8)
    out = np.array(c, dtype=np.int8, copy=True)
    cdef cnp.int8_t[:, ::1] o = out
    cdef Py_ssize_t i, h
    for i in range(c.shape[0]):
        for h in range(c.shape[1]):
            if f[h] != 0:
                o[i, h] = f[h]
    return out


def separation_counts(a, b):
    cdef cnp.int8_t[:, ::1] x = _as2d(a)
    cdef cnp.int8_t[:, ::1] y = _as2d(b)
    cdef Py_ssize_t p = x.shape[0], q = y.shape[0], i, j, h
    out = np.zeros((p, q), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] o = out
    cdef cnp.int64_t cnt
    if p == 0 or q == 0:
        return out
    for i in range(p):
        for j in range(q):
            cnt = 0
            for h in range(x.shape[1]):
                if x[i, h] * y[j, h] < 0:
                    cnt += 1
            o[i, j] = cnt
    return out
