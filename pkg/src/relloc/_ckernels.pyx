# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: fused positive-energy projection and shell sums."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, cos, sin

cnp.import_array()

ctypedef double complex cplx


def projector_apply(const double[::1] kx, const double[::1] ky, const double[::1] kz,
                    double mass, const cplx[:, ::1] psi, double t=0.0):
    cdef Py_ssize_t n = psi.shape[1], i
    if psi.shape[0] != 4 or kx.shape[0] != n or ky.shape[0] != n or kz.shape[0] != n:
        raise ValueError("shape mismatch between spinor and momentum arrays")
    out = np.empty((4, n), dtype=np.complex128)
    cdef cplx[:, ::1] o = out
    cdef double w, inv2w, k1, k2, k3
    cdef cplx a1, a2, b1, b2, sb1, sb2, sa1, sa2, ph, kp, km
    with nogil:
        for i in range(n):
            k1 = kx[i]
            k2 = ky[i]
            k3 = kz[i]
            w = sqrt(k1 * k1 + k2 * k2 + k3 * k3 + mass * mass)
            inv2w = 0.5 / w
            a1 = psi[0, i]
            a2 = psi[1, i]
            b1 = psi[2, i]
            b2 = psi[3, i]
            kp = k1 + 1j * k2
            km = k1 - 1j * k2
            sb1 = k3 * b1 + km * b2
            sb2 = kp * b1 - k3 * b2
            sa1 = k3 * a1 + km * a2
            sa2 = kp * a1 - k3 * a2
            if t != 0.0:
                ph = (cos(w * t) - 1j * sin(w * t)) * inv2w
            else:
                ph = inv2w
            o[0, i] = ((w + mass) * a1 + sb1) * ph
            o[1, i] = ((w + mass) * a2 + sb2) * ph
            o[2, i] = (sa1 + (w - mass) * b1) * ph
            o[3, i] = (sa2 + (w - mass) * b2) * ph
    return out


cdef double _pairwise(const double* a, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t i, half
    cdef double s
    if n <= 8:
        s = 0.0
        for i in range(n):
            s += a[i]
        return s
    half = n // 2
    return _pairwise(a, half) + _pairwise(a + half, n - half)


def shell_sums(const double[::1] values, const cnp.int64_t[::1] bins, Py_ssize_t nbins):
    cdef Py_ssize_t n = values.shape[0], i, b
    if bins.shape[0] != n:
        raise ValueError("values and bins differ in length")
    counts = np.zeros(nbins, dtype=np.int64)
    sums = np.zeros(nbins, dtype=np.float64)
    cdef cnp.int64_t[::1] c = counts
    cdef double[::1] s = sums
    starts = np.zeros(nbins + 1, dtype=np.int64)
    cdef cnp.int64_t[::1] st = starts
    buf = np.empty(n, dtype=np.float64)
    cdef double[::1] bv = buf
    cdef cnp.int64_t[::1] fill
    for i in range(n):
        b = bins[i]
        if b < 0 or b >= nbins:
            raise ValueError("bin index out of range")
        c[b] += 1
    for b in range(nbins):
        st[b + 1] = st[b] + c[b]
    fill = starts[:nbins].copy()
    with nogil:
        for i in range(n):
            b = bins[i]
            bv[fill[b]] = values[i]
            fill[b] += 1
        for b in range(nbins):
            if c[b] > 0:
                s[b] = _pairwise(&bv[st[b]], c[b])
    return sums, counts
