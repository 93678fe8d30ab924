"""NumPy reference versions of the compiled kernels in ``_ckernels.pyx``."""
import numpy as np


def projector_apply(kx, ky, kz, mass, psi, t=0.0):
    kx, ky, kz = (np.asarray(a, dtype=np.float64) for a in (kx, ky, kz))
    psi = np.asarray(psi, dtype=np.complex128)
    n = psi.shape[1]
    if psi.shape[0] != 4 or not kx.shape[0] == ky.shape[0] == kz.shape[0] == n:
        raise ValueError("shape mismatch between spinor and momentum arrays")
    w = np.sqrt(kx * kx + ky * ky + kz * kz + mass * mass)
    a1, a2, b1, b2 = psi
    kp = kx + 1j * ky
    km = kx - 1j * ky
    ph = 0.5 / w
    if t != 0.0:
        ph = (np.cos(w * t) - 1j * np.sin(w * t)) * ph
    out = np.empty((4, n), dtype=np.complex128)
    out[0] = ((w + mass) * a1 + kz * b1 + km * b2) * ph
    out[1] = ((w + mass) * a2 + kp * b1 - kz * b2) * ph
    out[2] = (kz * a1 + km * a2 + (w - mass) * b1) * ph
    out[3] = (kp * a1 - kz * a2 + (w - mass) * b2) * ph
    return out


def shell_sums(values, bins, nbins):
    values = np.asarray(values, dtype=np.float64)
    bins = np.asarray(bins, dtype=np.int64)
    if values.shape != bins.shape:
        raise ValueError("values and bins differ in length")
    if bins.size and (bins.min() < 0 or bins.max() >= nbins):
        raise ValueError("bin index out of range")
    order = np.argsort(bins, kind="stable")
    sv = values[order]
    counts = np.bincount(bins, minlength=nbins).astype(np.int64)
    edges = np.concatenate([[0], np.cumsum(counts)])
    sums = np.zeros(nbins)
    for b in np.flatnonzero(counts):
        sums[b] = np.sum(sv[edges[b]:edges[b + 1]])
    return sums, counts
