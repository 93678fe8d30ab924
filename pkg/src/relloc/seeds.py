"""Initial profiles used as seeds."""
import numpy as np


def bump(r, radius):
    """C-infinity bump exp(-1/(1 - (r/R)^2)) for r < R, exactly zero outside."""
    r = np.asarray(r, dtype=float)
    x = r / radius
    out = np.zeros_like(x)
    inside = np.abs(x) < 1.0
    out[inside] = np.exp(-1.0 / (1.0 - x[inside] ** 2))
    return out


def gaussian(r, width):
    r = np.asarray(r, dtype=float)
    return np.exp(-0.5 * (r / width) ** 2)


def exponential(r, rate, amplitude=1.0):
    """The saturating profile A exp(-gamma r)."""
    return amplitude * np.exp(-rate * np.asarray(r, dtype=float))


def exponential_transform(k, rate, amplitude=1.0):
    """Closed-form 3D transform of A exp(-gamma r) in the symmetric convention."""
    k = np.asarray(k, dtype=float)
    return amplitude * (2 * np.pi) ** -1.5 * 8 * np.pi * rate / (k * k + rate * rate) ** 2
