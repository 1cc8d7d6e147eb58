"""Input validation helpers shared by the estimators and the functional API."""

import numbers

import numpy as np


def check_square_matrix(X, name="X", allow_nan=False):
    """Return ``X`` as a finite 2-D float array with equal sides.

    Raises ``ValueError`` on anything else, naming the offending argument.
    """
    arr = np.asarray(X, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"{name} must be a square 2-D matrix, got shape {arr.shape}")
    if arr.shape[0] < 1:
        raise ValueError(f"{name} must have at least one row")
    if not allow_nan and not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def check_same_shape(a, b, names=("a", "b")):
    if a.shape != b.shape:
        raise ValueError(
            f"{names[0]} and {names[1]} differ in shape: {a.shape} vs {b.shape}"
        )


def check_state(state, n_units):
    """Return ``state`` as a bipolar int8 vector of length ``n_units``."""
    s = np.asarray(state)
    if s.ndim != 1 or s.shape[0] != n_units:
        raise ValueError(f"state must be a vector of length {n_units}, got shape {s.shape}")
    if not np.all((s == 1) | (s == -1)):
        raise ValueError("state entries must be +1 or -1")
    return s.astype(np.int8)


def check_positive_int(value, name, minimum=1):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise TypeError(f"{name} must be an integer, got {type(value).__name__}")
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    return int(value)


def check_seed(seed):
    if isinstance(seed, bool) or not isinstance(seed, numbers.Integral):
        raise TypeError(f"seed must be an integer, got {type(seed).__name__}")
    if not 0 <= seed < 2**64:
        raise ValueError(f"seed must fit in an unsigned 64-bit integer, got {seed}")
    return int(seed)
