"""Seeded randomness, Gaussian throughput sampling and effective distances.

All randomness in the package flows through :class:`RngStream`, a PCG64
generator keyed by ``(seed, labels...)``.  Normals are produced by Box-Muller
on the generator's uniform doubles so a given seed yields the same throughput
table on every platform numpy supports.
"""

import hashlib
import numbers

import numpy as np

from .validation import check_same_shape, check_seed, check_square_matrix

DISTANCE_MODES = ("code-faithful", "elementwise")


def _label_key(label):
    if isinstance(label, numbers.Integral) and not isinstance(label, bool):
        if label < 0:
            raise ValueError("integer stream labels must be non-negative")
        return int(label)
    digest = hashlib.sha256(str(label).encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little")


class RngStream:
    """Single-owner random stream identified by a seed and a label path.

    ``RngStream(7).substream("throughput")`` and ``RngStream(7).substream(3)``
    are statistically independent and neither depends on how much the parent
    stream has been consumed.
    """

    def __init__(self, seed, _key=()):
        self.seed = check_seed(seed)
        self.key = tuple(_key)
        seq = np.random.SeedSequence(self.seed, spawn_key=self.key)
        self._gen = np.random.Generator(np.random.PCG64(seq))

    def substream(self, label):
        return RngStream(self.seed, self.key + (_label_key(label),))

    def uniform(self, size=None):
        """Doubles in [0, 1)."""
        return self._gen.random(size)

    def integers(self, high):
        """Integers in ``[0, high)``; ``high`` may be an array."""
        return self._gen.integers(0, high)

    def standard_normal(self, n):
        """``n`` standard normal draws by the Box-Muller transform."""
        n = int(n)
        if n < 0:
            raise ValueError("n must be non-negative")
        m = (n + 1) // 2
        u1 = 1.0 - self._gen.random(m)  # (0, 1], keeps log finite
        u2 = self._gen.random(m)
        radius = np.sqrt(-2.0 * np.log(u1))
        angle = 2.0 * np.pi * u2
        out = np.empty(2 * m)
        out[0::2] = radius * np.cos(angle)
        out[1::2] = radius * np.sin(angle)
        return out[:n]

    def __repr__(self):
        return f"RngStream(seed={self.seed}, key={self.key})"


def as_stream(rng):
    """Accept an ``RngStream`` or a bare integer seed."""
    if isinstance(rng, RngStream):
        return rng
    return RngStream(rng)


def sample_gaussian_matrix(rng, n, mean=0.5, std=0.25):
    """Draw an ``n`` x ``n`` throughput table with i.i.d. N(mean, std**2) entries.

    Row-major fill order.  ``std`` is a standard deviation, not a variance.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if std < 0:
        raise ValueError(f"std must be non-negative, got {std}")
    rng = as_stream(rng)
    if std == 0:
        return np.full((n, n), float(mean))
    z = rng.standard_normal(n * n).reshape(n, n)
    return mean + std * z


def random_permutation(rng, n):
    """Uniform permutation of ``range(n)`` by Fisher-Yates."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    rng = as_stream(rng)
    perm = np.arange(n)
    if n == 1:
        return perm
    # i runs n-1 .. 1; j_i uniform in [0, i]
    picks = rng.integers(np.arange(n, 1, -1))
    for i, j in zip(range(n - 1, 0, -1), picks):
        perm[i], perm[j] = perm[j], perm[i]
    return perm


def effective_distances(distances, throughput, mode="code-faithful", clamp_negative=False):
    """Combine base distances with a throughput table and normalise to max |d| = 1.

    ``mode="code-faithful"`` takes the matrix product ``distances @ throughput``
    as the original Matlab did; ``mode="elementwise"`` scales each link by its
    own throughput entry.  With ``clamp_negative`` the product is floored at 0
    before normalising.
    """
    d = check_square_matrix(distances, "distances")
    t = check_square_matrix(throughput, "throughput")
    check_same_shape(d, t, ("distances", "throughput"))
    if mode == "code-faithful":
        prod = d @ t
    elif mode == "elementwise":
        prod = d * t
    else:
        raise ValueError(f"mode must be one of {DISTANCE_MODES}, got {mode!r}")
    if clamp_negative:
        prod = np.maximum(prod, 0.0)
    scale = np.max(np.abs(prod))
    if scale == 0:
        raise ValueError("distance/throughput product is all zero; cannot normalise")
    return prod / scale
