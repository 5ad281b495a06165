"""Statistical evaluation of plain/encrypted data.

Histograms, Shannon entropy over the 256 byte values, the 2-D (Pearson)
correlation coefficient between pixel planes, key-sensitivity
correlation, and the raw-map value histogram that exposes the logistic
map's density bias.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .cipher import Frame, encrypt_image
from .errors import DegenerateInput, DimensionMismatch, EmptyInput
from .keystream import KeyMaterial


def _as_array(data, dtype=None) -> np.ndarray:
    if isinstance(data, (bytes, bytearray, memoryview)):
        arr = np.frombuffer(data, dtype=np.uint8)
    else:
        arr = np.asarray(data)
    return arr if dtype is None else arr.astype(dtype)


def histogram256(data) -> np.ndarray:
    """Counts of each byte value 0..255; empty input gives all zeros."""
    arr = _as_array(data)
    if arr.size == 0:
        return np.zeros(256, dtype=np.int64)
    return np.bincount(arr.ravel().astype(np.uint8), minlength=256).astype(np.int64)


def entropy_of_counts(counts) -> float:
    """Shannon entropy in bits of a histogram; 0*log(0) taken as 0."""
    counts = np.asarray(counts, dtype=np.float64)
    total = counts.sum()
    if total == 0:
        raise EmptyInput("entropy of an empty histogram is undefined")
    p = counts[counts > 0] / total
    return float(-(p * np.log2(p)).sum())


def shannon_entropy(data) -> float:
    """Entropy of a byte sequence, in [0, 8] bits."""
    arr = _as_array(data)
    if arr.size == 0:
        raise EmptyInput("entropy of empty data is undefined")
    return entropy_of_counts(histogram256(arr))


def corr2d(a, b) -> float:
    """Pearson correlation between two equal-shape pixel planes.

    Matches the usual 2-D correlation coefficient: sums run over every
    pixel, means and products in binary64. Byte strings are compared as
    flat planes by length.
    """
    a = _as_array(a).astype(np.float64)
    b = _as_array(b).astype(np.float64)
    if a.shape != b.shape:
        raise DimensionMismatch(f"plane shapes differ: {a.shape} vs {b.shape}")
    da = a - a.mean()
    db = b - b.mean()
    den = float(np.sqrt((da * da).sum() * (db * db).sum()))
    if den == 0.0:
        raise DegenerateInput("correlation is undefined for a constant plane")
    return float((da * db).sum() / den)


def key_sensitivity(frame: Frame, key_a: KeyMaterial, key_b: KeyMaterial) -> float:
    """Correlation between the two encryptions of `frame` under each key.

    Per-channel correlations are averaged for RGB frames.
    """
    ca = encrypt_image(frame, key_a)
    cb = encrypt_image(frame, key_b)
    rs = [corr2d(ca.plane(c), cb.plane(c)) for c in range(frame.channels)]
    return float(np.mean(rs))


def keystream_histogram(key: KeyMaterial, iterations: int, bins: int) -> np.ndarray:
    """Histogram of raw map values (no byte extraction) after burn-in.

    `iterations` post-burn-in values are binned uniformly over [0, 1];
    the counts sum to `iterations`.
    """
    if bins < 1:
        raise ValueError(f"bins must be >= 1, got {bins!r}")
    if iterations < bins:
        raise ValueError(f"iterations ({iterations!r}) must be >= bins ({bins!r})")
    x = key.x0
    mu = key.mu
    for _ in range(key.burn_in):
        x = mu * (x * (1.0 - x))
    counts = [0] * bins
    top = bins - 1
    for _ in range(iterations):
        x = mu * (x * (1.0 - x))
        idx = int(x * bins)
        counts[idx if idx < top else top] += 1
    return np.asarray(counts, dtype=np.int64)


@dataclass(frozen=True)
class ChannelMetrics:
    """Per-channel slice of a plain/cipher comparison."""

    entropy_plain: float
    entropy_cipher: float
    corr: float


@dataclass(frozen=True)
class MetricsReport:
    """Plain/cipher comparison: entropies plus their correlation.

    For RGB frames `corr` is the mean of the per-channel coefficients and
    `channels` carries the per-channel breakdown; for grayscale frames
    `channels` is None.
    """

    entropy_plain: float
    entropy_cipher: float
    corr: float
    channels: Optional[list[ChannelMetrics]] = None


def compare_frames(plain: Frame, cipher: Frame) -> MetricsReport:
    """Metrics between a plain frame and its encrypted counterpart."""
    if plain.shape != cipher.shape:
        raise DimensionMismatch(f"frame shapes differ: {plain.shape} vs {cipher.shape}")
    per = [
        ChannelMetrics(
            entropy_plain=shannon_entropy(plain.plane(c)),
            entropy_cipher=shannon_entropy(cipher.plane(c)),
            corr=corr2d(plain.plane(c), cipher.plane(c)),
        )
        for c in range(plain.channels)
    ]
    return MetricsReport(
        entropy_plain=shannon_entropy(plain.data),
        entropy_cipher=shannon_entropy(cipher.data),
        corr=float(np.mean([m.corr for m in per])),
        channels=per if plain.channels == 3 else None,
    )
