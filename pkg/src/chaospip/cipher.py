"""Encryption/decryption pipeline over planes, frames, and frame sequences.

Each 8-byte block is transposed bit-wise, XOR-ed with 8 keystream bytes,
and transposed back; a trailing partial block is XOR-ed without the
permutation so ciphertext length always equals plaintext length. Because
the transposes are mutually inverse and XOR is self-inverse, the whole
transform is an involution: running it twice with the same key is the
identity, and decryption is the same operation as encryption.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from . import bitperm, keystream
from .errors import DimensionMismatch
from .keystream import KeyMaterial, KeystreamState

# Extra iterates skipped per frame index in PER_FRAME mode, so every frame
# starts from its own point on the trajectory. The constant is arbitrary;
# it only has to be fixed.
PER_FRAME_STRIDE = 17


class ReseedMode(Enum):
    """How the keystream is keyed across a frame sequence."""

    CONTINUOUS = "continuous"  # one keystream spans all frames in order
    PER_FRAME = "per-frame"    # frame i seeded at burn_in + 17*i iterates


@dataclass(frozen=True)
class Frame:
    """A width x height x channels byte image, channel-planar, row-major."""

    width: int
    height: int
    channels: int
    data: bytes

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError(f"frame dimensions must be positive, got {self.width}x{self.height}")
        if self.channels not in (1, 3):
            raise ValueError(f"channels must be 1 or 3, got {self.channels!r}")
        object.__setattr__(self, "data", bytes(self.data))
        expected = self.width * self.height * self.channels
        if len(self.data) != expected:
            raise ValueError(f"data holds {len(self.data)} bytes, expected {expected}")

    @property
    def shape(self) -> tuple[int, int, int]:
        return (self.width, self.height, self.channels)

    def plane(self, channel: int) -> bytes:
        """Bytes of one channel plane."""
        if not 0 <= channel < self.channels:
            raise IndexError(f"channel {channel} out of range for {self.channels}-channel frame")
        size = self.width * self.height
        return self.data[channel * size : (channel + 1) * size]


def process_block(block, key_bytes) -> bytes:
    """Permute, XOR with 8 key bytes in block order, permute back."""
    if len(key_bytes) != bitperm.BLOCK_SIZE:
        raise ValueError(f"need exactly {bitperm.BLOCK_SIZE} key bytes, got {len(key_bytes)}")
    permuted = bitperm.forward_permute(block)
    mixed = bytes(p ^ k for p, k in zip(permuted, key_bytes))
    return bitperm.inverse_permute(mixed)


def _transpose_blocks(blocks: np.ndarray) -> np.ndarray:
    """8x8 bit transpose of every row of a (n, 8) uint8 array."""
    bits = np.unpackbits(blocks, axis=1).reshape(-1, 8, 8)
    return np.packbits(bits.transpose(0, 2, 1).reshape(-1, 64), axis=1)


def transform_plane(data: bytes, state: KeystreamState) -> tuple[bytes, KeystreamState]:
    """Encrypt/decrypt a byte plane, consuming one key byte per data byte.

    Full 8-byte blocks get the permute/XOR/permute treatment; a final
    partial block is XOR-ed byte-wise with no permutation.
    """
    n = len(data)
    if n == 0:
        return b"", state
    key, state = keystream.take_bytes(state, n)
    arr = np.frombuffer(data, dtype=np.uint8)
    ks = np.frombuffer(key, dtype=np.uint8)
    out = np.empty(n, dtype=np.uint8)
    full = n - n % 8
    if full:
        mixed = _transpose_blocks(arr[:full].reshape(-1, 8)) ^ ks[:full].reshape(-1, 8)
        out[:full] = _transpose_blocks(mixed).ravel()
    out[full:] = arr[full:] ^ ks[full:]
    return out.tobytes(), state


def encrypt_image(frame: Frame, key: KeyMaterial) -> Frame:
    """Encrypt one frame: burn in, then one keystream over all planes."""
    data, _ = transform_plane(frame.data, keystream.seed(key))
    return Frame(frame.width, frame.height, frame.channels, data)


def decrypt_image(frame: Frame, key: KeyMaterial) -> Frame:
    """Decrypt one frame. The pipeline is an involution, so this is
    the same transform as encrypt_image; the name exists for callers."""
    return encrypt_image(frame, key)


def _check_same_shape(frames: Sequence[Frame]) -> None:
    first = frames[0].shape
    for f in frames[1:]:
        if f.shape != first:
            raise DimensionMismatch(f"frame shapes differ: {first} vs {f.shape}")


def process_stream(
    frames: Iterable[Frame], key: KeyMaterial, mode: ReseedMode = ReseedMode.CONTINUOUS
) -> list[Frame]:
    """Encrypt/decrypt a frame sequence under the chosen reseed mode."""
    frames = list(frames)
    if not frames:
        return []
    _check_same_shape(frames)
    out = []
    if mode is ReseedMode.CONTINUOUS:
        state = keystream.seed(key)
        for f in frames:
            data, state = transform_plane(f.data, state)
            out.append(Frame(f.width, f.height, f.channels, data))
    else:
        base = KeystreamState(x=key.x0, mu=key.mu, n=0)
        for i, f in enumerate(frames):
            state = keystream.skip(base, key.burn_in + PER_FRAME_STRIDE * i)
            data, _ = transform_plane(f.data, state)
            out.append(Frame(f.width, f.height, f.channels, data))
    return out
