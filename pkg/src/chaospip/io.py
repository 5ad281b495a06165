"""Image and container serialization.

PNM side: binary PGM (P5) and PPM (P6) with maxval 255, standard
whitespace/comment handling; PPM's interleaved RGB is converted to the
planar layout used everywhere else in the package.

Container side: the encrypted-payload file format. Layout, big-endian:

  offset  0  4s  magic     b"CPIP"
  offset  4  B   version   1
  offset  5  B   mode      0 gray image, 1 RGB image, 2 gray video, 3 RGB video
  offset  6  B   reseed    0 continuous, 1 per-frame
  offset  7  B   reserved  0
  offset  8  I   width
  offset 12  I   height
  offset 16  I   frame count

followed by frame_count * width * height * channels payload bytes (frames
concatenated, each channel-planar). The header never carries key material.
"""

from __future__ import annotations

from enum import IntEnum
from typing import Iterable, Sequence

import struct

import numpy as np

from .cipher import Frame, ReseedMode
from .errors import DimensionMismatch, FormatError

MAGIC = b"CPIP"
VERSION = 1
_HEADER = struct.Struct(">4sBBBBIII")
HEADER_SIZE = _HEADER.size

_WHITESPACE = b" \t\n\r\x0b\x0c"


class ContainerMode(IntEnum):
    """Payload kind stored in a container."""

    GRAY_IMAGE = 0
    RGB_IMAGE = 1
    GRAY_VIDEO = 2
    RGB_VIDEO = 3

    @property
    def channels(self) -> int:
        return 3 if self in (ContainerMode.RGB_IMAGE, ContainerMode.RGB_VIDEO) else 1

    @property
    def is_video(self) -> bool:
        return self in (ContainerMode.GRAY_VIDEO, ContainerMode.RGB_VIDEO)


def container_mode_for(channels: int, video: bool) -> ContainerMode:
    """Mode byte for a payload of `channels` channels."""
    if channels == 1:
        return ContainerMode.GRAY_VIDEO if video else ContainerMode.GRAY_IMAGE
    if channels == 3:
        return ContainerMode.RGB_VIDEO if video else ContainerMode.RGB_IMAGE
    raise ValueError(f"channels must be 1 or 3, got {channels!r}")


def _next_token(buf: bytes, pos: int) -> tuple[bytes, int]:
    """Next header token, skipping whitespace and '#' comments."""
    n = len(buf)
    while pos < n:
        c = buf[pos]
        if c in _WHITESPACE:
            pos += 1
        elif c == 0x23:  # '#'
            nl = buf.find(b"\n", pos)
            if nl < 0:
                raise FormatError("unterminated comment in header")
            pos = nl + 1
        else:
            break
    start = pos
    while pos < n and buf[pos] not in _WHITESPACE and buf[pos] != 0x23:
        pos += 1
    if start == pos:
        raise FormatError("truncated header")
    return buf[start:pos], pos


def _int_token(buf: bytes, pos: int, what: str) -> tuple[int, int]:
    token, pos = _next_token(buf, pos)
    if not token.isdigit():
        raise FormatError(f"malformed {what}: {token!r}")
    return int(token), pos


def read_pnm(data: bytes) -> Frame:
    """Parse a binary PGM/PPM into a Frame (PPM becomes planar)."""
    magic = data[:2]
    if magic not in (b"P5", b"P6"):
        raise FormatError(f"not a binary PGM/PPM file (magic {magic!r})")
    channels = 1 if magic == b"P5" else 3
    width, pos = _int_token(data, 2, "width")
    height, pos = _int_token(data, pos, "height")
    maxval, pos = _int_token(data, pos, "maxval")
    if width < 1 or height < 1:
        raise FormatError(f"bad dimensions {width}x{height}")
    if maxval != 255:
        raise FormatError(f"only maxval 255 is supported, got {maxval}")
    if pos >= len(data) or data[pos] not in _WHITESPACE:
        raise FormatError("missing whitespace after maxval")
    pos += 1
    payload = data[pos:]
    expected = width * height * channels
    if len(payload) < expected:
        raise FormatError(f"truncated payload: {len(payload)} bytes, expected {expected}")
    if len(payload) > expected:
        raise FormatError(f"trailing data after payload: {len(payload) - expected} bytes")
    if channels == 3:
        interleaved = np.frombuffer(payload, dtype=np.uint8).reshape(height, width, 3)
        payload = interleaved.transpose(2, 0, 1).tobytes()
    return Frame(width, height, channels, payload)


def write_pnm(frame: Frame) -> bytes:
    """Serialize a Frame as canonical binary PGM/PPM."""
    magic = "P5" if frame.channels == 1 else "P6"
    header = f"{magic}\n{frame.width} {frame.height}\n255\n".encode("ascii")
    if frame.channels == 1:
        return header + frame.data
    planar = np.frombuffer(frame.data, dtype=np.uint8).reshape(3, frame.height, frame.width)
    return header + planar.transpose(1, 2, 0).tobytes()


def write_container(
    frames: Iterable[Frame], mode: ContainerMode, reseed: ReseedMode
) -> bytes:
    """Serialize encrypted frames with the bit-exact 20-byte header."""
    frames = list(frames)
    if not frames:
        raise ValueError("a container needs at least one frame")
    _check_consistent(frames)
    mode = ContainerMode(mode)
    first = frames[0]
    if first.channels != mode.channels:
        raise ValueError(f"{mode.name} expects {mode.channels}-channel frames, got {first.channels}")
    if not mode.is_video and len(frames) != 1:
        raise ValueError(f"{mode.name} must hold exactly one frame, got {len(frames)}")
    reseed_byte = 1 if reseed is ReseedMode.PER_FRAME else 0
    header = _HEADER.pack(
        MAGIC, VERSION, int(mode), reseed_byte, 0, first.width, first.height, len(frames)
    )
    return header + b"".join(f.data for f in frames)


def read_container(data: bytes) -> tuple[list[Frame], ContainerMode, ReseedMode]:
    """Parse and validate a container, returning its frames and modes."""
    if len(data) < HEADER_SIZE:
        raise FormatError("container shorter than its header")
    magic, version, mode_b, reseed_b, reserved, width, height, count = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise FormatError(f"bad magic {magic!r}")
    if version != VERSION:
        raise FormatError(f"unsupported container version {version}")
    try:
        mode = ContainerMode(mode_b)
    except ValueError:
        raise FormatError(f"unknown mode byte {mode_b}") from None
    if reseed_b not in (0, 1):
        raise FormatError(f"unknown reseed byte {reseed_b}")
    reseed = ReseedMode.PER_FRAME if reseed_b else ReseedMode.CONTINUOUS
    if width < 1 or height < 1 or count < 1:
        raise FormatError(f"bad geometry {width}x{height}, {count} frame(s)")
    if not mode.is_video and count != 1:
        raise FormatError(f"{mode.name} container must hold exactly one frame, got {count}")
    frame_bytes = width * height * mode.channels
    expected = HEADER_SIZE + count * frame_bytes
    if len(data) != expected:
        raise FormatError(f"payload length {len(data) - HEADER_SIZE}, expected {expected - HEADER_SIZE}")
    frames = [
        Frame(width, height, mode.channels, data[HEADER_SIZE + i * frame_bytes : HEADER_SIZE + (i + 1) * frame_bytes])
        for i in range(count)
    ]
    return frames, mode, reseed


def _check_consistent(frames: Sequence[Frame]) -> None:
    first = frames[0].shape
    for f in frames[1:]:
        if f.shape != first:
            raise DimensionMismatch(f"frame shapes differ: {first} vs {f.shape}")
