import numpy as np
import pytest

from chaospip import (
    DimensionMismatch,
    Frame,
    KeyMaterial,
    KeystreamState,
    ReseedMode,
    corr2d,
    decrypt_image,
    encrypt_image,
    inverse_permute,
    process_block,
    process_stream,
    seed,
    skip,
    take_bytes,
    transform_plane,
)
from chaospip.cipher import PER_FRAME_STRIDE

from refcipher import reference_transform
from synthimg import synthetic_gray

KEY = KeyMaterial(mu=3.934, x0=0.5250, burn_in=10)


# ---------------------------------------------------------------- frames


def test_frame_validates_geometry():
    with pytest.raises(ValueError):
        Frame(0, 4, 1, b"")
    with pytest.raises(ValueError):
        Frame(2, 2, 2, bytes(8))
    with pytest.raises(ValueError):
        Frame(2, 2, 1, bytes(5))


def test_frame_planes():
    frame = Frame(2, 2, 3, bytes(range(12)))
    assert frame.plane(0) == bytes([0, 1, 2, 3])
    assert frame.plane(2) == bytes([8, 9, 10, 11])
    with pytest.raises(IndexError):
        frame.plane(3)


# ---------------------------------------------------------------- blocks


def test_process_block_with_zero_key_is_identity():
    rng = np.random.default_rng(1)
    for row in rng.integers(0, 256, size=(100, 8), dtype=np.uint8):
        block = bytes(row)
        assert process_block(block, bytes(8)) == block


def test_process_block_is_an_involution():
    rng = np.random.default_rng(2)
    for _ in range(100):
        block, key = (bytes(r) for r in rng.integers(0, 256, size=(2, 8), dtype=np.uint8))
        assert process_block(process_block(block, key), key) == block


def test_process_block_zero_plaintext_reveals_unpermuted_key():
    key = bytes([0xFF, 0, 0, 0, 0, 0, 0, 0])
    assert process_block(bytes(8), key) == inverse_permute(key)
    assert process_block(bytes(8), key) == bytes([0x80] * 8)


def test_process_block_needs_eight_key_bytes():
    with pytest.raises(ValueError):
        process_block(bytes(8), bytes(7))


# ---------------------------------------------------------------- planes


def test_empty_plane_passes_through():
    state = seed(KEY)
    out, new_state = transform_plane(b"", state)
    assert out == b""
    assert new_state == state


def test_tail_rule_on_nine_bytes():
    data = bytes(range(9))
    state = seed(KEY)
    key_bytes, _ = take_bytes(state, 9)
    expected = process_block(data[:8], key_bytes[:8]) + bytes([data[8] ^ key_bytes[8]])
    out, _ = transform_plane(data, state)
    assert out == expected


def test_plane_transform_is_an_involution():
    rng = np.random.default_rng(3)
    for n in [1, 7, 8, 9, 16, 17, 255, 1024]:
        data = rng.integers(0, 256, size=n, dtype=np.uint8).tobytes()
        once, _ = transform_plane(data, seed(KEY))
        twice, _ = transform_plane(once, seed(KEY))
        assert twice == data


def test_exactly_one_key_byte_per_data_byte():
    state = seed(KEY)
    for n in [0, 1, 5, 8, 21]:
        _, state_after = transform_plane(bytes(n), state)
        assert state_after.n == state.n + n
        state = state_after


def test_length_preserved():
    rng = np.random.default_rng(4)
    for n in [1, 3, 8, 100, 1001]:
        data = rng.integers(0, 256, size=n, dtype=np.uint8).tobytes()
        out, _ = transform_plane(data, seed(KEY))
        assert len(out) == n


# ---------------------------------------------------------------- images


def test_image_round_trip_exercises_tail(make_frame):
    frame = make_frame(np.random.default_rng(5), 31, 17, 3)
    assert decrypt_image(encrypt_image(frame, KEY), KEY) == frame


def test_single_pixel_is_xor_with_first_key_byte():
    frame = Frame(1, 1, 1, bytes([0xA7]))
    key_bytes, _ = take_bytes(seed(KEY), 1)
    assert encrypt_image(frame, KEY).data == bytes([0xA7 ^ key_bytes[0]])


def test_decrypt_equals_encrypt_on_random_frames(make_frame):
    rng = np.random.default_rng(6)
    key = KeyMaterial(mu=3.91, x0=0.2468, burn_in=2)
    for _ in range(1000):
        frame = make_frame(rng, int(rng.integers(1, 13)), int(rng.integers(1, 13)),
                           int(rng.choice([1, 3])))
        assert encrypt_image(frame, key) == decrypt_image(frame, key)


def test_wrong_key_decrypt_is_decorrelated_noise():
    plain = synthetic_gray(256, 256, 7.3, seed=77)
    cipher = encrypt_image(plain, KEY)
    wrong = KeyMaterial(mu=3.934, x0=0.52500000000001, burn_in=10)
    garbage = decrypt_image(cipher, wrong)
    assert garbage != plain
    assert abs(corr2d(garbage.data, plain.data)) < 0.05


def test_matches_straight_line_reference_up_to_three_blocks(make_frame):
    rng = np.random.default_rng(8)
    key = KeyMaterial(mu=3.934, x0=0.5250, burn_in=25)
    for width, height, channels in [(1, 1, 1), (3, 1, 1), (8, 1, 1), (3, 3, 1),
                                    (4, 2, 3), (2, 4, 1), (8, 3, 1), (2, 2, 3)]:
        for _ in range(3):
            frame = make_frame(rng, width, height, channels)
            expected = reference_transform(frame.data, key.mu, key.x0, key.burn_in)
            assert encrypt_image(frame, key).data == expected


# ---------------------------------------------------------------- streams


def test_empty_stream():
    assert process_stream([], KEY, ReseedMode.CONTINUOUS) == []


def test_continuous_single_frame_equals_encrypt_image(make_frame):
    frame = make_frame(np.random.default_rng(9), 10, 6, 1)
    assert process_stream([frame], KEY, ReseedMode.CONTINUOUS) == [encrypt_image(frame, KEY)]


def test_continuous_keystream_spans_frames(make_frame):
    rng = np.random.default_rng(10)
    frames = [make_frame(rng, 6, 4, 1) for _ in range(3)]
    out = process_stream(frames, KEY, ReseedMode.CONTINUOUS)
    # same as transforming the concatenated planar data with one state
    joined, _ = transform_plane(b"".join(f.data for f in frames), seed(KEY))
    assert b"".join(f.data for f in out) == joined


def test_per_frame_ciphertext_depends_only_on_content_and_index(make_frame):
    rng = np.random.default_rng(11)
    a, b, c = (make_frame(rng, 8, 8, 1) for _ in range(3))
    first = process_stream([a, b], KEY, ReseedMode.PER_FRAME)
    second = process_stream([a, c], KEY, ReseedMode.PER_FRAME)
    assert first[0] == second[0]  # later frames cannot affect earlier ones
    # and each frame matches a standalone transform at its indexed offset
    for index, frame in enumerate([a, b]):
        state = skip(KeystreamState(x=KEY.x0, mu=KEY.mu, n=0),
                     KEY.burn_in + PER_FRAME_STRIDE * index)
        expected, _ = transform_plane(frame.data, state)
        assert first[index].data == expected


def test_stream_round_trips_in_both_modes(make_frame):
    rng = np.random.default_rng(12)
    frames = [make_frame(rng, 9, 5, 3) for _ in range(4)]
    for mode in ReseedMode:
        assert process_stream(process_stream(frames, KEY, mode), KEY, mode) == frames


def test_mismatched_frames_rejected(make_frame):
    rng = np.random.default_rng(13)
    with pytest.raises(DimensionMismatch):
        process_stream([make_frame(rng, 4, 4, 1), make_frame(rng, 4, 5, 1)], KEY)
    with pytest.raises(DimensionMismatch):
        process_stream([make_frame(rng, 4, 4, 1), make_frame(rng, 4, 4, 3)], KEY)
