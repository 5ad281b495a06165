"""Bit-level scramble of 8-byte pixel blocks: the 8x8 bit-matrix transpose.

A block of 8 consecutive 8-bit pixels is viewed as an 8x8 bit matrix
(row = pixel index i, column = bit index j, j = 0 being the most
significant bit). The scramble moves input bit (i, j) to output bit
(j, i), so every output pixel collects exactly one bit from each input
pixel: maximal inter-pixel diffusion. The transpose is its own inverse,
which keeps the surrounding cipher an involution.
"""

BLOCK_SIZE = 8


def forward_permute(block) -> bytes:
    """Transpose the block's 8x8 bit matrix."""
    if len(block) != BLOCK_SIZE:
        raise ValueError(f"block must hold exactly {BLOCK_SIZE} bytes, got {len(block)}")
    out = [0] * BLOCK_SIZE
    for i in range(BLOCK_SIZE):
        b = block[i]
        for j in range(BLOCK_SIZE):
            if b & (0x80 >> j):
                out[j] |= 0x80 >> i
    return bytes(out)


def inverse_permute(block) -> bytes:
    """Undo forward_permute.

    The transpose coincides with its own inverse; this entry point stays
    separate so a non-involutory table could slot in without touching
    callers.
    """
    return forward_permute(block)
