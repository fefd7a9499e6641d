"""Keccak-256 (the pre-NIST padding variant used by Ethereum).

This is the original Keccak submission with multi-rate padding 10*1
(first pad byte 0x01), NOT FIPS-202 SHA3-256 (pad byte 0x06) — hashlib's
sha3_256 produces different digests and cannot be substituted.

References:
  https://keccak.team/keccak_specs_summary.html
  https://nvlpubs.nist.gov/nistpubs/FIPS/NIST.FIPS.202.pdf (permutation only)
"""

from __future__ import annotations

_MASK = (1 << 64) - 1

# Rotation offsets r[x][y], indexed by lane x + 5*y.
_ROTATIONS = (
    0, 1, 62, 28, 27,
    36, 44, 6, 55, 20,
    3, 10, 43, 25, 39,
    41, 45, 15, 21, 8,
    18, 2, 61, 56, 14,
)

_ROUND_CONSTANTS = (
    0x0000000000000001, 0x0000000000008082, 0x800000000000808A,
    0x8000000080008000, 0x000000000000808B, 0x0000000080000001,
    0x8000000080008081, 0x8000000000008009, 0x000000000000008A,
    0x0000000000000088, 0x0000000080008009, 0x000000008000000A,
    0x000000008000808B, 0x800000000000008B, 0x8000000000008089,
    0x8000000000008003, 0x8000000000008002, 0x8000000000000080,
    0x000000000000800A, 0x800000008000000A, 0x8000000080008081,
    0x8000000000008080, 0x0000000080000001, 0x8000000080008008,
)

_RATE_BYTES = 136  # 1088-bit rate / 512-bit capacity for a 256-bit digest

# Precomputed (source index, rotation) for the combined rho+pi step:
# B[y, 2x+3y] = rotl(A[x, y], r[x, y]), i.e. destination (x, y) reads
# source ((x + 3y) mod 5, x), lanes stored flat at x + 5y.
_PI_ORDER = tuple(
    ((x + 3 * y) % 5 + 5 * x, _ROTATIONS[(x + 3 * y) % 5 + 5 * x])
    for y in range(5)
    for x in range(5)
)


def _rotl(value: int, shift: int) -> int:
    return ((value << shift) | (value >> (64 - shift))) & _MASK


def _keccak_f1600(state: list[int]) -> None:
    for round_constant in _ROUND_CONSTANTS:
        # theta
        c = [
            state[x] ^ state[x + 5] ^ state[x + 10] ^ state[x + 15] ^ state[x + 20]
            for x in range(5)
        ]
        for x in range(5):
            d = c[(x - 1) % 5] ^ _rotl(c[(x + 1) % 5], 1)
            for y in range(0, 25, 5):
                state[x + y] ^= d
        # rho + pi
        b = [_rotl(state[src], rot) for src, rot in _PI_ORDER]
        # chi
        for y in range(0, 25, 5):
            row = b[y:y + 5]
            for x in range(5):
                state[x + y] = row[x] ^ ((~row[(x + 1) % 5]) & row[(x + 2) % 5])
        # iota
        state[0] ^= round_constant


def keccak256(data: bytes) -> bytes:
    """Return the 32-byte Keccak-256 digest of ``data``."""
    state = [0] * 25

    # Absorb full rate-sized blocks, then the padded final block.
    padded = data + b"\x01" + b"\x00" * (_RATE_BYTES - 1 - len(data) % _RATE_BYTES)
    padded = padded[:-1] + bytes([padded[-1] | 0x80])
    for offset in range(0, len(padded), _RATE_BYTES):
        block = padded[offset:offset + _RATE_BYTES]
        for lane in range(_RATE_BYTES // 8):
            state[lane] ^= int.from_bytes(block[lane * 8:lane * 8 + 8], "little")
        _keccak_f1600(state)

    return b"".join(state[lane].to_bytes(8, "little") for lane in range(4))


def keccak256_hex(data: bytes) -> str:
    """Hex form of :func:`keccak256`, without a 0x prefix."""
    return keccak256(data).hex()
