"""Expansion of a 128-bit key into the 151 network sub-keys.

The key splits into four big-endian 32-bit words K0..K3. K0/K2 seed two
map orbits, K1/K3 set their parameters, and the orbits are advanced t
steps before emission; sub-key j is mod1(X0(j) + X1(j)) where X(j) sits
j steps further along its orbit. The 151 emitted values fill, in order:
32 input weights, 8 input biases, 1 input parameter, 64 hidden weights,
8 hidden biases, 1 hidden parameter, 32 output weights, 4 output
biases, 1 output parameter.
"""

import functools
import struct
from dataclasses import dataclass

from .chaosmap import Q_MAX, Q_MIN, map_iter, map_step, mod1

__all__ = [
    "KEY_BYTES",
    "SUBKEY_COUNT",
    "SubKeys",
    "key_from_hex",
    "check_key",
    "flip_key_bit",
    "quantize_word",
    "derive_param",
    "clamp_seed",
    "subkey_stream",
    "assign_subkeys",
    "expand_key",
]

KEY_BYTES = 16
SUBKEY_COUNT = 151

_SEED_MIN = 2.0 ** -32
_SEED_MAX = 1.0 - 2.0 ** -32


@dataclass(frozen=True)
class SubKeys:
    """Key material for the three layers: weights, biases, parameters."""

    w0: tuple          # 32 input-layer weights
    b0: tuple          # 8 input-layer biases
    q0: float
    w1: tuple          # 8 rows of 8 hidden-layer weights
    b1: tuple          # 8 hidden-layer biases
    q1: float
    w2: tuple          # 4 rows of 8 output-layer weights
    b2: tuple          # 4 output-layer biases
    q2: float


def key_from_hex(text: str) -> bytes:
    """Parse a 32-hex-digit key string."""
    if len(text) != 2 * KEY_BYTES:
        raise ValueError("key must be exactly 32 hex digits")
    try:
        return bytes.fromhex(text)
    except ValueError:
        raise ValueError("key is not valid hexadecimal") from None


def check_key(key: bytes) -> bytes:
    if not isinstance(key, (bytes, bytearray)) or len(key) != KEY_BYTES:
        raise ValueError("key must be exactly 16 bytes")
    return bytes(key)


def flip_key_bit(key: bytes, index: int) -> bytes:
    """Flip bit `index` of the key, MSB of byte 0 being bit 0."""
    if not 0 <= index < 8 * KEY_BYTES:
        raise ValueError("key bit index out of range")
    out = bytearray(check_key(key))
    out[index // 8] ^= 0x80 >> (index % 8)
    return bytes(out)


def quantize_word(word: int) -> float:
    """32-bit word to a fraction in [0, 1 - 2^-32]; exact division."""
    return word / 4294967296.0


def derive_param(u: float) -> float:
    """Map a unit value onto the valid parameter range (half then clamp)."""
    q = u / 2.0
    if q < Q_MIN:
        return Q_MIN
    if q > Q_MAX:
        return Q_MAX
    return q


def clamp_seed(x: float) -> float:
    # x = 0 is a fixed point of the map; nudge quantized zeros off it
    if x < _SEED_MIN:
        return _SEED_MIN
    if x > _SEED_MAX:
        return _SEED_MAX
    return x


def subkey_stream(key: bytes, count: int, t: int) -> list:
    """Emit `count` sub-keys from the two key-seeded orbits.

    The orbits are computed once and stepped incrementally, which is
    bit-equal to restarting map_iter at depth t + j for every j (the
    composition law) at a fraction of the work.
    """
    key = check_key(key)
    if count < 1:
        raise ValueError("sub-key count must be >= 1")
    if t < 1:
        raise ValueError("iteration count must be >= 1")
    k0, k1, k2, k3 = struct.unpack(">4I", key)
    qa = derive_param(quantize_word(k1))
    qb = derive_param(quantize_word(k3))
    x0 = map_iter(clamp_seed(quantize_word(k0)), qa, t)
    x1 = map_iter(clamp_seed(quantize_word(k2)), qb, t)
    out = [mod1(x0 + x1)]
    for _ in range(count - 1):
        x0 = map_step(x0, qa)
        x1 = map_step(x1, qb)
        out.append(mod1(x0 + x1))
    return out


def assign_subkeys(stream) -> SubKeys:
    """Slice a 151-element sub-key stream into the layer bundles."""
    stream = tuple(stream)
    if len(stream) != SUBKEY_COUNT:
        raise ValueError(
            "expected %d sub-keys, got %d" % (SUBKEY_COUNT, len(stream))
        )
    return SubKeys(
        w0=stream[0:32],
        b0=stream[32:40],
        q0=derive_param(stream[40]),
        w1=tuple(stream[41 + 8 * j:49 + 8 * j] for j in range(8)),
        b1=stream[105:113],
        q1=derive_param(stream[113]),
        w2=tuple(stream[114 + 8 * j:122 + 8 * j] for j in range(4)),
        b2=stream[146:150],
        q2=derive_param(stream[150]),
    )


@functools.lru_cache(maxsize=256)
def _expand_key_cached(key: bytes, t: int) -> SubKeys:
    return assign_subkeys(subkey_stream(key, SUBKEY_COUNT, t))


def expand_key(key: bytes, t: int) -> SubKeys:
    """Full schedule: stream 151 sub-keys and assign them to the layers.

    Pure function of (key, t); results are cached since the sweeps and
    collision experiments re-expand the same user key many times.
    """
    return _expand_key_cached(check_key(key), t)
