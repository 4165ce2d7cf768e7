"""Variable-length hashing: padding, block chaining, serialization.

A message is a bit string of exact length. Padding appends one '1' bit
and the fewest '0' bits reaching a multiple of 1024 (always at least
the '1'), so distinct messages never pad to the same blocks and the
original is recoverable. Blocks are hashed in a chain: each block is
hashed under the running 128-bit key, and the running key is then
XORed with the block digest. The final running key is the message
digest, i.e. key XOR (XOR of all per-block digests).
"""

import struct

from .keyschedule import check_key, expand_key
from .network import BLOCK_WORDS, hash_block

__all__ = [
    "BLOCK_BITS",
    "Message",
    "pad",
    "unpad",
    "chain_step",
    "hash_message",
    "hash_message_trace",
    "format_digest",
    "parse_digest",
    "digest_to_bytes",
    "bytes_to_digest",
]

BLOCK_BITS = 32 * BLOCK_WORDS


class Message:
    """An immutable bit string; byte input expands MSB-first.

    `nbits` may be shorter than 8 * len(data); bits past nbits are
    cleared so equal bit strings compare equal.
    """

    __slots__ = ("data", "nbits")

    def __init__(self, data: bytes = b"", nbits=None):
        data = bytes(data)
        if nbits is None:
            nbits = 8 * len(data)
        if not 0 <= nbits <= 8 * len(data):
            raise ValueError("nbits out of range for the given bytes")
        slack = 8 * len(data) - nbits
        if slack:
            value = int.from_bytes(data, "big") >> slack << slack
            data = value.to_bytes(len(data), "big")
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "nbits", nbits)

    def __setattr__(self, name, value):
        raise AttributeError("Message is immutable")

    @classmethod
    def from_int(cls, value: int, nbits: int):
        """Bit string from the low nbits of value, MSB first."""
        if value < 0 or value >> nbits:
            raise ValueError("value does not fit in nbits")
        nbytes = (nbits + 7) // 8
        data = (value << (8 * nbytes - nbits)).to_bytes(nbytes, "big")
        return cls(data, nbits)

    def to_int(self) -> int:
        return int.from_bytes(self.data, "big") >> (8 * len(self.data) - self.nbits)

    def bit(self, index: int) -> int:
        if not 0 <= index < self.nbits:
            raise IndexError("bit index out of range")
        return (self.data[index // 8] >> (7 - index % 8)) & 1

    def flip(self, index: int) -> "Message":
        if not 0 <= index < self.nbits:
            raise IndexError("bit index out of range")
        out = bytearray(self.data)
        out[index // 8] ^= 0x80 >> (index % 8)
        return Message(bytes(out), self.nbits)

    def __len__(self) -> int:
        return self.nbits

    def __eq__(self, other) -> bool:
        if not isinstance(other, Message):
            return NotImplemented
        return self.nbits == other.nbits and self.data == other.data

    def __hash__(self) -> int:
        return hash((self.nbits, self.data))

    def __repr__(self) -> str:
        return "Message(%s, nbits=%d)" % (self.data.hex() or "''", self.nbits)


def pad(message: Message) -> tuple:
    """Append '1' then minimal '0's to a 1024-bit multiple; split to blocks."""
    nbits = message.nbits
    total = ((nbits + 1) + BLOCK_BITS - 1) // BLOCK_BITS * BLOCK_BITS
    value = ((message.to_int() << 1) | 1) << (total - nbits - 1)
    blocks = []
    for b in range(total // BLOCK_BITS):
        shift = total - (b + 1) * BLOCK_BITS
        chunk = (value >> shift) & ((1 << BLOCK_BITS) - 1)
        blocks.append(tuple(
            (chunk >> (32 * (31 - w))) & 0xFFFFFFFF for w in range(32)
        ))
    return tuple(blocks)


def unpad(blocks) -> Message:
    """Recover the message: strip trailing zeros, then the '1' marker."""
    blocks = tuple(blocks)
    value = 0
    for block in blocks:
        if len(block) != BLOCK_WORDS:
            raise ValueError("block must be exactly %d words" % BLOCK_WORDS)
        for w in block:
            value = (value << 32) | w
    total = BLOCK_BITS * len(blocks)
    if total == 0 or value == 0:
        raise ValueError("padding marker missing")
    trailing = (value & -value).bit_length() - 1
    return Message.from_int(value >> (trailing + 1), total - trailing - 1)


def chain_step(prev_key: bytes, block, t: int, parallel: bool = False):
    """Hash one block under the running key; returns (digest, next key)."""
    prev_key = check_key(prev_key)
    digest = hash_block(block, expand_key(prev_key, t), t, parallel)
    next_key = bytes(a ^ b for a, b in zip(prev_key, digest_to_bytes(digest)))
    return digest, next_key


def hash_message(message: Message, key: bytes, t: int, parallel: bool = False) -> tuple:
    """Digest of an arbitrary-length message under a 128-bit key."""
    running = check_key(key)
    for block in pad(message):
        _, running = chain_step(running, block, t, parallel)
    return bytes_to_digest(running)


def hash_message_trace(message: Message, key: bytes, t: int, parallel: bool = False):
    """Like hash_message, also returning every per-block digest in order."""
    running = check_key(key)
    per_block = []
    for block in pad(message):
        digest, running = chain_step(running, block, t, parallel)
        per_block.append(digest)
    return bytes_to_digest(running), tuple(per_block)


def format_digest(digest) -> str:
    """32 uppercase hex digits, word 0 first, big-endian within words."""
    return "".join("%08X" % w for w in digest)


def parse_digest(text: str) -> tuple:
    if len(text) != 32:
        raise ValueError("digest must be exactly 32 hex digits")
    try:
        raw = bytes.fromhex(text)
    except ValueError:
        raise ValueError("digest is not valid hexadecimal") from None
    return bytes_to_digest(raw)


def digest_to_bytes(digest) -> bytes:
    return struct.pack(">4I", *digest)


def bytes_to_digest(raw: bytes) -> tuple:
    return struct.unpack(">4I", raw)
