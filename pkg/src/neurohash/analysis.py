"""Sensitivity sweeps, collision experiments, and CSV reporting.

The sensitivity metric is the hamming distance ratio between two
digests: popcount of their XOR divided by 128. Sweeps flip one input
bit at a time (message bits of the first block, or key bits), rehash,
and record the ratio per flip. The birthday experiment hashes many
distinct random one-block messages, truncates the digests to a small
width, and compares observed colliding pairs with the birthday-bound
expectation. All randomized experiments take an explicit seed and
record it in their report.

Flips and trials are independent, so both sweeps and the birthday
experiment accept a worker count; results are aggregated by index and
identical for any worker count.
"""

import csv
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields

from .hashing import BLOCK_BITS, Message, hash_message
from .keyschedule import KEY_BYTES, check_key, flip_key_bit

__all__ = [
    "HdrReport",
    "BirthdayReport",
    "hdr",
    "message_sensitivity_sweep",
    "key_sensitivity_sweep",
    "birthday_experiment",
    "emit_csv",
]


@dataclass(frozen=True)
class HdrReport:
    """Per-flip hamming distance ratios plus summary statistics."""

    per_flip: tuple  # ((bit_index, hdr), ...)
    mean: float
    min: float
    max: float


@dataclass(frozen=True)
class BirthdayReport:
    truncation_width: int
    trials: int
    collisions_observed: int
    collisions_expected: float
    seed: int


def hdr(a, b) -> float:
    """Hamming distance ratio between two 4-word digests."""
    distance = 0
    for x, y in zip(a, b):
        distance += (x ^ y).bit_count()
    return distance / 128.0


def _sweep(indices, one_flip, workers):
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            ratios = list(pool.map(one_flip, indices))
    else:
        ratios = [one_flip(i) for i in indices]
    per_flip = tuple(zip(indices, ratios))
    return HdrReport(
        per_flip=per_flip,
        mean=sum(ratios) / len(ratios),
        min=min(ratios),
        max=max(ratios),
    )


def message_sensitivity_sweep(
    message: Message, key: bytes, t: int, workers: int = 1
) -> HdrReport:
    """Hdr of each single-bit flip among the first block's message bits.

    Covers min(1024, message length) bit positions, each exactly once.
    """
    if message.nbits == 0:
        raise ValueError("message must be non-empty")
    baseline = hash_message(message, key, t)
    indices = range(min(BLOCK_BITS, message.nbits))

    def one_flip(i):
        return hdr(baseline, hash_message(message.flip(i), key, t))

    return _sweep(indices, one_flip, workers)


def key_sensitivity_sweep(
    message: Message, key: bytes, t: int, workers: int = 1
) -> HdrReport:
    """Hdr of each of the 128 single-bit key flips."""
    baseline = hash_message(message, key, t)
    indices = range(8 * KEY_BYTES)

    def one_flip(i):
        return hdr(baseline, hash_message(message, flip_key_bit(key, i), t))

    return _sweep(indices, one_flip, workers)


def birthday_experiment(
    width: int, trials: int, key: bytes, t: int, seed: int, workers: int = 1
) -> BirthdayReport:
    """Count truncated-digest collisions among random one-block messages.

    Hashes `trials` distinct random 1024-bit messages, keeps the top
    `width` digest bits, and counts colliding unordered pairs against
    the birthday expectation trials*(trials-1)/2 / 2^width.
    """
    if not 8 <= width <= 32:
        raise ValueError("truncation width must be in [8, 32]")
    if trials < 2:
        raise ValueError("trials must be >= 2")
    check_key(key)
    rng = random.Random(seed)
    seen = set()
    messages = []
    while len(messages) < trials:
        value = rng.getrandbits(BLOCK_BITS)
        if value in seen:
            continue
        seen.add(value)
        messages.append(Message.from_int(value, BLOCK_BITS))

    def truncated(m):
        return hash_message(m, key, t)[0] >> (32 - width)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            tops = list(pool.map(truncated, messages))
    else:
        tops = [truncated(m) for m in messages]

    buckets = {}
    for top in tops:
        buckets[top] = buckets.get(top, 0) + 1
    observed = sum(c * (c - 1) // 2 for c in buckets.values())
    return BirthdayReport(
        truncation_width=width,
        trials=trials,
        collisions_observed=observed,
        collisions_expected=trials * (trials - 1) / 2 / 2.0 ** width,
        seed=seed,
    )


def emit_csv(report, destination) -> None:
    """Write a report as CSV; destination is a path or a text file."""
    if hasattr(destination, "write"):
        _write_csv(report, destination)
    else:
        with open(destination, "w", newline="") as handle:
            _write_csv(report, handle)


def _write_csv(report, handle) -> None:
    writer = csv.writer(handle)
    if isinstance(report, HdrReport):
        writer.writerow(["bit_index", "hdr"])
        for index, ratio in report.per_flip:
            writer.writerow([index, repr(ratio)])
    else:
        # scalar fields only; structured extras stay on the dataclass
        names = [
            f.name for f in fields(report)
            if isinstance(getattr(report, f.name), (int, float, str))
        ]
        writer.writerow(names)
        writer.writerow([getattr(report, n) for n in names])
