"""Three-layer keyed network mapping one 1024-bit block to 128 bits.

The input layer condenses 32 quantized words into 8 signals (4 inputs
per neuron, t map iterations), the hidden layer mixes 8 into 8 with a
single map application, and the output layer compresses 8 into 4 with t
iterations again. Weighted sums accumulate in ascending index order,
the bias is added last, and one mod1 brings the pre-activation back
into the map's domain. Digest words are the top 32 bits of each output
signal.

Within a layer the neurons are independent, so they may be evaluated
concurrently; results are placed by index and are bit-identical to the
sequential path.
"""

from concurrent.futures import ThreadPoolExecutor

from .chaosmap import map_iter, map_step, mod1
from .keyschedule import SubKeys, quantize_word

__all__ = [
    "BLOCK_WORDS",
    "DIGEST_WORDS",
    "input_layer",
    "hidden_layer",
    "output_layer",
    "extract_digest",
    "hash_block",
]

BLOCK_WORDS = 32
DIGEST_WORDS = 4

_pool = None


def _shared_pool() -> ThreadPoolExecutor:
    global _pool
    if _pool is None:
        _pool = ThreadPoolExecutor(max_workers=8, thread_name_prefix="neuron")
    return _pool


def check_block(words) -> tuple:
    words = tuple(words)
    if len(words) != BLOCK_WORDS:
        raise ValueError("block must be exactly %d words" % BLOCK_WORDS)
    for w in words:
        if not 0 <= w <= 0xFFFFFFFF:
            raise ValueError("block words must be 32-bit")
    return words


def _input_neuron(j: int, p, w0, b0, q0: float, t: int) -> float:
    s = 0.0
    for i in range(4 * j, 4 * j + 4):
        s += w0[i] * p[i]
    s += b0[j]
    return map_iter(mod1(s), q0, t)


def _hidden_neuron(j: int, c, w1, b1, q1: float) -> float:
    s = 0.0
    row = w1[j]
    for i in range(8):
        s += row[i] * c[i]
    s += b1[j]
    return map_step(mod1(s), q1)


def _output_neuron(j: int, d, w2, b2, q2: float, t: int) -> float:
    s = 0.0
    row = w2[j]
    for i in range(8):
        s += row[i] * d[i]
    s += b2[j]
    return map_iter(mod1(s), q2, t)


def _map_neurons(fn, count, args, parallel):
    if not parallel:
        return tuple(fn(j, *args) for j in range(count))
    pool = _shared_pool()
    futures = [pool.submit(fn, j, *args) for j in range(count)]
    return tuple(f.result() for f in futures)


def input_layer(p, w0, b0, q0: float, t: int, parallel: bool = False) -> tuple:
    """Condense 32 quantized inputs into 8 signals (t iterations each)."""
    if t < 1:
        raise ValueError("iteration count must be >= 1")
    return _map_neurons(_input_neuron, 8, (p, w0, b0, q0, t), parallel)


def hidden_layer(c, w1, b1, q1: float, parallel: bool = False) -> tuple:
    """Mix 8 signals into 8; the map is applied exactly once."""
    return _map_neurons(_hidden_neuron, 8, (c, w1, b1, q1), parallel)


def output_layer(d, w2, b2, q2: float, t: int, parallel: bool = False) -> tuple:
    """Compress 8 signals into 4 (t iterations each)."""
    if t < 1:
        raise ValueError("iteration count must be >= 1")
    return _map_neurons(_output_neuron, 4, (d, w2, b2, q2, t), parallel)


def extract_digest(h) -> tuple:
    """Top 32 bits of each output signal; 1.0 clamps to 0xFFFFFFFF."""
    words = []
    for x in h:
        w = int(x * 4294967296.0)
        if w > 0xFFFFFFFF:
            w = 0xFFFFFFFF
        words.append(w)
    return tuple(words)


def hash_block(block, keys: SubKeys, t: int, parallel: bool = False) -> tuple:
    """Hash one 32-word block under an expanded key; 4-word digest."""
    block = check_block(block)
    p = tuple(quantize_word(w) for w in block)
    c = input_layer(p, keys.w0, keys.b0, keys.q0, t, parallel)
    d = hidden_layer(c, keys.w1, keys.b1, keys.q1, parallel)
    h = output_layer(d, keys.w2, keys.b2, keys.q2, t, parallel)
    return extract_digest(h)
