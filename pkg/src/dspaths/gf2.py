"""Arithmetic in GF(2^64).

Elements are 64-bit words read as polynomials over GF(2) modulo
x^64 + x^4 + x^3 + x + 1.  Addition is xor; multiplication is a carry-less
product followed by folding the high word back through the low-order taps.
"""
import numpy as np

from ._accel import USING_NUMBA, njit

FIELD_BITS = 64
# low-order taps of the modulus: x^4 + x^3 + x + 1
MODULUS_TAIL = 0x1B
MODULUS = (1 << 64) | MODULUS_TAIL
MASK64 = (1 << 64) - 1

ZERO = np.uint64(0)
ONE = np.uint64(1)


def add(a, b):
    return np.uint64(a) ^ np.uint64(b)


@njit
def _fold(hi, lo):
    # x^64 = x^4 + x^3 + x + 1; the first fold can spill at most 4 bits past 2^64
    lo ^= hi ^ (hi << np.uint64(1)) ^ (hi << np.uint64(3)) ^ (hi << np.uint64(4))
    spill = (hi >> np.uint64(63)) ^ (hi >> np.uint64(61)) ^ (hi >> np.uint64(60))
    lo ^= spill ^ (spill << np.uint64(1)) ^ (spill << np.uint64(3)) ^ (spill << np.uint64(4))
    return lo


@njit(inline="always")
def _gf_mul_jit(a, b):
    a = np.uint64(a)
    b = np.uint64(b)
    zero = np.uint64(0)
    one = np.uint64(1)
    lo = a & (zero - (b & one))
    hi = zero
    for i in range(1, 64):
        mask = zero - ((b >> np.uint64(i)) & one)
        lo ^= (a << np.uint64(i)) & mask
        hi ^= (a >> np.uint64(64 - i)) & mask
    return _fold(hi, lo)


def _gf_mul_py(a, b):
    a = int(a)
    b = int(b)
    prod = 0
    while b:
        low = b & -b
        prod ^= a << (low.bit_length() - 1)
        b ^= low
    hi = prod >> 64
    lo = prod & MASK64
    lo ^= (hi ^ (hi << 1) ^ (hi << 3) ^ (hi << 4))
    spill = lo >> 64
    lo &= MASK64
    lo ^= spill ^ (spill << 1) ^ (spill << 3) ^ (spill << 4)
    return np.uint64(lo & MASK64)


gf_mul = _gf_mul_jit if USING_NUMBA else _gf_mul_py


def mul(a, b):
    """Field product of two elements."""
    return np.uint64(gf_mul(np.uint64(a), np.uint64(b)))


def square(a):
    return mul(a, a)


def mul_reference(a, b):
    """Bit-serial shift-and-xor multiplier on Python ints.

    Reduces after every doubling, so it shares no code path with ``mul``.
    """
    a = int(a) & MASK64
    b = int(b) & MASK64
    result = 0
    while b:
        if b & 1:
            result ^= a
        b >>= 1
        a <<= 1
        if a >> 64:
            a ^= MODULUS
    return result


def mul_vec(a, b):
    """Elementwise product of two uint64 arrays (vectorised numpy path)."""
    a = np.asarray(a, dtype=np.uint64)
    b = np.asarray(b, dtype=np.uint64)
    a, b = np.broadcast_arrays(a, b)
    hi = np.zeros(a.shape, dtype=np.uint64)
    lo = np.zeros(a.shape, dtype=np.uint64)
    one = np.uint64(1)
    for i in range(64):
        sel = ((b >> np.uint64(i)) & one).astype(bool)
        if not sel.any():
            continue
        lo[sel] ^= a[sel] << np.uint64(i)
        if i:
            hi[sel] ^= a[sel] >> np.uint64(64 - i)
    lo ^= hi ^ (hi << np.uint64(1)) ^ (hi << np.uint64(3)) ^ (hi << np.uint64(4))
    spill = (hi >> np.uint64(63)) ^ (hi >> np.uint64(61)) ^ (hi >> np.uint64(60))
    lo ^= spill ^ (spill << np.uint64(1)) ^ (spill << np.uint64(3)) ^ (spill << np.uint64(4))
    return lo


class FieldRng:
    """Seeded stream of uniform field elements.

    The i-th draw for a given seed never changes, independent of how draws
    are batched.
    """

    def __init__(self, seed):
        self.seed = int(seed) & MASK64
        self._gen = np.random.Generator(np.random.PCG64(self.seed))

    def sample(self):
        return self._gen.integers(0, 1 << 64, dtype=np.uint64, endpoint=False)

    def sample_many(self, count):
        return self._gen.integers(0, 1 << 64, size=count, dtype=np.uint64, endpoint=False)


def sample(rng):
    return rng.sample()
