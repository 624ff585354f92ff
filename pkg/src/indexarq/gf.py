"""Arithmetic over GF(2^8) with the AES reduction polynomial.

Scalars are plain ints in ``[0, 255]``. Vectors and matrices are numpy
``uint8`` arrays and every operation applies component-wise, so a packet of
``L`` bytes is simply a length-``L`` vector over the field.

Multiplication goes through log/antilog tables built once at import time.
0x02 is not a generator under 0x11B, so the tables are built from 0x03.
"""

import numpy as np

from .errors import SingularMatrixError

POLY = 0x11B
GENERATOR = 0x03
ORDER = 255


def _build_tables():
    exp = np.zeros(2 * ORDER, dtype=np.uint8)
    log = np.zeros(256, dtype=np.int32)
    x = 1
    for i in range(ORDER):
        exp[i] = x
        log[x] = i
        # x * 3 = x * 2 ^ x
        x2 = x << 1
        if x2 & 0x100:
            x2 ^= POLY
        x = x2 ^ x
    exp[ORDER:] = exp[:ORDER]
    return exp, log


EXP, LOG = _build_tables()
EXP.flags.writeable = False
LOG.flags.writeable = False

_EXP = EXP.tolist()
_LOG = LOG.tolist()


def add(a, b):
    """Field addition; also subtraction, since the characteristic is 2."""
    return a ^ b


sub = add


def mul(a, b):
    if a == 0 or b == 0:
        return 0
    return _EXP[_LOG[a] + _LOG[b]]


def inv(a):
    if a == 0:
        raise ZeroDivisionError("0 has no multiplicative inverse in GF(256)")
    return _EXP[ORDER - _LOG[a]]


def div(a, b):
    return mul(a, inv(b))


def power(a, k):
    """``a`` raised to a non-negative integer ``k`` (``0 ** 0 == 1``)."""
    if k == 0:
        return 1
    if a == 0:
        return 0
    return _EXP[(_LOG[a] * k) % ORDER]


def mul_array(a, b):
    """Element-wise product of two broadcastable uint8 arrays."""
    a = np.asarray(a, dtype=np.uint8)
    b = np.asarray(b, dtype=np.uint8)
    out = EXP[LOG[a] + LOG[b]]
    return np.where((a == 0) | (b == 0), np.uint8(0), out).astype(np.uint8)


def scale(c, v):
    """Multiply vector ``v`` by the scalar ``c``."""
    v = np.asarray(v, dtype=np.uint8)
    if c == 0:
        return np.zeros_like(v)
    out = EXP[LOG[v] + _LOG[c]]
    out[v == 0] = 0
    return out


def xor_sum(rows, axis=0):
    """Field sum of packets: XOR-reduce along ``axis``."""
    return np.bitwise_xor.reduce(np.asarray(rows, dtype=np.uint8), axis=axis)


def matmul(A, B):
    """Matrix product over GF(256). ``B`` may be a vector or a matrix."""
    A = np.asarray(A, dtype=np.uint8)
    B = np.asarray(B, dtype=np.uint8)
    vec = B.ndim == 1
    if vec:
        B = B[:, None]
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"shape mismatch {A.shape} x {B.shape}")
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.uint8)
    for k in range(A.shape[1]):
        out ^= mul_array(A[:, k, None], B[None, k, :])
    return out[:, 0] if vec else out


def identity(n):
    return np.eye(n, dtype=np.uint8)


def vandermonde(points, cols):
    """Rows ``(1, a, a^2, ..., a^(cols-1))`` for each evaluation point ``a``."""
    return np.array([[power(a, j) for j in range(cols)] for a in points], dtype=np.uint8)


def solve_linear(A, b):
    """Solve ``A x = b`` over GF(256) by Gauss-Jordan elimination.

    ``b`` may be a vector or a matrix with one column per right-hand side
    (e.g. one column per payload byte). Raises :class:`SingularMatrixError`
    when some column has no pivot.
    """
    A = np.array(A, dtype=np.uint8)
    b = np.array(b, dtype=np.uint8)
    n = A.shape[0]
    if A.ndim != 2 or A.shape[1] != n:
        raise ValueError(f"A must be square, got shape {A.shape}")
    vec = b.ndim == 1
    if vec:
        b = b[:, None]
    if b.shape[0] != n:
        raise ValueError(f"right-hand side has {b.shape[0]} rows, expected {n}")

    M = np.concatenate([A, b], axis=1)
    for col in range(n):
        nz = np.flatnonzero(M[col:, col])
        if nz.size == 0:
            raise SingularMatrixError(f"no pivot in column {col}")
        piv = col + nz[0]
        if piv != col:
            M[[col, piv]] = M[[piv, col]]
        M[col] = scale(inv(int(M[col, col])), M[col])
        factors = M[:, col].copy()
        factors[col] = 0
        rows = np.flatnonzero(factors)
        if rows.size:
            M[rows] ^= mul_array(factors[rows, None], M[None, col])
    x = M[:, n:]
    return x[:, 0] if vec else x
