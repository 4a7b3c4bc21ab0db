"""Polynomial ring arithmetic over Z_q[X]/(X^n + 1).

Shared algebra for the signature and KEM schemes.  Polynomials are numpy
``int64`` arrays of length ``n_deg`` with canonical coefficients in
``[0, q)``; vectors and matrices stack them along leading axes.  The
centered representation appears only inside norm checks and the
high/low-bits decomposition.

Two parameter sets are provided: a full-strength set matching the usual
level-II signature shape, and a small "desk" set whose modulus is tiny
enough for exhaustive testing of the decomposition identities.
"""

from dataclasses import dataclass, field

import numpy as np

from .xof import DOM_SIG_ETA, DOM_SIG_MASK, DOM_SIG_MATRIX, XofStream


class ParameterError(ValueError):
    """Raised on dimension mismatches or invalid ring parameters."""


def _is_prime(n: int) -> bool:
    # deterministic Miller-Rabin, valid for n < 3.3e24
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class RingParams:
    """Ring and rejection-sampling parameters for the signature scheme."""

    q: int
    n_deg: int
    k_rows: int
    l_cols: int
    eta: int
    gamma1: int
    gamma2: int
    beta: int
    tau: int
    name: str = "custom"
    coeff_width: int = field(init=False)
    w1_width: int = field(init=False)

    def __post_init__(self):
        if not _is_prime(self.q):
            raise ParameterError(f"q={self.q} is not prime")
        if self.n_deg < 2 or self.n_deg & (self.n_deg - 1):
            raise ParameterError(f"n_deg={self.n_deg} is not a power of two")
        if not 0 < self.beta < self.gamma1:
            raise ParameterError("need 0 < beta < gamma1")
        if (self.q - 1) % (2 * self.gamma2):
            raise ParameterError("2*gamma2 must divide q-1")
        if self.eta < 1:
            raise ParameterError("eta must be >= 1")
        object.__setattr__(self, "coeff_width", (self.q - 1).bit_length())
        buckets = (self.q - 1) // (2 * self.gamma2)
        object.__setattr__(self, "w1_width", max(1, (buckets - 1).bit_length()))


# Full-strength set: level-II-like shape with a 60-coefficient challenge.
SIG_PAPER = RingParams(
    q=8380417, n_deg=256, k_rows=4, l_cols=4,
    eta=2, gamma1=1 << 17, gamma2=(8380417 - 1) // 88, beta=120, tau=60,
    name="paper",
)

# Desk set: small modulus so decompose can be tested over all of [0, q).
SIG_DESK = RingParams(
    q=12289, n_deg=64, k_rows=2, l_cols=2,
    eta=1, gamma1=4096, gamma2=1536, beta=4, tau=4,
    name="desk",
)

SIG_PARAM_SETS = {"paper": SIG_PAPER, "desk": SIG_DESK}


def zero_poly(params: RingParams) -> np.ndarray:
    return np.zeros(params.n_deg, dtype=np.int64)


def _check_poly(params, a):
    a = np.asarray(a, dtype=np.int64)
    if a.shape[-1] != params.n_deg:
        raise ParameterError(
            f"polynomial degree {a.shape[-1]} != n_deg {params.n_deg}")
    return a


def poly_add(params: RingParams, a, b) -> np.ndarray:
    a, b = _check_poly(params, a), _check_poly(params, b)
    if a.shape != b.shape:
        raise ParameterError(f"shape mismatch {a.shape} vs {b.shape}")
    return (a + b) % params.q


def poly_sub(params: RingParams, a, b) -> np.ndarray:
    a, b = _check_poly(params, a), _check_poly(params, b)
    if a.shape != b.shape:
        raise ParameterError(f"shape mismatch {a.shape} vs {b.shape}")
    return (a - b) % params.q


def poly_mul(params: RingParams, a, b) -> np.ndarray:
    """Negacyclic product in Z_q[X]/(X^n + 1).

    Exact integer convolution followed by the X^n = -1 fold; products and
    partial sums stay far below the int64 range for all supported q.
    """
    a, b = _check_poly(params, a), _check_poly(params, b)
    if a.ndim != 1 or b.ndim != 1:
        raise ParameterError("poly_mul operates on single polynomials")
    full = np.convolve(a, b)
    n = params.n_deg
    res = np.zeros(n, dtype=np.int64)
    res[:] = full[:n]
    res[: n - 1] -= full[n:]
    return res % params.q


def matvec_mul(params: RingParams, mat, vec) -> np.ndarray:
    """Product of a (rows x cols) matrix of polynomials with a cols-vector."""
    mat = _check_poly(params, mat)
    vec = _check_poly(params, vec)
    if mat.ndim != 3 or vec.ndim != 2 or mat.shape[1] != vec.shape[0]:
        raise ParameterError(
            f"matrix/vector shapes incompatible: {mat.shape} vs {vec.shape}")
    rows = mat.shape[0]
    out = np.zeros((rows, params.n_deg), dtype=np.int64)
    for i in range(rows):
        acc = zero_poly(params)
        for j in range(vec.shape[0]):
            acc += poly_mul(params, mat[i, j], vec[j])
        out[i] = acc % params.q
    return out


def expand_matrix(params: RingParams, rho: bytes,
                  rows: int | None = None, cols: int | None = None,
                  domain: int = DOM_SIG_MATRIX) -> np.ndarray:
    """Deterministic uniform matrix from a 32-byte seed.

    Each entry is rejection-sampled from its own XOF stream seeded with
    (rho || col || row), so entries are independent and the whole matrix
    is reproducible from rho alone.
    """
    if len(rho) != 32:
        raise ParameterError("matrix seed must be 32 bytes")
    rows = params.k_rows if rows is None else rows
    cols = params.l_cols if cols is None else cols
    nbytes = (params.coeff_width + 7) // 8
    limit = 1 << params.coeff_width
    out = np.zeros((rows, cols, params.n_deg), dtype=np.int64)
    for i in range(rows):
        for j in range(cols):
            stream = XofStream(domain, rho + bytes([j, i]))
            out[i, j] = _rejection_uniform(stream, params.n_deg, nbytes,
                                           limit, params.q)
    return out


def _rejection_uniform(stream, count, nbytes, bit_limit, bound):
    """Uniform values in [0, bound) from an XOF stream, nbytes per draw."""
    vals = np.empty(count, dtype=np.int64)
    have = 0
    while have < count:
        draw = max(count - have, 32)
        raw = np.frombuffer(stream.read(draw * nbytes), dtype=np.uint8)
        raw = raw.reshape(draw, nbytes).astype(np.int64)
        cand = (raw << (8 * np.arange(nbytes, dtype=np.int64))).sum(axis=1)
        cand &= bit_limit - 1
        cand = cand[cand < bound]
        take = min(len(cand), count - have)
        vals[have:have + take] = cand[:take]
        have += take
    return vals


def sample_eta(params: RingParams, seed: bytes, length: int) -> np.ndarray:
    """Vector of polynomials with coefficients in [-eta, eta], canonical form.

    Deterministic in the seed; one XOF stream per vector entry.
    """
    span = 2 * params.eta + 1
    width = (span - 1).bit_length()
    out = np.zeros((length, params.n_deg), dtype=np.int64)
    for idx in range(length):
        stream = XofStream(DOM_SIG_ETA, seed + bytes([idx]))
        vals = _rejection_uniform(stream, params.n_deg, (width + 7) // 8,
                                  1 << width, span)
        out[idx] = (vals - params.eta) % params.q
    return out


def sample_gamma(params: RingParams, seed: bytes, nonce: int,
                 length: int | None = None) -> np.ndarray:
    """Masking vector with coefficients in (-gamma1, gamma1), canonical form.

    Deterministic in (seed, nonce); nonces partition one seed into an
    unbounded family of independent vectors.
    """
    length = params.l_cols if length is None else length
    span = 2 * params.gamma1 - 1
    width = span.bit_length()
    out = np.zeros((length, params.n_deg), dtype=np.int64)
    base = seed + nonce.to_bytes(8, "big")
    for idx in range(length):
        stream = XofStream(DOM_SIG_MASK, base + bytes([idx]))
        vals = _rejection_uniform(stream, params.n_deg, (width + 7) // 8,
                                  1 << width, span)
        out[idx] = (vals - (params.gamma1 - 1)) % params.q
    return out


def decompose(params: RingParams, r: int) -> tuple[int, int]:
    """Split r = r1 * 2*gamma2 + r0 (mod q) with r0 in (-gamma2, gamma2].

    The single point r - r0 = q - 1 folds onto the zero bucket so that
    r1 stays in [0, (q-1)/(2*gamma2)); this mirrors the usual boundary
    handling and keeps the recomposition identity exact mod q.
    """
    if not 0 <= r < params.q:
        raise ParameterError(f"residue {r} outside [0, q)")
    alpha = 2 * params.gamma2
    r0 = r % alpha
    if r0 > params.gamma2:
        r0 -= alpha
    if r - r0 == params.q - 1:
        return 0, r0 - 1
    return (r - r0) // alpha, r0


def decompose_vec(params: RingParams, r):
    """Vectorized decompose over any-shape arrays of canonical residues."""
    r = np.asarray(r, dtype=np.int64)
    alpha = 2 * params.gamma2
    r0 = r % alpha
    r0 = np.where(r0 > params.gamma2, r0 - alpha, r0)
    r1 = (r - r0) // alpha
    top = (r - r0) == params.q - 1
    r1 = np.where(top, 0, r1)
    r0 = np.where(top, r0 - 1, r0)
    return r1, r0


def high_bits(params: RingParams, r):
    return decompose_vec(params, r)[0]


def low_bits(params: RingParams, r):
    return decompose_vec(params, r)[1]


def centered(params: RingParams, v):
    """Map canonical residues to representatives in (-q/2, q/2]."""
    v = np.asarray(v, dtype=np.int64)
    return np.where(v > params.q // 2, v - params.q, v)


def inf_norm(params: RingParams, v) -> int:
    """Max absolute value over the centered coefficients."""
    v = np.asarray(v, dtype=np.int64)
    if v.size == 0:
        return 0
    return int(np.abs(centered(params, v)).max())


def inf_norm_signed(v) -> int:
    """Max absolute value of an already-centered array (e.g. low bits)."""
    v = np.asarray(v, dtype=np.int64)
    if v.size == 0:
        return 0
    return int(np.abs(v).max())


def pack_values(values, width: int) -> bytes:
    """Pack non-negative ints into a little-endian bitstream, fixed width.

    Coefficient 0 occupies the lowest bits of the first byte; this is the
    canonical serialization used by every key and message encoding.
    """
    vals = np.asarray(values, dtype=np.int64).reshape(-1)
    if vals.size == 0:
        return b""
    if vals.min() < 0 or vals.max() >= (1 << width):
        raise ParameterError(f"values out of range for width {width}")
    bits = (vals[:, None] >> np.arange(width, dtype=np.int64)) & 1
    return np.packbits(bits.astype(np.uint8).reshape(-1),
                       bitorder="little").tobytes()


def unpack_values(data: bytes, width: int, count: int) -> np.ndarray:
    """Inverse of pack_values; raises ParameterError on short input."""
    need = (count * width + 7) // 8
    if len(data) < need:
        raise ParameterError(f"need {need} bytes, got {len(data)}")
    bits = np.unpackbits(np.frombuffer(data[:need], dtype=np.uint8),
                         bitorder="little")[: count * width]
    bits = bits.reshape(count, width).astype(np.int64)
    return (bits << np.arange(width, dtype=np.int64)).sum(axis=1)


def pack_poly(params: RingParams, vec) -> bytes:
    """Canonical bytes of a polynomial or polynomial vector."""
    return pack_values(np.asarray(vec) % params.q, params.coeff_width)


def unpack_poly(params: RingParams, data: bytes, length: int) -> np.ndarray:
    """Decode a polynomial vector; rejects coefficients >= q."""
    vals = unpack_values(data, params.coeff_width, length * params.n_deg)
    if vals.max(initial=0) >= params.q:
        raise ParameterError("encoded coefficient exceeds modulus")
    return vals.reshape(length, params.n_deg)
