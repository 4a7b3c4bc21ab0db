"""Lightweight 320-bit sponge permutation for the mask PRF.

The per-iteration mask vectors are derived from a keyed counter-mode XOF
built on a 5x64-bit permutation (12 rounds of the classic lightweight
round function: round-constant addition, 5-bit S-box layer, linear
rotation diffusion).  Counter mode keeps every output block independent,
so a whole mask vector is produced by one wide vectorized permutation
call instead of a long squeeze chain.

Bit-exact layout (all words big-endian):

* key schedule: ``S = P12(IV ^ domain, k0, k1, k2, k3)`` where
  ``k0..k3`` are the 32-byte key split into four 8-byte words and
  ``IV = 4D 50 52 46 01 08 0C 00`` ("MPRF", version 1, 8-byte output
  rate, 12 rounds, zero pad) with the domain byte XORed into the lowest
  IV byte.
* block i of iteration t: ``B = P12(S0 ^ t, S1 ^ i, S2, S3, S4)`` with
  ``t`` encoded as an 8-byte big-endian word.
* block output: the 8 bytes of ``B0``; the high 32 bits become mask
  word ``2i`` and the low 32 bits word ``2i + 1``.

Words of a mask vector are elements of Z_2^32.
"""

from functools import lru_cache

import numpy as np

MASK_DOMAIN = 0x01

_IV = int.from_bytes(b"MPRF\x01\x08\x0c\x00", "big")
_U64 = np.uint64
_MASK64 = np.uint64(0xFFFFFFFFFFFFFFFF)


def _rotr(x, r):
    return (x >> _U64(r)) | (x << _U64(64 - r))


def permute(state):
    """12-round permutation on a 5-element list of equal-length uint64 arrays.

    The list entries are replaced with the permuted words; the list itself
    is returned for convenience.
    """
    s0, s1, s2, s3, s4 = state
    for rnd in range(12):
        s2 = s2 ^ _U64(0xF0 - rnd * 0x10 + rnd)
        # substitution layer
        s0 = s0 ^ s4
        s4 = s4 ^ s3
        s2 = s2 ^ s1
        t0 = (s0 ^ _MASK64) & s1
        t1 = (s1 ^ _MASK64) & s2
        t2 = (s2 ^ _MASK64) & s3
        t3 = (s3 ^ _MASK64) & s4
        t4 = (s4 ^ _MASK64) & s0
        s0 = s0 ^ t1
        s1 = s1 ^ t2
        s2 = s2 ^ t3
        s3 = s3 ^ t4
        s4 = s4 ^ t0
        s1 = s1 ^ s0
        s0 = s0 ^ s4
        s3 = s3 ^ s2
        s2 = s2 ^ _MASK64
        # linear diffusion layer
        s0 = s0 ^ _rotr(s0, 19) ^ _rotr(s0, 28)
        s1 = s1 ^ _rotr(s1, 61) ^ _rotr(s1, 39)
        s2 = s2 ^ _rotr(s2, 1) ^ _rotr(s2, 6)
        s3 = s3 ^ _rotr(s3, 10) ^ _rotr(s3, 17)
        s4 = s4 ^ _rotr(s4, 7) ^ _rotr(s4, 41)
    state[0], state[1], state[2], state[3], state[4] = s0, s1, s2, s3, s4
    return state


@lru_cache(maxsize=8192)
def _keyed_state(key: bytes, domain: int):
    if len(key) != 32:
        raise ValueError(f"sponge key must be 32 bytes, got {len(key)}")
    words = [int.from_bytes(key[i:i + 8], "big") for i in range(0, 32, 8)]
    state = [np.array([_IV ^ domain], dtype=np.uint64)]
    state += [np.array([w], dtype=np.uint64) for w in words]
    permute(state)
    return tuple(int(s[0]) for s in state)


def squeeze_blocks(key: bytes, domain: int, t_per_block, idx_per_block):
    """Counter-mode squeeze: one uint64 output word per (t, index) pair."""
    base = _keyed_state(key, domain)
    t_arr = np.asarray(t_per_block, dtype=np.uint64)
    i_arr = np.asarray(idx_per_block, dtype=np.uint64)
    state = [
        np.full(t_arr.shape, base[0], dtype=np.uint64) ^ t_arr,
        np.full(t_arr.shape, base[1], dtype=np.uint64) ^ i_arr,
        np.full(t_arr.shape, base[2], dtype=np.uint64),
        np.full(t_arr.shape, base[3], dtype=np.uint64),
        np.full(t_arr.shape, base[4], dtype=np.uint64),
    ]
    permute(state)
    return state[0]
