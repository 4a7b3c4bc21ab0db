"""Domain-separated extendable-output hashing.

All hash and seed-expansion duties on the signature/KEM side (matrix
expansion, secret sampling, message digests, challenge derivation, key
derivation) go through SHAKE-256 with a single domain byte prepended to
the input.  The domain byte keeps the different uses of the XOF from
ever colliding on the same input string.

The mask PRF deliberately does NOT live here: it uses the lightweight
320-bit sponge in :mod:`pqsecagg.sponge` (see that module for the
rationale and the bit-exact layout).
"""

import hashlib

# Domain bytes.  Never reuse a value.
DOM_SEED = 0x00        # per-entity seed derivation from a master seed
DOM_SIG_MATRIX = 0x01  # signature scheme matrix expansion
DOM_SIG_ETA = 0x02     # signature secret vectors s1, s2
DOM_SIG_MASK = 0x03    # signing mask vector y (ExpandMask)
DOM_SIG_TR = 0x04      # public-key hash tr
DOM_SIG_U = 0x05       # precomputable digest u = CRH(tr)
DOM_SIG_MSG = 0x06     # message digest fed into the challenge
DOM_SIG_MU = 0x07      # message-bound seed for fallback mask sampling
DOM_SIG_CHALLENGE = 0x08  # challenge digest
DOM_SIG_BALL = 0x09    # challenge digest -> sparse polynomial stream
DOM_KEM_MATRIX = 0x0A  # KEM matrix expansion
DOM_KEM_NOISE = 0x0B   # KEM noise sampling (CBD)
DOM_KEM_HPK = 0x0C     # hash of the KEM public key
DOM_KEM_G = 0x0D       # (pre-key, enc randomness) derivation
DOM_KEM_KDF = 0x0E     # final shared-secret KDF
DOM_KEM_HCT = 0x0F     # hash of the ciphertext
DOM_MASK_KEY = 0x10    # mask-PRF key derivation from a shared secret


def xof(domain: int, data: bytes, out_len: int) -> bytes:
    """Squeeze ``out_len`` bytes of SHAKE-256(domain_byte || data)."""
    return hashlib.shake_256(bytes([domain]) + data).digest(out_len)


def digest32(domain: int, data: bytes) -> bytes:
    return xof(domain, data, 32)


def digest48(domain: int, data: bytes) -> bytes:
    return xof(domain, data, 48)


class XofStream:
    """Incremental byte stream over the same domain-separated XOF.

    Rejection samplers pull unbounded amounts; the stream re-squeezes the
    underlying SHAKE object in growing chunks so the bytes are identical
    to a single long ``digest`` call.
    """

    def __init__(self, domain: int, data: bytes):
        self._shake = hashlib.shake_256(bytes([domain]) + data)
        self._buf = b""
        self._served = 0
        self._chunk = 256

    def read(self, n: int) -> bytes:
        while len(self._buf) - self._served < n:
            need = self._served + n + self._chunk
            self._buf = self._shake.digest(need)
            self._chunk *= 2
        out = self._buf[self._served:self._served + n]
        self._served += n
        return out
