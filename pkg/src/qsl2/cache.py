"""Persisted structure-constant cache.

Stores the memoized single-level collision kernel entries, keyed by
(level j, E-depth a, F-depth b), for one (ell, level, root exponent)
context.  Binary layout, all integers little-endian:

    magic   8 bytes  b"QSL2EFC1"
    header  u32 version, u32 ell, u32 level, u32 root_exponent,
            u32 entry count, 32-byte SHA-256 of the body
    body    entries: u32 j, u32 a, u32 b, u32 nterms, then per term
            u64 m, u64 n, u64 p, u16 ncoeffs, then per coefficient a
            length-prefixed (u16) ASCII decimal rational "num/den"

Loading a file whose header disagrees with the session parameters is a
refusal, never a silent recompute; a body hash mismatch likewise.
"""

from __future__ import annotations

import hashlib
import struct
from fractions import Fraction

from .algebra import AlgebraParams, engine_for
from .cyclotomic import CycNum

MAGIC = b"QSL2EFC1"
VERSION = 1


class CacheError(Exception):
    """Refusal to use a cache file (wrong parameters, version, or hash)."""


def _pack_body(entries) -> bytes:
    chunks = []
    for (j, a, b) in sorted(entries):
        terms = entries[(j, a, b)]
        chunks.append(struct.pack("<IIII", j, a, b, len(terms)))
        for mono in sorted(terms):
            coeff = terms[mono]
            chunks.append(struct.pack("<QQQ", *mono))
            chunks.append(struct.pack("<H", len(coeff.coeffs)))
            for c in coeff.coeffs:
                text = f"{c.numerator}/{c.denominator}".encode("ascii")
                chunks.append(struct.pack("<H", len(text)))
                chunks.append(text)
    return b"".join(chunks)


def save_cache(path, params: AlgebraParams) -> int:
    """Write the engine's collision-kernel memo table; returns entry count."""
    engine = engine_for(params)
    entries = engine.export_ef()
    body = _pack_body(entries)
    digest = hashlib.sha256(body).digest()
    header = MAGIC + struct.pack(
        "<IIIII", VERSION, params.ell, params.level,
        params.root_exponent % params.ell, len(entries)) + digest
    with open(path, "wb") as fh:
        fh.write(header + body)
    return len(entries)


def load_cache(path, params: AlgebraParams) -> int:
    """Load a cache file into the engine after validating the header;
    returns the number of entries loaded."""
    with open(path, "rb") as fh:
        data = fh.read()
    if len(data) < len(MAGIC) + 20 + 32 or not data.startswith(MAGIC):
        raise CacheError(f"{path}: not a structure-constant cache file")
    off = len(MAGIC)
    version, ell, level, root, count = struct.unpack_from("<IIIII", data, off)
    off += 20
    digest = data[off:off + 32]
    off += 32
    if version != VERSION:
        raise CacheError(f"{path}: cache version {version}, expected {VERSION}")
    got = (ell, level, root)
    want = (params.ell, params.level, params.root_exponent % params.ell)
    if got != want:
        raise CacheError(
            f"{path}: cache is for (ell, level, root) = {got}, session uses {want}")
    body = data[off:]
    if hashlib.sha256(body).digest() != digest:
        raise CacheError(f"{path}: body hash mismatch, file is corrupt")
    entries = {}
    pos = 0
    try:
        for _ in range(count):
            j, a, b, nterms = struct.unpack_from("<IIII", body, pos)
            pos += 16
            terms = {}
            for _ in range(nterms):
                mono = struct.unpack_from("<QQQ", body, pos)
                pos += 24
                (ncoeffs,) = struct.unpack_from("<H", body, pos)
                pos += 2
                coeffs = []
                for _ in range(ncoeffs):
                    (ln,) = struct.unpack_from("<H", body, pos)
                    pos += 2
                    num, den = body[pos:pos + ln].decode("ascii").split("/")
                    coeffs.append(Fraction(int(num), int(den)))
                    pos += ln
                terms[mono] = CycNum(ell, tuple(coeffs))
            entries[(j, a, b)] = terms
    except (struct.error, ValueError) as exc:
        raise CacheError(f"{path}: truncated or malformed body") from exc
    if pos != len(body):
        raise CacheError(f"{path}: trailing bytes in body")
    engine_for(params).load_ef(entries)
    return count
