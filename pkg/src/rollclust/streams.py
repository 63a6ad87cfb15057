"""Named reproducible random streams.

Every piece of randomness in the package flows from a root integer seed
through a named sub-stream, so results never depend on evaluation order.
Seeds are derived with blake2b over the root and the stream name parts.
"""

from __future__ import annotations

import hashlib
import random

_MASK64 = (1 << 64) - 1


def derive_seed(root: int, *parts) -> int:
    """Derive a 64-bit sub-stream seed from a root seed and name parts.

    Parts may be ints or strings; distinct part tuples give independent
    streams for all practical purposes.
    """
    h = hashlib.blake2b(digest_size=8)
    h.update((root & _MASK64).to_bytes(8, "little"))
    for part in parts:
        if isinstance(part, int):
            h.update(b"i")
            h.update(part.to_bytes(16, "little", signed=True))
        else:
            data = str(part).encode("utf-8")
            h.update(b"s")
            h.update(len(data).to_bytes(4, "little"))
            h.update(data)
    return int.from_bytes(h.digest(), "little")


def make_rng(root: int, *parts) -> random.Random:
    """A fresh random.Random on the sub-stream named by parts."""
    return random.Random(derive_seed(root, *parts))
