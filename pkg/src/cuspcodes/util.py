"""Small shared helpers."""

import hashlib
import random


def seeded_rng(*parts) -> random.Random:
    """A Random whose state is a stable hash of the given labels.

    Used everywhere randomness is needed, so that runs are reproducible
    byte for byte and parallel subtasks can draw from disjoint streams.
    """
    text = ":".join(str(x) for x in parts)
    digest = hashlib.sha256(text.encode()).digest()
    return random.Random(int.from_bytes(digest, "big"))
