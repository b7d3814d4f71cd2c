"""Counter-based random streams.

Every stochastic routine derives its own Philox generator from a
(seed, domain, index) triple.  Streams for distinct triples never overlap,
so results do not depend on execution order or on how work is split across
workers.
"""

import numpy as np

# domain tags keep unrelated consumers off each other's streams
DOMAIN_PROTOCOL = 0
DOMAIN_MODELS = 1

_MASK64 = (1 << 64) - 1


def substream(seed: int, domain: int, index: int) -> np.random.Generator:
    """Independent generator for the given (seed, domain, index) triple."""
    key = np.array([seed & _MASK64, index & _MASK64], dtype=np.uint64)
    counter = np.array([0, 0, 0, domain & _MASK64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key, counter=counter))
