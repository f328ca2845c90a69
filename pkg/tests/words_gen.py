"""Random group words for collection tests."""

import random

from nildom.words import gen_name


def random_word(rng: random.Random, rank: int, length: int = 6, max_exp: int = 3, depth: int = 1) -> str:
    parts = []
    for _ in range(length):
        r = rng.random()
        if depth and r < 0.2:
            a = random_word(rng, rank, rng.randint(1, 2), max_exp, depth - 1)
            b = random_word(rng, rank, rng.randint(1, 2), max_exp, depth - 1)
            parts.append(f"[{a},{b}]")
        else:
            e = rng.choice([k for k in range(-max_exp, max_exp + 1) if k])
            parts.append(f"{gen_name(rng.randrange(rank), rank)}^{e}")
    return " ".join(parts) or "1"
