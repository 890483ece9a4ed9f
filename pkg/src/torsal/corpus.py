"""Small random arrangements for property checks."""
import random
from fractions import Fraction
from math import gcd

from .toric import Hypertorus, InputError, ToricArrangement

OFFSETS = (Fraction(0), Fraction(1, 2), Fraction(1, 3))


def random_arrangement(rng, dim=2, max_tori=4, max_entry=2):
    """A random essential arrangement with primitive characters.

    Characters have entries in [-max_entry, max_entry]; offsets are taken
    from 0, 1/2 and 1/3.
    """
    while True:
        n = rng.randint(dim, max(dim, max_tori))
        tori = []
        for i in range(n):
            while True:
                chi = tuple(rng.randint(-max_entry, max_entry) for _ in range(dim))
                g = 0
                for a in chi:
                    g = gcd(g, a)
                if g == 1:
                    break
            tori.append(Hypertorus("H%d" % i, chi, rng.choice(OFFSETS)))
        try:
            return ToricArrangement(dim, tori)
        except InputError:
            continue


def corpus(seed=0, count=10, dims=(1, 2, 2, 2), max_tori=4):
    rng = random.Random(seed)
    return [random_arrangement(rng, rng.choice(dims), max_tori) for _ in range(count)]
