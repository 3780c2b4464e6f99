from __future__ import annotations

import functools
import random
import time

from homotransfer.fields import QQ
from homotransfer.graded import BigradedSpace, Complex, GradedMap
from homotransfer.factory import random_complex, random_map

WEIGHTS = range(-2, 3)

# criterion number -> (title, passed, seconds, budget)
ACCEPTANCE: dict = {}


def criterion(number: int, title: str, budget: float):
    """Time a test, record its verdict for the summary, and enforce its time budget."""

    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            start = time.perf_counter()
            ok = False
            try:
                fn(*args, **kwargs)
                ok = True
            finally:
                elapsed = time.perf_counter() - start
                within = elapsed < budget
                ACCEPTANCE[number] = (title, ok and within, elapsed, budget)
            assert within, f"criterion {number} took {elapsed:.1f}s, budget {budget}s"

        return run

    return wrap


def random_space(rng: random.Random, max_dim: int = 6, weights=WEIGHTS, name=None, min_dim: int = 1) -> BigradedSpace:
    dim = rng.randint(min_dim, max_dim)
    basis = [(f"e{i}", rng.randint(-1, 2), rng.choice(list(weights))) for i in range(dim)]
    return BigradedSpace(basis, name=name)


def random_bidegree(rng: random.Random):
    return rng.randint(-2, 2), rng.randint(-1, 1)


def complexes(rng: random.Random, max_dim: int = 6, field=QQ, weights=WEIGHTS):
    return random_complex(rng, max_dim, weights, field)


def reachable_map(rng: random.Random, source: BigradedSpace, target: BigradedSpace, field=QQ, density=0.6) -> GradedMap:
    """A random map in a bidegree that actually has room for entries when possible."""
    options = {
        (q - p, n - m)
        for p, n in zip(source.degrees, source.weights)
        for q, m in zip(target.degrees, target.weights)
    }
    bd = rng.choice(sorted(options)) if options and rng.random() < 0.9 else random_bidegree(rng)
    return random_map(rng, source, target, bd, field, density)
