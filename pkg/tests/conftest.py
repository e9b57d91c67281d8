import os
import random
from pathlib import Path

import pytest

from specjump.exact import parse_poly
from specjump.resdata import extra_blowup, load
from specjump.resolver import resolve_germ

DATA = Path(__file__).parent / "data"

CORPUS = {
    "cusp": "x^2 + y^3",
    "node": "x*y",
    "three_lines": "x^3 + y^3",
    "smooth": "y",
}

# reduced germs singular (if at all) only at the origin
EXTENDED = {
    **CORPUS,
    "a4": "x^2 + y^5",
    "e6": "x^3 + y^4",
    "e8": "x^3 + y^5",
    "d4": "x*y*(x + y)",
    "d5": "y*(x^2 + y^3)",
    "two_cusps": "(x^2 - y^3)*(x^3 - y^2)",
    "tangent_cusps": "(y^2 - x^3)*(y^2 - 2*x^3)",
    "a3": "y^2 - x^4",
    "conic_pair": "x^2 + y^2",
    "puiseux2": "(x^2 - y^3)^2 + x^5",
    "mixed": "x^5 - x*y^2",
}


def seed() -> int:
    return int(os.environ.get("SPECJUMP_SEED", "0"))


@pytest.fixture(scope="session")
def resolved():
    return {name: resolve_germ(parse_poly(text)) for name, text in EXTENDED.items()}


@pytest.fixture(scope="session")
def corpus_files():
    return {name: load(DATA / f"{name}.json") for name in CORPUS}


def perturb(data, rng: random.Random, steps: int):
    """Apply ``steps`` free-point blow-ups at randomly chosen exceptional curves."""
    for _ in range(steps):
        data = extra_blowup(data, rng.choice([c.id for c in data.exceptional]))
    return data
