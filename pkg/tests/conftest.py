import json
from functools import lru_cache
from pathlib import Path

import pytest

from torsal.corpus import corpus
from torsal.generators import Generators, build_choices
from torsal.toric import ToricArrangement

DATA = Path(__file__).resolve().parent.parent / "examples-data"


def load_data(name):
    with open(DATA / name, encoding="utf-8") as fh:
        return json.load(fh)


@lru_cache(maxsize=None)
def _generators(name):
    data = load_data(name)
    arr = ToricArrangement.from_json(data)
    return Generators(arr, build_choices(arr, data.get("choices")))


@pytest.fixture(scope="session")
def example_gen():
    return _generators("paper_example.json")


@pytest.fixture(scope="session")
def example(example_gen):
    return example_gen.arr


@pytest.fixture(scope="session")
def boolean_gen():
    return _generators("boolean_example.json")


@pytest.fixture(scope="session")
def reference_table():
    return load_data("paper_example_table.json")


# ten small arrangements: d <= 2, at most four hypertori, offsets in {0, 1/2, 1/3}
RANDOM = corpus(seed=0, count=10)


@lru_cache(maxsize=None)
def random_gen(i):
    return Generators(RANDOM[i])


@pytest.fixture(params=range(len(RANDOM)), ids=lambda i: "random%d" % i)
def random_arr(request):
    return RANDOM[request.param]


@pytest.fixture(params=range(len(RANDOM)), ids=lambda i: "random%d" % i)
def random_generators(request):
    return random_gen(request.param)


def layer(arr, name):
    return arr.layer_by_name(name)


def chamber(word):
    return tuple({"+": 1, "-": -1, "0": 0}[c] for c in word)


@lru_cache(maxsize=None)
def suite_checks(which, suite):
    """Verification records, computed once per session; ``which`` is
    "example", "boolean" or a corpus index."""
    from torsal import verify
    if which == "example":
        gen = _generators("paper_example.json")
    elif which == "boolean":
        gen = _generators("boolean_example.json")
    else:
        gen = random_gen(which)
    return tuple(verify.run(gen.arr, gen, suite))


def failures(checks):
    return [(c.suite, c.name, c.detail) for c in checks if c.status == "fail"]
