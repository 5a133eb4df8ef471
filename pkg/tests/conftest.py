import functools

import pytest

from palinwidth.genset import catalog_group, sigma_class_genset
from palinwidth.perm import from_cycles
from palinwidth.words import GeneratingSet
from palinwidth.group import closure


@functools.lru_cache(maxsize=None)
def cat(name):
    return catalog_group(name)


@functools.lru_cache(maxsize=None)
def sigma(n):
    return sigma_class_genset(n)


def make(gens_cycles, degree, labels=None):
    perms = [from_cycles(c, degree) for c in gens_cycles]
    labels = labels or [chr(ord("x") + i) if i < 3 else f"g{i}" for i in range(len(perms))]
    gens = GeneratingSet(labels, perms, degree)
    return gens, closure(perms)


@pytest.fixture(scope="session")
def s3():
    # x = (1 2), y = (2 3)
    return make([[(0, 1)], [(1, 2)]], 3)


@pytest.fixture(scope="session")
def a5():
    return cat("A5")


@pytest.fixture(scope="session")
def s4():
    return cat("S4")


@pytest.fixture(scope="session")
def sigma5():
    return sigma(5)


SMALL_CATALOG = ["A3", "A4", "S2", "S3", "S4", "D6", "D8", "D10", "D12", "D14", "D16", "D18", "D20",
                 "D22", "D24"] + [f"C{n}" for n in range(1, 25)]

CATALOG = SMALL_CATALOG + ["A5", "A6", "PSL(2,5)", "PSL(2,7)", "PSL(2,11)", "PSL(2,13)", "S5"]
