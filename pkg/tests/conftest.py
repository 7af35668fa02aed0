"""Shared fixtures. Session scope keeps the heavier constructions one-off."""

import numpy as np
import pytest

from endotube import fixtures as fx


@pytest.fixture(scope="session")
def vec_z2():
    return fx.fixture("vec_Z2")


@pytest.fixture(scope="session")
def vec_s3():
    return fx.fixture("vec_S3")


@pytest.fixture(scope="session")
def rep_s3_pair():
    return fx.fixture("rep_S3_self")


@pytest.fixture(scope="session")
def rep_s3_cat(rep_s3_pair):
    return rep_s3_pair[0]


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
