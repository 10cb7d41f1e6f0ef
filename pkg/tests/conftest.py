"""Shared systems and tables; session-scoped so memo caches are reused."""

import pytest

from klcells.antispherical import ASTable
from klcells.coxeter import build_system
from klcells.hecke import KLTable
from klcells.rootdata import RootDatum


@pytest.fixture(scope="session")
def a1_affine():
    return build_system("A1", affine=True)


@pytest.fixture(scope="session")
def a2_affine():
    return build_system("A2", affine=True)


@pytest.fixture(scope="session")
def b2_affine():
    return build_system("B2", affine=True)


@pytest.fixture(scope="session")
def g2_affine():
    return build_system("G2", affine=True)


@pytest.fixture(scope="session")
def a2_finite():
    return build_system("A2")


@pytest.fixture(scope="session")
def kl_a2(a2_finite):
    return KLTable(a2_finite)


@pytest.fixture(scope="session")
def kl_a1_affine(a1_affine):
    return KLTable(a1_affine)


@pytest.fixture(scope="session")
def kl_a2_affine(a2_affine):
    return KLTable(a2_affine)


@pytest.fixture(scope="session")
def as_a1(a1_affine):
    return ASTable(a1_affine)


@pytest.fixture(scope="session")
def as_a2(a2_affine):
    return ASTable(a2_affine)


@pytest.fixture(scope="session")
def as_b2(b2_affine):
    return ASTable(b2_affine)


@pytest.fixture(scope="session")
def as_g2(g2_affine):
    return ASTable(g2_affine)


@pytest.fixture(scope="session")
def rd_a2():
    return RootDatum("A2")


@pytest.fixture(scope="session")
def rd_b2():
    return RootDatum("B2")


@pytest.fixture(scope="session")
def rd_g2():
    return RootDatum("G2")
