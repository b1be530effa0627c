"""Gemeinsame Fixtures: Katalogmatrizen und der ORM-Spiegel als SQLite-Datei unter tmp_path."""

import pytest

from coxlib import catalog
from coxlib.cartan import CartanMatrix, triangle_diagram
from coxlib.numfield import FieldSpec


@pytest.fixture
def orm_url(tmp_path):
    """SQLite-URL für den ORM-Spiegel."""
    return f"sqlite:///{tmp_path}/orm.sqlite"


@pytest.fixture
def t334():
    return triangle_diagram(3, 3, 4)


@pytest.fixture
def m334():
    """(3,3,4)-Matrix mit Determinante −3."""
    return catalog.get_entry("triangle334-matrix(1)").payload


@pytest.fixture
def m334_swapped():
    return catalog.get_entry("triangle334-matrix(2)").payload


@pytest.fixture
def q5_6():
    return FieldSpec.of(5, 6)


@pytest.fixture
def decomposable():
    return CartanMatrix.from_rows([[2, 0, 0], [0, 2, -1], [0, -1, 2]])
