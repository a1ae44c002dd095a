import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from scrapcad import inventory, parts
from scrapcad.model import Document
from scrapcad.session import Session


@pytest.fixture
def doc():
    return Document()


@pytest.fixture
def session():
    return Session()


def make_scrap(doc, length=1000.0, width=100.0, thickness=20.0, **kw):
    return inventory.register_scrap(doc, (length, width, thickness), **kw)


def make_part(doc, scrap_id=None, dims=None, **kw):
    return parts.spawn_part(doc, scrap_id=scrap_id, dims=dims, **kw)
