from ..sentinel import INCONCLUSIVE, NOT_FOUND, NOT_PRIMITIVE, NOT_RATIONAL, Sentinel


def test_repr():
    assert repr(NOT_FOUND) == "<NOT_FOUND>"
    assert repr(Sentinel("MISSING")) == "<MISSING>"


def test_sentinels_are_falsy():
    for sentinel in (NOT_FOUND, INCONCLUSIVE, NOT_RATIONAL, NOT_PRIMITIVE):
        assert not sentinel
