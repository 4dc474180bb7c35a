"""
Shared fixtures: the Cassaigne, Fibonacci and periodic sets and the two
rotation interval exchanges.
"""

import json

import pytest

from neutralsets import create_app
from neutralsets.models.core import Morphism, build_from_morphic_fixed_point, build_from_words
from neutralsets.models.iet import IETSpec, make_iet
from neutralsets.models.quadratic import golden_alpha
from neutralsets.models.words import Alphabet

CASSAIGNE_RULES = {'a': 'ab', 'b': 'cda', 'c': 'cd', 'd': 'abc'}
CASSAIGNE_CODE = ['ab', 'acd', 'bca', 'bcd', 'c', 'da']


@pytest.fixture(scope='session')
def cassaigne_morphism():
    return Morphism.from_rules(CASSAIGNE_RULES)


@pytest.fixture(scope='session')
def cassaigne(cassaigne_morphism):
    return build_from_morphic_fixed_point(cassaigne_morphism, 'a', 14)


@pytest.fixture(scope='session')
def cassaigne_deep(cassaigne_morphism):
    """Large horizon so that return words to short words are all visible."""
    return build_from_morphic_fixed_point(cassaigne_morphism, 'a', 48)


@pytest.fixture(scope='session')
def fibonacci():
    return build_from_morphic_fixed_point(Morphism.from_rules({'a': 'ab', 'b': 'a'}), 'a', 20)


@pytest.fixture(scope='session')
def periodic_ab():
    return build_from_words(['ab' * 20], 12)


@pytest.fixture(scope='session')
def alpha():
    return golden_alpha()


@pytest.fixture(scope='session')
def rotation3(alpha):
    return make_iet(IETSpec(
        Alphabet(('a', 'b', 'c')), ('a', 'b', 'c'), ('c', 'a', 'b'),
        {'a': 1 - 2 * alpha, 'b': alpha, 'c': alpha},
    ))


@pytest.fixture(scope='session')
def rotation2(alpha):
    return make_iet(IETSpec(
        Alphabet(('a', 'b')), ('a', 'b'), ('b', 'a'),
        {'a': alpha, 'b': 1 - alpha},
    ))


@pytest.fixture(scope='session')
def identity_iet():
    return make_iet(IETSpec(Alphabet(('a',)), ('a',), ('a',), {'a': 1}))


@pytest.fixture
def app():
    return create_app('testing')


@pytest.fixture
def write_json(tmp_path):
    def write(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return str(path)
    return write


@pytest.fixture
def cassaigne_file(write_json):
    return write_json('cassaigne.json', {'rules': CASSAIGNE_RULES, 'seed': 'a'})


@pytest.fixture
def rotation3_file(write_json):
    return write_json('rotation3.json', {
        'd': 5,
        'alphabet': ['a', 'b', 'c'],
        'order1': ['a', 'b', 'c'],
        'order2': ['c', 'a', 'b'],
        'lengths': {
            'a': {'p': '-2', 'q': '1'},
            'b': {'p': '3/2', 'q': '-1/2'},
            'c': {'p': '3/2', 'q': '-1/2'},
        },
        'flips': [],
    })
