from fractions import Fraction

import pytest

from neutralsets.errors import InputError, MembershipError, PreconditionError, SingularityError
from neutralsets.models.checks import all_passed
from neutralsets.models.core import classify, extension_stats
from neutralsets.models.iet import (
    IETSpec,
    Interval,
    coding_tree,
    find_connections,
    make_iet,
    natural_coding,
    regular_points,
    sigma_coding,
    verify_iet_neutral,
)
from neutralsets.models.quadratic import QuadraticReal
from neutralsets.models.words import Alphabet


def test_rotation3_partitions(rotation3, alpha):
    T = rotation3
    assert T.I['a'] == Interval.of(0, 1 - 2 * alpha)
    assert T.I['c'] == Interval.of(1 - alpha, 1)
    assert T.J['c'] == Interval.of(0, alpha)
    assert T.J['a'] == Interval.of(alpha, 1 - alpha)
    assert T.gamma_points == [1 - 2 * alpha, 1 - alpha]
    assert T.delta_points == [alpha, 1 - alpha]


def test_intervals_are_mapped_onto_their_images(rotation3):
    for a in rotation3.alphabet:
        assert rotation3.image(a, rotation3.I[a]) == rotation3.J[a]
        assert rotation3.preimage(a, rotation3.J[a]).lo == rotation3.I[a].lo


def test_lengths_are_preserved(rotation3):
    total = QuadraticReal(0)
    for a in rotation3.alphabet:
        assert rotation3.I[a].length == rotation3.J[a].length
        total = total + rotation3.J[a].length
    assert total == rotation3.domain.length


def test_rotation3_natural_coding(rotation3):
    S = natural_coding(rotation3, 3)
    assert [S.complexity(n) for n in range(4)] == [1, 3, 4, 5]
    assert len(S) - 1 == 12
    assert S.of_length(2) == {'ab', 'bc', 'ca', 'cb'}
    assert extension_stats(S, 'a').edges == {('c', 'b')}
    assert extension_stats(S, '').m == -1


def test_rotation3_connections(rotation3, alpha):
    report = find_connections(rotation3, 50)
    assert report.connections == ((1 - alpha, 1 - alpha, 0),)
    assert report.only_length_zero
    assert report.components == (Interval.of(0, 1 - alpha), Interval.of(1 - alpha, 1))
    assert report.component_of(rotation3.J['b']) == 1
    assert report.component_of(rotation3.I['b']) == 0
    assert len(report.to_dict()['connections']) == 1


def test_rotation3_is_neutral_of_characteristic_two(rotation3):
    report, tree, checks = verify_iet_neutral(rotation3, 10, 50)
    assert all_passed(checks), [c.name for c in checks if not c.passed]
    names = {c.name for c in checks}
    assert {'iet-neutral', 'iet-tree', 'iet-characteristic',
            'iet-extension-intervals', 'iet-extension-components'} <= names
    S = tree.factor_set
    assert classify(S).characteristic == 2
    assert [S.complexity(n) for n in range(1, 11)] == [n + 2 for n in range(1, 11)]


def test_rotation2_is_sturmian(rotation2):
    report, tree, checks = verify_iet_neutral(rotation2, 10, 50)
    assert report.connections == ()
    assert len(report.components) == 1
    assert all_passed(checks)
    S = tree.factor_set
    assert classify(S).characteristic == 1
    assert [S.complexity(n) for n in range(1, 11)] == [n + 1 for n in range(1, 11)]


def test_word_intervals(rotation3):
    tree = coding_tree(rotation3, 4)
    i_ab, j_ab = tree.interval_of_word('ab')
    assert i_ab == rotation3.I['a']
    assert j_ab.within(rotation3.J['b'])
    with pytest.raises(MembershipError):
        tree.interval_of_word('aa')


def test_identity_exchange(identity_iet):
    assert identity_iet.apply(Fraction(1, 3)) == Fraction(1, 3)
    assert natural_coding(identity_iet, 4).of_length(4) == {'aaaa'}
    assert find_connections(identity_iet, 5).components == (identity_iet.domain,)


def test_flip_reverses_the_interval():
    T = make_iet(IETSpec(Alphabet(('a',)), ('a',), ('a',), {'a': 1}, frozenset('a')))
    assert T.apply(Fraction(1, 3)) == Fraction(2, 3)
    assert T.apply_inverse(Fraction(2, 3)) == Fraction(1, 3)
    assert T.image('a', Interval.of(0, Fraction(1, 4))) == Interval(
        QuadraticReal(Fraction(3, 4)), QuadraticReal(1), -1)


def test_inverse_undoes_the_map(rotation3):
    for x in regular_points(rotation3, 10, 5):
        assert rotation3.apply_inverse(rotation3.apply(x)) == x


def test_singular_points(rotation3, alpha):
    with pytest.raises(SingularityError):
        rotation3.apply(1 - 2 * alpha)
    with pytest.raises(SingularityError):
        rotation3.letter_at(0)
    with pytest.raises(SingularityError):
        rotation3.apply_inverse(alpha)


def test_sigma_coding(rotation2):
    assert sigma_coding(rotation2, Fraction(1, 2), 5) == 'babab'


@pytest.mark.parametrize('name', ['rotation3', 'rotation2'])
def test_orbits_stay_in_the_natural_coding(request, name):
    T = request.getfixturevalue(name)
    S = natural_coding(T, 8)
    points = regular_points(T, 20, 200)
    assert len(points) == 20
    for z in points:
        word = sigma_coding(T, z, 200)
        assert all(word[i:i + 8] in S for i in range(len(word) - 7))


def test_irrational_start_orbit(rotation2, alpha):
    S = natural_coding(rotation2, 8)
    word = sigma_coding(rotation2, alpha / 2, 50)
    assert word[0] == 'a'
    assert all(word[i:i + n] in S for n in range(1, 9) for i in range(len(word) - n + 1))


def test_first_letter_of_an_orbit(rotation3, alpha):
    assert sigma_coding(rotation3, alpha / 2, 3)[0] == rotation3.letter_at(alpha / 2) == 'a'


@pytest.mark.parametrize('lengths, order2', [
    ({'a': 1, 'b': -1}, ('b', 'a')),
    ({'a': 1}, ('b', 'a')),
    ({'a': 1, 'b': 1}, ('a', 'a')),
])
def test_invalid_exchanges(lengths, order2):
    with pytest.raises(InputError):
        make_iet(IETSpec(Alphabet(('a', 'b')), ('a', 'b'), order2, lengths))


def test_domain_must_match_lengths():
    with pytest.raises(InputError):
        make_iet(IETSpec(Alphabet(('a',)), ('a',), ('a',), {'a': 1}, frozenset(),
                         Interval.of(0, 2)))


def test_positive_length_connection_is_refused():
    # a rational exchange: the singular orbits meet
    T = make_iet(IETSpec(Alphabet(('a', 'b', 'c')), ('a', 'b', 'c'), ('c', 'b', 'a'),
                         {'a': Fraction(1, 4), 'b': Fraction(1, 4), 'c': Fraction(1, 2)}))
    report = find_connections(T, 10)
    assert not report.only_length_zero
    with pytest.raises(PreconditionError):
        verify_iet_neutral(T, 6, 10)


def test_negative_connection_bound(rotation3):
    with pytest.raises(InputError):
        find_connections(rotation3, -1)
