import pytest

from neutralsets.errors import CodeError, HorizonError, PreconditionError
from neutralsets.models.bifix import code_kind, uniform_code
from neutralsets.models.checks import all_passed
from neutralsets.models.core import (
    build_from_words,
    classify,
    extension_stats,
    multiplicity,
    recurrence_report,
)
from neutralsets.models.decoding import (
    coding_morphism,
    decode,
    extended_multiplicity,
    verify_decoding_neutral,
)
from neutralsets.models.words import Alphabet

from tests.conftest import CASSAIGNE_CODE


def test_coding_morphism_order():
    f = coding_morphism(['ba', 'ab'])
    assert f.letters == ('u', 'v')
    assert f.images == ('ab', 'ba')
    assert f.apply('uvu') == 'abbaab'
    assert f.to_dict() == {'letters': {'u': 'ab', 'v': 'ba'}}


def test_coding_morphism_of_cassaigne_code(cassaigne):
    f = coding_morphism(CASSAIGNE_CODE, alphabet=cassaigne.alphabet)
    assert f.images == ('ab', 'acd', 'bca', 'bcd', 'c', 'da')
    assert len(set(f.letters)) == 6


def test_coding_morphism_rejects_non_codes():
    with pytest.raises(CodeError):
        coding_morphism(['a', 'b', 'ab'])


def test_periodic_decoding_is_not_recurrent(periodic_ab):
    f = coding_morphism(['ab', 'ba'])
    U = decode(periodic_ab, f, 6)
    expected = build_from_words(['u' * 6, 'v' * 6], 6, alphabet=Alphabet(('u', 'v')))
    assert U == expected
    assert 'uv' not in U
    report = recurrence_report(U)
    assert not report.recurrent
    assert report.failing_pair == ('u', 'v')


def test_decoding_by_the_alphabet_renames_letters(fibonacci):
    f = coding_morphism(['a', 'b'], letters='xy')
    U = decode(fibonacci, f)
    assert U.horizon == fibonacci.horizon
    assert [U.complexity(n) for n in range(8)] == [fibonacci.complexity(n) for n in range(8)]


def test_decode_horizon_guard(cassaigne):
    f = coding_morphism(CASSAIGNE_CODE, alphabet=cassaigne.alphabet)
    with pytest.raises(HorizonError):
        decode(cassaigne, f, 5)


def test_cassaigne_decoding_size(cassaigne):
    f = coding_morphism(CASSAIGNE_CODE, alphabet=cassaigne.alphabet)
    U = decode(cassaigne, f, 4)
    assert len(U.alphabet) == 6
    assert U.complexity(1) == 6
    assert all(f.apply(v) in cassaigne for v in U)


def test_extended_multiplicity_reduces_to_letters(cassaigne):
    letters = list(cassaigne.alphabet)
    for word in cassaigne.words(6):
        stats = extended_multiplicity(cassaigne, word, letters, letters)
        assert stats.m_xy == extension_stats(cassaigne, word).m


def test_extended_multiplicity_with_maximal_codes(cassaigne):
    suffix = code_kind(['a', 'ac', 'b', 'bc', 'd'])
    prefix = code_kind(['a', 'b', 'ca', 'cd', 'd'])
    for word in cassaigne.words(4):
        stats = extended_multiplicity(cassaigne, word, suffix, prefix)
        assert stats.m_xy == multiplicity(cassaigne, word)


def test_extended_multiplicity_brute_force(cassaigne):
    suffix = ['a', 'ac', 'b', 'bc', 'd']
    prefix = ['a', 'b', 'ca', 'cd', 'd']
    stats = extended_multiplicity(cassaigne, 'a', suffix, prefix)
    edges = {(x, y) for x in suffix for y in prefix if x + 'a' + y in cassaigne}
    assert stats.edges == edges
    assert stats.m_xy == len(edges) - len(stats.left_code) - len(stats.right_code) + 1


def test_decoding_preserves_neutrality(cassaigne):
    report = verify_decoding_neutral(cassaigne, CASSAIGNE_CODE, 4)
    assert all_passed(report.checks)
    decoded = classify(report.decoded)
    assert decoded.neutral
    assert decoded.characteristic == 2


def test_uniform_code_decoding(cassaigne):
    report = verify_decoding_neutral(cassaigne, uniform_code(cassaigne, 2), 5)
    assert all_passed(report.checks)
    assert report.decoded.horizon == 5


def test_decoding_by_the_alphabet(cassaigne):
    report = verify_decoding_neutral(cassaigne, list(cassaigne.alphabet), 6)
    assert all_passed(report.checks)


def test_decoding_needs_a_maximal_code(cassaigne):
    with pytest.raises(PreconditionError):
        verify_decoding_neutral(cassaigne, ['ab', 'c'], 4)
