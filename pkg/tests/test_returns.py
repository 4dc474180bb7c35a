import pytest

from neutralsets.errors import CodeError, IncompleteEnumerationError, MembershipError
from neutralsets.models.bifix import code_kind, uniform_code
from neutralsets.models.checks import all_passed
from neutralsets.models.iet import natural_coding
from neutralsets.models.returns import (
    complete_return_words,
    right_return_words,
    verify_return_cardinality,
)
from neutralsets.models.core import build_from_words


def test_returns_to_a(cassaigne):
    # 'ad' is not a factor, so the third return word is cda
    assert right_return_words(cassaigne, 'a') == {'bca', 'bcda', 'cda'}
    report = complete_return_words(cassaigne, 'a')
    assert report.complete_returns == {'abca', 'abcda', 'acda'}
    assert report.complete_flag


def test_complete_returns_are_x_times_right_returns(cassaigne):
    for x in ['a', 'c', 'da', 'bca']:
        report = complete_return_words(cassaigne, x)
        assert report.complete_returns == {x + w for w in report.right_returns}


def test_returns_to_c(cassaigne):
    assert len(right_return_words(cassaigne, 'c')) == 3


def test_returns_to_a_periodic_letter():
    S = build_from_words(['a' * 6], 6)
    assert right_return_words(S, 'a') == {'a'}


@pytest.mark.parametrize('n', [1, 2, 3, 4])
def test_uniform_code_returns(cassaigne, n):
    code = uniform_code(cassaigne, n)
    report, checks = verify_return_cardinality(cassaigne, code)
    assert report.complete_returns == cassaigne.of_length(n + 1)
    assert len(report.complete_returns) == len(code) + 2
    assert all_passed(checks)


def test_return_cardinality_for_single_word(cassaigne):
    report, checks = verify_return_cardinality(cassaigne, 'a')
    assert [c.name for c in checks] == ['return-cardinality', 'right-return-cardinality']
    assert checks[0].lhs == 3 and checks[0].rhs == 1 + 4 - 2
    assert all_passed(checks)


def test_right_returns_have_constant_size(cassaigne_deep):
    for x in cassaigne_deep.words(6)[1:]:
        report, checks = verify_return_cardinality(cassaigne_deep, x)
        assert len(report.right_returns) == 3, x
        assert all_passed(checks)


def test_fibonacci_returns(fibonacci):
    assert right_return_words(fibonacci, 'a') == {'a', 'ba'}
    _, checks = verify_return_cardinality(fibonacci, 'a')
    assert all_passed(checks)


def test_rotation_returns(rotation2):
    S = natural_coding(rotation2, 24)
    for x in S.words(5)[1:]:
        _, checks = verify_return_cardinality(S, x)
        assert checks[1].lhs == 2, x


def test_returns_form_a_bifix_code(cassaigne):
    report = complete_return_words(cassaigne, code_kind(['ab', 'c']))
    assert code_kind(report.complete_returns).is_bifix_code
    words = report.complete_returns
    assert not any(u != v and u in v for u in words for v in words)


def test_incomplete_enumeration():
    S = build_from_words(['a' + 'b' * 10], 6)
    report = complete_return_words(S, 'a')
    assert not report.complete_flag
    with pytest.raises(IncompleteEnumerationError):
        verify_return_cardinality(S, 'a')


def test_invalid_targets(cassaigne):
    with pytest.raises(MembershipError):
        right_return_words(cassaigne, '')
    with pytest.raises(MembershipError):
        right_return_words(cassaigne, 'aa')
    with pytest.raises(CodeError):
        complete_return_words(cassaigne, ['a', 'ab'])


def test_report_dict_carries_the_expected_count(cassaigne):
    report, checks = verify_return_cardinality(cassaigne, 'a')
    data = report.to_dict(cassaigne.alphabet, expected=checks[0].rhs)
    assert data['returns'] == ['abca', 'acda', 'abcda']
    assert data['expected'] == 3 and data['pass']
    assert 'expected' not in report.to_dict(cassaigne.alphabet)
