import itertools

import pytest

from neutralsets.errors import CodeError, PreconditionError
from neutralsets.models.bifix import (
    ParseContext,
    code_kind,
    enumerate_maximal_bifix_codes,
    internal_factors,
    is_code,
    is_s_maximal,
    parse_count,
    prefix_partition,
    proper_prefixes,
    rho_sum,
    s_degree,
    uniform_code,
    verify_cardinality,
)
from neutralsets.models.checks import all_passed

from tests.conftest import CASSAIGNE_CODE

PREFIX_CLASS = {'a', 'ac', 'b', 'bc', 'd'}


def test_code_kinds():
    assert code_kind(['ab', 'ba']).is_bifix_code
    kind = code_kind(['a', 'ab'])
    assert not kind.is_prefix_code and kind.is_suffix_code
    with pytest.raises(CodeError):
        code_kind(['a', ''])
    with pytest.raises(CodeError):
        code_kind([])


def test_unique_decipherability():
    assert is_code(['a', 'ab'])
    assert is_code(CASSAIGNE_CODE)
    assert not is_code(['a', 'b', 'ab'])
    assert not is_code(['ab', 'a', 'ba'])


def test_prefixes_and_internal_factors():
    assert proper_prefixes(['abc']) == {'a', 'ab'}
    assert proper_prefixes(['abc'], include_empty=True) == {'', 'a', 'ab'}
    assert internal_factors(['abc']) == {'', 'b'}
    assert internal_factors(['a']) == set()


def test_cassaigne_code_is_maximal_bifix_of_degree_two(cassaigne):
    code = code_kind(CASSAIGNE_CODE)
    report = is_s_maximal(cassaigne, code, 'bifix')
    assert report.maximal
    assert report.prefix_maximal and report.suffix_maximal
    assert report.degree.degree == 2
    assert report.degree.stable
    assert report.degree.internal_factor_check
    assert report.notes == ()


def test_parse_counts_of_long_words(cassaigne):
    ctx = ParseContext(code_kind(CASSAIGNE_CODE))
    assert {parse_count(ctx, w) for w in cassaigne.of_length(10)} == {2}
    assert parse_count(ctx, '') == 1


def test_star_table():
    ctx = ParseContext(code_kind(['ab', 'c']))
    table = ctx.star_table('abcab')
    assert table[0, 5] and table[2, 3] and not table[1, 3]


def test_cassaigne_code_cardinality(cassaigne):
    check = verify_cardinality(cassaigne, code_kind(CASSAIGNE_CODE))
    assert check.passed
    assert check.lhs == 6 and check.rhs == 6


def test_prefix_partition(cassaigne):
    classes = prefix_partition(cassaigne, code_kind(CASSAIGNE_CODE))
    assert len(classes) == 1
    assert classes[0].words == PREFIX_CLASS
    assert is_s_maximal(cassaigne, classes[0], 'suffix').maximal

    report = rho_sum(cassaigne, classes[0])
    assert report.value == 2
    assert report.checks and all_passed(report.checks)


def test_rho_of_proper_prefixes(cassaigne):
    code = code_kind(CASSAIGNE_CODE)
    report = rho_sum(cassaigne, proper_prefixes(code.words, include_empty=True), source_code=code)
    assert report.value == 4
    assert [c.name for c in report.checks] == ['rho-proper-prefixes']
    assert all_passed(report.checks)


def test_prefix_maximality_witness(cassaigne):
    report = is_s_maximal(cassaigne, code_kind(['ab']), 'prefix')
    assert not report.maximal
    assert report.witness == 'ac'


def test_non_maximal_bifix_code(cassaigne):
    code = code_kind(['ab', 'c'])
    assert not is_s_maximal(cassaigne, code, 'bifix').maximal
    assert not s_degree(cassaigne, code).stable
    with pytest.raises(PreconditionError):
        verify_cardinality(cassaigne, code)


def test_code_outside_the_set(cassaigne):
    with pytest.raises(CodeError):
        is_s_maximal(cassaigne, code_kind(['aa']), 'prefix')


@pytest.mark.parametrize('n', [1, 2, 3, 4])
def test_uniform_codes(cassaigne, n):
    code = uniform_code(cassaigne, n)
    assert len(code) == 2 * n + 2
    assert s_degree(cassaigne, code).degree == n
    assert verify_cardinality(cassaigne, code).passed
    classes = prefix_partition(cassaigne, code)
    assert [c.words for c in classes] == [cassaigne.of_length(j) for j in range(1, n)]


def test_enumerated_codes_satisfy_cardinality(cassaigne):
    found = enumerate_maximal_bifix_codes(cassaigne, max_len=6, max_degree=3)
    codes = {code.words: degree for code, degree in found}

    assert codes[frozenset(CASSAIGNE_CODE)] == 2
    for n in (1, 2, 3):
        assert codes[uniform_code(cassaigne, n).words] == n
    assert all(degree <= 3 for degree in codes.values())
    for code, degree in found:
        assert code.max_len <= 6
        check = verify_cardinality(cassaigne, code)
        assert check.passed, (sorted(code.words), check.lhs, check.rhs)
        assert len(code) == 2 * degree + 2


@pytest.mark.parametrize('words, witness', [
    (['a', 'c'], 'b'),
    (['a', 'bc', 'cd', 'dab'], 'cab'),
])
def test_stable_looking_codes_are_not_maximal(cassaigne, words, witness):
    code = code_kind(words)
    report = is_s_maximal(cassaigne, code, 'bifix')
    assert not report.maximal
    assert not report.prefix_maximal
    assert report.witness == witness
    with pytest.raises(PreconditionError):
        verify_cardinality(cassaigne, code)
    with pytest.raises(PreconditionError):
        prefix_partition(cassaigne, code)
    with pytest.raises(PreconditionError):
        rho_sum(cassaigne, proper_prefixes(code.words, include_empty=True), source_code=code)


def test_maximal_short_codes_have_settled_degree(cassaigne):
    members = cassaigne.words(2)[1:]
    for size in (2, 3, 4):
        for words in itertools.combinations(members, size):
            code = code_kind(words)
            if not code.is_bifix_code:
                continue
            report = is_s_maximal(cassaigne, code, 'bifix')
            if report.maximal:
                assert report.degree.stable and report.degree.internal_factor_check, words
                assert report.notes == ()
                assert verify_cardinality(cassaigne, code).passed, words
