"""
Complete and right first return words.
"""

import logging
from dataclasses import dataclass

from neutralsets.errors import CodeError, IncompleteEnumerationError, MembershipError, TheoremViolation
from neutralsets.models.bifix import CodeSet, code_kind
from neutralsets.models.checks import Check
from neutralsets.models.core import characteristic
from neutralsets.models.words import has_internal_factor, has_proper_prefix_in, has_proper_suffix_in

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReturnReport:
    target: CodeSet
    complete_returns: frozenset
    right_returns: object
    complete_flag: bool
    reason: object = None

    @property
    def single_word(self):
        return next(iter(self.target.words)) if len(self.target) == 1 else None

    def to_dict(self, alphabet=None, expected=None):
        order = alphabet.sorted if alphabet else (lambda ws: sorted(ws, key=lambda w: (len(w), w)))
        data = {
            'target': order(self.target.words),
            'returns': order(self.complete_returns),
            'cardinality': len(self.complete_returns),
            'complete': self.complete_flag,
        }
        if expected is not None:
            data['expected'] = expected
            data['pass'] = len(self.complete_returns) == expected
        if self.right_returns is not None:
            data['right_returns'] = order(self.right_returns)
        if self.reason:
            data['reason'] = self.reason
        return data


def _as_code(S, target):
    if isinstance(target, str):
        if not target:
            raise MembershipError("Return words need a nonempty target word", word=target)
        if target not in S:
            raise MembershipError(f"Word {target!r} is not a member", word=target)
        return code_kind({target})
    code = target if isinstance(target, CodeSet) else code_kind(target)
    if not code.is_bifix_code:
        raise CodeError("Return words are defined for bifix codes")
    outside = sorted(w for w in code.words if w not in S)
    if outside:
        raise CodeError(f"Code words are not members of the factor set: {outside}")
    return code


def complete_return_words(S, target):
    """
    CR_S(X): members with a proper prefix in X, a proper suffix in X and no
    internal factor in X.

    The enumeration is flagged incomplete when some member of length N has a
    prefix in X, no internal factor in X and no proper suffix in X, since a
    return word may then continue past the horizon.

    Args:
        S (FactorSet): The language
        target: A bifix CodeSet, an iterable of words or a single word

    Returns:
        ReturnReport: Complete returns, right returns for a single word and
        the completeness flag
    """
    code = _as_code(S, target)
    words = code.words
    lengths = {len(w) for w in words}

    returns = set()
    for z in S.words():
        if len(z) < 2:
            continue
        if has_proper_prefix_in(z, words, lengths) and has_proper_suffix_in(z, words, lengths) \
                and not has_internal_factor(z, words, lengths):
            returns.add(z)

    reason = None
    for z in S.sorted_of_length(S.horizon):
        has_prefix = any(z[:n] in words for n in lengths)
        if has_prefix and not has_internal_factor(z, words, lengths) \
                and not has_proper_suffix_in(z, words, lengths):
            reason = f"member {z!r} of length {S.horizon} may begin a longer return word"
            break

    if returns and not code_kind(returns).is_bifix_code:
        raise TheoremViolation("Complete return words do not form a bifix code",
                               witness=sorted(returns))

    right = None
    if len(code) == 1:
        x = next(iter(words))
        right = frozenset(z[len(x):] for z in returns)

    if reason:
        logger.warning(f"Return word enumeration incomplete: {reason}")
    logger.info(f"Found {len(returns)} complete return word(s) to a code of size {len(code)}")
    return ReturnReport(code, frozenset(returns), right, reason is None, reason)


def right_return_words(S, x):
    """R_S(x): the words w with xw in S ending with x and no internal x."""
    if not isinstance(x, str):
        raise MembershipError("Right return words need a single word", word=x)
    return complete_return_words(S, x).right_returns


def verify_return_cardinality(S, target):
    """
    Card(CR_S(X)) = Card(X) + Card(A) - chi(S), and for a single word
    Card(R_S(x)) = Card(A) - chi(S) + 1.

    Returns:
        tuple: (ReturnReport, list of Check)
    """
    report = complete_return_words(S, target)
    if not report.complete_flag:
        raise IncompleteEnumerationError(f"Cannot certify a return count: {report.reason}")

    k = len(S.alphabet)
    chi = characteristic(S)
    checks = [Check.equality(
        'return-cardinality', "Card(CR_S(X)) = Card(X) + Card(A) - chi(S)",
        len(report.complete_returns), len(report.target) + k - chi,
        bound=S.horizon, notes=(f"k={k}", f"chi={chi}"),
    )]
    if report.right_returns is not None:
        checks.append(Check.equality(
            'right-return-cardinality', "Card(R_S(x)) = Card(A) - chi(S) + 1",
            len(report.right_returns), k - chi + 1,
            witness=report.single_word, bound=S.horizon,
        ))
    return report, checks
