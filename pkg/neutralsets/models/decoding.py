"""
Coding morphisms and maximal bifix decodings.
"""

import logging
import string
from dataclasses import dataclass

from neutralsets.errors import CodeError, HorizonError, InputError, MembershipError, PreconditionError
from neutralsets.models.bifix import CodeSet, code_kind, is_code, is_s_maximal
from neutralsets.models.checks import Check
from neutralsets.models.core import FactorSet, classify, multiplicity
from neutralsets.models.words import Alphabet

logger = logging.getLogger(__name__)

DEFAULT_LETTERS = 'uvwxyz' + string.ascii_uppercase + string.digits


@dataclass(frozen=True)
class CodingMorphism:
    """Bijection from fresh letters onto the words of a code."""

    code: CodeSet
    letters: tuple
    images: tuple

    @property
    def alphabet(self):
        return Alphabet(self.letters)

    def image(self, letter):
        return self.images[self.letters.index(letter)]

    def apply(self, word):
        mapping = dict(zip(self.letters, self.images))
        return ''.join(mapping[b] for b in word)

    def __str__(self):
        return ', '.join(f"{b}->{x}" for b, x in zip(self.letters, self.images))

    def to_dict(self):
        return {'letters': dict(zip(self.letters, self.images))}


def coding_morphism(code, letters=None, alphabet=None):
    """
    Coding morphism of a code: fresh letters taken in pool order are mapped
    to the code words in lexicographic order.

    Args:
        code: CodeSet or iterable of words
        letters (str): Pool of fresh letters (default ``DEFAULT_LETTERS``)
        alphabet (Alphabet): Order used to sort the code words

    Returns:
        CodingMorphism: The bijection B -> X
    """
    code = code if isinstance(code, CodeSet) else code_kind(code)
    if not is_code(code.words):
        raise CodeError(f"Not a code: {sorted(code.words)}")

    pool = DEFAULT_LETTERS if letters is None else letters
    if len(set(pool)) != len(pool):
        raise InputError(f"Fresh letter pool has repeated letters: {pool!r}")
    if len(pool) < len(code):
        raise InputError(f"Need {len(code)} fresh letters, the pool has {len(pool)}")

    key = alphabet.lex_key if alphabet is not None else None
    images = tuple(sorted(code.words, key=key))
    return CodingMorphism(code, tuple(pool[:len(code)]), images)


def decode(S, f, M=None):
    """
    Maximal bifix decoding f^{-1}(S) up to length M.

    Args:
        S (FactorSet): The language
        f (CodingMorphism): Coding morphism of a code included in S
        M (int): Decoded horizon (default N // max_len(X)); M * max_len(X) <= N

    Returns:
        FactorSet: {v : |v| <= M, f(v) in S} over the fresh alphabet
    """
    max_len = f.code.max_len
    M = S.horizon // max_len if M is None else M
    if M < 2:
        raise HorizonError(f"Decoded horizon must be at least 2, got {M}", horizon=S.horizon)
    if M * max_len > S.horizon:
        raise HorizonError(
            f"Decoded horizon {M} needs horizon >= {M * max_len}, got {S.horizon}",
            horizon=S.horizon,
        )

    members = ['']
    layer = ['']
    for _ in range(M):
        layer = [v + b for v in layer for b in f.letters if f.apply(v + b) in S]
        members.extend(layer)

    U = FactorSet(f.alphabet, M, members, provenance=f"decoding of {S.provenance} by {f}")
    logger.info(f"Decoded {len(members)} words up to length {M} over {len(f.letters)} letters")
    return U


@dataclass(frozen=True)
class ExtendedStats:
    word: str
    left_code: frozenset
    right_code: frozenset
    edges: frozenset

    @property
    def m_xy(self):
        return len(self.edges) - len(self.left_code) - len(self.right_code) + 1

    def to_dict(self):
        return {
            'word': self.word,
            'left': sorted(self.left_code),
            'right': sorted(self.right_code),
            'edges': sorted(list(e) for e in self.edges),
            'm': self.m_xy,
        }


def extended_multiplicity(S, word, left_code, right_code):
    """E^{X,Y}(w) = {(x, y) : xwy in S} and the multiplicity m^{X,Y}(w)."""
    left_code = set(left_code.words if isinstance(left_code, CodeSet) else left_code)
    right_code = set(right_code.words if isinstance(right_code, CodeSet) else right_code)
    need = max(map(len, left_code), default=0) + len(word) + max(map(len, right_code), default=0)
    if need > S.horizon:
        raise HorizonError(
            f"Extended multiplicity of {word!r} needs horizon >= {need}, got {S.horizon}",
            word=word, horizon=S.horizon,
        )
    if word not in S:
        raise MembershipError(f"Word {word!r} is not a member", word=word)

    left = frozenset(x for x in left_code if x + word in S)
    right = frozenset(y for y in right_code if word + y in S)
    edges = frozenset((x, y) for x in left for y in right if x + word + y in S)
    return ExtendedStats(word, left, right, edges)


@dataclass(frozen=True)
class DecodingReport:
    morphism: CodingMorphism
    decoded: FactorSet
    checks: tuple

    def to_dict(self):
        return {
            'morphism': self.morphism.to_dict(),
            'horizon': self.decoded.horizon,
            'size': len(self.decoded),
        }


def verify_decoding_neutral(S, code, M=None, letters=None):
    """
    Check that the maximal bifix decoding of a neutral set by an S-maximal
    bifix code is neutral with the same characteristic, word by word through
    m_U(v) = m^{X,X}(f(v)) = m_S(f(v)).

    Returns:
        DecodingReport: Morphism, decoded set and checks
    """
    code = code if isinstance(code, CodeSet) else code_kind(code)
    maximality = is_s_maximal(S, code, 'bifix')
    if not maximality.maximal:
        raise PreconditionError(f"Code is not S-maximal bifix (witness {maximality.witness!r})")
    source = classify(S)
    if not source.neutral:
        raise PreconditionError(f"Set is not neutral (witness {source.neutral_witness!r})")

    f = coding_morphism(code, letters, alphabet=S.alphabet)
    U = decode(S, f, M)
    decoded = classify(U)

    generalized_failures = []
    plain_failures = []
    words = U.words(U.stat_bound)[1:]
    for v in words:
        m_u = multiplicity(U, v)
        image = f.apply(v)
        if extended_multiplicity(S, image, code, code).m_xy != m_u:
            generalized_failures.append(v)
        if multiplicity(S, image) != m_u:
            plain_failures.append(v)

    bound = U.stat_bound
    checks = (
        Check('decoded-neutral', "a maximal bifix decoding of a neutral set is neutral",
              decoded.neutral_up_to, bound, decoded.neutral, decoded.neutral_witness, bound),
        Check.equality('decoded-characteristic', "chi(f^-1(S)) = chi(S)",
                       decoded.characteristic, source.characteristic, bound=bound),
        Check('decoded-generalized-multiplicity', "m_U(v) = m^{X,X}(f(v))",
              len(words) - len(generalized_failures), len(words), not generalized_failures,
              generalized_failures[0] if generalized_failures else None, bound),
        Check('decoded-plain-multiplicity', "m_U(v) = m_S(f(v))",
              len(words) - len(plain_failures), len(words), not plain_failures,
              plain_failures[0] if plain_failures else None, bound),
    )
    logger.info(f"Decoding by {f}: neutral={decoded.neutral}, chi={decoded.characteristic}")
    return DecodingReport(f, U, checks)
