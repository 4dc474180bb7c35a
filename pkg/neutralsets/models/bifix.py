"""
Prefix, suffix and bifix codes inside a factor set: maximality, parses,
S-degree, the proper-prefix decomposition and the cardinality law.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from neutralsets.errors import CodeError, HorizonError, PreconditionError, TheoremViolation
from neutralsets.models.checks import Check
from neutralsets.models.core import characteristic, rho

logger = logging.getLogger(__name__)

MODES = ('prefix', 'suffix', 'bifix')


@dataclass(frozen=True)
class CodeSet:
    words: frozenset
    is_prefix_code: bool
    is_suffix_code: bool
    max_len: int

    @property
    def is_bifix_code(self):
        return self.is_prefix_code and self.is_suffix_code

    def __len__(self):
        return len(self.words)

    def __iter__(self):
        return iter(sorted(self.words, key=lambda w: (len(w), w)))

    def __contains__(self, word):
        return word in self.words

    def sorted(self, alphabet):
        return alphabet.sorted(self.words)

    def to_dict(self):
        return {
            'words': sorted(self.words, key=lambda w: (len(w), w)),
            'prefix_code': self.is_prefix_code,
            'suffix_code': self.is_suffix_code,
            'bifix_code': self.is_bifix_code,
        }


def code_kind(words):
    """
    Classify a finite set of nonempty words as prefix, suffix or bifix code.

    Args:
        words (iterable): Nonempty words

    Returns:
        CodeSet: The words with their code flags
    """
    words = frozenset(words)
    if not words:
        raise CodeError("A code needs at least one word")
    if '' in words:
        raise CodeError("A code cannot contain the empty word")

    prefix = not any(u != v and v.startswith(u) for u in words for v in words)
    suffix = not any(u != v and v.endswith(u) for u in words for v in words)
    return CodeSet(words, prefix, suffix, max(len(w) for w in words))


def is_code(words):
    """Unique decipherability by the Sardinas-Patterson test."""
    words = set(words)
    if not words or '' in words:
        return False

    def quotients(left, right):
        return {b[len(a):] for a in left for b in right if len(b) > len(a) and b.startswith(a)}

    current = quotients(words, words)
    seen = set()
    while current:
        if current & words:
            return False
        key = frozenset(current)
        if key in seen:
            return True
        seen.add(key)
        current = quotients(words, current) | quotients(current, words)
    return True


def proper_prefixes(words, include_empty=False):
    found = {w[:i] for w in words for i in range(0 if include_empty else 1, len(w))}
    return found


def internal_factors(words):
    """Words v with uvw in ``words`` for nonempty u and w."""
    found = set()
    for word in words:
        for start in range(1, len(word)):
            for end in range(start, len(word)):
                found.add(word[start:end])
    return found


def _require_subset(S, code):
    outside = [w for w in code.words if w not in S]
    if outside:
        raise CodeError(f"Code words are not members of the factor set: {sorted(outside)}")


# ---------------------------------------------------------------------------
# Parses
# ---------------------------------------------------------------------------

class ParseContext:
    """Parse machinery for a fixed code X: the Q and P membership tests and
    the X* decomposability table of a word."""

    def __init__(self, code):
        self.code = code
        self._words = code.words
        self._lengths = sorted({len(w) for w in code.words})

    def q_test(self, word):
        """True when no suffix of ``word`` is in X."""
        return not any(word[len(word) - n:] in self._words for n in self._lengths if n <= len(word))

    def p_test(self, word):
        """True when no prefix of ``word`` is in X."""
        return not any(word[:n] in self._words for n in self._lengths if n <= len(word))

    def star_table(self, word):
        """Boolean matrix t with t[i, j] true iff word[i:j] is in X*."""
        n = len(word)
        table = np.zeros((n + 1, n + 1), dtype=bool)
        for i in range(n + 1):
            table[i, i] = True
            for j in range(i + 1, n + 1):
                table[i, j] = any(
                    table[i, j - m] and word[j - m:j] in self._words
                    for m in self._lengths if m <= j - i
                )
        return table

    def parse_count(self, word):
        return parse_count(self, word)


def parse_count(ctx, word):
    """
    Number of parses (q, x, p) of ``word`` with respect to the code of ``ctx``.

    Counts the cut pairs i <= j with word[:i] in Q, word[i:j] in X* and
    word[j:] in P; the X* factorization at fixed cuts is unique for a code.
    """
    n = len(word)
    table = ctx.star_table(word)
    q_ok = [ctx.q_test(word[:i]) for i in range(n + 1)]
    p_ok = [ctx.p_test(word[j:]) for j in range(n + 1)]
    return sum(
        1
        for i in range(n + 1) if q_ok[i]
        for j in range(i, n + 1) if p_ok[j] and table[i, j]
    )


@dataclass(frozen=True)
class DegreeReport:
    degree: int
    witness: str
    internal_factor_check: bool
    stable: bool
    scan_bound: int
    profile: tuple
    internal_factor_witness: object = None

    def to_dict(self):
        return {
            'degree': self.degree,
            'witness': self.witness,
            'internal_factor_check': self.internal_factor_check,
            'stable': self.stable,
            'scan_bound': self.scan_bound,
            'profile': list(self.profile),
        }


def s_degree(S, code):
    """
    S-degree of a code: the maximal number of parses of a member of S.

    Members are scanned up to length 2 * max_len(X). The report records the
    maximal parse count for each length and whether it is non-decreasing and
    constant from max_len(X) on (finite degree); a growing profile signals a
    code that is not S-maximal.

    Args:
        S (FactorSet): The language
        code (CodeSet): A code included in S

    Returns:
        DegreeReport: Degree, witness word and scan diagnostics
    """
    _require_subset(S, code)
    bound = 2 * code.max_len
    if bound > S.horizon:
        raise HorizonError(
            f"S-degree scan needs horizon >= {bound}, got {S.horizon}", horizon=S.horizon
        )

    ctx = ParseContext(code)
    counts = {}
    profile = []
    for n in range(bound + 1):
        best = 0
        for word in S.sorted_of_length(n):
            counts[word] = parse_count(ctx, word)
            best = max(best, counts[word])
        profile.append(best)

    degree = max(profile)
    witness = next(w for w in S.words(bound) if counts[w] == degree)
    non_decreasing = all(a <= b for a, b in zip(profile, profile[1:]))
    constant_tail = all(v == degree for v in profile[code.max_len:])
    stable = non_decreasing and constant_tail

    internals = internal_factors(code.words)
    mismatch = next(
        (w for w in S.words(bound) if (counts[w] < degree) != (w in internals)),
        None,
    )
    if not stable:
        logger.warning(f"Parse counts do not stabilize for code of size {len(code)}: {profile}")
    return DegreeReport(degree, witness, mismatch is None, stable, bound,
                        tuple(profile), mismatch)


# ---------------------------------------------------------------------------
# Maximality
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MaximalityReport:
    mode: str
    maximal: bool
    witness: object = None
    prefix_maximal: object = None
    suffix_maximal: object = None
    degree: object = None
    notes: tuple = ()

    def to_dict(self):
        data = {'mode': self.mode, 'maximal': self.maximal, 'witness': self.witness}
        if self.mode == 'bifix':
            data['prefix_maximal'] = self.prefix_maximal
            data['suffix_maximal'] = self.suffix_maximal
            data['degree'] = self.degree.to_dict() if self.degree else None
        if self.notes:
            data['notes'] = list(self.notes)
        return data


def _coverage_witness(S, code, side):
    """First member of length max_len(X) with no prefix (or suffix) in X."""
    if code.max_len + 1 > S.horizon:
        raise HorizonError(
            f"Maximality test needs horizon > {code.max_len}, got {S.horizon}",
            horizon=S.horizon,
        )
    lengths = sorted({len(w) for w in code.words})
    for word in S.sorted_of_length(code.max_len):
        if side == 'prefix':
            covered = any(word[:n] in code.words for n in lengths)
        else:
            covered = any(word[len(word) - n:] in code.words for n in lengths)
        if not covered:
            return word
    return None


def is_s_maximal(S, code, mode='prefix'):
    """
    Whether ``code`` is S-maximal as a prefix, suffix or bifix code.

    Prefix mode decides by total coverage: every member of length max_len(X)
    has a prefix in X. Suffix mode is symmetric. A bifix code covering every
    member on the prefix side has no bifix superset in S, so bifix mode
    decides by prefix coverage too; the S-degree scan and suffix coverage
    are reported alongside and a disagreement is noted.

    Returns:
        MaximalityReport: Decision plus a witness word when not maximal
    """
    if mode not in MODES:
        raise ValueError(f"Unknown maximality mode {mode!r}")
    _require_subset(S, code)

    if mode == 'prefix':
        if not code.is_prefix_code:
            raise CodeError("Set is not a prefix code")
        witness = _coverage_witness(S, code, 'prefix')
        return MaximalityReport(mode, witness is None, witness)
    if mode == 'suffix':
        if not code.is_suffix_code:
            raise CodeError("Set is not a suffix code")
        witness = _coverage_witness(S, code, 'suffix')
        return MaximalityReport(mode, witness is None, witness)

    if not code.is_bifix_code:
        raise CodeError("Set is not a bifix code")
    degree = s_degree(S, code)
    prefix_witness = _coverage_witness(S, code, 'prefix')
    suffix_witness = _coverage_witness(S, code, 'suffix')
    notes = []
    degree_agrees = degree.stable and degree.internal_factor_check
    if degree_agrees != (prefix_witness is None):
        notes.append("finite-degree and prefix-coverage tests disagree; the set may not be recurrent")
    return MaximalityReport(
        mode, prefix_witness is None, prefix_witness,
        prefix_witness is None, suffix_witness is None, degree, tuple(notes),
    )


def _require_maximal_bifix(S, code):
    report = is_s_maximal(S, code, 'bifix')
    if not report.maximal:
        raise PreconditionError(
            f"Code is not an S-maximal bifix code (witness {report.witness!r})"
        )
    if not (report.degree.stable and report.degree.internal_factor_check):
        raise PreconditionError(
            f"S-degree of the code is not settled within length {report.degree.scan_bound} "
            f"(profile {list(report.degree.profile)})"
        )
    return report


# ---------------------------------------------------------------------------
# Decomposition and counting laws
# ---------------------------------------------------------------------------

def prefix_partition(S, code):
    """
    Split the nonempty proper prefixes of an S-maximal bifix code of degree n
    into n - 1 classes keyed by parse count, and verify that each class is an
    S-maximal suffix code.

    Returns:
        list: CodeSet classes in increasing parse count
    """
    degree = _require_maximal_bifix(S, code).degree.degree
    ctx = ParseContext(code)

    keyed = defaultdict(set)
    for prefix in proper_prefixes(code.words):
        keyed[parse_count(ctx, prefix)].add(prefix)

    classes = [code_kind(keyed[key]) for key in sorted(keyed)]
    if len(classes) != degree - 1:
        raise TheoremViolation(
            f"Proper prefixes split into {len(classes)} classes, expected {degree - 1}",
            witness=sorted(keyed),
        )
    for key, cls in zip(sorted(keyed), classes):
        if not cls.is_suffix_code:
            raise TheoremViolation(f"Class with {key} parses is not a suffix code",
                                   witness=sorted(cls.words))
        report = is_s_maximal(S, cls, 'suffix')
        if not report.maximal:
            raise TheoremViolation(f"Class with {key} parses is not an S-maximal suffix code",
                                   witness=report.witness)
    logger.info(f"Proper prefixes of a degree-{degree} code split into classes keyed {sorted(keyed)}")
    return classes


@dataclass(frozen=True)
class RhoSumReport:
    value: int
    checks: tuple


def rho_sum(S, words, source_code=None):
    """
    Sum of rho over a set of words.

    When the words form an S-maximal suffix code the sum is checked against
    Card(A) - chi(S). When ``source_code`` is given, the words must be the
    proper prefixes (ε included) of that S-maximal bifix code of degree n and
    the sum is checked against n(Card(A) - chi(S)).
    """
    words = set(words.words if isinstance(words, CodeSet) else words)
    value = sum(rho(S, w) for w in words)
    k = len(S.alphabet)
    chi = characteristic(S)
    checks = []

    if words and '' not in words:
        code = code_kind(words)
        if code.is_suffix_code and code.max_len + 1 <= S.horizon \
                and is_s_maximal(S, code, 'suffix').maximal:
            checks.append(Check.equality(
                'rho-maximal-suffix-code', "rho(X) = Card(A) - chi(S)", value, k - chi,
                notes=(f"k={k}", f"chi={chi}"),
            ))

    if source_code is not None:
        if words != proper_prefixes(source_code.words, include_empty=True):
            raise CodeError("Words are not the proper prefixes of the given code")
        degree = _require_maximal_bifix(S, source_code).degree.degree
        checks.append(Check.equality(
            'rho-proper-prefixes', "rho(P) = n(Card(A) - chi(S))", value, degree * (k - chi),
            notes=(f"n={degree}", f"k={k}", f"chi={chi}"),
        ))
    return RhoSumReport(value, tuple(checks))


def verify_cardinality(S, code):
    """Check Card(X) = n(Card(A) - chi(S)) + chi(S) for an S-maximal bifix code."""
    degree = _require_maximal_bifix(S, code).degree.degree
    k = len(S.alphabet)
    chi = characteristic(S)
    check = Check.equality(
        'bifix-cardinality', "Card(X) = n(Card(A) - chi(S)) + chi(S)",
        len(code), degree * (k - chi) + chi,
        witness=None if len(code) == degree * (k - chi) + chi else sorted(code.words),
        notes=(f"n={degree}", f"k={k}", f"chi={chi}"),
    )
    logger.info(f"Cardinality of a degree-{degree} code: {len(code)} vs {check.rhs}")
    return check


def uniform_code(S, n):
    """The S-maximal bifix code of all members of length n."""
    if n < 1 or n > S.horizon:
        raise HorizonError(f"Length {n} outside 1..{S.horizon}", horizon=S.horizon)
    return code_kind(S.of_length(n))


def enumerate_maximal_bifix_codes(S, max_len=6, max_degree=3):
    """
    All S-maximal bifix codes with words of length at most ``max_len`` and
    S-degree at most ``max_degree``.

    Depth-first over complete prefix trees of S in breadth-first node order:
    each node is either a code word (it must not be a suffix of, nor have a
    suffix among, the code words chosen so far) or an internal node with all
    its right extensions. An internal node with more than ``max_degree``
    suffixes among internal nodes cannot occur in a code of small degree,
    since the parse count of a long word equals its number of suffixes that
    are proper prefixes of the code.

    Returns:
        list: (CodeSet, degree) pairs sorted by degree then words
    """
    if 2 * max_len > S.horizon:
        raise HorizonError(f"Search up to length {max_len} needs horizon >= {2 * max_len}",
                           horizon=S.horizon)
    candidates = []

    def visit(frontier, leaves, internal):
        if not frontier:
            candidates.append(leaves)
            return
        word, rest = frontier[0], frontier[1:]
        if word and all(not w.endswith(word) and not word.endswith(w) for w in leaves):
            visit(rest, leaves | {word}, internal)
        if len(word) < max_len:
            children = [word + a for a in S.alphabet if word + a in S]
            grown = internal | {word}
            if children and sum(1 for i in range(len(word) + 1) if word[i:] in grown) <= max_degree:
                visit(rest + children, leaves, grown)

    visit([''], frozenset(), frozenset())

    found = []
    for leaves in candidates:
        code = code_kind(leaves)
        report = s_degree(S, code)
        if report.stable and report.internal_factor_check and report.degree <= max_degree:
            found.append((code, report.degree))
    found.sort(key=lambda item: (item[1], len(item[0]), S.alphabet.sorted(item[0].words)))
    logger.info(f"Found {len(found)} maximal bifix codes (max_len={max_len}, "
                f"degree<={max_degree}) among {len(candidates)} candidates")
    return found
