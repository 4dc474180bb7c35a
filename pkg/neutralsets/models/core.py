"""
Truncated factorial sets and their extension statistics.

A ``FactorSet`` holds every member word of length at most its horizon ``N``.
Statistics that look one letter to each side of a word are only defined for
words of length at most ``N - 2``; asking for anything longer raises
``HorizonError`` instead of silently reading a truncated neighbourhood.
"""

import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import networkx as nx
import numpy as np

from neutralsets.errors import (
    ConstructionError,
    HorizonError,
    InputError,
    MembershipError,
    PreconditionError,
)
from neutralsets.models.checks import Check
from neutralsets.models.words import Alphabet, factors

logger = logging.getLogger(__name__)


class FactorSet:
    """Finite truncation of a factorial language.

    Args:
        alphabet (Alphabet): Alphabet of the language
        horizon (int): Maximal stored word length N (at least 2)
        words (iterable): Member words; the empty word is always added
        provenance (str): Human readable description of the generator
        check (bool): Verify factoriality on construction
    """

    def __init__(self, alphabet, horizon, words, provenance='', check=True):
        if horizon < 2:
            raise HorizonError(f"Horizon must be at least 2, got {horizon}", horizon=horizon)
        layers = [set() for _ in range(horizon + 1)]
        layers[0].add('')
        for word in words:
            if len(word) > horizon:
                raise ConstructionError(
                    f"Word {word!r} is longer than the horizon {horizon}"
                )
            alphabet.check_word(word)
            layers[len(word)].add(word)

        self._alphabet = alphabet
        self._horizon = horizon
        self._layers = tuple(frozenset(layer) for layer in layers)
        self._provenance = provenance

        if check:
            self._check_factorial()

    def _check_factorial(self):
        for layer in self._layers[1:]:
            for word in layer:
                if word[1:] not in self._layers[len(word) - 1] or word[:-1] not in self._layers[len(word) - 1]:
                    raise ConstructionError(f"Set is not factorial: {word!r} has a missing factor")

    @property
    def alphabet(self):
        return self._alphabet

    @property
    def horizon(self):
        return self._horizon

    @property
    def provenance(self):
        return self._provenance

    @property
    def stat_bound(self):
        """Longest word length for which extension statistics are defined."""
        return self._horizon - 2

    def __contains__(self, word):
        return len(word) <= self._horizon and word in self._layers[len(word)]

    def __len__(self):
        return sum(len(layer) for layer in self._layers)

    def __iter__(self):
        return iter(self.words())

    def __eq__(self, other):
        if not isinstance(other, FactorSet):
            return NotImplemented
        return (self._alphabet == other._alphabet
                and self._horizon == other._horizon
                and self._layers == other._layers)

    def __hash__(self):
        return hash((self._alphabet, self._horizon, self._layers))

    def __repr__(self):
        return f"FactorSet(alphabet={self._alphabet}, horizon={self._horizon}, size={len(self)})"

    def of_length(self, n):
        if n < 0 or n > self._horizon:
            raise HorizonError(f"Length {n} outside horizon {self._horizon}", horizon=self._horizon)
        return self._layers[n]

    def sorted_of_length(self, n):
        return self._alphabet.sorted(self.of_length(n))

    def words(self, max_len=None):
        """All members up to ``max_len`` in canonical order (length, then alphabet order)."""
        top = self._horizon if max_len is None else min(max_len, self._horizon)
        result = []
        for n in range(top + 1):
            result.extend(self.sorted_of_length(n))
        return result

    def complexity(self, n):
        return len(self.of_length(n))

    def truncate(self, horizon):
        """The same language cut at a smaller horizon."""
        if horizon > self._horizon:
            raise HorizonError(
                f"Cannot extend horizon {self._horizon} to {horizon}", horizon=self._horizon
            )
        return FactorSet(self._alphabet, horizon, self.words(horizon),
                         provenance=self._provenance, check=False)

    def to_dict(self):
        return {
            'alphabet': list(self._alphabet.symbols),
            'horizon': self._horizon,
            'provenance': self._provenance,
            'words': {str(n): self.sorted_of_length(n) for n in range(self._horizon + 1)},
        }

    @classmethod
    def from_dict(cls, data):
        try:
            alphabet = Alphabet(tuple(data['alphabet']))
            horizon = int(data['horizon'])
            words = [w for layer in data['words'].values() for w in layer]
        except (KeyError, TypeError, ValueError, AttributeError) as e:
            raise InputError(f"Malformed factor set description: {e}")
        return cls(alphabet, horizon, words, provenance=data.get('provenance', ''))


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Morphism:
    """Morphism from ``source``* to ``target``* given by letter images."""

    source: Alphabet
    target: Alphabet
    rules: tuple

    def __post_init__(self):
        images = dict(self.rules)
        for symbol in self.source:
            if symbol not in images:
                raise InputError(f"Morphism has no image for symbol {symbol!r}")
            if not images[symbol]:
                raise InputError(f"Image of {symbol!r} is empty")
            for image_symbol in images[symbol]:
                if image_symbol not in self.target:
                    raise InputError(
                        f"Image of {symbol!r} uses {image_symbol!r} outside the target alphabet"
                    )
        extra = set(images) - set(self.source.symbols)
        if extra:
            raise InputError(f"Rules given for symbols outside the alphabet: {sorted(extra)}")
        object.__setattr__(self, 'rules', tuple((s, images[s]) for s in self.source))
        object.__setattr__(self, '_images', images)

    @classmethod
    def from_rules(cls, rules, alphabet=None):
        """Endomorphism from a ``{symbol: image}`` mapping."""
        if not rules:
            raise InputError("Morphism has no rules")
        if alphabet is None:
            alphabet = Alphabet(tuple(rules))
        return cls(alphabet, alphabet, tuple(rules.items()))

    @property
    def is_endomorphism(self):
        return self.source == self.target

    def image(self, symbol):
        return self._images[symbol]

    def apply(self, word):
        return ''.join(self._images[s] for s in word)

    def __str__(self):
        return ', '.join(f"{s}->{image}" for s, image in self.rules)


def _covering_factors(sigma, word, horizon):
    """Factors of sigma(word) of length <= horizon that start inside the image
    of the first letter and end inside the image of the last letter."""
    image = sigma.apply(word)
    head = len(sigma.image(word[0]))
    tail_start = len(image) - len(sigma.image(word[-1]))
    for i in range(head):
        lo = max(i + 1, tail_start + 1)
        hi = min(len(image), i + horizon)
        for j in range(lo, hi + 1):
            yield image[i:j]


def build_from_morphic_fixed_point(sigma, seed, horizon, iteration_cap=None):
    """
    Factors of length at most ``horizon`` of the fixed point sigma^omega(seed).

    Args:
        sigma (Morphism): Endomorphism prolongable on ``seed``
        seed (str): First letter of the fixed point
        horizon (int): Maximal word length N
        iteration_cap (int): Maximal number of closure rounds (default 4N + 16)

    Returns:
        FactorSet: The truncated language
    """
    if horizon < 2:
        raise HorizonError(f"Horizon must be at least 2, got {horizon}", horizon=horizon)
    if not sigma.is_endomorphism:
        raise ConstructionError("A fixed point needs an endomorphism")
    if seed not in sigma.source:
        raise ConstructionError(f"Seed {seed!r} is not in the alphabet {sigma.source}")

    image = sigma.image(seed)
    if not image.startswith(seed):
        raise ConstructionError(f"Morphism is not prolongable on {seed!r}: {seed}->{image}")

    provenance = f"fixed point of [{sigma}] from {seed}"
    if len(image) < 2:
        # a letter fixed by sigma only yields an infinite word on a unary alphabet
        if len(sigma.source) == 1:
            return build_from_words([seed * horizon], horizon, alphabet=sigma.source,
                                    provenance=provenance)
        raise ConstructionError(f"Image of seed {seed!r} does not grow")

    cap = iteration_cap if iteration_cap is not None else 4 * horizon + 16
    start_time = time.time()

    known = {'', seed}
    frontier = [seed]
    rounds = 0
    while frontier:
        rounds += 1
        if rounds > cap:
            raise ConstructionError(
                f"Closure did not stabilize within {cap} rounds for [{sigma}]"
            )
        discovered = []
        for word in frontier:
            for factor in _covering_factors(sigma, word, horizon):
                if factor not in known:
                    known.add(factor)
                    discovered.append(factor)
        frontier = discovered

    result = FactorSet(sigma.source, horizon, known, provenance=provenance)
    witness = non_biextendable_word(result)
    if witness is not None:
        raise ConstructionError(
            f"Word {witness!r} is not biextendable within horizon {horizon}; "
            f"is the morphism primitive?"
        )

    logger.info(f"Built {len(result)} factors up to length {horizon} "
                f"in {rounds} rounds ({time.time() - start_time:.3f}s)")
    return result


def build_from_words(words, horizon, alphabet=None, provenance=None):
    """
    Factorial closure, up to ``horizon``, of a collection of words.

    Args:
        words (iterable): Words over a single alphabet
        horizon (int): Maximal word length N
        alphabet (Alphabet): Alphabet; inferred from the words when omitted

    Returns:
        FactorSet: All factors of length at most ``horizon``
    """
    words = list(words)
    if horizon < 2:
        raise HorizonError(f"Horizon must be at least 2, got {horizon}", horizon=horizon)
    if alphabet is None:
        alphabet = Alphabet.from_words(words)
    for word in words:
        for symbol in word:
            if symbol not in alphabet:
                raise ConstructionError(
                    f"Mixed alphabets: {word!r} uses {symbol!r} outside {alphabet}"
                )

    closure = set()
    for word in words:
        closure |= factors(word, horizon)
    if provenance is None:
        provenance = f"factors of {len(words)} word(s)"
    return FactorSet(alphabet, horizon, closure, provenance=provenance, check=False)


def reverse(S):
    """Mirror image of every member."""
    return FactorSet(S.alphabet, S.horizon, (w[::-1] for w in S.words()),
                     provenance=f"reversal of {S.provenance}", check=False)


# ---------------------------------------------------------------------------
# Extension statistics
# ---------------------------------------------------------------------------

class Vertex(NamedTuple):
    """Vertex of an extension graph; side is 'L' (1⊗a) or 'R' (a⊗1)."""

    side: str
    letter: str

    def __str__(self):
        return f"1⊗{self.letter}" if self.side == 'L' else f"{self.letter}⊗1"


@dataclass(frozen=True)
class ExtensionStats:
    word: str
    left: frozenset
    right: frozenset
    edges: frozenset

    @property
    def ell(self):
        return len(self.left)

    @property
    def r(self):
        return len(self.right)

    @property
    def e(self):
        return len(self.edges)

    @property
    def m(self):
        return self.e - self.ell - self.r + 1

    def to_dict(self):
        return {
            'word': self.word,
            'left': sorted(self.left),
            'right': sorted(self.right),
            'edges': [list(edge) for edge in sorted(self.edges)],
            'm': self.m,
        }


@dataclass(frozen=True)
class ExtensionGraph:
    stats: ExtensionStats
    components: tuple
    acyclic: bool

    @property
    def vertex_count(self):
        return self.stats.ell + self.stats.r

    @property
    def is_tree(self):
        return self.acyclic and len(self.components) == 1

    def to_dict(self):
        data = self.stats.to_dict()
        data['components'] = [[str(v) for v in component] for component in self.components]
        data['acyclic'] = self.acyclic
        return data


def _require_extendable(S, word):
    if len(word) > S.stat_bound:
        raise HorizonError(
            f"Word {word!r} of length {len(word)} exceeds the statistics bound "
            f"{S.stat_bound} of horizon {S.horizon}",
            word=word, horizon=S.horizon,
        )
    if word not in S:
        raise MembershipError(f"Word {word!r} is not a member", word=word)


def extension_stats(S, word):
    """L(w), R(w) and E(w) of a member word."""
    _require_extendable(S, word)
    left = frozenset(a for a in S.alphabet if a + word in S)
    right = frozenset(b for b in S.alphabet if word + b in S)
    edges = frozenset((a, b) for a in left for b in right if a + word + b in S)
    return ExtensionStats(word, left, right, edges)


def extension_graph(S, word):
    """
    Bipartite extension graph E(w) with its components and acyclicity.

    Args:
        S (FactorSet): The language
        word (str): A member of length at most N - 2

    Returns:
        ExtensionGraph: Statistics, connected components and forest flag
    """
    stats = extension_stats(S, word)
    graph = nx.Graph()
    graph.add_nodes_from(Vertex('L', a) for a in stats.left)
    graph.add_nodes_from(Vertex('R', b) for b in stats.right)
    graph.add_edges_from((Vertex('L', a), Vertex('R', b)) for a, b in stats.edges)

    components = tuple(sorted(
        (tuple(sorted(component)) for component in nx.connected_components(graph)),
    ))
    acyclic = nx.is_forest(graph) if graph.number_of_nodes() else True
    return ExtensionGraph(stats, components, acyclic)


def multiplicity(S, word):
    return extension_stats(S, word).m


def characteristic(S):
    """chi(S) = 1 - m(ε)."""
    return 1 - multiplicity(S, '')


def rho(S, word):
    stats = extension_stats(S, word)
    return stats.e - stats.ell


def lambda_(S, word):
    stats = extension_stats(S, word)
    return stats.e - stats.r


def rho_normalized(S, word):
    total = rho(S, '')
    if total == 0:
        raise PreconditionError("rho(ε) = 0: the characteristic equals the alphabet size")
    return Fraction(rho(S, word), total)


def lambda_normalized(S, word):
    total = lambda_(S, '')
    if total == 0:
        raise PreconditionError("lambda(ε) = 0: the characteristic equals the alphabet size")
    return Fraction(lambda_(S, word), total)


def non_biextendable_word(S):
    """Shortest member of length <= N - 2 with e(w) = 0, or None."""
    for word in S.words(S.stat_bound):
        if not extension_stats(S, word).edges:
            return word
    return None


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Classification:
    bound: int
    characteristic: int
    neutral_witness: object
    tree_witness: object
    per_word_failures: tuple

    @property
    def neutral(self):
        return self.neutral_witness is None

    @property
    def tree(self):
        return self.tree_witness is None

    @property
    def neutral_up_to(self):
        return self.bound if self.neutral else self.neutral_witness

    @property
    def tree_up_to(self):
        return self.bound if self.tree else self.tree_witness

    def to_dict(self):
        return {
            'bound': self.bound,
            'characteristic': self.characteristic,
            'neutral': self.neutral,
            'neutral_witness': self.neutral_witness,
            'tree': self.tree,
            'tree_witness': self.tree_witness,
            'failures': [list(f) for f in self.per_word_failures],
        }


def _tree_failure(graph):
    if not graph.stats.edges:
        return "not biextendable"
    if not graph.acyclic:
        return "extension graph has a cycle"
    if len(graph.components) != 1:
        return f"extension graph has {len(graph.components)} components"
    return None


def classify(S, bound=None):
    """
    Neutral and tree classification of every nonempty member up to ``bound``.

    Witnesses are the shortest failing words, ties broken by alphabet order.

    Args:
        S (FactorSet): The language
        bound (int): Maximal word length checked (default N - 2)

    Returns:
        Classification: Witnesses, characteristic and all per-word failures
    """
    bound = S.stat_bound if bound is None else bound
    if bound > S.stat_bound:
        raise HorizonError(
            f"Classification bound {bound} exceeds {S.stat_bound} for horizon {S.horizon}",
            horizon=S.horizon,
        )

    empty_graph = extension_graph(S, '')
    chi = 1 - empty_graph.stats.m

    failures = []
    neutral_witness = None
    tree_witness = None

    if not empty_graph.acyclic:
        failures.append(('', "E(ε) has a cycle"))
        tree_witness = ''
    elif len(empty_graph.components) != chi:
        failures.append(('', f"E(ε) has {len(empty_graph.components)} trees, expected {chi}"))
        tree_witness = ''

    for word in S.words(bound)[1:]:
        graph = extension_graph(S, word)
        m = graph.stats.m
        if m != 0:
            failures.append((word, f"m(w) = {m}"))
            if neutral_witness is None:
                neutral_witness = word
        reason = _tree_failure(graph)
        if reason is not None:
            if m == 0:
                failures.append((word, reason))
            if tree_witness is None:
                tree_witness = word

    result = Classification(bound, chi, neutral_witness, tree_witness, tuple(failures))
    logger.info(f"Classified {S.provenance or 'factor set'} up to {bound}: "
                f"neutral={result.neutral}, tree={result.tree}, chi={chi}")
    return result


@dataclass(frozen=True)
class SpecialFactors:
    length: int
    left_special: tuple
    right_special: tuple
    bispecial: tuple
    strong: tuple
    weak: tuple

    def to_dict(self):
        return {key: list(value) if isinstance(value, tuple) else value
                for key, value in self.__dict__.items()}


def special_factors(S, n):
    """Left-special, right-special and bispecial words of length ``n``, and
    the strong (m > 0) and weak (m < 0) ones among them."""
    left, right, strong, weak = [], [], [], []
    for word in S.sorted_of_length(n):
        stats = extension_stats(S, word)
        if stats.ell >= 2:
            left.append(word)
        if stats.r >= 2:
            right.append(word)
        if stats.m > 0:
            strong.append(word)
        elif stats.m < 0:
            weak.append(word)
    bispecial = [w for w in left if w in set(right)]
    return SpecialFactors(n, tuple(left), tuple(right), tuple(bispecial), tuple(strong), tuple(weak))


# ---------------------------------------------------------------------------
# Complexity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ComplexityProfile:
    p: tuple
    s: tuple
    b: tuple

    def to_dict(self):
        return {'p': list(self.p), 's': list(self.s), 'b': list(self.b)}


@dataclass(frozen=True)
class ComplexityReport:
    profile: ComplexityProfile
    checks: tuple


def complexity_profile(S, neutral=None):
    """
    Factor complexity p_n and its first and second differences, with exact
    verification of the summation identities for every n <= N - 2.

    Args:
        S (FactorSet): The language (horizon at least 3)
        neutral (bool): Whether S is neutral up to N - 2; classified when omitted

    Returns:
        ComplexityReport: Profile plus one check per identity and length
    """
    if S.horizon < 3:
        raise HorizonError(f"Complexity profile needs horizon >= 3, got {S.horizon}",
                           horizon=S.horizon)

    p = np.array([S.complexity(n) for n in range(S.horizon + 1)], dtype=np.int64)
    s = np.diff(p)
    b = np.diff(s)
    profile = ComplexityProfile(tuple(int(v) for v in p),
                                tuple(int(v) for v in s),
                                tuple(int(v) for v in b))

    checks = []
    for n in range(S.stat_bound + 1):
        stats = [extension_stats(S, w) for w in S.of_length(n)]
        checks.append(Check.equality(
            f"second-difference[n={n}]", "b_n = sum of m(w) over words of length n",
            sum(st.m for st in stats), profile.b[n], bound=n,
        ))
        checks.append(Check.equality(
            f"first-difference[n={n}]", "s_n = sum of r(w) - 1 over words of length n",
            sum(st.r - 1 for st in stats), profile.s[n], bound=n,
        ))

    if neutral is None:
        neutral = classify(S).neutral
    if neutral:
        k = len(S.alphabet)
        chi = characteristic(S)
        for n in range(1, S.horizon + 1):
            checks.append(Check.equality(
                f"neutral-complexity[n={n}]", "p_n = n(k - chi) + chi",
                profile.p[n], n * (k - chi) + chi, bound=n,
            ))
    return ComplexityReport(profile, tuple(checks))


def verify_rho_laws(S, bound=None):
    """
    Nonnegativity of rho and lambda and the telescoping identities
    sum_{a in L(x)} rho(ax) = rho(x) and sum_{a in R(x)} lambda(xa) = lambda(x)
    for every member x of length at most ``bound`` (default N - 3).
    """
    bound = S.stat_bound - 1 if bound is None else bound
    if bound > S.stat_bound - 1:
        raise HorizonError(f"Rho law bound {bound} exceeds {S.stat_bound - 1}",
                           horizon=S.horizon)

    laws = {
        'rho-nonnegative': ("rho(x) >= 0", []),
        'lambda-nonnegative': ("lambda(x) >= 0", []),
        'rho-left-sum': ("sum over a in L(x) of rho(ax) = rho(x)", []),
        'lambda-right-sum': ("sum over a in R(x) of lambda(xa) = lambda(x)", []),
    }
    words = S.words(bound)
    for x in words:
        stats = extension_stats(S, x)
        rho_x = stats.e - stats.ell
        lambda_x = stats.e - stats.r
        if rho_x < 0:
            laws['rho-nonnegative'][1].append(x)
        if lambda_x < 0:
            laws['lambda-nonnegative'][1].append(x)
        if sum(rho(S, a + x) for a in stats.left) != rho_x:
            laws['rho-left-sum'][1].append(x)
        if sum(lambda_(S, x + a) for a in stats.right) != lambda_x:
            laws['lambda-right-sum'][1].append(x)

    checks = []
    for name, (claim, failed) in laws.items():
        checks.append(Check(name, claim, len(words) - len(failed), len(words),
                            not failed, failed[0] if failed else None, bound))
    return tuple(checks)


# ---------------------------------------------------------------------------
# Recurrence evidence
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RecurrenceReport:
    bound: int
    horizon: int
    failing_pair: object
    radii: tuple

    @property
    def recurrent(self):
        return self.failing_pair is None

    def to_dict(self):
        return {
            'bound': self.bound,
            'horizon': self.horizon,
            'recurrent': self.recurrent,
            'failing_pair': list(self.failing_pair) if self.failing_pair else None,
            'radii': {word: radius for word, radius in self.radii},
        }


def recurrence_report(S, bound=None, radius_length=3):
    """
    Horizon-bounded evidence of recurrence.

    For every pair (u, w) of nonempty members with |u| + |w| <= ``bound``,
    look for a member of the form uvw. Also estimate, for each member u with
    |u| <= ``radius_length``, the least n such that u occurs in every member
    of length n (None when no such n exists within the horizon).
    """
    bound = min(6, S.horizon) if bound is None else bound
    if bound > S.horizon:
        raise HorizonError(f"Recurrence bound {bound} exceeds horizon {S.horizon}",
                           horizon=S.horizon)

    members = S.words()
    key = S.alphabet.key
    failing = None
    for u in S.words(bound - 1)[1:]:
        reachable = set()
        for z in members:
            if z.startswith(u):
                tail = len(z) - len(u)
                reachable.update(z[len(z) - i:] for i in range(1, tail + 1))
        for w in S.words(bound - len(u))[1:]:
            if w not in reachable:
                candidate = (u, w)
                if failing is None or (len(u) + len(w), key(u), key(w)) < \
                        (len(failing[0]) + len(failing[1]), key(failing[0]), key(failing[1])):
                    failing = candidate
                break

    radii = []
    for u in S.words(min(radius_length, S.horizon))[1:]:
        radius = None
        for n in range(len(u), S.horizon + 1):
            if all(u in z for z in S.of_length(n)):
                radius = n
                break
        radii.append((u, radius))

    report = RecurrenceReport(bound, S.horizon, failing, tuple(radii))
    if failing is not None:
        logger.info(f"No connector found for pair {failing} within horizon {S.horizon}")
    return report


def is_biextendable(S):
    """True when every member of length at most N - 2 has a two-sided extension."""
    return non_biextendable_word(S) is None
