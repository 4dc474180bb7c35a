"""
Interval exchange transformations with flips over exact quadratic numbers.

Every interval is open. Boundary points are singularities: evaluating the
map there raises ``SingularityError`` rather than picking a side.
"""

import logging
import time
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from neutralsets.errors import InputError, MembershipError, PreconditionError, SingularityError
from neutralsets.models.checks import Check
from neutralsets.models.core import FactorSet, classify, complexity_profile, extension_graph
from neutralsets.models.quadratic import QuadraticReal
from neutralsets.models.words import Alphabet

logger = logging.getLogger(__name__)


def _q(value):
    return value if isinstance(value, QuadraticReal) else QuadraticReal(value)


@dataclass(frozen=True)
class Interval:
    """Open interval ]lo, hi[ with the orientation of the map that produced it.

    The empty interval is the single value ``Interval.empty()``.
    """

    lo: object = None
    hi: object = None
    orientation: int = 1

    @classmethod
    def empty(cls):
        return cls(None, None, 0)

    @classmethod
    def of(cls, lo, hi, orientation=1):
        lo, hi = _q(lo), _q(hi)
        if not lo < hi:
            return cls.empty()
        return cls(lo, hi, orientation)

    @property
    def is_empty(self):
        return self.lo is None

    @property
    def length(self):
        return QuadraticReal(0) if self.is_empty else self.hi - self.lo

    @property
    def midpoint(self):
        return (self.lo + self.hi) / 2

    def intersect(self, other):
        if self.is_empty or other.is_empty:
            return Interval.empty()
        return Interval.of(max(self.lo, other.lo), min(self.hi, other.hi), self.orientation)

    def contains(self, x):
        return not self.is_empty and self.lo < x < self.hi

    def within(self, other):
        return not self.is_empty and not other.is_empty and other.lo <= self.lo and self.hi <= other.hi

    def __str__(self):
        if self.is_empty:
            return "∅"
        return f"]{self.lo}, {self.hi}["

    def to_dict(self):
        if self.is_empty:
            return {'empty': True}
        return {'lo': self.lo.to_dict(), 'hi': self.hi.to_dict(), 'orientation': self.orientation}


@dataclass(frozen=True)
class IETSpec:
    alphabet: Alphabet
    order1: tuple
    order2: tuple
    lengths: dict
    flips: frozenset = frozenset()
    domain: Interval = None


class IntervalExchange:
    """A validated interval exchange T with its partitions (I_a) and (J_a).

    gamma[a] and delta[a] are the absolute left endpoints of I_a and J_a.
    """

    def __init__(self, spec):
        self.spec = spec
        self.alphabet = spec.alphabet
        self.lengths = {a: _q(spec.lengths[a]) for a in spec.alphabet}
        self.flips = frozenset(spec.flips)
        self.domain = spec.domain

        self.gamma = self._left_ends(spec.order1)
        self.delta = self._left_ends(spec.order2)
        self.I = {a: Interval.of(self.gamma[a], self.gamma[a] + self.lengths[a]) for a in self.alphabet}
        self.J = {
            a: Interval.of(self.delta[a], self.delta[a] + self.lengths[a],
                           -1 if a in self.flips else 1)
            for a in self.alphabet
        }

    def _left_ends(self, order):
        ends = {}
        position = self.domain.lo
        for a in order:
            ends[a] = position
            position = position + self.lengths[a]
        return ends

    def __repr__(self):
        return (f"IntervalExchange({''.join(self.spec.order1)} -> {''.join(self.spec.order2)}, "
                f"flips={sorted(self.flips)})")

    @property
    def gamma_points(self):
        """Internal singularities of T."""
        return sorted({g for g in self.gamma.values() if g != self.domain.lo})

    @property
    def delta_points(self):
        """Internal singularities of the inverse map."""
        return sorted({d for d in self.delta.values() if d != self.domain.lo})

    def affine(self, a, x):
        """The affine rule of letter ``a`` applied to ``x`` with no domain check."""
        if a in self.flips:
            return self.delta[a] + (self.gamma[a] + self.lengths[a] - x)
        return x + (self.delta[a] - self.gamma[a])

    def affine_inverse(self, a, y):
        if a in self.flips:
            return self.delta[a] + self.gamma[a] + self.lengths[a] - y
        return y - (self.delta[a] - self.gamma[a])

    def letter_at(self, x, step=None):
        x = _q(x)
        for a in self.alphabet:
            if self.I[a].contains(x):
                return a
        raise SingularityError(f"Point {x} is not inside any I_a", point=x, step=step)

    def apply(self, x):
        x = _q(x)
        return self.affine(self.letter_at(x), x)

    def apply_inverse(self, y):
        y = _q(y)
        for a in self.alphabet:
            if self.J[a].contains(y):
                return self.affine_inverse(a, y)
        raise SingularityError(f"Point {y} is not inside any J_a", point=y)

    def image(self, a, interval):
        """T restricted to I_a applied to a subinterval of I_a."""
        if interval.is_empty:
            return interval
        ends = sorted((self.affine(a, interval.lo), self.affine(a, interval.hi)))
        turn = -1 if a in self.flips else 1
        return Interval.of(ends[0], ends[1], interval.orientation * turn)

    def preimage(self, a, interval):
        if interval.is_empty:
            return interval
        ends = sorted((self.affine_inverse(a, interval.lo), self.affine_inverse(a, interval.hi)))
        return Interval.of(ends[0], ends[1])


def make_iet(spec):
    """
    Validate an interval exchange description and build the transformation.

    Args:
        spec (IETSpec): Alphabet, both orders, lengths, flips and domain

    Returns:
        IntervalExchange: The transformation with its derived partitions
    """
    symbols = set(spec.alphabet)
    for name, order in (('order1', spec.order1), ('order2', spec.order2)):
        if len(order) != len(symbols) or set(order) != symbols:
            raise InputError(f"{name} is not a permutation of the alphabet: {list(order)}")
    if set(spec.lengths) != symbols:
        raise InputError("Lengths must be given for exactly the alphabet letters")
    if not set(spec.flips) <= symbols:
        raise InputError(f"Flips outside the alphabet: {sorted(set(spec.flips) - symbols)}")

    lengths = {a: _q(spec.lengths[a]) for a in spec.alphabet}
    for a, length in lengths.items():
        if length.sign() <= 0:
            raise InputError(f"Length of {a!r} must be positive, got {length}")

    total = QuadraticReal(0)
    for length in lengths.values():
        total = total + length
    domain = spec.domain or Interval.of(QuadraticReal(0), total)
    if domain.is_empty or domain.length != total:
        raise InputError(f"Lengths sum to {total}, domain has length {domain.length}")

    return IntervalExchange(IETSpec(spec.alphabet, tuple(spec.order1), tuple(spec.order2),
                                    lengths, frozenset(spec.flips), domain))


# ---------------------------------------------------------------------------
# Natural coding
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CodingTree:
    """Natural coding language with the intervals I_w and J_w of each word."""

    factor_set: FactorSet
    intervals: dict = field(repr=False)

    def interval_of_word(self, word):
        try:
            return self.intervals[word]
        except KeyError:
            raise MembershipError(f"Word {word!r} is not in the coding", word=word)


def coding_tree(T, N):
    """
    Breadth-first coding tree of T up to length N.

    The child wa of w exists iff J_w ∩ I_a is nonempty, and then
    J_wa = T(J_w ∩ I_a). I_wa is pulled back through the inverse rules
    of the letters of w.
    """
    if N < 2:
        raise InputError(f"Coding horizon must be at least 2, got {N}")
    start_time = time.time()

    intervals = {'': (T.domain, T.domain)}
    queue = deque([''])
    while queue:
        word = queue.popleft()
        if len(word) == N:
            continue
        _, j_w = intervals[word]
        for a in T.alphabet:
            part = j_w.intersect(T.I[a])
            if part.is_empty:
                continue
            i_wa = part
            for b in reversed(word):
                i_wa = T.preimage(b, i_wa)
            intervals[word + a] = (i_wa, T.image(a, part))
            queue.append(word + a)

    factor_set = FactorSet(T.alphabet, N, intervals.keys(),
                           provenance=f"natural coding of {T!r}", check=False)
    logger.info(f"Built coding tree with {len(intervals)} words up to length {N} "
                f"({time.time() - start_time:.3f}s)")
    return CodingTree(factor_set, intervals)


def natural_coding(T, N):
    return coding_tree(T, N).factor_set


def sigma_coding(T, z, length):
    """Length-``length`` prefix of the itinerary of z; raises on a singular orbit."""
    z = _q(z)
    letters = []
    for step in range(length):
        a = T.letter_at(z, step)
        letters.append(a)
        if step + 1 < length:
            z = T.affine(a, z)
    return ''.join(letters)


def regular_points(T, count, steps):
    """
    ``count`` rational starting points whose orbits avoid every singularity
    for ``steps`` steps, screened exactly.
    """
    found = []
    denominator = 2 * count + 1
    while len(found) < count:
        for numerator in range(1, denominator):
            point = T.domain.lo + T.domain.length * Fraction(numerator, denominator)
            if point in found:
                continue
            try:
                sigma_coding(T, point, steps)
            except SingularityError:
                logger.debug(f"Discarded singular start {point}")
                continue
            found.append(point)
            if len(found) == count:
                break
        denominator = 2 * denominator + 1
    return found


# ---------------------------------------------------------------------------
# Connections
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConnectionReport:
    connections: tuple
    components: tuple
    search_bound: int

    @property
    def only_length_zero(self):
        return all(n == 0 for _, _, n in self.connections)

    def component_of(self, interval):
        for index, component in enumerate(self.components):
            if interval.within(component):
                return index
        return None

    def to_dict(self):
        return {
            'search_bound': self.search_bound,
            'connections': [
                {'x': x.to_dict(), 'y': y.to_dict(), 'n': n} for x, y, n in self.connections
            ],
            'components': [c.to_dict() for c in self.components],
        }


def find_connections(T, K):
    """
    Connections (x, y, n) with n <= K: x an internal delta point, y an
    internal gamma point and T^n(x) = y.

    Each delta orbit is followed until it lands on a gamma point or K steps
    pass. An empty result means "none within K", not absence.

    Returns:
        ConnectionReport: Connections and the components cut out by the
        length-0 ones
    """
    if K < 0:
        raise InputError(f"Connection bound must be nonnegative, got {K}")
    gammas = set(T.gamma_points)
    connections = []
    for x in T.delta_points:
        y = x
        for n in range(K + 1):
            if y in gammas:
                connections.append((x, y, n))
                break
            if n < K:
                y = T.apply(y)

    cuts = sorted(x for x, _, n in connections if n == 0)
    bounds = [T.domain.lo] + cuts + [T.domain.hi]
    components = tuple(Interval.of(lo, hi) for lo, hi in zip(bounds, bounds[1:]))
    report = ConnectionReport(tuple(connections), components, K)
    logger.info(f"Found {len(connections)} connection(s) within {K} steps, "
                f"{len(components)} component(s)")
    return report


def verify_iet_neutral(T, N, K, lemma_bound=4):
    """
    Check that the natural coding of T is a neutral tree set whose
    characteristic is the number of components of I.

    Refuses when a connection of positive length is found within K steps.
    The interval-intersection descriptions of left and right extensions and
    the component criterion for E(w) are checked on words up to
    ``lemma_bound``.

    Returns:
        tuple: (ConnectionReport, CodingTree, list of Check)
    """
    report = find_connections(T, K)
    if not report.only_length_zero:
        longest = max(report.connections, key=lambda c: c[2])
        raise PreconditionError(
            f"Connection of length {longest[2]} found; only length-0 connections are allowed"
        )

    tree = coding_tree(T, N)
    S = tree.factor_set
    classification = classify(S)
    chi = classification.characteristic
    bound = classification.bound
    logger.info(f"Characteristic compared with the component count ({len(report.components)}); "
                f"the set has {len(report.connections)} connection(s)")

    checks = [
        Check('iet-neutral', "the natural coding is neutral", classification.neutral_up_to,
              bound, classification.neutral, classification.neutral_witness, bound),
        Check('iet-tree', "the natural coding is a tree set", classification.tree_up_to,
              bound, classification.tree, classification.tree_witness, bound),
        Check.equality('iet-characteristic', "chi(L(T)) equals the number of components of I",
                       chi, len(report.components), bound=bound,
                       notes=(f"connections={len(report.connections)}",)),
    ]
    if classification.neutral:
        checks.extend(complexity_profile(S, neutral=True).checks)

    limit = min(lemma_bound, S.stat_bound)
    extension_failures = []
    component_failures = []
    for word in S.words(limit):
        i_w, j_w = tree.interval_of_word(word)
        graph = extension_graph(S, word)
        if word:
            left = {a for a in T.alphabet if not i_w.intersect(T.J[a]).is_empty}
            right = {a for a in T.alphabet if not T.I[a].intersect(j_w).is_empty}
            if left != set(graph.stats.left) or right != set(graph.stats.right):
                extension_failures.append(word)
        if not _components_agree(graph, report, T):
            component_failures.append(word)

    words = S.words(limit)
    checks.append(Check(
        'iet-extension-intervals', "a in L(w) iff I_w meets J_a, and a in R(w) iff J_w meets I_a",
        len(words) - 1 - len(extension_failures), len(words) - 1, not extension_failures,
        extension_failures[0] if extension_failures else None, limit,
    ))
    checks.append(Check(
        'iet-extension-components',
        "letters share a component of E(w) iff their intervals share a component of I",
        len(words) - len(component_failures), len(words), not component_failures,
        component_failures[0] if component_failures else None, limit,
    ))
    return report, tree, checks


def _components_agree(graph, report, T):
    component = {vertex: index for index, part in enumerate(graph.components) for vertex in part}
    for side, intervals in (('L', T.J), ('R', T.I)):
        letters = sorted(v.letter for v in component if v.side == side)
        for a in letters:
            for b in letters:
                same_graph = component[(side, a)] == component[(side, b)]
                same_interval = report.component_of(intervals[a]) == report.component_of(intervals[b])
                if same_graph != same_interval:
                    return False
    return True
