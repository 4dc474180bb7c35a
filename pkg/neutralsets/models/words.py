"""
Alphabets and plain-string words.

A word is a Python ``str`` whose characters are the symbols of an
``Alphabet``; the empty string is the empty word.
"""

from dataclasses import dataclass

from neutralsets.errors import ConstructionError, InputError


@dataclass(frozen=True)
class Alphabet:
    """Ordered finite set of one-character symbols"""

    symbols: tuple

    def __post_init__(self):
        symbols = tuple(self.symbols)
        if not symbols:
            raise InputError("An alphabet needs at least one symbol")
        for symbol in symbols:
            if not isinstance(symbol, str) or len(symbol) != 1:
                raise InputError(f"Alphabet symbols must be single characters, got {symbol!r}")
        if len(set(symbols)) != len(symbols):
            raise InputError(f"Alphabet symbols must be distinct: {''.join(symbols)}")
        object.__setattr__(self, 'symbols', symbols)
        object.__setattr__(self, '_rank', {s: i for i, s in enumerate(symbols)})

    @classmethod
    def from_words(cls, words):
        """Alphabet of the symbols occurring in ``words``, in code point order."""
        letters = sorted({symbol for word in words for symbol in word})
        return cls(tuple(letters))

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, symbol):
        return symbol in self._rank

    def __str__(self):
        return ''.join(self.symbols)

    def index(self, symbol):
        return self._rank[symbol]

    def key(self, word):
        """Sort key: length first, then lexicographic in alphabet order."""
        return (len(word), tuple(self._rank[s] for s in word))

    def sorted(self, words):
        return sorted(words, key=self.key)

    def lex_key(self, word):
        """Pure lexicographic key in alphabet order (no length priority)."""
        return tuple(self._rank[s] for s in word)

    def check_word(self, word):
        for symbol in word:
            if symbol not in self._rank:
                raise ConstructionError(
                    f"Word {word!r} uses symbol {symbol!r} outside alphabet {self}"
                )
        return word

    def words_of_length(self, n):
        """All words of length ``n`` over this alphabet, in canonical order."""
        layer = ['']
        for _ in range(n):
            layer = [w + a for w in layer for a in self.symbols]
        return layer


def factors(word, max_len=None):
    """Set of all factors of ``word`` of length at most ``max_len`` (ε included)."""
    limit = len(word) if max_len is None else min(max_len, len(word))
    found = {''}
    for length in range(1, limit + 1):
        for start in range(len(word) - length + 1):
            found.add(word[start:start + length])
    return found


def has_internal_factor(word, candidates, lengths=None):
    """True when some word of ``candidates`` occurs in ``word`` with a
    nonempty word on each side."""
    lengths = lengths or {len(c) for c in candidates}
    for length in lengths:
        for start in range(1, len(word) - length):
            if word[start:start + length] in candidates:
                return True
    return False


def has_proper_prefix_in(word, candidates, lengths=None):
    lengths = lengths or {len(c) for c in candidates}
    return any(0 < n < len(word) and word[:n] in candidates for n in lengths)


def has_proper_suffix_in(word, candidates, lengths=None):
    lengths = lengths or {len(c) for c in candidates}
    return any(0 < n < len(word) and word[len(word) - n:] in candidates for n in lengths)
