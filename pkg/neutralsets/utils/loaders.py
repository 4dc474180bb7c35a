"""
Input files: morphisms, interval exchanges, exported factor sets and codes.
"""

import hashlib
import json
import logging
import os

from neutralsets.errors import InputError
from neutralsets.models.core import FactorSet, Morphism
from neutralsets.models.iet import IETSpec, Interval
from neutralsets.models.quadratic import QuadraticField
from neutralsets.models.words import Alphabet

logger = logging.getLogger(__name__)

KINDS = ('morphism', 'iet', 'factor_set')


class LoadedInput:
    """A parsed input file with its kind and the SHA-256 digest of its bytes."""

    def __init__(self, path, kind, payload, digest):
        self.path = path
        self.kind = kind
        self.payload = payload
        self.digest = digest

    def __repr__(self):
        return f"LoadedInput({self.path!r}, kind={self.kind})"


def read_json(path):
    """Read a JSON file and return ``(data, digest)``."""
    if not os.path.isfile(path):
        raise InputError(f"Input file not found: {path}")
    with open(path, 'rb') as f:
        raw = f.read()
    try:
        data = json.loads(raw.decode('utf-8'))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise InputError(f"Malformed JSON in {path}: {e}")
    if not isinstance(data, dict):
        raise InputError(f"Top level of {path} must be a JSON object")
    return data, hashlib.sha256(raw).hexdigest()


def detect_kind(data):
    if 'rules' in data:
        return 'morphism'
    if 'order1' in data:
        return 'iet'
    if 'words' in data:
        return 'factor_set'
    raise InputError("Cannot tell the input kind: expected 'rules', 'order1' or 'words'")


def parse_morphism(data):
    """
    Parse ``{"alphabet": [...], "rules": {"a": "ab", ...}, "seed": "a"}``.

    The alphabet defaults to the rule keys in file order and the seed to the
    first letter.

    Returns:
        tuple: (Morphism, seed)
    """
    rules = data.get('rules')
    if not isinstance(rules, dict):
        raise InputError("'rules' must be an object mapping letters to images")
    if not all(isinstance(v, str) for v in rules.values()):
        raise InputError("Every morphism image must be a string")
    alphabet = Alphabet(tuple(data['alphabet'])) if 'alphabet' in data else None
    sigma = Morphism.from_rules(rules, alphabet)
    seed = data.get('seed', sigma.source.symbols[0])
    if not isinstance(seed, str) or len(seed) != 1:
        raise InputError(f"Seed must be a single letter, got {seed!r}")
    return sigma, seed


def parse_iet(data):
    """
    Parse ``{"d": 5, "alphabet": [...], "order1": [...], "order2": [...],
    "lengths": {"a": {"p": "2", "q": "-1"}, ...}, "flips": [...]}`` with
    an optional ``"domain": {"lo": ..., "hi": ...}``.
    """
    try:
        field = QuadraticField(int(data.get('d', 1)))
        alphabet = Alphabet(tuple(data['alphabet']))
        lengths = {a: field.parse(v) for a, v in data['lengths'].items()}
        domain = None
        if 'domain' in data:
            domain = Interval.of(field.parse(data['domain']['lo']), field.parse(data['domain']['hi']))
        return IETSpec(alphabet, tuple(data['order1']), tuple(data['order2']), lengths,
                       frozenset(data.get('flips', ())), domain)
    except (KeyError, TypeError, AttributeError, ValueError) as e:
        raise InputError(f"Malformed interval exchange description: {e}")


def load_input(path):
    """Read an input file and parse it according to its detected kind."""
    data, digest = read_json(path)
    kind = detect_kind(data)
    if kind == 'morphism':
        payload = parse_morphism(data)
    elif kind == 'iet':
        payload = parse_iet(data)
    else:
        payload = FactorSet.from_dict(data)
    logger.info(f"Loaded {kind} from {path} (sha256 {digest[:12]})")
    return LoadedInput(path, kind, payload, digest)


def parse_code(value):
    """
    Code words from a JSON file (a list, or an object with ``"words"``) or
    from a comma-separated list.
    """
    if value is None:
        return None
    if os.path.isfile(value):
        with open(value, 'r') as f:
            try:
                data = json.load(f)
            except json.JSONDecodeError as e:
                raise InputError(f"Malformed code file {value}: {e}")
        words = data.get('words') if isinstance(data, dict) else data
    else:
        words = [w.strip() for w in value.split(',')]
    if not isinstance(words, list) or not all(isinstance(w, str) and w for w in words):
        raise InputError(f"Code must be a list of nonempty words, got {value!r}")
    return words
