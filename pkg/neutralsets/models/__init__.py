# Import models
from neutralsets.models.words import Alphabet
from neutralsets.models.checks import Check
from neutralsets.models.core import (
    FactorSet, Morphism, build_from_morphic_fixed_point, build_from_words,
    classify, complexity_profile, extension_graph, extension_stats,
)
from neutralsets.models.bifix import CodeSet, code_kind
from neutralsets.models.quadratic import QuadraticField, QuadraticReal
from neutralsets.models.iet import IETSpec, Interval, make_iet

# Export models
__all__ = [
    'Alphabet', 'Check', 'FactorSet', 'Morphism', 'build_from_morphic_fixed_point',
    'build_from_words', 'classify', 'complexity_profile', 'extension_graph',
    'extension_stats', 'CodeSet', 'code_kind', 'QuadraticField', 'QuadraticReal',
    'IETSpec', 'Interval', 'make_iet',
]
