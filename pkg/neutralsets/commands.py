"""
Command handlers for the neutral sets toolkit.
"""

import argparse
import dataclasses
import logging
import sys
import time
from dataclasses import dataclass

from neutralsets.errors import (
    IncompleteEnumerationError,
    InputError,
    NeutralSetsError,
    PreconditionError,
    TheoremViolation,
)
from neutralsets.models.bifix import (
    MODES,
    code_kind,
    is_s_maximal,
    prefix_partition,
    proper_prefixes,
    rho_sum,
    uniform_code,
    verify_cardinality,
)
from neutralsets.models.checks import Check, first_failure
from neutralsets.models.core import (
    build_from_morphic_fixed_point,
    classify,
    complexity_profile,
    extension_graph,
    recurrence_report,
    special_factors,
    verify_rho_laws,
)
from neutralsets.models.decoding import verify_decoding_neutral
from neutralsets.models.iet import coding_tree, make_iet, verify_iet_neutral
from neutralsets.models.returns import verify_return_cardinality
from neutralsets.utils.loaders import load_input, parse_code
from neutralsets.utils.report_exporter import FORMATS, build_report, export_report

logger = logging.getLogger(__name__)

COMMANDS = ('gen-morphic', 'gen-iet', 'analyze', 'bifix', 'returns', 'decode', 'verify-all')


@dataclass(frozen=True)
class RunConfig:
    command: str
    input: str
    horizon: object = None
    classify_bound: object = None
    connection_bound: int = 64
    decode_len: object = None
    out: object = None
    fmt: str = 'json'
    code: object = None
    word: object = None
    mode: str = 'bifix'

    @classmethod
    def from_args(cls, args, settings):
        return cls(
            command=args.command,
            input=args.input,
            horizon=args.horizon,
            classify_bound=args.classify_bound if args.classify_bound is not None
            else settings.get('CLASSIFY_BOUND'),
            connection_bound=args.connection_bound if args.connection_bound is not None
            else settings.get('CONNECTION_BOUND', 64),
            decode_len=args.decode_len if args.decode_len is not None
            else settings.get('DECODE_LENGTH'),
            out=args.out,
            fmt=args.format or settings.get('REPORT_FORMAT', 'json'),
            code=args.code,
            word=args.word,
            mode=args.mode,
        )

    def validate(self):
        """Reject bounds that cannot fit any horizon before work starts."""
        if self.horizon is not None and self.horizon < 2:
            raise InputError(f"--horizon must be at least 2, got {self.horizon}")
        if self.classify_bound is not None and self.classify_bound < 0:
            raise InputError(f"--classify-bound must be nonnegative, got {self.classify_bound}")
        if self.horizon is not None and self.classify_bound is not None \
                and self.classify_bound > self.horizon - 2:
            raise InputError(
                f"--classify-bound {self.classify_bound} exceeds horizon - 2 = {self.horizon - 2}"
            )
        if self.connection_bound < 0:
            raise InputError(f"--connection-bound must be nonnegative, got {self.connection_bound}")
        if self.decode_len is not None and self.decode_len < 2:
            raise InputError(f"--decode-len must be at least 2, got {self.decode_len}")
        if self.fmt not in FORMATS:
            raise InputError(f"Unknown report format {self.fmt!r}")
        return self


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('input', help="Morphism, interval exchange or factor set JSON file")
    common.add_argument('--horizon', type=int, help="Maximal word length N")
    common.add_argument('--classify-bound', type=int, help="Classification bound (default N - 2)")
    common.add_argument('--connection-bound', type=int, help="Connection search bound K")
    common.add_argument('--decode-len', type=int, help="Decoded horizon M")
    common.add_argument('--format', choices=FORMATS, help="Report format")
    common.add_argument('--out', help="Write the report to this file")
    common.add_argument('--code', help="Code words: JSON file or comma-separated list")
    common.add_argument('--word', help="Single target word for return words")
    common.add_argument('--mode', choices=MODES, default='bifix', help="Maximality mode")

    parser = argparse.ArgumentParser(
        prog='neutralsets',
        description="Neutral and tree sets: generators, analyses and bounded theorem checks",
    )
    sub = parser.add_subparsers(dest='command', required=True)
    sub.add_parser('gen-morphic', parents=[common], help="Factors of a morphic fixed point")
    sub.add_parser('gen-iet', parents=[common], help="Natural coding of an interval exchange")
    sub.add_parser('analyze', parents=[common], help="Extension graphs, classification, complexity")
    sub.add_parser('bifix', parents=[common], help="Maximality, degree and counting laws of codes")
    sub.add_parser('returns', parents=[common], help="Complete and right return words")
    sub.add_parser('decode', parents=[common], help="Maximal bifix decoding")
    sub.add_parser('verify-all', parents=[common], help="Every applicable theorem check")
    return parser


# ---------------------------------------------------------------------------
# Language construction
# ---------------------------------------------------------------------------

@dataclass
class Workspace:
    settings: dict
    config: RunConfig
    loaded: object
    language: object = None
    transformation: object = None
    tree: object = None


def _load_language(app, cfg):
    loaded = load_input(cfg.input)
    ws = Workspace(app.config, cfg, loaded)
    default_horizon = app.config.get('DEFAULT_HORIZON', 12)

    if loaded.kind == 'morphism':
        sigma, seed = loaded.payload
        ws.language = build_from_morphic_fixed_point(sigma, seed, cfg.horizon or default_horizon)
    elif loaded.kind == 'iet':
        ws.transformation = make_iet(loaded.payload)
        ws.tree = coding_tree(ws.transformation, cfg.horizon or default_horizon)
        ws.language = ws.tree.factor_set
    else:
        S = loaded.payload
        ws.language = S if cfg.horizon in (None, S.horizon) else S.truncate(cfg.horizon)

    S = ws.language
    if cfg.classify_bound is not None and cfg.classify_bound > S.stat_bound:
        raise InputError(f"--classify-bound {cfg.classify_bound} exceeds {S.stat_bound} "
                         f"for horizon {S.horizon}")
    return ws


def _labelled(checks, label):
    return [dataclasses.replace(c, name=f"{c.name}[{label}]") for c in checks]


def _uniform_lengths(ws):
    S = ws.language
    top = ws.settings.get('UNIFORM_CODE_LENGTHS', 4)
    return [n for n in range(1, top + 1) if 2 * n <= S.horizon]


# ---------------------------------------------------------------------------
# Handlers
# ---------------------------------------------------------------------------

def handle_gen_morphic(ws):
    if ws.loaded.kind != 'morphism':
        raise InputError(f"gen-morphic needs a morphism file, got {ws.loaded.kind}")
    return [], {'factor_set': ws.language.to_dict()}


def handle_gen_iet(ws):
    if ws.loaded.kind != 'iet':
        raise InputError(f"gen-iet needs an interval exchange file, got {ws.loaded.kind}")
    T = ws.transformation
    return [], {
        'factor_set': ws.language.to_dict(),
        'intervals': {
            a: {'I': T.I[a].to_dict(), 'J': T.J[a].to_dict()} for a in T.alphabet
        },
    }


def handle_analyze(ws):
    S = ws.language
    classification = classify(S, ws.config.classify_bound)
    complexity = complexity_profile(S, neutral=classification.neutral)
    checks = list(complexity.checks)
    if classification.neutral:
        checks.extend(verify_rho_laws(S))

    recurrence = recurrence_report(
        S,
        min(ws.settings.get('RECURRENCE_BOUND', 6), S.horizon),
        ws.settings.get('RADIUS_WORD_LENGTH', 3),
    )
    results = {
        'provenance': S.provenance,
        'horizon': S.horizon,
        'classification': classification.to_dict(),
        'empty_word_graph': extension_graph(S, '').to_dict(),
        'complexity': complexity.profile.to_dict(),
        'special_factors': [special_factors(S, n).to_dict()
                            for n in range(min(3, S.stat_bound) + 1)],
        'recurrence': recurrence.to_dict(),
    }
    return checks, results


def _code_checks(S, code, mode, label):
    """Maximality facts in the results; counting laws as checks."""
    maximality = is_s_maximal(S, code, mode)
    result = {'code': S.alphabet.sorted(code.words), 'maximality': maximality.to_dict()}
    checks = []
    if not maximality.maximal:
        result['note'] = f"not S-maximal as a {mode} code; counting laws do not apply"
        return checks, result

    if mode == 'suffix':
        checks.extend(rho_sum(S, code).checks)
    elif mode == 'bifix':
        checks.append(verify_cardinality(S, code))
        try:
            classes = prefix_partition(S, code)
            degree = maximality.degree.degree
            checks.append(Check.equality(
                'prefix-partition', "proper prefixes split into n - 1 S-maximal suffix codes",
                len(classes), degree - 1,
            ))
            result['prefix_classes'] = [S.alphabet.sorted(c.words) for c in classes]
            for cls in classes:
                checks.extend(rho_sum(S, cls).checks)
        except TheoremViolation as e:
            checks.append(Check('prefix-partition',
                                "proper prefixes split into n - 1 S-maximal suffix codes",
                                str(e), None, False, e.witness))
        prefixes = proper_prefixes(code.words, include_empty=True)
        checks.extend(rho_sum(S, prefixes, source_code=code).checks)
    return _labelled(checks, label), result


def _codes(ws):
    if ws.config.code:
        return [('code', code_kind(parse_code(ws.config.code)))]
    return [(f"A^{n}", uniform_code(ws.language, n)) for n in _uniform_lengths(ws)]


def handle_bifix(ws):
    checks, results = [], {'codes': []}
    for label, code in _codes(ws):
        code_checks, result = _code_checks(ws.language, code, ws.config.mode, label)
        checks.extend(code_checks)
        results['codes'].append(result)
    return checks, results


def _return_targets(ws):
    S = ws.language
    if ws.config.word:
        return [(ws.config.word, ws.config.word, None)]
    if ws.config.code:
        return [('code', code_kind(parse_code(ws.config.code)), None)]
    targets = [(a, a, None) for a in S.alphabet if a in S]
    targets += [(f"A^{n}", uniform_code(S, n), n) for n in _uniform_lengths(ws)]
    return targets


def handle_returns(ws):
    S = ws.language
    checks, results = [], {'targets': []}
    for label, target, n in _return_targets(ws):
        report, target_checks = verify_return_cardinality(S, target)
        if n is not None and n + 1 <= S.horizon:
            target_checks.append(Check.equality(
                'uniform-returns', "CR_S(S∩A^n) = S∩A^{n+1}",
                S.alphabet.sorted(report.complete_returns), S.sorted_of_length(n + 1),
                bound=n + 1,
            ))
        checks.extend(_labelled(target_checks, label))
        results['targets'].append(report.to_dict(S.alphabet, expected=target_checks[0].rhs))
    return checks, results


def handle_decode(ws):
    S = ws.language
    code = parse_code(ws.config.code) if ws.config.code else uniform_code(S, 2)
    report = verify_decoding_neutral(S, code, ws.config.decode_len,
                                     letters=ws.settings.get('DECODING_LETTERS'))
    U = report.decoded
    recurrence = recurrence_report(U, min(ws.settings.get('RECURRENCE_BOUND', 6), U.horizon))
    results = {
        'morphism': report.morphism.to_dict(),
        'decoded': U.to_dict(),
        'recurrence': recurrence.to_dict(),
    }
    return list(report.checks), results


def handle_verify_all(ws):
    S = ws.language
    checks, results = handle_analyze(ws)
    results = {'analysis': results, 'skipped': []}

    if ws.transformation is not None:
        try:
            connections, _, iet_checks = verify_iet_neutral(
                ws.transformation, S.horizon, ws.config.connection_bound,
                ws.settings.get('LEMMA_BOUND', 4),
            )
            checks.extend(iet_checks)
            results['connections'] = connections.to_dict()
        except PreconditionError as e:
            results['skipped'].append({'verifier': 'iet', 'reason': str(e)})

    if not results['analysis']['classification']['neutral']:
        reason = "set is not neutral up to the classification bound"
        for verifier in ('bifix', 'returns', 'decode'):
            results['skipped'].append({'verifier': verifier, 'reason': reason})
        return checks, results

    for name, handler in (('bifix', handle_bifix), ('returns', handle_returns),
                          ('decode', handle_decode)):
        try:
            handler_checks, handler_results = handler(ws)
        except (PreconditionError, IncompleteEnumerationError) as e:
            logger.warning(f"Skipped {name}: {e}")
            results['skipped'].append({'verifier': name, 'reason': str(e)})
            continue
        checks.extend(handler_checks)
        results[name] = handler_results
    return checks, results


HANDLERS = {
    'gen-morphic': handle_gen_morphic,
    'gen-iet': handle_gen_iet,
    'analyze': handle_analyze,
    'bifix': handle_bifix,
    'returns': handle_returns,
    'decode': handle_decode,
    'verify-all': handle_verify_all,
}


def run(app, argv=None):
    """
    Parse arguments, run one command and write its report.

    Returns:
        int: 0 on success, 2 for usage errors, 3 for data errors and 4 when
        some check fails
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    start_time = time.time()
    try:
        cfg = RunConfig.from_args(args, app.config).validate()
        ws = _load_language(app, cfg)
        checks, results = HANDLERS[cfg.command](ws)

        report = build_report(cfg.command, checks, ws.loaded.digest, results)
        output = export_report(report, out=cfg.out, fmt=cfg.fmt,
                               output_dir=None if cfg.out else app.config.get('OUTPUT_FOLDER'))
        if cfg.out is None and not app.config.get('OUTPUT_FOLDER'):
            sys.stdout.write(output)
    except NeutralSetsError as e:
        logger.error(f"{args.command} failed: {e}")
        return e.exit_code
    except Exception as e:
        logger.exception(f"Unexpected error in {args.command}: {str(e)}")
        return 3

    logger.info(f"{cfg.command} finished with {len(checks)} check(s) "
                f"in {time.time() - start_time:.2f}s")
    failure = first_failure(checks)
    if failure is not None:
        logger.error(f"Check {failure.name} failed: {failure.lhs} != {failure.rhs}")
        return 4
    return 0
