"""
Utilities for exporting verification reports and factor sets.
"""

import json
import logging
import os

import pandas as pd

from neutralsets.models.checks import _plain

logger = logging.getLogger(__name__)

FORMATS = ('json', 'text')


def build_report(command, checks, input_digest, results=None, tool_version=None):
    """
    Assemble the report envelope.

    Args:
        command (str): CLI command that produced the report
        checks (list): Check records
        input_digest (str): SHA-256 of the input bytes
        results (dict): Command specific payload (words, codes, connections)

    Returns:
        dict: ``{tool_version, input_digest, command, checks, results}``
    """
    if tool_version is None:
        from neutralsets import __version__ as tool_version
    return {
        'tool_version': tool_version,
        'input_digest': input_digest,
        'command': command,
        'checks': [check.to_dict() for check in checks],
        'results': _plain(results or {}),
    }


def checks_table(report):
    """The checks of a report as a DataFrame."""
    columns = ['name', 'pass', 'lhs', 'rhs', 'bound', 'witness', 'claim']
    rows = [{col: check.get(col) for col in columns} for check in report['checks']]
    frame = pd.DataFrame(rows, columns=columns)
    for col in ('lhs', 'rhs', 'bound', 'witness'):
        frame[col] = frame[col].map(lambda v: '' if v is None else json.dumps(v, ensure_ascii=False))
    return frame


def render(report, fmt='json'):
    if fmt == 'json':
        return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + '\n'
    if fmt == 'text':
        lines = [
            f"command: {report['command']}",
            f"tool_version: {report['tool_version']}",
            f"input_digest: {report['input_digest']}",
        ]
        if report['checks']:
            lines.append(checks_table(report).to_string(index=False))
        else:
            lines.append("(no checks)")
        if report['results']:
            lines.append(json.dumps(report['results'], indent=2, sort_keys=True, ensure_ascii=False))
        return '\n'.join(lines) + '\n'
    raise ValueError(f"Unknown report format {fmt!r}")


def export_report(report, out=None, fmt='json', output_dir=None):
    """
    Write a rendered report to ``out`` (or into ``output_dir``), returning
    the path; with neither, return the rendered text for the caller to print.
    """
    text = render(report, fmt)
    if out is None and output_dir is None:
        return text
    if out is None:
        os.makedirs(output_dir, exist_ok=True)
        suffix = 'json' if fmt == 'json' else 'txt'
        out = os.path.join(output_dir, f"{report['command']}_{report['input_digest'][:12]}.{suffix}")
    parent = os.path.dirname(os.path.abspath(out))
    os.makedirs(parent, exist_ok=True)
    with open(out, 'w', encoding='utf-8') as f:
        f.write(text)
    logger.info(f"Exported {report['command']} report to {os.path.abspath(out)}")
    return out


def export_factor_set(S, path):
    """Write a factor set in the JSON import format."""
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(S.to_dict(), f, indent=2, sort_keys=True, ensure_ascii=False)
        f.write('\n')
    logger.info(f"Exported factor set with {len(S)} words to {path}")
    return path
