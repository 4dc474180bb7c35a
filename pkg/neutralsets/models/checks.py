"""
Verification records produced by every verifier.
"""

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    """One exact comparison ``lhs == rhs`` attached to a named claim.

    ``passed`` is stored rather than derived so that checks whose outcome is
    a predicate (``lhs``/``rhs`` are descriptive) fit the same record.
    """

    name: str
    claim: str
    lhs: object
    rhs: object
    passed: bool
    witness: object = None
    bound: object = None
    notes: tuple = field(default_factory=tuple)

    @classmethod
    def equality(cls, name, claim, lhs, rhs, witness=None, bound=None, notes=()):
        return cls(name, claim, lhs, rhs, lhs == rhs, witness, bound, tuple(notes))

    def to_dict(self):
        data = {
            'name': self.name,
            'claim': self.claim,
            'lhs': _plain(self.lhs),
            'rhs': _plain(self.rhs),
            'pass': bool(self.passed),
        }
        if self.witness is not None:
            data['witness'] = _plain(self.witness)
        if self.bound is not None:
            data['bound'] = _plain(self.bound)
        if self.notes:
            data['notes'] = list(self.notes)
        return data


def _plain(value):
    """Convert values to JSON-friendly builtins with a stable order."""
    if hasattr(value, 'to_dict'):
        return value.to_dict()
    if isinstance(value, (set, frozenset)):
        return sorted(_plain(v) for v in value)
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in sorted(value.items(), key=lambda kv: str(kv[0]))}
    if hasattr(value, 'numerator') and hasattr(value, 'denominator') and not isinstance(value, (int, bool)):
        return str(value)
    if hasattr(value, 'item'):
        # numpy scalars
        return value.item()
    return value


def all_passed(checks):
    return all(check.passed for check in checks)


def first_failure(checks):
    for check in checks:
        if not check.passed:
            return check
    return None
