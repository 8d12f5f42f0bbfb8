"""Check results shared by every report-style operation.

Mathematical failures are never raised: a check either passes, fails
with a witness, or is skipped (with a reason). Reports also carry the
evidence level: a result computed from a sampled rather than
exhaustive enumeration is marked ``exhaustive=False``.
"""
from typing import Any, Dict, Iterable, List, Optional

from dataclasses import dataclass, field
from fractions import Fraction
from collections import OrderedDict

import numpy as np

PASS = 'PASS'
FAIL = 'FAIL'
SKIPPED = 'SKIPPED'


def jsonable(value: Any) -> Any:
    """Turn witnesses into plain JSON data (deterministically ordered)."""
    if hasattr(value, 'to_json'):
        return value.to_json()
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(jsonable(v) for v in value)
    if isinstance(value, np.ndarray):
        return jsonable(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else str(value)
    return value


@dataclass
class CheckResult:
    """The outcome of a single named check."""

    name: str
    status: str = PASS
    exhaustive: bool = True
    witness: Optional[Dict[str, Any]] = None
    detail: str = ''
    replay: Optional[Dict[str, Any]] = None

    @property
    def passed(self) -> bool:
        return self.status != FAIL

    def to_json(self) -> dict:
        result = OrderedDict(name=self.name, status=self.status, exhaustive=self.exhaustive)
        if self.witness is not None:
            result['witness'] = jsonable(self.witness)
        if self.detail:
            result['detail'] = self.detail
        if self.replay is not None:
            result['replay'] = jsonable(self.replay)
        return dict(result)


def passed(name: str, exhaustive: bool = True, detail: str = '', **witness) -> CheckResult:
    return CheckResult(name, PASS, exhaustive, witness or None, detail)


def failed(name: str, witness: Dict[str, Any], detail: str = '', exhaustive: bool = True,
           replay: Dict[str, Any] = None) -> CheckResult:
    return CheckResult(name, FAIL, exhaustive, witness, detail, replay)


def skipped(name: str, detail: str) -> CheckResult:
    return CheckResult(name, SKIPPED, True, None, detail)


@dataclass
class Report:
    """An ordered list of check results, optionally with a data section."""

    title: str
    results: List[CheckResult] = field(default_factory=list)
    data: Dict[str, Any] = field(default_factory=dict)

    def add(self, result: CheckResult) -> CheckResult:
        self.results.append(result)
        return result

    def check(self, name: str, condition: bool, witness: Dict[str, Any] = None,
              detail: str = '', exhaustive: bool = True) -> CheckResult:
        """Record PASS or FAIL depending on `condition`."""
        if condition:
            return self.add(CheckResult(name, PASS, exhaustive, None, detail))
        return self.add(CheckResult(name, FAIL, exhaustive, witness or {}, detail))

    def extend(self, other: 'Report', prefix: str = None) -> None:
        for result in other.results:
            if prefix:
                result = CheckResult('{}/{}'.format(prefix, result.name), result.status,
                                     result.exhaustive, result.witness, result.detail,
                                     result.replay)
            self.results.append(result)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def exhaustive(self) -> bool:
        return all(r.exhaustive for r in self.results)

    def failures(self) -> List[CheckResult]:
        return [r for r in self.results if r.status == FAIL]

    def statuses(self) -> Dict[str, str]:
        return {r.name: r.status for r in self.results}

    def to_json(self) -> dict:
        return {
            'title': self.title,
            'passed': self.passed,
            'exhaustive': self.exhaustive,
            'checks': [r.to_json() for r in self.results],
            'data': jsonable(self.data),
        }


def merge(title: str, reports: Iterable[Report]) -> Report:
    merged = Report(title)
    for report in reports:
        merged.extend(report, prefix=report.title)
        merged.data.update(report.data)
    return merged
