"""Machine readable certificates.

A certificate wraps the report of one command together with what is
needed to reproduce it: the tool version, the sha256 digest of the
canonical input, the command and its options. Serialization sorts keys
and leaves out timing unless asked for, so that a fixed input, seed and
version always give the same bytes.
"""
from typing import Any, Dict, List, Optional

import json

from dataclasses import dataclass, field

from category import Report, CheckResult, PASS, FAIL, SKIPPED, jsonable

TOOL = 'defectlab'
VERSION = '1.0.0'

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


@dataclass
class Certificate:
    """The outcome of one command on one input.

    Attributes
    ----------
    command
        The command name, e.g. ``theorem-a``.
    report
        The checks; every FAIL carries a witness and a replay record.
    input
        The input path as given on the command line (None for selftest).
    digest
        sha256 of the canonical input document.
    options
        Caps, seed, field and pair actually used.
    timing
        Seconds spent, only recorded with ``--timing``.
    """

    command: str
    report: Report
    input: Optional[str] = None
    digest: Optional[str] = None
    options: Dict[str, Any] = field(default_factory=dict)
    timing: Optional[float] = None

    def __post_init__(self):
        for result in self.report.results:
            if result.status == FAIL and result.replay is None:
                result.replay = {'command': self.command, 'check': result.name}

    @property
    def passed(self) -> bool:
        return self.report.passed

    @property
    def exit_code(self) -> int:
        return EXIT_PASS if self.passed else EXIT_FAIL

    def to_json(self) -> dict:
        result = {
            'tool': TOOL,
            'version': VERSION,
            'command': self.command,
            'input': {'path': self.input, 'sha256': self.digest},
            'options': jsonable(self.options),
            'passed': self.passed,
            'exhaustive': self.report.exhaustive,
            'checks': [r.to_json() for r in self.report.results],
            'data': jsonable(self.report.data),
        }
        if self.timing is not None:
            result['timing'] = round(self.timing, 3)
        return result

    def dumps(self, format: str = 'json') -> str:
        if format == 'text':
            return self.to_text()
        return json.dumps(self.to_json(), sort_keys=True, indent=2, ensure_ascii=False)

    def to_text(self) -> str:
        """An aligned summary, one line per check."""
        lines = ['{} {} {}'.format(TOOL, VERSION, self.command)]
        if self.input:
            lines.append('input   {} (sha256 {})'.format(self.input, self.digest))
        results = self.report.results
        width = max([len(r.name) for r in results] + [5])
        for r in results:
            flag = '' if r.exhaustive else '  (sampled)'
            detail = '  ' + r.detail if r.detail else ''
            lines.append('{:<{}}  {:<7}{}{}'.format(r.name, width, r.status, detail, flag))
        counts = {status: sum(1 for r in results if r.status == status) for status in (PASS, FAIL, SKIPPED)}
        lines.append('{} passed, {} failed, {} skipped'.format(counts[PASS], counts[FAIL], counts[SKIPPED]))
        if self.timing is not None:
            lines.append('time    {:.3f}s'.format(self.timing))
        return '\n'.join(lines)

    @classmethod
    def from_json(cls, data: dict) -> 'Certificate':
        """Rebuild a certificate (checks and options) from its JSON form."""
        results: List[CheckResult] = [
            CheckResult(c['name'], c['status'], c.get('exhaustive', True), c.get('witness'),
                        c.get('detail', ''), c.get('replay'))
            for c in data.get('checks', [])
        ]
        report = Report(data['command'], results, dict(data.get('data', {})))
        source = data.get('input') or {}
        return cls(data['command'], report, source.get('path'), source.get('sha256'),
                   dict(data.get('options', {})), data.get('timing'))
