"""Command dispatch, the self test and certificate replay."""
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import json
import logging
import os
import time

from dataclasses import dataclass, replace

from frozendict import frozendict

from category import Report, FAIL, jsonable
from category.report import failed, skipped
from defects import SerreError
from .descriptor import PairSpec
from .loader import Loaded, load
from .checks import (structure_suite, sigma_suite, defects_suite, quotient_suite, theorem_a_suite, lex_suite,
                     cotorsion_suite, heart_suite, theorem_b_suite, mod_p_suite)
from .certificate import Certificate
from .exceptions import LoadError, UsageError

logger = logging.getLogger(__name__)

FIXTURES_DIRECTORY = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'fixtures')


@dataclass(frozen=True)
class Options:
    """Command line overrides shared by all commands."""

    caps: Optional[str] = None
    seed: Optional[int] = None
    field: Optional[str] = None
    pair: Optional[PairSpec] = None
    sigma: Optional[Tuple[str, ...]] = None
    timing: bool = False

    def load(self, path: str) -> Loaded:
        return load(path, self.field, self.caps, self.seed, self.pair)

    def record(self, loaded: Loaded) -> dict:
        """The options as used, in the form :py:func:`replay` reads back."""
        spec = loaded.field.spec()
        pair = loaded.pair
        return {
            'caps': loaded.caps.to_json(),
            'field': str(spec['prime']) if 'prime' in spec else 'Q',
            'pair': None if pair is None else {'u': list(pair.u), 'v': list(pair.v),
                                               'heart_hom_dims': [[x, y, d] for (x, y), d
                                                                  in sorted(loaded.heart_hom_dims.items())]},
            'sigma': None if self.sigma is None else list(self.sigma),
        }

    @classmethod
    def from_record(cls, record: Dict[str, Any]) -> 'Options':
        caps = ','.join('{}={}'.format(k, v) for k, v in sorted((record.get('caps') or {}).items()))
        pair = record.get('pair')
        sigma = record.get('sigma')
        return cls(caps=caps, field=record.get('field'),
                   pair=None if pair is None else PairSpec.model_validate(pair),
                   sigma=None if sigma is None else tuple(sigma))


def parse_pair(tokens: Sequence[str]) -> PairSpec:
    """``U=S1 V=S1,S3`` (an empty list is ``V=``)."""
    values = {}
    for token in tokens:
        key, sep, labels = token.partition('=')
        key = key.strip().lower()
        if not sep or key not in ('u', 'v'):
            raise UsageError("pair entries are U=labels and V=labels, got {!r}".format(token))
        values[key] = [label.strip() for label in labels.split(',') if label.strip()]
    return PairSpec(**values)


# ------------------- commands -------------------

def _validate(loaded: Loaded, options: Options) -> Report:
    return structure_suite(loaded.structure, loaded.category, loaded.caps, loaded.validation)


def _def_simples(loaded: Loaded, options: Options) -> Report:
    return sigma_suite(loaded.require_structure(), loaded.caps)


def _defects(loaded: Loaded, options: Options) -> Report:
    return defects_suite(loaded.require_structure(), loaded.caps)


def _quotient(loaded: Loaded, options: Options) -> Report:
    structure = loaded.require_structure()
    try:
        return quotient_suite(structure, loaded.caps, options.sigma)
    except SerreError as error:
        raise UsageError(str(error))


def _theorem_a(loaded: Loaded, options: Options) -> Report:
    return theorem_a_suite(loaded.require_structure(), loaded.caps)


def _lex(loaded: Loaded, options: Options) -> Report:
    return lex_suite(loaded.require_structure(), loaded.caps, loaded.pair)


def _cotorsion_enumerate(loaded: Loaded, options: Options) -> Report:
    return cotorsion_suite(loaded.require_structure(), loaded.caps)


def _heart(loaded: Loaded, options: Options) -> Report:
    return heart_suite(loaded.require_pair(), loaded.caps)


def _verify_theorem_b(loaded: Loaded, options: Options) -> Report:
    return theorem_b_suite(loaded.require_pair(), loaded.caps, loaded.heart_hom_dims)


def _heart_vs_mod_p(loaded: Loaded, options: Options) -> Report:
    return mod_p_suite(loaded.require_pair(), loaded.caps)


COMMANDS: Dict[str, Callable[[Loaded, Options], Report]] = frozendict({
    'validate': _validate,
    'defects': _defects,
    'def-simples': _def_simples,
    'quotient': _quotient,
    'theorem-a': _theorem_a,
    'lex': _lex,
    'cotorsion-enumerate': _cotorsion_enumerate,
    'heart': _heart,
    'verify-theorem-b': _verify_theorem_b,
    'heart-vs-mod-p': _heart_vs_mod_p,
})

# (fixture, command, options, expected outcome); 'load_error' expects the
# input to be rejected, a dict lists data entries the report must carry.
SELFTEST = (
    ('fix_a.json', 'validate', {}, True),
    ('fix_a2.json', 'validate', {}, True),
    ('fix_p.json', 'validate', {}, True),
    ('fix_t.json', 'validate', {}, True),
    ('fix_a.json', 'def-simples', {}, {'sigma': ['SA']}),
    ('fix_a2.json', 'def-simples', {}, {'sigma': ['S1']}),
    ('fix_p.json', 'def-simples', {}, {'sigma': []}),
    ('fix_t.json', 'def-simples', {}, {'sigma': ['S1', 'S2', 'S3']}),
    ('fix_a.json', 'defects', {}, True),
    ('fix_a2.json', 'defects', {}, True),
    ('fix_a.json', 'quotient', {}, True),
    ('fix_a2.json', 'quotient', {}, True),
    ('fix_p.json', 'quotient', {}, True),
    ('fix_t.json', 'quotient', {}, True),
    ('fix_a.json', 'theorem-a', {}, {'is_exact_embedding': True, 'is_abelian_equivalence': True}),
    ('fix_p.json', 'theorem-a', {}, {'is_exact_embedding': True, 'is_abelian_equivalence': False}),
    ('fix_t.json', 'theorem-a', {}, {'is_exact_embedding': False, 'is_abelian_equivalence': False}),
    ('fix_a.json', 'lex', {}, True),
    ('fix_a2.json', 'lex', {}, True),
    ('fix_t.json', 'lex', {}, True),
    ('fix_t.json', 'cotorsion-enumerate', {}, {'count': 8}),
    ('fix_t.json', 'heart', {}, True),
    ('fix_t.json', 'verify-theorem-b', {}, True),
    ('fix_t.json', 'heart-vs-mod-p', {}, True),
    ('fix_a.json', 'def-simples', {'field': '101'}, {'sigma': ['SA']}),
    ('fix_a.json', 'quotient', {'field': '101'}, True),
    ('fix_a.json', 'theorem-a', {'field': '101'}, {'is_exact_embedding': True, 'is_abelian_equivalence': True}),
    ('fix_p.json', 'theorem-a', {'field': '101'}, {'is_exact_embedding': True, 'is_abelian_equivalence': False}),
    ('fix_t.json', 'verify-theorem-b', {'field': '101'}, True),
    ('fix_corrupted.json', 'validate', {}, False),
    ('fix_a.json', 'quotient', {'sigma': ()}, False),
    ('fix_t_corrupted_heart.json', 'verify-theorem-b', {}, False),
    ('fix_dangling.json', 'validate', {}, 'load_error'),
    ('fix_missing_cone.json', 'validate', {}, 'load_error'),
)


# ------------ Public interface ----------------

def run(command: str, path: Optional[str], options: Options = Options()) -> Certificate:
    """Run a command and wrap its report in a certificate.

    Raises
    ------
    UsageError
        For an unknown command or a missing input.
    LoadError
        If the input cannot be loaded.
    """
    start = time.perf_counter()
    if command == 'selftest':
        certificate = Certificate(command, selftest(options), options={'caps': options.caps, 'seed': options.seed})
    elif command == 'replay':
        if path is None:
            raise UsageError("replay needs a certificate file")
        certificate = replay(path)
    else:
        if command not in COMMANDS:
            raise UsageError("unknown command {!r} (known: {})".format(
                command, ', '.join(sorted(list(COMMANDS) + ['selftest', 'replay']))))
        if path is None:
            raise UsageError("{} needs an input file".format(command))
        loaded = options.load(path)
        report = COMMANDS[command](loaded, options)
        certificate = Certificate(command, report, path, loaded.digest, options.record(loaded))
    if options.timing:
        certificate.timing = time.perf_counter() - start
    logger.info("%s: %s", command, 'PASS' if certificate.passed else 'FAIL')
    return certificate


def selftest(options: Options = Options(), entries=SELFTEST, directory: str = FIXTURES_DIRECTORY) -> Report:
    """Run the shipped fixtures against their expected outcomes."""
    report = Report('selftest')
    for fixture, command, overrides, expected in entries:
        name = '{}:{}{}{}'.format(os.path.splitext(fixture)[0], command,
                                  ':F' + overrides['field'] if 'field' in overrides else '',
                                  ':negative' if expected is False else '')
        path = os.path.join(directory, fixture)
        local = replace(options, timing=False, **overrides)
        try:
            certificate = run(command, path, local)
        except LoadError as error:
            if expected == 'load_error':
                report.check(name, True, detail=str(error))
            else:
                report.add(failed(name, {'error': str(error), 'location': list(error.location)}))
            continue
        if expected == 'load_error':
            report.add(failed(name, {'expected': 'load error', 'statuses': certificate.report.statuses()}))
        elif isinstance(expected, dict):
            got = {key: jsonable(certificate.report.data.get(key)) for key in expected}
            ok = got == expected and certificate.passed
            report.check(name, ok, {'expected': expected, 'got': got, 'failures': _failure_names(certificate)},
                         exhaustive=certificate.report.exhaustive)
        elif expected:
            report.check(name, certificate.passed, {'failures': _failure_names(certificate)},
                         exhaustive=certificate.report.exhaustive)
        else:
            witnessed = all(r.witness is not None for r in certificate.report.failures())
            report.check(name, not certificate.passed and witnessed,
                         {'expected': 'a failure with witnesses', 'statuses': certificate.report.statuses()})
    return report


def replay(path: str) -> Certificate:
    """Re-run a certificate's command and check that its failures recur.

    Raises
    ------
    LoadError
        If the certificate cannot be read or its input changed.
    """
    try:
        with open(path, 'r', encoding='utf-8') as file:
            original = Certificate.from_json(json.load(file))
    except (OSError, ValueError, KeyError) as error:
        raise LoadError("cannot read certificate {}: {}".format(path, error))
    report = Report('replay')
    report.data['certificate'] = {'command': original.command, 'input': original.input, 'sha256': original.digest}
    failures = original.report.failures()
    if not failures:
        report.add(skipped('failures', 'the certificate has no failures'))
        return Certificate('replay', report, path)
    if original.command == 'selftest':
        options = Options(caps=original.options.get('caps'), seed=original.options.get('seed'))
        rerun = selftest(options)
        digest = None
    else:
        if original.command not in COMMANDS:
            raise LoadError("certificate names an unknown command {!r}".format(original.command), ('command',))
        options = Options.from_record(original.options)
        loaded = options.load(original.input)
        if loaded.digest != original.digest:
            raise LoadError("input {} changed since the certificate was issued".format(original.input),
                            ('input', 'sha256'))
        rerun = COMMANDS[original.command](loaded, options)
        digest = loaded.digest
    current = {r.name: r for r in rerun.results}
    for result in failures:
        now = current.get(result.name)
        witness = None if now is None else _canonical(now.witness)
        recurred = now is not None and now.status == FAIL and witness == _canonical(result.witness)
        report.check(result.name, recurred, {'original': result.witness, 'now': witness,
                                             'status': None if now is None else now.status})
    return Certificate('replay', report, original.input, digest, original.options)


# ------------------- private helpers -------------------

def _canonical(witness: Any) -> Any:
    return json.loads(json.dumps(jsonable(witness), sort_keys=True))


def _failure_names(certificate: Certificate) -> List[str]:
    return [r.name for r in certificate.report.failures()]
