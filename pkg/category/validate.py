import itertools
import logging

from .category import FiniteLinearCategory
from .exceptions import NonLocalEndomorphisms
from .report import Report, passed, failed

logger = logging.getLogger(__name__)

# Violations listed individually in a report; all are counted.
MAX_LISTED = 50


def validate_category(category: FiniteLinearCategory) -> Report:
    """Check the axioms of a finite Krull-Schmidt k-linear category.

    Associativity and the unit laws are checked on all basis triples
    (resp. basis elements); every End(X) must be local with residue
    field k and distinct labels must be non-isomorphic. Every violation
    is listed in the report.
    """
    field = category.field
    labels = category.labels
    report = Report('validate')
    report.data['category'] = category.info()

    violations = []
    for w, x, y, z in itertools.product(labels, repeat=4):
        for f in range(category.hom_dim(w, x)):
            fv = field.unit_vector(category.hom_dim(w, x), f)
            for g in range(category.hom_dim(x, y)):
                gv = field.unit_vector(category.hom_dim(x, y), g)
                gf = category.compose_vectors(w, x, y, gv, fv)
                for h in range(category.hom_dim(y, z)):
                    hv = field.unit_vector(category.hom_dim(y, z), h)
                    left = category.compose_vectors(w, y, z, hv, gf)
                    right = category.compose_vectors(w, x, z, category.compose_vectors(x, y, z, hv, gv), fv)
                    if not field.equal(left, right):
                        violations.append({'objects': [w, x, y, z], 'basis': [f, g, h],
                                           '(hg)f': field.to_list(right), 'h(gf)': field.to_list(left)})
    _record(report, 'associativity', violations)

    violations = []
    for x, y in itertools.product(labels, repeat=2):
        for k in range(category.hom_dim(x, y)):
            f = field.unit_vector(category.hom_dim(x, y), k)
            left = category.compose_vectors(x, y, y, category.identity_vector(y), f)
            right = category.compose_vectors(x, x, y, f, category.identity_vector(x))
            if not field.equal(left, f) or not field.equal(right, f):
                violations.append({'objects': [x, y], 'basis': k,
                                   'id∘f': field.to_list(left), 'f∘id': field.to_list(right)})
    _record(report, 'units', violations)

    violations, local = [], []
    for x in labels:
        try:
            category.residue(x)
            local.append(x)
        except NonLocalEndomorphisms as error:
            violations.append({'object': x, 'reason': str(error)})
    _record(report, 'locality', violations)

    violations = []
    for x, y in itertools.combinations(local, 2):
        residue = category.residue(x)
        for f in category.hom_basis(x, y):
            for g in category.hom_basis(y, x):
                if field.matmul(residue, category.compose(g, f).blocks[0][0]) != 0:
                    violations.append({'objects': [x, y], 'f': field.to_list(f.flat()),
                                       'g': field.to_list(g.flat())})
    _record(report, 'non_isomorphic_objects', violations)
    logger.info("validated %s: %s", category, 'PASS' if report.passed else 'FAIL')
    return report


def _record(report: Report, name: str, violations: list) -> None:
    if not violations:
        report.add(passed(name))
        return
    report.add(failed(name, {'count': len(violations), 'violations': violations[:MAX_LISTED]}))
