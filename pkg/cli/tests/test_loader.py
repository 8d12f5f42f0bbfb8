from .conf import FIXTURES_DIRECTORY
from unittest import TestCase

import os

from category import FAIL
from extri import StableStructure, SubcategoryStructure, TableStructure
from cli import LoadError, PairSpec, load, load_document, read_document, digest


def fixture(name: str) -> str:
    return os.path.join(FIXTURES_DIRECTORY, name)


class TestLoader(TestCase):

    def test_abelian(self):
        loaded = load(fixture('fix_a.json'))
        self.assertTrue(loaded.validation.passed)
        self.assertEqual(set(loaded.structure.labels), {'SA', 'PA'})
        self.assertEqual(loaded.field.spec(), {'prime': 5})
        self.assertIsNone(loaded.pair)

    def test_projectives(self):
        loaded = load(fixture('fix_p.json'))
        self.assertIsInstance(loaded.structure, SubcategoryStructure)
        self.assertEqual(len(loaded.structure.labels), 2)

    def test_stable_with_pair(self):
        loaded = load(fixture('fix_t.json'))
        self.assertIsInstance(loaded.structure, StableStructure)
        self.assertEqual(loaded.pair.u, ('S1',))
        self.assertEqual(loaded.pair.v, ('S1', 'S3'))
        self.assertEqual(loaded.heart_hom_dims, {})
        loaded = load(fixture('fix_t_corrupted_heart.json'))
        self.assertEqual(loaded.heart_hom_dims, {('S2', 'S2'): 2})

    def test_pair_override(self):
        loaded = load(fixture('fix_t.json'), pair=PairSpec(u=['S1', 'S2'], v=['S1']))
        self.assertEqual(loaded.pair.u, ('S1', 'S2'))
        with self.assertRaises(LoadError) as context:
            load(fixture('fix_t.json'), pair=PairSpec(u=['S4']))
        self.assertEqual(context.exception.location, ('u', 0))

    def test_table(self):
        loaded = load(fixture('fix_table_point.json'))
        self.assertIsInstance(loaded.structure, TableStructure)
        self.assertEqual(loaded.structure.labels, ('X',))

    def test_corrupted_category(self):
        loaded = load(fixture('fix_corrupted.json'))
        self.assertIsNone(loaded.structure)
        self.assertEqual(loaded.validation.statuses()['associativity'], FAIL)
        with self.assertRaises(LoadError):
            loaded.require_structure()

    def test_dangling_label(self):
        with self.assertRaises(LoadError) as context:
            load(fixture('fix_dangling.json'))
        self.assertEqual(context.exception.location, ('payload', 'objects', 1))
        self.assertIn('S7', str(context.exception))

    def test_missing_cone(self):
        with self.assertRaises(LoadError) as context:
            load(fixture('fix_missing_cone.json'))
        self.assertEqual(context.exception.location, ('payload', 'cones'))

    def test_schema_errors(self):
        document = read_document(fixture('fix_a.json'))
        with self.assertRaises(LoadError) as context:
            load_document(dict(document, colour='red'))
        self.assertEqual(context.exception.location, ('colour',))
        payload = dict(document['payload'], quiver={'vertices': ['1']})
        with self.assertRaises(LoadError) as context:
            load_document(dict(document, payload=payload))
        self.assertEqual(context.exception.location[0], 'payload')
        with self.assertRaises(LoadError):
            load_document(dict(document, field={'prime': 5, 'rationals': True}))
        with self.assertRaises(LoadError) as context:
            load_document(dict(document, caps={'colour': 1}))
        self.assertEqual(context.exception.location, ('caps',))

    def test_overrides(self):
        loaded = load(fixture('fix_a.json'), field='7', caps='mult=1', seed=3)
        self.assertEqual(loaded.field.spec(), {'prime': 7})
        self.assertEqual(loaded.caps.mult, 1)
        self.assertEqual(loaded.caps.seed, 3)
        with self.assertRaises(LoadError):
            load(fixture('fix_a.json'), caps='mult=many')

    def test_default_field(self):
        document = {k: v for k, v in read_document(fixture('fix_a2.json')).items() if k != 'field'}
        loaded = load_document(document)
        self.assertEqual(loaded.field.spec(), {'prime': 101})
        self.assertEqual(set(loaded.structure.labels), set(load(fixture('fix_a2.json')).structure.labels))

    def test_toml_mirror(self):
        json_document = read_document(fixture('fix_t.json'))
        toml_document = read_document(fixture('fix_t.toml'))
        self.assertEqual(toml_document, json_document)
        self.assertEqual(digest(toml_document), digest(json_document))
        self.assertEqual(load(fixture('fix_t.toml')).digest, load(fixture('fix_t.json')).digest)

    def test_unreadable(self):
        with self.assertRaises(LoadError):
            load(fixture('no_such_file.json'))
