import os
import sys

BASE_DIRECTORY = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
FIXTURES_DIRECTORY = os.path.join(BASE_DIRECTORY, 'fixtures')

# The tests import linalg, category, ... by their top level names, also
# when pytest is started from inside one of the package directories.
if BASE_DIRECTORY not in sys.path:
    sys.path.insert(0, BASE_DIRECTORY)
