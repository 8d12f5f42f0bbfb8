from .exceptions import LoadError, UsageError
from .descriptor import InputDescriptor, PairSpec, PAYLOADS
from .loader import Loaded, load, load_document, read_document, digest, build_structure, build_category
from .certificate import Certificate, TOOL, VERSION, EXIT_PASS, EXIT_FAIL, EXIT_USAGE
from .commands import Options, COMMANDS, SELFTEST, run, selftest, replay, parse_pair
