from .errors import CommandError
from .commands import COMMANDS, build_spec, run
from .parser import build_parser
