from cli.commands import COMMANDS
from cli.parser import build_parser, normalize_argv, parse_args
