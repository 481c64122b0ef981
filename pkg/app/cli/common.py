import functools
import logging
import sys
from enum import Enum
from typing import Iterable

import typer

from milnorcount.exceptions import (
    ArrangementError,
    BudgetExceededError,
    HodgeDataError,
    InconsistencyError,
    PreconditionError,
)
from milnorcount.logger import logger

FAILURE_EXIT_CODE = 3
FALSIFIED_EXIT_CODE = 1

DOMAIN_ERRORS = (
    ArrangementError,
    PreconditionError,
    BudgetExceededError,
    HodgeDataError,
    InconsistencyError,
)

SOURCE_HELP = (
    "Arrangement document (.json, .yaml) or built-in name: @g2, @g4, @g:n, @a11, "
    "@a:u,v, @boolean:n, @nearpencil:d"
)


class Method(str, Enum):
    brute = "brute"
    factored = "factored"
    fast = "fast"


class Target(str, Enum):
    milnor = "milnor"
    complement = "complement"
    projective = "projective"


def setup_logging(verbosity: int):
    """
    Send library logs to stderr: INFO with one -v, DEBUG with more.
    """
    if verbosity <= 0:
        return
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    logger.handlers = [handler]
    logger.setLevel(logging.INFO if verbosity == 1 else logging.DEBUG)


def exit_on_error(command):
    """
    Report library errors on stderr and exit with status 3.
    """

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except DOMAIN_ERRORS as e:
            typer.echo(f"error: {e}", err=True)
            raise typer.Exit(code=FAILURE_EXIT_CODE)

    return wrapper


def echo_lines(lines: Iterable[str]):
    for line in lines:
        typer.echo(line)
