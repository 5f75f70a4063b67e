"""Unit-distance witnesses, exact colorability search and coloring checks for slabs."""

from ._udcert import *  # noqa: F401,F403
from ._udcert import __version__, Graph, SlabSpec, ForbiddenRadius, ValidationReport, DegenerateError  # noqa: F401
