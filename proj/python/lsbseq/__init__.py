"""LSB/bit-component sequences of p-ary m-sequences: autocorrelation
distributions and exact 2-adic complexity with proven lower bounds."""

from lsbseq._core import *  # noqa: F401,F403
from lsbseq import _core as _c

__all__ = [name for name in dir(_c) if not name.startswith("_")]
__version__ = "1.0.0"
