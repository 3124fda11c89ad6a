"""2D range-scan feature extraction: lines and corners with uncertainty.

Thin package wrapper around the compiled extension module.
"""

from ._csf import *  # noqa: F401,F403
from ._csf import __doc__  # noqa: F401
