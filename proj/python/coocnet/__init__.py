"""Word co-occurrence networks enriched with embedding-based virtual edges."""

from ._coocnet import *  # noqa: F401,F403
from ._coocnet import __doc__  # noqa: F401
