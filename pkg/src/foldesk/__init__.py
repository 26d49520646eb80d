"""First-order logic workbench: macros, proving, interpolation, elimination."""

import sys

__version__ = "0.1.0"

# Formula trees and proof search recurse on structure; the default limit is
# too tight for nested binders and deep tableaux.
if sys.getrecursionlimit() < 20_000:
    sys.setrecursionlimit(20_000)
