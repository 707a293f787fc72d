"""Arbitrary-order principal directions on point-set surfaces."""

try:
    from ._wavejets import *  # noqa: F401,F403
except ImportError:  # dev build: extension on sys.path, not in the package
    from _wavejets import *  # noqa: F401,F403
