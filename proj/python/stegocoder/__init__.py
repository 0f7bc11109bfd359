"""Steganographic coding over explicit probability models.

The compiled core provides the two coder engines (fixed-precision and
exact-rational), static and Markov conditional models, the normal-latent
modulator, and the security verification harness.
"""

try:
    from ._core import *  # noqa: F401,F403
    from ._core import __version__  # noqa: F401
except ImportError:  # in-tree runs: the module sits on sys.path directly
    from _core import *  # noqa: F401,F403
    from _core import __version__  # noqa: F401
