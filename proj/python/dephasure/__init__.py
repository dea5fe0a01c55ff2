"""Cavity-mode dephasing from a dense acoustic environment.

Thin re-export of the compiled extension; see the project README for the
physics conventions (angular frequencies in rad/s, SI units throughout).
"""

try:
    from ._dephasure import *  # noqa: F401,F403
    from ._dephasure import __doc__ as _core_doc  # noqa: F401
except ImportError:  # running against a build tree via PYTHONPATH
    from _dephasure import *  # noqa: F401,F403

__version__ = "0.1.0"
