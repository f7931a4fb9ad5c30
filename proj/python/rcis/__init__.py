"""Repetitive control under intermittent, timestamped sampling."""

try:
    from ._rcis import *  # noqa: F401,F403 installed-package layout
    from ._rcis import __doc__ as _core_doc
except ImportError:  # in-tree build: module sits on PYTHONPATH next to the package
    from _rcis import *  # noqa: F401,F403
    from _rcis import __doc__ as _core_doc

__doc__ = _core_doc or __doc__
