"""Suite registry: every concrete BaseSuite subclass in this package, keyed by ``suite_key``."""

from __future__ import annotations

import importlib
import inspect
import pkgutil
import types
from types import ModuleType

from reflexive_mldeg.exceptions import SuiteError
from reflexive_mldeg.suites.base import BaseSuite
from reflexive_mldeg.types import SUITE_GROUPS


def _is_suite(obj: object, module: ModuleType) -> bool:
    """Concrete suites defined in *module*; imported names and generic aliases are skipped."""
    if not isinstance(obj, type) or isinstance(obj, types.GenericAlias):
        return False
    if obj.__module__ != module.__name__:
        return False
    return issubclass(obj, BaseSuite) and obj is not BaseSuite and bool(obj.suite_key)


def _discover_suites() -> dict[str, type[BaseSuite]]:
    """Import the sibling modules and collect their suites.

    Suites listed in the ``all`` group come first, in that order, so reports follow the
    order of the published tables. Anything else is appended alphabetically.
    """
    found: dict[str, type[BaseSuite]] = {}
    for module_info in pkgutil.iter_modules(__path__):
        if module_info.name == "base":
            continue
        module = importlib.import_module(f"{__name__}.{module_info.name}")
        for _, cls in inspect.getmembers(module, lambda obj: _is_suite(obj, module)):
            if cls.suite_key in found:
                raise SuiteError(cls.suite_key, f"registered twice, in {module_info.name}")
            found[cls.suite_key] = cls

    order = SUITE_GROUPS["all"]
    ranked = sorted(found, key=lambda key: (order.index(key) if key in order else len(order), key))
    return {key: found[key] for key in ranked}


ALL_SUITES: dict[str, type[BaseSuite]] = _discover_suites()

__all__ = ["BaseSuite", "ALL_SUITES"]
