import doctest
import importlib
import pkgutil

import pytest

import moore

MODULES = sorted(m.name for m in pkgutil.iter_modules(moore.__path__, "moore.") if m.name != "moore.__main__")


@pytest.mark.parametrize("name", ["moore"] + MODULES)
def test_doctests(name):
    module = importlib.import_module(name)
    result = doctest.testmod(module, optionflags=doctest.ELLIPSIS)
    assert result.failed == 0
