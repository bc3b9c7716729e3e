import sys

import hypothesis.strategies as st
from hypothesis import settings

from coinduct.groups import CyclicGroup, DirectProduct, InfiniteDihedral, Integers

settings.register_profile("default", deadline=None)
settings.load_profile("default")

Z = Integers()
D = InfiniteDihedral()
ZZ = DirectProduct(Z, Z)

small_int = st.integers(-40, 40)
dihedral = st.tuples(small_int, st.integers(0, 1))
zz = st.tuples(small_int, small_int)


def elements(group):
    if isinstance(group, Integers):
        return small_int
    if isinstance(group, InfiniteDihedral):
        return dihedral
    if isinstance(group, CyclicGroup):
        return st.integers(0, group.n - 1)
    if isinstance(group, DirectProduct):
        return st.tuples(elements(group.left), elements(group.right))
    raise TypeError(group)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[num])
