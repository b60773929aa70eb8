import pytest

from schurkit.rootdata import LieType, build_root_system


def all_lie_types(max_rank=3):
    out = []
    for family in "BCD":
        lo = 2 if family == "D" else 1
        out.extend(LieType(family, n) for n in range(lo, max_rank + 1))
    return out


@pytest.fixture(scope="session")
def root_systems():
    return {lt: build_root_system(lt) for lt in all_lie_types(4)}
