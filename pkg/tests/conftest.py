import math

import pytest

from cabdm import CtmTable, build_table, default_table


@pytest.fixture(scope="session")
def table22() -> CtmTable:
    return build_table(2)


@pytest.fixture(scope="session")
def table32() -> CtmTable:
    return default_table()


def make_table(counts: dict[str, int], **metadata) -> CtmTable:
    """Synthetic table for algebra tests; ctm derived from given counts."""
    halting = sum(counts.values())
    entries = {s: (c, -math.log2(c / halting)) for s, c in counts.items()}
    meta = dict(n=3, k=2, cutoff=107, total=halting, halting=halting, sampled=False)
    meta.update(metadata)
    return CtmTable(entries=entries, **meta)
