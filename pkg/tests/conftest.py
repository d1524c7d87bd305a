import functools
import time

import pytest

from simparr.enumerator import (EnumerationOptions, default_jobs, enumerate_all,
                                naive_simplicial_classes)
from simparr.wiring import AllowableSequence

# (n, include_near_pencils) -> (records, seconds)
_CATALOGUES = {}
_ACCEPTANCE = []

FRAGMENT_20 = [(1, 5), (5, 6), (6, 8), (8, 9), (9, 11), (11, 13), (13, 14), (14, 16), (16, 17),
               (17, 19), (19, 20), (4, 6), (6, 9), (9, 11), (11, 14), (14, 17), (17, 19),
               (16, 17), (8, 9), (5, 6), (3, 5), (5, 8), (8, 11), (11, 12), (12, 14), (14, 16),
               (16, 18), (10, 12), (12, 14)]

# the wiring drawn in the 15-line unstretchability figure, read off column by column
UNSTRETCHABLE_15 = AllowableSequence.from_compact(
    "15:1,5;5,7;7,9;9,11;11,12;12,14;14,15;4,5;5,7;7,9;9,12;12,14;11,12;8,9;6,8;3,6;6,7;"
    "7,11;11,13;10,11;5,7;2,3;3,5;5,6;6,8;8,10;10,12;7,8;1,3;3,7;7,10;10,11;6,7")

TRIANGLE = AllowableSequence(3, ((1, 2), (2, 3), (1, 2)))
PENCIL3 = AllowableSequence(3, ((1, 3),))


def catalogue(n: int, near_pencils: bool = False):
    """Records of enumerate_all(n), computed once per session."""
    key = (n, near_pencils)
    if key not in _CATALOGUES:
        t0 = time.perf_counter()
        recs = enumerate_all(n, EnumerationOptions(include_near_pencils=near_pencils,
                                                   worker_count=default_jobs()))
        _CATALOGUES[key] = (recs, time.perf_counter() - t0)
    return _CATALOGUES[key][0]


def catalogue_seconds(n: int, near_pencils: bool = False) -> float:
    catalogue(n, near_pencils)
    return _CATALOGUES[(n, near_pencils)][1]


@functools.lru_cache(maxsize=None)
def naive_certificates(n: int, restricted: bool):
    return [r.certificate for r in naive_simplicial_classes(n, restricted=restricted)]


@functools.lru_cache(maxsize=None)
def a61():
    (rec,) = catalogue(6)
    return rec.wiring


def record_criterion(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
    _ACCEPTANCE.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)


@pytest.fixture
def fragment20():
    return list(FRAGMENT_20)
