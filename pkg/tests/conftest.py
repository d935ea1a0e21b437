import functools
import operator

import pytest


def xor_oracle(payload: str) -> str:
    """Checksum computed without touching the package under test."""
    return "%02X" % functools.reduce(operator.xor, payload.encode("ascii"), 0)


def make_sentence(payload: str) -> str:
    return f"${payload}*{xor_oracle(payload)}"


@pytest.fixture
def sentence():
    return make_sentence


GGA_FIX = "GPGGA,120000.00,2333.0000,S,04643.0000,W,1,08,0.90,750.0,M,-5.0,M,,"
GGA_NOFIX = "GPGGA,120001.00,,,,,0,00,,,M,,M,,"
GSA_FIX = "GPGSA,A,3,01,02,03,04,05,06,07,08,,,,,1.90,0.90,1.67"
GSV_3SATS = "GPGSV,1,1,03,01,45,090,40,02,30,180,35,03,60,270,30"


ACCEPTANCE_RESULTS: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS, key=lambda k: [int(p) if p.isdigit() else p for p in k.replace("-", " ").split()]):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {detail}")
