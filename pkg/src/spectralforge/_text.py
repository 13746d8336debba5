"""Deterministic number formatting for CSV output.

repr of a Python float is the shortest round-trip representation, so files
are byte-stable across runs; numpy scalars are cast first (their repr is not
a bare number).
"""


def num(x) -> str:
    return repr(float(x))
