"""Double sequence toolkit: exact difference operators, sequence spaces, duals and 4D matrix classes."""

import json
from fractions import Fraction

from ._dseq import DseqError, Sequence, verify_suites
from . import _dseq

__all__ = ["DseqError", "Sequence", "Report", "family", "grid", "verify", "verify_suites", "run_config"]


class Report:
    """Parsed JSONL report: header, records and summary."""

    def __init__(self, exit_code, text):
        lines = [json.loads(line) for line in text.splitlines() if line]
        self.exit_code = exit_code
        self.text = text
        self.header = lines[0]
        self.records = lines[1:-1]
        self.summary = lines[-1]["summary"]


def family(name, rows=16, cols=None, **fields):
    """Truncation of a builtin family; keyword fields follow the [sequence] config keys."""
    fields = {key: str(value) for key, value in fields.items()}
    fields["family"] = name
    return Sequence.family(fields, rows, cols)


def _entry(value):
    if isinstance(value, complex):
        re, im = Fraction(value.real), Fraction(value.imag)
        return f"{re}{'-' if im < 0 else '+'}{abs(im)}j"
    return str(value)


def grid(rows):
    """Sequence from nested lists of ints, Fractions, complex numbers or strings like '1/2+3j'."""
    return Sequence.from_rows([[_entry(v) for v in row] for row in rows])


def verify(suite="all", size=8, seed=1, mode="exact", threads=1):
    r = _dseq.verify(suite, size, seed, mode, threads)
    return Report(r["exit_code"], r["report"])


def run_config(text):
    """Run an INI job file given as text."""
    r = _dseq.run_config(text)
    return Report(r["exit_code"], r["report"])
