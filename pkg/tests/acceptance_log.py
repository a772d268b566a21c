"""Collects one verdict line per acceptance criterion for the terminal summary."""
from __future__ import annotations

RESULTS: dict[int, tuple[bool, str, str]] = {}


def record(number: int, title: str, passed: bool, summary: str) -> None:
    RESULTS[number] = (passed, title, summary)
    print(line(number))


def line(number: int) -> str:
    passed, title, summary = RESULTS[number]
    return f"[{'PASS' if passed else 'FAIL'}] criterion {number:>2} {title}: {summary}"
