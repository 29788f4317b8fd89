"""Collects one summary line per acceptance criterion."""

RESULTS: list[str] = []


def record(number: int, ok: bool, text: str) -> None:
    RESULTS.append(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {text}")
    print(RESULTS[-1])
