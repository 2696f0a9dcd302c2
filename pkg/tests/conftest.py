from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from lfkernel.terms import App, Base, E, Fun, T, Var, Variable, lam  # noqa: E402

def to_type(ty):
    if ty == "e":
        return E
    if ty == "t":
        return T
    return Fun(to_type(ty[0]), to_type(ty[1]))


def to_term(t, env=None):
    """Translate an oracle tuple term into a kernel term."""
    env = env or {}
    tag = t[0]
    if tag == "var":
        if t[1] in env:
            return Var(env[t[1]])
        return Var(Variable(t[1], to_type(t[2])))
    if tag == "lam":
        v = Variable("w", to_type(t[2]), len(env) + 1)
        return lam([v], to_term(t[3], {**env, t[1]: v}))
    return App(to_term(t[1], env), to_term(t[2], env))


ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    """Record the verdict for one acceptance criterion."""

    def record(number: int, ok: bool, detail: str) -> None:
        ACCEPTANCE[number] = (ok, detail)
        print(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")
