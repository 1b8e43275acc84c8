"""Deterministic finite automata with output over base-w digit strings.

The valuation machine reads the least significant digit first: its
extension to words, delta~(s0, a c) = delta(delta~(s0, c), a), consumes the
written word right to left, and only in that order do the rules count
trailing zeros.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass

from .errors import DomainError, UsageError

__all__ = [
    "DigitOrder",
    "Dfao",
    "digits",
    "build_valuation_dfao",
    "run",
    "period_doubling",
    "minimize",
    "export",
    "from_json",
]


class DigitOrder(enum.Enum):
    LSB_FIRST = "lsb_first"
    MSB_FIRST = "msb_first"


@dataclass(frozen=True)
class Dfao:
    w: int
    start: int
    transitions: tuple  # transitions[state][digit] -> state
    outputs: tuple
    digit_order: DigitOrder = DigitOrder.LSB_FIRST
    labels: tuple | None = None

    def __post_init__(self):
        n = len(self.transitions)
        if self.w < 2:
            raise UsageError("alphabet size must be >= 2")
        if n == 0 or len(self.outputs) != n:
            raise UsageError("need one output per state and at least one state")
        if not 0 <= self.start < n:
            raise UsageError(f"start state {self.start} out of range")
        for row in self.transitions:
            if len(row) != self.w or not all(0 <= t < n for t in row):
                raise UsageError("transition table must be total on states x digits")
        if self.labels is not None and len(self.labels) != n:
            raise UsageError("one label per state")

    @property
    def state_count(self) -> int:
        return len(self.transitions)

    def label(self, s: int) -> str:
        return self.labels[s] if self.labels else str(s)

    def feed(self, word) -> int:
        s = self.start
        tr = self.transitions
        for a in word:
            s = tr[s][a]
        return s


def digits(n: int, w: int) -> list[int]:
    """Base-w digits of n, least significant first."""
    out = []
    while n:
        n, r = divmod(n, w)
        out.append(r)
    return out


def build_valuation_dfao(w: int, k: int) -> Dfao:
    """2k states (j, b): j counts zeros mod k while b = 0, b = 1 freezes j."""
    if w < 2 or k < 2:
        raise UsageError("need w >= 2 and k >= 2")

    def idx(j, b):
        return b * k + j

    transitions = [None] * (2 * k)
    for j in range(k):
        transitions[idx(j, 0)] = tuple(
            [idx((j + 1) % k, 0)] + [idx(j, 1)] * (w - 1))
        transitions[idx(j, 1)] = (idx(j, 1),) * w
    outputs = tuple(j for b in (0, 1) for j in range(k))
    labels = tuple(f"{j},{b}" for b in (0, 1) for j in range(k))
    return Dfao(w, idx(0, 0), tuple(transitions), outputs,
                DigitOrder.LSB_FIRST, labels)


def run(d: Dfao, n: int, w: int | None = None) -> int:
    if w is not None and w != d.w:
        raise UsageError(f"base {w} does not match the machine's alphabet size {d.w}")
    if n < 1:
        raise DomainError(f"machines are run on n >= 1, got {n}")
    word = digits(n, d.w)
    if d.digit_order is DigitOrder.MSB_FIRST:
        word.reverse()
    return d.outputs[d.feed(word)]


def period_doubling(N: int) -> list[int]:
    """a(1..N) with a(n) = nu_2(n) mod 2, from the lowest set bit of n."""
    if N < 1:
        raise UsageError("N must be >= 1")
    return [((n & -n).bit_length() - 1) & 1 for n in range(1, N + 1)]


def minimize(d: Dfao) -> Dfao:
    """Smallest output-equivalent machine: drop unreachable states, then
    refine the partition by output until it is stable under every digit."""
    reach = {d.start}
    stack = [d.start]
    while stack:
        s = stack.pop()
        for t in d.transitions[s]:
            if t not in reach:
                reach.add(t)
                stack.append(t)
    states = sorted(reach)

    block = {s: d.outputs[s] for s in states}
    while True:
        sig = {s: (block[s],) + tuple(block[t] for t in d.transitions[s]) for s in states}
        ids: dict = {}
        new = {}
        for s in states:
            new[s] = ids.setdefault(sig[s], len(ids))
        if len(ids) == len(set(block.values())):
            block = new
            break
        block = new

    # number blocks in order of first appearance from the start state
    order = {}
    queue = [d.start]
    while queue:
        s = queue.pop(0)
        if block[s] in order:
            continue
        order[block[s]] = len(order)
        queue.extend(d.transitions[s])
    rep = {}
    for s in states:
        rep.setdefault(order[block[s]], s)
    n = len(order)
    transitions = tuple(
        tuple(order[block[t]] for t in d.transitions[rep[i]]) for i in range(n))
    outputs = tuple(d.outputs[rep[i]] for i in range(n))
    labels = tuple(d.label(rep[i]) for i in range(n)) if d.labels else None
    return Dfao(d.w, 0, transitions, outputs, d.digit_order, labels)


def _dot_id(s: int) -> str:
    return f"s{s}"


def export(d: Dfao, fmt: str = "json") -> str:
    fmt = fmt.lower()
    if fmt == "json":
        return json.dumps({
            "w": d.w,
            "start": d.start,
            "transitions": [list(r) for r in d.transitions],
            "outputs": list(d.outputs),
            "digit_order": d.digit_order.value,
            "labels": list(d.labels) if d.labels else None,
        }, indent=None)
    if fmt == "dot":
        lines = ["digraph dfao {", "  rankdir=LR;"]
        for s in range(d.state_count):
            style = ", style=bold" if s == d.start else ""
            lines.append(
                f'  {_dot_id(s)} [shape=circle{style}, label="{d.label(s)}/{d.outputs[s]}"];')
        for s, row in enumerate(d.transitions):
            for a, t in enumerate(row):
                lines.append(f'  {_dot_id(s)} -> {_dot_id(t)} [label="{a}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise UsageError(f"unknown export format {fmt!r}; use 'dot' or 'json'")


def from_json(text: str) -> Dfao:
    obj = json.loads(text)
    labels = obj.get("labels")
    return Dfao(
        int(obj["w"]),
        int(obj["start"]),
        tuple(tuple(int(t) for t in row) for row in obj["transitions"]),
        tuple(int(o) for o in obj["outputs"]),
        DigitOrder(obj.get("digit_order", DigitOrder.LSB_FIRST.value)),
        tuple(labels) if labels else None,
    )
