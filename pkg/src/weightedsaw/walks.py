"""Walk values and the plain-text walk file format.

A walk file holds one walk per line as a list of steps in generator
notation, e.g. ``a a b A`` or ``(1,0) (0,1)``; blank lines and ``#``
comments are skipped. Walks start at the identity unless the line begins
with ``start=<element>``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

from .groups import Element, Group

_TOKEN = re.compile(r"\([^)]*\)|\[[^\]]*\]|[^\s,;]+")


@dataclass(frozen=True)
class Walk:
    group: Group
    vertices: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(tuple(v) for v in self.vertices))
        if not self.vertices:
            raise ValueError("a walk has at least one vertex")

    @classmethod
    def from_steps(cls, group: Group, steps, start: Element | None = None) -> "Walk":
        cur = group.identity() if start is None else tuple(start)
        verts = [cur]
        for s in steps:
            cur = group.multiply(cur, tuple(s))
            verts.append(cur)
        return cls(group, tuple(verts))

    @cached_property
    def steps(self) -> tuple:
        g = self.group
        return tuple(g.conjugate_step(u, v) for u, v in zip(self.vertices, self.vertices[1:]))

    @property
    def n(self) -> int:
        return len(self.vertices) - 1

    @property
    def start(self) -> Element:
        return self.vertices[0]

    @property
    def end(self) -> Element:
        return self.vertices[-1]

    def is_self_avoiding(self) -> bool:
        return len(set(self.vertices)) == len(self.vertices)

    def translate(self, g: Element) -> "Walk":
        """Left translate every vertex by ``g`` (a graph automorphism)."""
        return Walk(self.group, tuple(self.group.multiply(g, v) for v in self.vertices))

    def reversed(self) -> "Walk":
        return Walk(self.group, self.vertices[::-1])

    def format(self) -> str:
        return " -> ".join(self.group.format(v) for v in self.vertices)

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"Walk({self.format()})"


def parse_walk_line(group: Group, line: str) -> Walk:
    line = line.split("#", 1)[0].strip()
    start = None
    if line.startswith("start="):
        head, _, line = line.partition(" ")
        start = group.parse(head[len("start="):])
    steps = [group.parse_step_token(tok) for tok in _TOKEN.findall(line)]
    return Walk.from_steps(group, steps, start)


def read_walk_file(group: Group, path) -> list:
    walks = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        if not raw.split("#", 1)[0].strip():
            continue
        try:
            walks.append(parse_walk_line(group, raw))
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: {exc}") from None
    return walks
