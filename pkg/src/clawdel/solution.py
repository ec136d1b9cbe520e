"""Result container shared by every solver."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable

from .claws import verify_solution
from .graph import WeightedGraph


@dataclass(frozen=True)
class Solution:
    """A claw-deletion set with its total weight and provenance.

    ``verified`` is ``None`` until :meth:`verify` has been run.
    """

    vertices: tuple[int, ...]
    weight: int
    solver: str
    exact: bool = True
    verified: bool | None = None
    width: int | None = None

    @classmethod
    def of(cls, g: WeightedGraph, vertices: Iterable[int], solver: str, **kw) -> "Solution":
        vs = tuple(sorted(set(int(v) for v in vertices)))
        return cls(vs, g.weight_of(vs), solver, **kw)

    @property
    def size(self) -> int:
        return len(self.vertices)

    def verify(self, g: WeightedGraph) -> "Solution":
        return replace(self, verified=verify_solution(g, self.vertices))
