"""Trigraphs, the contraction rule, and replay of contraction sequences."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .kernels import bits_to_indices, n_words


class TrigraphError(ValueError):
    """Malformed input or a step that references a missing vertex."""


@dataclass(frozen=True)
class ContractionStep:
    keep: int
    remove: int

    def __iter__(self):
        yield self.keep
        yield self.remove


@dataclass
class ContractionSequence:
    steps: list[ContractionStep] = field(default_factory=list)

    @classmethod
    def of(cls, pairs: Iterable[Sequence[int]]) -> "ContractionSequence":
        return cls([ContractionStep(int(a), int(b)) for a, b in pairs])

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def __getitem__(self, i):
        return self.steps[i]

    def __add__(self, other: "ContractionSequence") -> "ContractionSequence":
        return ContractionSequence(self.steps + list(other.steps))

    def pairs(self) -> list[list[int]]:
        return [[s.keep, s.remove] for s in self.steps]


@dataclass
class WidthTrace:
    initial_max_red_degree: int
    per_step_max_red_degree: list[int]

    @property
    def overall_width(self) -> int:
        return max([self.initial_max_red_degree, *self.per_step_max_red_degree])


class Trigraph:
    """A graph whose edges are black or red.

    Vertex ids are ``0..capacity-1``; contracted-away vertices stay dead and
    their ids are never reused. Public operations return new values; the
    in-place ``_contract`` is reserved for replay loops.
    """

    __slots__ = ("black", "red", "alive", "red_deg")

    def __init__(self, black: np.ndarray, red: np.ndarray, alive: np.ndarray, red_deg: np.ndarray | None = None):
        self.black = black
        self.red = red
        self.alive = alive
        self.red_deg = kernels.row_popcounts(red) if red_deg is None else red_deg

    # construction ---------------------------------------------------------

    @classmethod
    def empty(cls, n: int) -> "Trigraph":
        w = n_words(n)
        return cls(
            np.zeros((n, w), dtype=np.uint64),
            np.zeros((n, w), dtype=np.uint64),
            np.ones(n, dtype=bool),
            np.zeros(n, dtype=np.int64),
        )

    @classmethod
    def from_black_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Trigraph":
        if n < 0:
            raise TrigraphError(f"negative vertex count {n}")
        g = cls.empty(n)
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise TrigraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise TrigraphError(f"loop at vertex {u}")
            g._set(g.black, u, v)
        return g

    @classmethod
    def from_colored_edges(cls, n: int, black: Iterable[Sequence[int]], red: Iterable[Sequence[int]]) -> "Trigraph":
        g = cls.from_black_edges(n, black)
        for u, v in red:
            if g.has_edge(u, v):
                raise TrigraphError(f"edge ({u}, {v}) given in both colours")
            g._set(g.red, u, v)
        g.red_deg = kernels.row_popcounts(g.red)
        return g

    @staticmethod
    def _set(rows, u, v):
        rows[u, v >> 6] |= np.uint64(1) << np.uint64(v & 63)
        rows[v, u >> 6] |= np.uint64(1) << np.uint64(u & 63)

    def copy(self) -> "Trigraph":
        return Trigraph(self.black.copy(), self.red.copy(), self.alive.copy(), self.red_deg.copy())

    # queries --------------------------------------------------------------

    @property
    def capacity(self) -> int:
        return self.alive.shape[0]

    @property
    def n(self) -> int:
        return int(self.alive.sum())

    def vertices(self) -> list[int]:
        return np.flatnonzero(self.alive).tolist()

    def _check(self, v):
        if not (0 <= v < self.capacity) or not self.alive[v]:
            raise TrigraphError(f"unknown vertex {v}")

    def _bit(self, rows, u, v) -> bool:
        return bool((rows[u, v >> 6] >> np.uint64(v & 63)) & np.uint64(1))

    def has_edge(self, u, v) -> bool:
        return self._bit(self.black, u, v) or self._bit(self.red, u, v)

    def is_red(self, u, v) -> bool:
        return self._bit(self.red, u, v)

    def is_black(self, u, v) -> bool:
        return self._bit(self.black, u, v)

    def black_neighbors(self, v) -> set[int]:
        self._check(v)
        return set(bits_to_indices(self.black[v]).tolist())

    def red_neighbors(self, v) -> set[int]:
        self._check(v)
        return set(bits_to_indices(self.red[v]).tolist())

    def neighbors(self, v) -> set[int]:
        self._check(v)
        return set(bits_to_indices(self.black[v] | self.red[v]).tolist())

    def degree(self, v) -> int:
        return len(self.neighbors(v))

    def red_degree(self, v) -> int:
        self._check(v)
        return int(self.red_deg[v])

    def max_red_degree(self) -> int:
        if not self.alive.any():
            return 0
        return int(self.red_deg[self.alive].max())

    def black_edges(self) -> list[tuple[int, int]]:
        return self._edges(self.black)

    def red_edges(self) -> list[tuple[int, int]]:
        return self._edges(self.red)

    def _edges(self, rows) -> list[tuple[int, int]]:
        out = []
        for u in self.vertices():
            out.extend((u, v) for v in bits_to_indices(rows[u]).tolist() if v > u)
        return out

    def edges(self) -> list[tuple[int, int]]:
        return sorted(self.black_edges() + self.red_edges())

    def num_edges(self) -> int:
        return int((kernels.row_popcounts(self.black) + kernels.row_popcounts(self.red)).sum()) // 2

    def __eq__(self, other):
        if not isinstance(other, Trigraph):
            return NotImplemented
        return (
            np.array_equal(self.alive, other.alive)
            and np.array_equal(self.black, other.black)
            and np.array_equal(self.red, other.red)
        )

    def __repr__(self):
        return f"Trigraph(n={self.n}, black={len(self.black_edges())}, red={len(self.red_edges())})"

    # contraction ----------------------------------------------------------

    def _contract(self, keep: int, remove: int) -> None:
        if keep == remove:
            raise TrigraphError(f"cannot contract vertex {keep} with itself")
        self._check(keep)
        self._check(remove)
        kernels.contract_rows(self.black, self.red, self.red_deg, keep, remove)
        self.alive[remove] = False

    def contract(self, step: ContractionStep | Sequence[int]) -> "Trigraph":
        keep, remove = step
        g = self.copy()
        g._contract(int(keep), int(remove))
        return g

    def induced(self, keep: Iterable[int]) -> "Trigraph":
        """Induced subtrigraph on ``keep`` with the original ids preserved."""
        g = self.copy()
        mask = np.zeros(self.capacity, dtype=bool)
        for v in keep:
            self._check(v)
            mask[v] = True
        packed = np.packbits(mask, bitorder="little")
        words = np.zeros(self.black.shape[1] * 8, dtype=np.uint8)
        words[: packed.size] = packed
        m = words.view(np.uint64)
        g.black &= m
        g.red &= m
        g.black[~mask] = 0
        g.red[~mask] = 0
        g.alive &= mask
        g.red_deg = kernels.row_popcounts(g.red)
        return g


def from_black_edges(n: int, edges: Iterable[Sequence[int]]) -> Trigraph:
    return Trigraph.from_black_edges(n, edges)


def contract(g: Trigraph, step: ContractionStep | Sequence[int]) -> Trigraph:
    return g.contract(step)


def red_degree(g: Trigraph, v: int) -> int:
    return g.red_degree(v)


def max_red_degree(g: Trigraph) -> int:
    return g.max_red_degree()


class ReplayError(TrigraphError):
    def __init__(self, index: int, message: str):
        super().__init__(f"step {index}: {message}")
        self.index = index


def _as_steps(seq) -> list[ContractionStep]:
    return list(seq.steps) if isinstance(seq, ContractionSequence) else [ContractionStep(*s) for s in seq]


def replay(g: Trigraph, seq: ContractionSequence | Iterable[Sequence[int]]) -> WidthTrace:
    """Apply every step to a private copy of ``g`` and record max red degrees."""
    state = g.copy()
    trace = WidthTrace(state.max_red_degree(), [])
    for i, step in enumerate(_as_steps(seq)):
        try:
            state._contract(step.keep, step.remove)
        except TrigraphError as exc:
            raise ReplayError(i, str(exc)) from None
        trace.per_step_max_red_degree.append(int(state.red_deg.max()))
    return trace


def replay_states(g: Trigraph, seq):
    """Yield ``(index, step, state)`` after each step; the state is shared and mutated."""
    state = g.copy()
    for i, step in enumerate(_as_steps(seq)):
        try:
            state._contract(step.keep, step.remove)
        except TrigraphError as exc:
            raise ReplayError(i, str(exc)) from None
        yield i, step, state


@dataclass
class Verdict:
    accepted: bool
    width: int | None = None
    reason: str = ""
    step: int | None = None
    red_degree: int | None = None
    trace: WidthTrace | None = None

    def __bool__(self):
        return self.accepted


def verify_certificate(g: Trigraph, cert: ContractionSequence | Iterable[Sequence[int]], bound: int) -> Verdict:
    """ACCEPT iff the sequence replays, ends at one vertex, and never exceeds ``bound``."""
    steps = _as_steps(cert)
    if g.max_red_degree() > bound:
        return Verdict(False, reason="initial graph exceeds bound", step=-1, red_degree=g.max_red_degree())
    state = g.copy()
    trace = WidthTrace(state.max_red_degree(), [])
    first_bad = None
    for i, step in enumerate(steps):
        try:
            state._contract(step.keep, step.remove)
        except TrigraphError as exc:
            return Verdict(False, reason=f"structural: {exc}", step=i, trace=trace)
        r = int(state.red_deg.max())
        trace.per_step_max_red_degree.append(r)
        if r > bound and first_bad is None:
            first_bad = (i, r)
    if first_bad is not None:
        i, r = first_bad
        return Verdict(
            False, width=trace.overall_width, reason=f"red degree {r} exceeds bound {bound}", step=i, red_degree=r, trace=trace
        )
    if state.n > 1:
        return Verdict(False, width=trace.overall_width, reason=f"{state.n} vertices remain", trace=trace)
    return Verdict(True, width=trace.overall_width, trace=trace)
