"""Vertex combinatorics for N-ary trees and periodic lattices.

Vertices of the N-ary tree are finite words over the alphabet ``{1..N}``; the
empty word ``()`` is the root. A `TruncatedTree` keeps every word of length at
most ``D`` and numbers them level by level, lexicographically inside a level:

    ()  -> 0
    (1,) -> 1, (2,) -> 2, ..., (N,) -> N
    (1, 1) -> N + 1, ...

All interfaces are 1-based in the letters; the index arithmetic is 0-based.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field

import networkx as nx
import numpy as np
from numpy.typing import NDArray

Word = tuple[int, ...]

ROOT: Word = ()


def validate_word(w: Sequence[int], branching: int) -> Word:
    """Return ``w`` as a tuple, checking every letter lies in ``1..branching``.

    Raises:
        ValueError: If a letter is out of range or ``branching < 1``.
    """
    if branching < 1:
        raise ValueError(f"branching must be >= 1, got {branching}")
    word = tuple(int(letter) for letter in w)
    bad = [letter for letter in word if not 1 <= letter <= branching]
    if bad:
        raise ValueError(f"letters {bad} out of range 1..{branching} in word {format_word(word)}")
    return word


def children(w: Sequence[int], branching: int) -> list[Word]:
    """Return the N children ``w1, ..., wN`` in letter order."""
    word = validate_word(w, branching)
    return [(*word, i) for i in range(1, branching + 1)]


def parent(w: Sequence[int]) -> Word:
    """Drop the last letter; the root is its own parent."""
    word = tuple(w)
    return word[:-1] if word else ROOT


def common_prefix_len(a: Sequence[int], b: Sequence[int]) -> int:
    """Length of the largest common prefix of two words."""
    p = 0
    for x, y in zip(a, b):
        if x != y:
            break
        p += 1
    return p


def tree_path_length(a: Sequence[int], b: Sequence[int]) -> int:
    """Graph distance between two vertices of the tree."""
    return len(a) + len(b) - 2 * common_prefix_len(a, b)


def format_word(w: Sequence[int]) -> str:
    """Render a word: ``"12"``, ``"1.10"`` for large alphabets, ``"∅"`` for the root."""
    if not w:
        return "∅"
    if any(letter > 9 for letter in w):
        return ".".join(str(letter) for letter in w)
    return "".join(str(letter) for letter in w)


def parse_word(text: str, branching: int) -> Word:
    """Parse ``"12"`` / ``"1.2"`` / ``""`` / ``"root"`` into a word.

    Letters are single digits unless the text contains dots, which is required
    when ``branching > 9``.
    """
    cleaned = text.strip()
    if cleaned in {"", "root", "∅"}:
        return ROOT
    if "." in cleaned:
        parts = cleaned.split(".")
    elif branching > 9:
        raise ValueError(f"words over {branching} letters must be dot-separated, got {text!r}")
    else:
        parts = list(cleaned)
    try:
        letters = [int(part) for part in parts]
    except ValueError as exc:
        raise ValueError(f"cannot parse word {text!r}") from exc
    return validate_word(letters, branching)


def all_words(branching: int, depth: int) -> Iterable[Word]:
    """Yield every word of length <= depth in index order."""
    level: list[Word] = [ROOT]
    for _ in range(depth + 1):
        yield from level
        level = [(*w, i) for w in level for i in range(1, branching + 1)]


def _freeze(array: NDArray) -> NDArray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class TruncatedTree:
    """The N-ary tree cut at depth D, with conductances on its edges.

    Attributes:
        branching: Number of children per vertex (N >= 1).
        depth: Largest word length kept (D >= 1).
        conductance: Optional array of length ``vertex_count``; entry ``k`` is the
            conductance of the edge between vertex ``k`` and its parent (entry 0
            is unused). Defaults to 1 on every edge.

    Vertices beyond depth D are absent: leaves have a single neighbor.
    """

    branching: int
    depth: int
    conductance: NDArray[np.float64] | None = None

    level_offsets: NDArray[np.int64] = field(init=False, repr=False, compare=False)
    depths: NDArray[np.int64] = field(init=False, repr=False, compare=False)
    parents: NDArray[np.int64] = field(init=False, repr=False, compare=False)
    last_letters: NDArray[np.int64] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.branching < 1:
            raise ValueError(f"branching must be >= 1, got {self.branching}")
        if self.depth < 1:
            raise ValueError(f"depth must be >= 1, got {self.depth}")

        sizes = [self.branching**k for k in range(self.depth + 1)]
        offsets = np.concatenate([[0], np.cumsum(sizes)]).astype(np.int64)
        count = int(offsets[-1])

        depths = np.repeat(np.arange(self.depth + 1, dtype=np.int64), sizes)
        position = np.arange(count, dtype=np.int64) - offsets[depths]
        parents = np.zeros(count, dtype=np.int64)
        inner = depths > 0
        parents[inner] = offsets[depths[inner] - 1] + position[inner] // self.branching
        last = np.zeros(count, dtype=np.int64)
        last[inner] = position[inner] % self.branching + 1

        if self.conductance is None:
            cond = np.ones(count, dtype=np.float64)
            cond[0] = 0.0
        else:
            cond = np.array(self.conductance, dtype=np.float64)
            if cond.shape != (count,):
                raise ValueError(f"conductance must have shape ({count},), got {cond.shape}")
            if not np.all(cond[1:] > 0):
                raise ValueError("conductance must be positive on every edge")
            cond[0] = 0.0

        object.__setattr__(self, "conductance", _freeze(cond))
        object.__setattr__(self, "level_offsets", _freeze(offsets))
        object.__setattr__(self, "depths", _freeze(depths))
        object.__setattr__(self, "parents", _freeze(parents))
        object.__setattr__(self, "last_letters", _freeze(last))

    @classmethod
    def with_conductance(
        cls, branching: int, depth: int, conductance: Callable[[Word, Word], float]
    ) -> TruncatedTree:
        """Build a tree whose edge ``(parent(w), w)`` carries ``conductance(parent(w), w)``."""
        values = np.zeros(sum(branching**k for k in range(depth + 1)))
        for k, w in enumerate(all_words(branching, depth)):
            if k:
                values[k] = conductance(parent(w), w)
        return cls(branching, depth, values)

    @property
    def vertex_count(self) -> int:
        return int(self.level_offsets[-1])

    @property
    def unit_conductance(self) -> bool:
        return bool(np.all(self.conductance[1:] == 1.0))

    def level(self, k: int) -> range:
        """Indices of the words of length ``k``."""
        if not 0 <= k <= self.depth:
            raise ValueError(f"level {k} outside 0..{self.depth}")
        return range(int(self.level_offsets[k]), int(self.level_offsets[k + 1]))

    def index(self, w: Sequence[int]) -> int:
        """Index of a word; inverse of `word`."""
        word = validate_word(w, self.branching)
        if len(word) > self.depth:
            raise ValueError(f"word {format_word(word)} is deeper than {self.depth}")
        position = 0
        for letter in word:
            position = position * self.branching + (letter - 1)
        return int(self.level_offsets[len(word)]) + position

    def word(self, idx: int) -> Word:
        """Word at an index; inverse of `index`."""
        if not 0 <= idx < self.vertex_count:
            raise ValueError(f"index {idx} outside 0..{self.vertex_count - 1}")
        k = int(self.depths[idx])
        position = idx - int(self.level_offsets[k])
        letters = []
        for _ in range(k):
            position, r = divmod(position, self.branching)
            letters.append(r + 1)
        return tuple(reversed(letters))

    def words(self) -> list[Word]:
        return list(all_words(self.branching, self.depth))

    def child_indices(self, letter: int) -> NDArray[np.int64]:
        """Index of ``τ_letter(x)`` for every vertex x; -1 on the boundary level."""
        if not 1 <= letter <= self.branching:
            raise ValueError(f"letter {letter} out of range 1..{self.branching}")
        position = np.arange(self.vertex_count, dtype=np.int64) - self.level_offsets[self.depths]
        result = np.full(self.vertex_count, -1, dtype=np.int64)
        inner = self.depths < self.depth
        result[inner] = (
            self.level_offsets[self.depths[inner] + 1]
            + position[inner] * self.branching
            + (letter - 1)
        )
        return result

    def neighbors(self, idx: int) -> list[int]:
        """Neighbors inside the truncation (parent first, then children)."""
        result = [] if idx == 0 else [int(self.parents[idx])]
        if self.depths[idx] < self.depth:
            result.extend(int(self.child_indices(i)[idx]) for i in range(1, self.branching + 1))
        return result

    def ancestor_table(self) -> NDArray[np.int64]:
        """``table[k, v]`` is the ancestor of v at depth k, or -1 when ``|v| < k``."""
        count = self.vertex_count
        table = np.full((self.depth + 1, count), -1, dtype=np.int64)
        idx = np.arange(count, dtype=np.int64)
        current = idx.copy()
        levels = self.depths.copy()
        for _ in range(self.depth + 1):
            alive = levels >= 0
            table[levels[alive], idx[alive]] = current[alive]
            current = self.parents[current]
            levels = levels - 1
        return table

    def common_prefix_with(self, idx: int) -> NDArray[np.int64]:
        """``common_prefix_len(word(v), word(idx))`` for every vertex v."""
        table = self.ancestor_table()
        target = table[:, idx]
        agree = (table[1:] == target[1:, None]) & (target[1:, None] >= 0)
        return agree.sum(axis=0).astype(np.int64)

    def common_prefix_matrix(self, indices: Sequence[int] | None = None) -> NDArray[np.int64]:
        """Pairwise common-prefix lengths over ``indices`` (all vertices by default)."""
        table = self.ancestor_table()
        cols = np.arange(self.vertex_count) if indices is None else np.asarray(indices)
        sub = table[1:, cols]
        agree = (sub[:, :, None] == sub[:, None, :]) & (sub[:, :, None] >= 0)
        return agree.sum(axis=0).astype(np.int64)

    def path_length_matrix(self, indices: Sequence[int] | None = None) -> NDArray[np.int64]:
        """Pairwise tree distances over ``indices`` (all vertices by default)."""
        cols = np.arange(self.vertex_count) if indices is None else np.asarray(indices)
        cpl = self.common_prefix_matrix(cols)
        d = self.depths[cols]
        return d[:, None] + d[None, :] - 2 * cpl

    def to_networkx(self, *, root_loop: bool = False) -> nx.Graph:
        """Export as an undirected graph on vertex indices.

        Edges carry a ``conductance`` attribute. With ``root_loop`` the root gets
        the self-loop that turns the tree into T̃.
        """
        graph = nx.Graph()
        graph.add_nodes_from(range(self.vertex_count))
        graph.add_edges_from(
            (int(self.parents[k]), k, {"conductance": float(self.conductance[k])})
            for k in range(1, self.vertex_count)
        )
        if root_loop:
            graph.add_edge(0, 0, conductance=1.0)
        return graph


@dataclass(frozen=True)
class LatticeTorus:
    """The periodic lattice ``(Z/LZ)^d``; vertex ``n`` neighbors ``n ± e_k`` mod L.

    Vectors on the torus are flat arrays of length ``L**d`` in C order.
    """

    dimension: int
    side: int

    def __post_init__(self) -> None:
        if self.dimension < 1:
            raise ValueError(f"dimension must be >= 1, got {self.dimension}")
        if self.side < 2:
            raise ValueError(f"side length must be >= 2, got {self.side}")

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.side,) * self.dimension

    @property
    def vertex_count(self) -> int:
        return int(self.side**self.dimension)

    def coordinates(self, idx: int) -> tuple[int, ...]:
        return tuple(int(c) for c in np.unravel_index(idx, self.shape))

    def flat_index(self, coords: Sequence[int]) -> int:
        wrapped = tuple(int(c) % self.side for c in coords)
        return int(np.ravel_multi_index(wrapped, self.shape))

    def neighbors(self, idx: int) -> list[int]:
        """The 2d neighbor slots of a vertex (repeated when L = 2)."""
        coords = list(self.coordinates(idx))
        result = []
        for axis in range(self.dimension):
            for step in (1, -1):
                moved = coords.copy()
                moved[axis] += step
                result.append(self.flat_index(moved))
        return result
