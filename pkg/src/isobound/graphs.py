"""Finite simple graphs, vertex subsets, and Cartesian products.

Vertices are always 0..m-1.  Product graphs use mixed-radix vertex encoding
with the first factor most significant, so the index of (v_1, ..., v_n) is
((v_1 * m_2 + v_2) * m_3 + v_3) * ... .
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from functools import cached_property

DEFAULT_MAX_VERTICES = 1 << 20
MAX_VERTICES_ENV = "ISOBOUND_MAX_VERTICES"

FAMILIES = ("complete", "path", "cycle")


class ParseError(ValueError):
    """A graph file or graph spec string is malformed."""


class CapExceededError(ValueError):
    """Materializing a graph would exceed the vertex cap."""


def max_vertex_cap() -> int:
    """Materialization cap: DEFAULT_MAX_VERTICES unless the env var overrides."""
    raw = os.environ.get(MAX_VERTICES_ENV)
    if raw is None:
        return DEFAULT_MAX_VERTICES
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"{MAX_VERTICES_ENV} must be an integer, got {raw!r}") from None
    if cap < 1:
        raise ValueError(f"{MAX_VERTICES_ENV} must be positive, got {cap}")
    return cap


@dataclass(frozen=True)
class Graph:
    """Immutable undirected simple graph; adjacency[v] is sorted."""

    vertex_count: int
    adjacency: tuple[tuple[int, ...], ...]
    label: str = "graph"

    @classmethod
    def from_edges(cls, vertex_count: int, edges, label: str = "graph") -> "Graph":
        if vertex_count < 1:
            raise ValueError(f"vertex count must be positive, got {vertex_count}")
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise ValueError(f"edge ({u}, {v}) out of range for {vertex_count} vertices")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            seen.add((u, v) if u < v else (v, u))  # duplicates collapse
        neighbours: list[list[int]] = [[] for _ in range(vertex_count)]
        for u, v in seen:
            neighbours[u].append(v)
            neighbours[v].append(u)
        return cls(vertex_count, tuple(tuple(sorted(ns)) for ns in neighbours), label)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(ns) for ns in self.adjacency)

    @cached_property
    def edge_count(self) -> int:
        return sum(self.degrees) // 2

    @cached_property
    def adjacency_masks(self) -> tuple[int, ...]:
        masks = []
        for ns in self.adjacency:
            m = 0
            for u in ns:
                m |= 1 << u
            masks.append(m)
        return tuple(masks)

    def is_regular(self) -> bool:
        return len(set(self.degrees)) <= 1

    def is_connected(self) -> bool:
        if self.vertex_count == 1:
            return True
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for u in self.adjacency[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == self.vertex_count


@dataclass(frozen=True)
class VertexSet:
    """Vertex subset as a dense bitmask (bit v set iff v is a member)."""

    mask: int
    size: int

    @classmethod
    def from_members(cls, members) -> "VertexSet":
        mask = 0
        for v in members:
            if v < 0:
                raise ValueError(f"negative vertex {v}")
            mask |= 1 << v
        return cls(mask, mask.bit_count())

    @classmethod
    def from_hex(cls, text: str) -> "VertexSet":
        mask = int(text, 16)
        return cls(mask, mask.bit_count())

    def to_hex(self) -> str:
        return format(self.mask, "x")

    def members(self) -> tuple[int, ...]:
        out = []
        mask = self.mask
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return tuple(out)

    def contains(self, v: int) -> bool:
        return (self.mask >> v) & 1 == 1

    def complement(self, vertex_count: int) -> "VertexSet":
        mask = ((1 << vertex_count) - 1) & ~self.mask
        return VertexSet(mask, vertex_count - self.size)


@dataclass(frozen=True)
class ProductSpec:
    """Factor list of a Cartesian product, not necessarily materializable."""

    factors: tuple[Graph, ...]

    def __post_init__(self):
        if not self.factors:
            raise ValueError("product spec needs at least one factor")

    @property
    def vertex_count(self) -> int:
        return math.prod(f.vertex_count for f in self.factors)

    def log_volume(self) -> float:
        return sum(math.log(f.vertex_count) for f in self.factors)

    def label(self) -> str:
        parts = []
        for lab, group in itertools.groupby(f.label for f in self.factors):
            n = len(list(group))
            parts.append(lab if n == 1 else f"{lab}^{n}")
        return " x ".join(parts)


def generate(family: str, m: int) -> Graph:
    """One of the named families on m vertices."""
    if family == "complete":
        if m < 1:
            raise ValueError(f"complete graph needs m >= 1, got {m}")
        edges = [(u, v) for u in range(m) for v in range(u + 1, m)]
    elif family == "path":
        if m < 1:
            raise ValueError(f"path needs m >= 1, got {m}")
        edges = [(v, v + 1) for v in range(m - 1)]
    elif family == "cycle":
        if m < 3:
            raise ValueError(f"cycle needs m >= 3, got {m}")
        edges = [(v, (v + 1) % m) for v in range(m)]
    else:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    return Graph.from_edges(m, edges, label=f"{family}:{m}")


def petersen() -> Graph:
    """Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5."""
    edges = []
    for i in range(5):
        edges.append((i, (i + 1) % 5))
        edges.append((i, i + 5))
        edges.append((5 + i, 5 + (i + 2) % 5))
    return Graph.from_edges(10, edges, label="petersen")


def family_of_label(label: str) -> tuple[str, int] | None:
    """Inverse of generate()'s labelling, None for anything else."""
    name, sep, arg = label.partition(":")
    if sep and name in FAMILIES and arg.isdigit():
        return name, int(arg)
    return None


def parse_graph(text: str, label: str = "file") -> Graph:
    """Edge-list format: first nonblank line is the vertex count, the rest are
    "u v" pairs (0-based).  Lines starting with '#' are comments."""
    vertex_count = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if vertex_count is None:
            if len(parts) != 1:
                raise ParseError(f"line {lineno}: expected a single vertex count, got {line!r}")
            try:
                vertex_count = int(parts[0])
            except ValueError:
                raise ParseError(f"line {lineno}: vertex count is not an integer: {line!r}") from None
            if vertex_count < 1:
                raise ParseError(f"line {lineno}: vertex count must be positive, got {vertex_count}")
            continue
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {lineno}: endpoints are not integers: {line!r}") from None
        if u == v:
            raise ParseError(f"line {lineno}: self-loop at vertex {u}")
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise ParseError(
                f"line {lineno}: edge ({u}, {v}) out of range for {vertex_count} vertices"
            )
        edges.append((u, v))
    if vertex_count is None:
        raise ParseError("no vertex count line found")
    return Graph.from_edges(vertex_count, edges, label=label)


def _parse_atom(token: str) -> Graph:
    name, sep, arg = token.partition(":")
    if not sep or not arg:
        raise ParseError(f"bad graph spec {token!r}; expected family:M or file:PATH")
    if name == "file":
        try:
            with open(arg, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read graph file {arg!r}: {exc}") from None
        return parse_graph(text, label=token)
    if name not in FAMILIES:
        raise ParseError(f"unknown family {name!r}; expected one of {FAMILIES} or file")
    if not arg.isdigit():
        raise ParseError(f"bad size {arg!r} in {token!r}")
    return generate(name, int(arg))


def parse_product_spec(text: str) -> ProductSpec:
    """Grammar: TERM (x TERM)*, TERM = ATOM or ATOM^K,
    ATOM = complete:M | path:M | cycle:M | file:PATH."""
    tokens = text.split()
    if not tokens:
        raise ParseError("empty graph spec")
    factors: list[Graph] = []
    expect_term = True
    for token in tokens:
        if expect_term:
            atom_text, caret, power_text = token.partition("^")
            atom = _parse_atom(atom_text)
            if caret:
                if not power_text.isdigit() or int(power_text) < 1:
                    raise ParseError(f"bad power {power_text!r} in {token!r}")
                factors.extend([atom] * int(power_text))
            else:
                factors.append(atom)
        elif token != "x":
            raise ParseError(f"expected 'x' between factors, got {token!r}")
        expect_term = not expect_term
    if expect_term:
        raise ParseError("graph spec ends with a dangling 'x'")
    return ProductSpec(tuple(factors))


def cartesian_product(spec, *, max_vertices: int | None = None) -> Graph:
    """Materialize the product; refuses when the vertex count exceeds the cap."""
    factors = spec.factors if isinstance(spec, ProductSpec) else tuple(spec)
    spec = spec if isinstance(spec, ProductSpec) else ProductSpec(factors)
    cap = max_vertex_cap() if max_vertices is None else max_vertices
    total = spec.vertex_count
    if total > cap:
        raise CapExceededError(
            f"product needs {total} vertices but the cap is {cap}"
            f" (override with {MAX_VERTICES_ENV} or max_vertices)"
        )
    if len(factors) == 1:
        return factors[0]
    sizes = [f.vertex_count for f in factors]
    strides = [1] * len(sizes)
    for i in range(len(sizes) - 2, -1, -1):
        strides[i] = strides[i + 1] * sizes[i + 1]
    adjacency = []
    for idx, coords in enumerate(itertools.product(*(range(m) for m in sizes))):
        ns = []
        for i, (g, stride) in enumerate(zip(factors, strides)):
            base = idx - coords[i] * stride
            for u in g.adjacency[coords[i]]:
                ns.append(base + u * stride)
        adjacency.append(tuple(sorted(ns)))
    return Graph(total, tuple(adjacency), label=spec.label())


def product_vertex_set(spec: ProductSpec, factor_sets) -> VertexSet:
    """A_1 x ... x A_n as a vertex set of the materialized product."""
    factor_sets = tuple(factor_sets)
    if len(factor_sets) != len(spec.factors):
        raise ValueError("one vertex set per factor required")
    sizes = [f.vertex_count for f in spec.factors]
    strides = [1] * len(sizes)
    for i in range(len(sizes) - 2, -1, -1):
        strides[i] = strides[i + 1] * sizes[i + 1]
    mask = 0
    count = 0
    for coords in itertools.product(*(s.members() for s in factor_sets)):
        idx = sum(c * stride for c, stride in zip(coords, strides))
        mask |= 1 << idx
        count += 1
    return VertexSet(mask, count)


def edge_boundary(g: Graph, vset: VertexSet) -> int:
    """Number of edges with exactly one endpoint in the set."""
    mask = vset.mask
    if mask >> g.vertex_count:
        raise ValueError("vertex set exceeds the graph's vertex range")
    count = 0
    remaining = mask
    while remaining:
        low = remaining & -remaining
        v = low.bit_length() - 1
        remaining ^= low
        for u in g.adjacency[v]:
            if not (mask >> u) & 1:
                count += 1
    return count
