"""Seeded test corpus: exhaustive labelled graphs on few vertices, random
graphs on more, each paired with B sets of several sizes."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Iterator

from .graph import Graph, induced_subgraph


@dataclass(frozen=True)
class CorpusConfig:
    seed: int = 0
    exhaustive_max_n: int = 4
    small_ns: tuple[int, ...] = (5, 6)
    small_count: int = 500
    large_n_range: tuple[int, int] = (7, 10)
    large_count: int = 300
    densities: tuple[float, ...] = (0.2, 0.5, 0.8)


@dataclass(frozen=True)
class Instance:
    name: str
    graph: Graph
    B: frozenset = field(default_factory=frozenset)


def all_labelled_graphs(n: int) -> Iterator[Graph]:
    pairs = list(itertools.combinations(range(n), 2))
    for chosen in range(1 << len(pairs)):
        yield Graph.from_edges(n, [p for k, p in enumerate(pairs) if chosen >> k & 1])


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph.from_edges(n, [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p])


def b_sizes(n: int) -> tuple[int, ...]:
    return tuple(sorted({0, math.ceil(n / 3), n}))


def _with_b(name: str, g: Graph, rng: random.Random) -> list[Instance]:
    return [Instance(f"{name}/b{k}", g, frozenset(rng.sample(range(g.n), k))) for k in b_sizes(g.n)]


def corpus_graphs(cfg: CorpusConfig = CorpusConfig()) -> list[tuple[str, Graph]]:
    rng = random.Random(cfg.seed)
    out = []
    for n in range(1, cfg.exhaustive_max_n + 1):
        for k, g in enumerate(all_labelled_graphs(n)):
            out.append((f"all{n}-{k}", g))
    for k in range(cfg.small_count):
        n = cfg.small_ns[k % len(cfg.small_ns)]
        out.append((f"small{n}-{k}", random_graph(n, 0.5, rng)))
    lo, hi = cfg.large_n_range
    for k in range(cfg.large_count):
        n = rng.randint(lo, hi)
        p = cfg.densities[k % len(cfg.densities)]
        out.append((f"large{n}-p{p}-{k}", random_graph(n, p, rng)))
    return out


def build_corpus(cfg: CorpusConfig = CorpusConfig()) -> list[Instance]:
    rng = random.Random(cfg.seed + 1)
    out = []
    for name, g in corpus_graphs(cfg):
        out.extend(_with_b(name, g, rng))
    return out


def random_surjective_hom(rng: random.Random, h: Graph, max_fiber: int = 3, p: float = 0.6):
    """Blow each vertex of h up into a fibre; G keeps a random subset of the
    edges between fibres of adjacent targets, so the fold map is a surjective
    homomorphism."""
    from .weighted import Homomorphism

    mapping = []
    for u in range(h.n):
        mapping.extend([u] * rng.randint(1, max_fiber))
    rng.shuffle(mapping)
    n = len(mapping)
    edges = [(a, b) for a, b in itertools.combinations(range(n), 2)
             if h.has_edge(mapping[a], mapping[b]) and rng.random() < p]
    return Homomorphism(Graph.from_edges(n, edges), h, tuple(mapping))


def random_induced_embedding(rng: random.Random, h: Graph):
    """A relabelled induced subgraph of h together with its injective embedding."""
    from .weighted import Homomorphism

    size = rng.randint(1, h.n)
    s = sorted(rng.sample(range(h.n), size))
    sub, old = induced_subgraph(h, s)
    perm = list(range(size))
    rng.shuffle(perm)
    # vertex i of G is vertex perm[i] of sub
    edges = [(i, j) for i, j in itertools.combinations(range(size), 2) if sub.has_edge(perm[i], perm[j])]
    g = Graph.from_edges(size, edges)
    return Homomorphism(g, h, tuple(old[perm[i]] for i in range(size)))
