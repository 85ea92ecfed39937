# src/polytope.py
"""
Face lattices of regular polytopes built from string C-groups.

The i-faces are the right cosets G_i g of the parabolic subgroups
G_i = <rho_j : j != i>.  Each coset gets a label, and face_of[i][x] is the
label of the i-face containing the x-th element of G, so two faces are
incident exactly when some element carries both labels.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import networkx as nx
import numpy as np

import src.config as config
from src.errors import StructureError, TupleError
from src.group import STRUCTURE_PROFILES, GroupCtx, closure, mul_ids, order_profile
from src.search import (
    GenTuple, as_gens, first_ip_failure, is_self_dual_tuple, petrie_type,
    schlafli_type, string_condition,
)
from src.utils import setup_logger

logger = setup_logger("Polytope")


@dataclass
class FaceLattice:
    rank: int
    gens: Tuple[int, ...]
    group_ids: np.ndarray                    # sorted ids of G = <gens>
    parabolic: List[np.ndarray]              # ids of G_i
    face_of: List[np.ndarray]                # per rank, face label of each element of G
    incidences: Dict[Tuple[int, int], np.ndarray] = field(default_factory=dict)

    @property
    def group_order(self) -> int:
        return int(self.group_ids.size)

    @property
    def f_vector(self) -> Tuple[int, ...]:
        return tuple(int(labels.max()) + 1 for labels in self.face_of)

    def coset(self, i: int, face: int) -> np.ndarray:
        return self.group_ids[self.face_of[i] == face]

    def representatives(self, i: int) -> List[int]:
        firsts = np.unique(self.face_of[i], return_index=True)[1]
        return [int(self.group_ids[p]) for p in firsts]

    def position(self, g: int) -> int:
        return int(np.searchsorted(self.group_ids, g))

    def flag_of(self, g: int) -> Tuple[int, ...]:
        """The image of the base flag under g: the faces G_i g."""
        p = self.position(g)
        return tuple(int(labels[p]) for labels in self.face_of)


def build_lattice(ctx: GroupCtx, tup) -> FaceLattice:
    """
    Coset lattice of a verified string C-group.  The tuple may generate a
    proper subgroup of ctx, in which case G is that subgroup.
    """
    gens = as_gens(tup)
    if not string_condition(ctx, gens) or first_ip_failure(ctx, gens, capped=False) is not None:
        raise TupleError(f"{gens} is not a string C-group")
    n = len(gens)
    group = closure(ctx, gens).ids
    pos = np.full(ctx.order, -1, dtype=np.int64)
    pos[group] = np.arange(group.size)

    parabolic, face_of = [], []
    for i in range(n):
        sub = closure(ctx, [g for j, g in enumerate(gens) if j != i]).ids
        labels = np.full(group.size, -1, dtype=np.int64)
        label = 0
        for p in range(group.size):
            if labels[p] >= 0:
                continue
            labels[pos[mul_ids(ctx, sub, group[p])]] = label
            label += 1
        if label * sub.size != group.size:
            raise StructureError(f"rank {i}: {label} cosets of order {sub.size} in {group.size}")
        parabolic.append(sub)
        face_of.append(labels)

    lattice = FaceLattice(rank=n, gens=gens, group_ids=group, parabolic=parabolic, face_of=face_of)
    for i in range(n):
        for j in range(i + 1, n):
            pairs = np.stack([face_of[i], face_of[j]], axis=1)
            lattice.incidences[(i, j)] = np.unique(pairs, axis=0)
    logger.debug(f"lattice for {gens}: f = {lattice.f_vector}, |G| = {group.size}")
    return lattice


def face_vector(lattice: FaceLattice) -> Tuple[int, ...]:
    return lattice.f_vector


def parabolic_f_vector(ctx: GroupCtx, tup) -> Tuple[int, ...]:
    """|G| / |G_i| per rank, without labelling the cosets."""
    gens = as_gens(tup)
    order = closure(ctx, gens).order
    return tuple(order // closure(ctx, [g for j, g in enumerate(gens) if j != i]).order
                 for i in range(len(gens)))


def dual_tuple(tup) -> GenTuple:
    return GenTuple(tuple(reversed(as_gens(tup))))


def incident_literal(lattice: FaceLattice, i: int, a: int, j: int, b: int) -> bool:
    """Incidence straight from the definition: the two cosets intersect."""
    return np.intersect1d(lattice.coset(i, a), lattice.coset(j, b), assume_unique=True).size > 0


# --- Flags ---

def _neighbours(lattice: FaceLattice) -> Dict[Tuple[int, int], List[set]]:
    """nb[(i, j)][a] = the j-faces incident to i-face a, for every i != j."""
    f = lattice.f_vector
    nb: Dict[Tuple[int, int], List[set]] = {}
    for (i, j), pairs in lattice.incidences.items():
        up = [set() for _ in range(f[i])]
        down = [set() for _ in range(f[j])]
        for a, b in pairs:
            up[a].add(int(b))
            down[b].add(int(a))
        nb[(i, j)], nb[(j, i)] = up, down
    return nb


def flags(lattice: FaceLattice) -> List[Tuple[int, ...]]:
    """All maximal chains of pairwise incident proper faces."""
    n = lattice.rank
    nb = _neighbours(lattice)
    found: List[Tuple[int, ...]] = []

    def extend(chain: List[int]) -> None:
        i = len(chain)
        if i == n:
            found.append(tuple(chain))
            return
        options = range(lattice.f_vector[0]) if i == 0 else nb[(i - 1, i)][chain[-1]]
        for face in options:
            if all(face in nb[(j, i)][chain[j]] for j in range(i - 1)):
                extend(chain + [face])

    extend([])
    return found


def _diamond_holds(nb, flag: Tuple[int, ...]) -> bool:
    n = len(flag)
    for i in range(n):
        others = [nb[(j, i)][flag[j]] for j in range(n) if j != i]
        if not others:
            continue
        if len(set.intersection(*others)) != 2:
            return False
    return True


def check_diamond(lattice: FaceLattice, sample: Optional[int] = None, seed: int = config.RANDOM_SEED) -> bool:
    """
    Every flag with its i-face removed extends in exactly two ways.
    Exhaustive over all flags, or over `sample` images of the base flag.
    """
    nb = _neighbours(lattice)
    if sample is None:
        chosen = flags(lattice)
    else:
        rng = np.random.default_rng(seed)
        picks = rng.choice(lattice.group_ids, size=sample)
        chosen = [lattice.flag_of(int(g)) for g in picks]
    return all(_diamond_holds(nb, flag) for flag in chosen)


# --- Invariants ---

def edge_graph(lattice: FaceLattice) -> nx.Graph:
    if lattice.rank < 2:
        raise StructureError("edge graph needs rank >= 2")
    graph = nx.Graph()
    graph.add_nodes_from(range(lattice.f_vector[0]))
    pairs = lattice.incidences[(0, 1)]
    for edge in range(lattice.f_vector[1]):
        ends = pairs[pairs[:, 1] == edge, 0]
        if ends.size != 2:
            raise StructureError(f"edge {edge} is incident to {ends.size} vertices")
        graph.add_edge(int(ends[0]), int(ends[1]))
    return graph


def is_complete(graph: nx.Graph) -> bool:
    n = graph.number_of_nodes()
    return nx.number_of_selfloops(graph) == 0 and graph.number_of_edges() == n * (n - 1) // 2


def petrie_orders(ctx: GroupCtx, tup) -> Tuple[int, int]:
    gens = as_gens(tup)
    if len(gens) != 4:
        raise TupleError("petrie_orders expects a rank-4 tuple")
    return petrie_type(ctx, gens)


def structure_label(ctx: GroupCtx, ids) -> Optional[str]:
    profile = order_profile(ctx, ids)
    for name, known in STRUCTURE_PROFILES.items():
        if profile == known:
            return name
    return None


@dataclass(frozen=True)
class MapLabel:
    m: int
    n: int
    k: int
    order: int
    structure: Optional[str] = None

    def __str__(self):
        return f"{{{self.m},{self.n}}}_{self.k}"


def map_label(ctx: GroupCtx, gens) -> MapLabel:
    gens = as_gens(gens)
    sub = closure(ctx, gens).ids
    m, n = schlafli_type(ctx, gens)
    (k,) = petrie_type(ctx, gens)
    return MapLabel(m, n, k, int(sub.size), structure_label(ctx, sub))


def identify_facet_and_vertex_figure(ctx: GroupCtx, tup) -> Tuple[MapLabel, MapLabel]:
    gens = as_gens(tup)
    if len(gens) != 4:
        raise TupleError("facet / vertex-figure labels expect a rank-4 tuple")
    return map_label(ctx, gens[:3]), map_label(ctx, gens[1:])


def is_self_dual(ctx: GroupCtx, tup) -> bool:
    return is_self_dual_tuple(ctx, tup)


def export_lattice(lattice: FaceLattice) -> dict:
    """JSON-ready lattice: face representatives per rank and adjacent-rank incidences."""
    return {
        "rank": lattice.rank,
        "generators": list(lattice.gens),
        "group_order": lattice.group_order,
        "f_vector": list(lattice.f_vector),
        "faces": [lattice.representatives(i) for i in range(lattice.rank)],
        "incidences": {
            f"{i}-{i + 1}": lattice.incidences[(i, i + 1)].tolist()
            for i in range(lattice.rank - 1)
        },
    }
