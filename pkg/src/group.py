# src/group.py
"""
PSL(2,q) and PGL(2,q) as permutation groups of the projective line.

Points are the field labels 0..q-1 (the points [a:1]) followed by infinity = q.
Elements are referred to by integer id; id 0 is the identity.  Products use the
right action: (a*b)(x) = b(a(x)).  Because PGL(2,q) is sharply 3-transitive,
an element is determined by the images of the points 0, 1 and infinity, so
every lookup goes through that 3-point key.
"""
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Dict, List, NamedTuple, Optional, Sequence

import numpy as np

import src.config as config
from src.errors import GroupError
from src.field import FieldSpec, tables
from src.utils import setup_logger

logger = setup_logger("Group")

PSL = "PSL"
PGL = "PGL"

# Smallest index of a proper subgroup of PSL(2,q); q + 1 otherwise (Galois).
MIN_INDEX = {2: 2, 3: 3, 5: 5, 7: 7, 9: 6, 11: 11}

# Element-order profiles {order: count} that pin down these groups among the
# subgroups met here.
STRUCTURE_PROFILES = {
    "A4": {1: 1, 2: 3, 3: 8},
    "S4": {1: 1, 2: 9, 3: 8, 4: 6},
    "A5": {1: 1, 2: 15, 3: 20, 5: 24},
    "S5": {1: 1, 2: 25, 3: 20, 4: 30, 5: 24, 6: 20},
}


class Elem(NamedTuple):
    id: int
    images: np.ndarray


@dataclass(eq=False)
class SubgroupSet:
    """Sorted element ids.  over_cap marks a closure abandoned at its size cap."""
    ids: np.ndarray
    over_cap: bool = False

    @property
    def order(self) -> int:
        return int(self.ids.size)

    def contains(self, i: int) -> bool:
        pos = np.searchsorted(self.ids, i)
        return bool(pos < self.ids.size and self.ids[pos] == i)

    def key(self) -> bytes:
        return self.ids.astype(np.int32).tobytes()


@dataclass(eq=False)
class GroupCtx:
    kind: str
    field: FieldSpec
    perms: np.ndarray                      # (order, q+1) int16, lexicographically sorted
    index: np.ndarray = dc_field(repr=False)    # 3-point key -> id
    inverses: np.ndarray = dc_field(repr=False)
    _orders: Optional[np.ndarray] = dc_field(default=None, repr=False)
    _involutions: Optional[np.ndarray] = dc_field(default=None, repr=False)

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def order(self) -> int:
        return int(self.perms.shape[0])

    @property
    def key_points(self) -> np.ndarray:
        return np.array([0, 1, self.q])

    @property
    def orders(self) -> np.ndarray:
        if self._orders is None:
            self._orders = _element_orders(self)
        return self._orders

    @property
    def involutions(self) -> np.ndarray:
        if self._involutions is None:
            self._involutions = np.flatnonzero(self.orders == 2)
        return self._involutions

    def element(self, i: int) -> Elem:
        return Elem(int(i), self.perms[i])

    def __repr__(self):
        return f"{self.kind}(2,{self.q})"


def expected_order(q: int, kind: str) -> int:
    full = q * (q * q - 1)
    if kind == PSL and q % 2 == 1:
        return full // 2
    return full


# --- Construction ---

def _moebius_rows(field: FieldSpec, kind: str) -> np.ndarray:
    """Point permutations of all projectively normalized matrices [[a,b],[c,d]]."""
    t = tables(field)
    q = field.q
    x = np.arange(q)
    squares_only = kind == PSL and q % 2 == 1
    c_grid, d_grid = np.meshgrid(np.arange(q), np.arange(q), indexing="ij")
    c_grid, d_grid = c_grid.ravel(), d_grid.ravel()
    blocks = []

    # 1. a = 1: x -> (x + b) / (c x + d), det = d - b c
    for b in range(q):
        det = t.add[d_grid, t.neg[t.mul[b, c_grid]]]
        ok = det != 0
        if squares_only:
            ok &= t.square[det]
        c, d = c_grid[ok], d_grid[ok]
        den = t.add[t.mul[c[:, None], x[None, :]], d[:, None]]
        num = np.broadcast_to(t.add[x, b], den.shape)
        img = np.where(den == 0, q, t.mul[num, t.inv[np.where(den == 0, 1, den)]])
        inf_img = np.where(c == 0, q, t.inv[np.where(c == 0, 1, c)])
        blocks.append(np.column_stack([img, inf_img]))

    # 2. a = 0, b = 1: x -> 1 / (c x + d), det = -c
    c_all, d_all = c_grid[c_grid != 0], d_grid[c_grid != 0]
    ok = np.ones(c_all.shape, dtype=bool)
    if squares_only:
        ok = t.square[t.neg[c_all]]
    c, d = c_all[ok], d_all[ok]
    den = t.add[t.mul[c[:, None], x[None, :]], d[:, None]]
    img = np.where(den == 0, q, t.inv[np.where(den == 0, 1, den)])
    blocks.append(np.column_stack([img, np.zeros(c.size, dtype=img.dtype)]))

    return np.vstack(blocks).astype(np.int16)


def _triple_keys(q: int, triples: np.ndarray) -> np.ndarray:
    t = triples.astype(np.int64)
    return (t[..., 0] * (q + 1) + t[..., 1]) * (q + 1) + t[..., 2]


@lru_cache(maxsize=8)
def build_group(field: FieldSpec, kind: str = PSL) -> GroupCtx:
    """
    Materializes PSL(2,q) or PGL(2,q) as permutations of PG(1,q).
    Raises GroupError when q is above the bound or the order formula fails.
    """
    kind = kind.upper()
    if kind not in (PSL, PGL):
        raise GroupError(f"unknown group kind {kind}")
    q = field.q
    if q > config.GROUP_Q_BOUND:
        raise GroupError(f"q={q} above materialization bound {config.GROUP_Q_BOUND}")

    # np.unique sorts rows lexicographically, which puts the identity first
    perms = np.unique(_moebius_rows(field, kind), axis=0)
    expected = expected_order(q, kind)
    if perms.shape[0] != expected:
        raise GroupError(f"{kind}(2,{q}): built {perms.shape[0]} elements, expected {expected}")
    if not np.array_equal(perms[0], np.arange(q + 1)):
        raise GroupError("identity is not the first element")

    keys = _triple_keys(q, perms[:, [0, 1, q]])
    index = np.full((q + 1) ** 3, -1, dtype=np.int32)
    index[keys] = np.arange(expected, dtype=np.int32)
    if np.unique(keys).size != expected:
        raise GroupError("3-point keys are not unique")

    ctx = GroupCtx(kind=kind, field=field, perms=perms, index=index,
                   inverses=np.empty(0, dtype=np.int64))

    # Inverse of g sends g(x) back to x, so its key is the preimages of 0, 1, inf.
    inverses = np.empty(expected, dtype=np.int64)
    for start in range(0, expected, config.CHUNK_ROWS):
        block = perms[start:start + config.CHUNK_ROWS]
        pre = np.argsort(block, axis=1)[:, [0, 1, q]]
        inverses[start:start + block.shape[0]] = lookup(ctx, pre)
    ctx.inverses = inverses

    logger.info(f"Built {kind}(2,{q}) of order {expected}")
    return ctx


# --- Element arithmetic ---

def lookup(ctx: GroupCtx, triples: np.ndarray) -> np.ndarray:
    """Images of (0, 1, inf) -> element ids; raises if some triple is not in ctx."""
    ids = ctx.index[_triple_keys(ctx.q, triples)]
    if (ids < 0).any():
        raise GroupError(f"permutation outside {ctx}")
    return ids.astype(np.int64)


def mul_ids(ctx: GroupCtx, a, b) -> np.ndarray:
    """Vectorized product a*b (apply a, then b) over broadcast id arrays."""
    a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
    first = ctx.perms[a[..., None], ctx.key_points]
    return lookup(ctx, ctx.perms[b[..., None], first])


def mul(ctx: GroupCtx, a: int, b: int) -> int:
    return int(mul_ids(ctx, a, b))


def inv(ctx: GroupCtx, a: int) -> int:
    return int(ctx.inverses[a])


def conj(ctx: GroupCtx, a: int, g: int) -> int:
    """g^-1 a g"""
    return mul(ctx, mul(ctx, inv(ctx, g), a), g)


def power(ctx: GroupCtx, a: int, n: int) -> int:
    n %= int(ctx.orders[a])
    result, base = 0, a
    while n:
        if n & 1:
            result = mul(ctx, result, base)
        base = mul(ctx, base, base)
        n >>= 1
    return result


def product(ctx: GroupCtx, ids: Sequence[int]) -> int:
    result = 0
    for i in ids:
        result = mul(ctx, result, i)
    return result


def elem_order(ctx: GroupCtx, a: int) -> int:
    return int(ctx.orders[a])


def _element_orders(ctx: GroupCtx) -> np.ndarray:
    orders = np.zeros(ctx.order, dtype=np.int64)
    orders[0] = 1
    remaining = np.arange(1, ctx.order)
    current = remaining.copy()
    k = 1
    while remaining.size:
        k += 1
        current = mul_ids(ctx, current, remaining)
        done = current == 0
        orders[remaining[done]] = k
        remaining, current = remaining[~done], current[~done]
    return orders


def order_profile(ctx: GroupCtx, ids) -> Dict[int, int]:
    """Element-order multiset of a set of ids, as {order: count}."""
    values, counts = np.unique(ctx.orders[np.asarray(ids, dtype=np.int64)], return_counts=True)
    return {int(v): int(c) for v, c in zip(values, counts)}


# --- Conjugation ---

def conjugate_many(ctx: GroupCtx, ids, conjugators: np.ndarray) -> np.ndarray:
    """
    Conjugates every element in ids by every point permutation in conjugators.
    The conjugators may lie outside ctx (PGL or semilinear maps normalizing it).

    Returns:
        (len(conjugators), len(ids)) array whose [c, e] entry is the id of
        C^-1 A_e C, i.e. the permutation x -> C(A_e(C^-1(x))).
    """
    ids = np.asarray(ids, dtype=np.int64).ravel()
    conjugators = np.atleast_2d(conjugators)
    keys = ctx.key_points
    a_rows = ctx.perms[ids]
    out = np.empty((conjugators.shape[0], ids.size), dtype=np.int64)
    step = max(1, (1 << 20) // max(1, ids.size))
    for start in range(0, conjugators.shape[0], step):
        c = conjugators[start:start + step].astype(np.int64)
        c_inv_keys = np.stack([(c == k).argmax(axis=1) for k in keys], axis=1)
        inner = a_rows[np.arange(ids.size)[None, :, None], c_inv_keys[:, None, :]]
        outer = c[np.arange(c.shape[0])[:, None, None], inner]
        out[start:start + c.shape[0]] = lookup(ctx, outer)
    return out


def centralizer(ctx: GroupCtx, a: int) -> SubgroupSet:
    images = ctx.perms[a].astype(np.int64)
    k = ctx.key_points
    lhs = images[ctx.perms[:, k]]       # (g*a) on the key points
    rhs = ctx.perms[:, images[k]]       # (a*g) on the key points
    return SubgroupSet(np.flatnonzero((lhs == rhs).all(axis=1)))


def involution_classes(ctx: GroupCtx) -> List[np.ndarray]:
    """Conjugacy classes of involutions, each a sorted id array; lowest rep first."""
    remaining = ctx.involutions
    classes = []
    while remaining.size:
        rep = remaining[0]
        cls = np.unique(conjugate_many(ctx, [rep], ctx.perms))
        classes.append(cls)
        remaining = np.setdiff1d(remaining, cls, assume_unique=True)
    return classes


def orbit_representatives(ctx: GroupCtx, points: np.ndarray, acting: np.ndarray) -> np.ndarray:
    """Representatives (smallest id) of the orbits of `acting` (ids) on `points` by conjugation."""
    points = np.asarray(points, dtype=np.int64)
    images = conjugate_many(ctx, points, ctx.perms[acting])
    assigned = np.zeros(ctx.order, dtype=bool)
    reps = []
    for col, p in enumerate(points):
        if assigned[p]:
            continue
        reps.append(p)
        assigned[images[:, col]] = True
    return np.array(reps, dtype=np.int64)


# --- Subgroups ---

def closure(ctx: GroupCtx, gens: Sequence[int], size_cap: Optional[int] = None) -> SubgroupSet:
    """
    Breadth-first closure of gens under right multiplication.
    With size_cap, stops as soon as more than size_cap elements are found and
    returns the partial set flagged over_cap.
    """
    gens = np.unique(np.asarray(list(gens), dtype=np.int64))
    gens = gens[gens != 0]
    if not gens.size:
        return SubgroupSet(np.zeros(1, dtype=np.int64))

    seen = np.zeros(ctx.order, dtype=bool)
    seen[0] = True
    found = [np.zeros(1, dtype=np.int64)]
    count = 1
    frontier = found[0]
    while frontier.size:
        prods = np.unique(mul_ids(ctx, frontier[:, None], gens[None, :]))
        prods = prods[~seen[prods]]
        if not prods.size:
            break
        seen[prods] = True
        found.append(prods)
        count += prods.size
        if size_cap is not None and count > size_cap:
            return SubgroupSet(np.sort(np.concatenate(found)), over_cap=True)
        frontier = prods
    return SubgroupSet(np.sort(np.concatenate(found)))


def max_proper_order(ctx: GroupCtx) -> int:
    """Largest order of a proper subgroup; a closure beyond it is the whole group."""
    if ctx.kind == PGL and ctx.q % 2 == 1:
        return ctx.order // 2
    return ctx.order // MIN_INDEX.get(ctx.q, ctx.q + 1)


def whole_group(ctx: GroupCtx) -> SubgroupSet:
    return SubgroupSet(np.arange(ctx.order, dtype=np.int64))


def generated_subgroup(ctx: GroupCtx, gens: Sequence[int]) -> SubgroupSet:
    """Exact closure, short-circuiting to the whole group past max_proper_order."""
    sub = closure(ctx, gens, size_cap=max_proper_order(ctx))
    return whole_group(ctx) if sub.over_cap else sub


def generators_of(ctx: GroupCtx, ids) -> List[int]:
    """A small generating set, picked greedily from the highest element orders down."""
    ids = np.asarray(ids, dtype=np.int64)
    ordered = ids[np.argsort(-ctx.orders[ids], kind="stable")]
    gens: List[int] = []
    current = SubgroupSet(np.zeros(1, dtype=np.int64))
    for i in ordered:
        if current.order == ids.size:
            break
        if not current.contains(i):
            gens.append(int(i))
            current = closure(ctx, gens)
    return gens


def normalizer(ctx: GroupCtx, subgroup) -> SubgroupSet:
    ids = subgroup.ids if isinstance(subgroup, SubgroupSet) else np.asarray(subgroup)
    gens = generators_of(ctx, ids)
    if not gens:
        return whole_group(ctx)
    images = conjugate_many(ctx, gens, ctx.perms)
    inside = np.isin(images, ids).all(axis=1)
    return SubgroupSet(np.flatnonzero(inside))


def conjugate_subgroups(ctx: GroupCtx, ids, conjugator_ids=None) -> np.ndarray:
    """All conjugates of one subgroup as sorted rows, one row per distinct conjugate."""
    acting = ctx.perms if conjugator_ids is None else ctx.perms[conjugator_ids]
    rows = np.sort(conjugate_many(ctx, ids, acting), axis=1)
    return np.unique(rows, axis=0)


# --- Field automorphisms ---

class Frobenius(NamedTuple):
    element_map: np.ndarray    # id -> id of phi^-1 g phi
    points: np.ndarray         # the point permutation x -> x^p, inf -> inf


def frobenius_points(field: FieldSpec) -> np.ndarray:
    t = tables(field)
    q = field.q
    images = np.arange(q)
    powered = np.ones(q, dtype=np.int64)
    for _ in range(field.p):
        powered = t.mul[powered, images]
    return np.append(powered, q).astype(np.int16)


def frobenius(ctx: GroupCtx) -> Frobenius:
    points = frobenius_points(ctx.field)
    element_map = conjugate_many(ctx, np.arange(ctx.order), points[None, :])[0]
    return Frobenius(element_map, points)


def semilinear_conjugators(ctx: GroupCtx) -> np.ndarray:
    """
    Point permutations of PGammaL(2,q): every PGL element followed by a
    Frobenius power.  Conjugation by these realizes Aut(PSL(2,q)).
    """
    full = ctx if ctx.kind == PGL or ctx.q % 2 == 0 else build_group(ctx.field, PGL)
    phi = frobenius_points(ctx.field).astype(np.int64)
    blocks = []
    phi_i = np.arange(ctx.q + 1)
    for _ in range(ctx.field.r):
        blocks.append(phi_i[full.perms.astype(np.int64)])
        phi_i = phi[phi_i]
    return np.vstack(blocks).astype(np.int16)
