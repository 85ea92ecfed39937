# src/search.py
"""
Exhaustive search for string C-group generating tuples in PSL(2,q) and their
classification up to automorphisms (PGammaL conjugation) and duality.
"""
import time
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

import src.config as config
from src.errors import GroupError, TupleError
from src.group import (
    PSL, GroupCtx, closure, conjugate_many, generated_subgroup, involution_classes,
    max_proper_order, mul, orbit_representatives, product, semilinear_conjugators,
    centralizer,
)
from src.utils import apply_pool, setup_logger

logger = setup_logger("Search")

SchlafliType = Tuple[int, ...]


@dataclass(frozen=True, order=True)
class GenTuple:
    gens: Tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.gens)

    def reversed(self) -> "GenTuple":
        return GenTuple(tuple(reversed(self.gens)))

    def __iter__(self):
        return iter(self.gens)


@dataclass
class CGroupRecord:
    tuple: GenTuple
    type: SchlafliType
    generates_full_group: bool
    petrie: Tuple[int, ...]

    def sort_key(self):
        return (self.type, self.tuple.gens)


@dataclass
class IPRejection:
    tuple: GenTuple
    J: Tuple[int, ...]
    K: Tuple[int, ...]


@dataclass
class SearchReport:
    rank: int
    q: int
    records: List[CGroupRecord] = field(default_factory=list)
    candidates: int = 0
    degenerate: Counter = field(default_factory=Counter)   # subgroup order -> tuples
    ip_rejected: int = 0
    fixtures: List[IPRejection] = field(default_factory=list)
    elapsed: float = 0.0

    def merge(self, other: "SearchReport") -> "SearchReport":
        self.records.extend(other.records)
        self.candidates += other.candidates
        self.degenerate.update(other.degenerate)
        self.ip_rejected += other.ip_rejected
        room = config.MAX_IP_FIXTURES - len(self.fixtures)
        self.fixtures.extend(other.fixtures[:max(room, 0)])
        return self


# --- Tuple predicates ---

def as_gens(tup) -> Tuple[int, ...]:
    return tuple(int(g) for g in (tup.gens if isinstance(tup, GenTuple) else tup))


def string_condition(ctx: GroupCtx, tup) -> bool:
    """Distinct involutions; non-adjacent generators commute."""
    gens = as_gens(tup)
    if len(set(gens)) != len(gens):
        return False
    if any(ctx.orders[g] != 2 for g in gens):
        return False
    for j, k in combinations(range(len(gens)), 2):
        if k - j >= 2 and mul(ctx, gens[j], gens[k]) != mul(ctx, gens[k], gens[j]):
            return False
    return True


def schlafli_type(ctx: GroupCtx, tup) -> SchlafliType:
    gens = as_gens(tup)
    return tuple(int(ctx.orders[mul(ctx, gens[i], gens[i + 1])]) for i in range(len(gens) - 1))


def petrie_type(ctx: GroupCtx, tup) -> Tuple[int, ...]:
    """Orders of rho_i rho_{i+1} rho_{i+2}; for rank 4 the two Petrie orders."""
    gens = as_gens(tup)
    return tuple(int(ctx.orders[product(ctx, gens[i:i + 3])]) for i in range(len(gens) - 2))


def _bits(mask: int, n: int) -> Tuple[int, ...]:
    return tuple(i for i in range(n) if mask >> i & 1)


def subset_closures(ctx: GroupCtx, tup, capped: bool = True) -> Dict[int, np.ndarray]:
    """All 2^n subgroups <rho_j : j in J>, keyed by the bitmask of J."""
    gens = as_gens(tup)
    subs = {}
    for mask in range(1 << len(gens)):
        chosen = [gens[i] for i in _bits(mask, len(gens))]
        subs[mask] = (generated_subgroup(ctx, chosen) if capped else closure(ctx, chosen)).ids
    return subs


def first_ip_failure(ctx: GroupCtx, tup, capped: bool = True) -> Optional[Tuple[tuple, tuple]]:
    """The first subset pair (J, K) violating the intersection property, or None."""
    gens = as_gens(tup)
    n = len(gens)
    subs = subset_closures(ctx, gens, capped=capped)
    for J in range(1 << n):
        for K in range(J + 1, 1 << n):
            meet = np.intersect1d(subs[J], subs[K], assume_unique=True)
            if not np.array_equal(meet, subs[J & K]):
                return _bits(J, n), _bits(K, n)
    return None


def intersection_property(ctx: GroupCtx, tup) -> bool:
    """Literal check over every pair of generator subsets."""
    return first_ip_failure(ctx, tup) is None


def intersection_property_fast(ctx: GroupCtx, tup) -> bool:
    """
    Rank reduction: both maximal end parabolics are C-groups and they meet in
    <rho_1, ..., rho_{n-2}>.
    """
    gens = as_gens(tup)
    n = len(gens)
    if n <= 2:
        return len(set(gens)) == n
    if not (intersection_property_fast(ctx, gens[:-1]) and intersection_property_fast(ctx, gens[1:])):
        return False
    left = generated_subgroup(ctx, gens[:-1]).ids
    right = generated_subgroup(ctx, gens[1:]).ids
    middle = generated_subgroup(ctx, gens[1:-1]).ids
    return np.array_equal(np.intersect1d(left, right, assume_unique=True), middle)


def verify_tuple(ctx: GroupCtx, tup) -> bool:
    """Unpruned definition: string condition, literal IP and generation of the whole group."""
    gens = as_gens(tup)
    if not string_condition(ctx, gens):
        return False
    if closure(ctx, gens).order != ctx.order:
        return False
    return first_ip_failure(ctx, gens, capped=False) is None


def make_record(ctx: GroupCtx, tup) -> CGroupRecord:
    gens = as_gens(tup)
    return CGroupRecord(
        tuple=GenTuple(gens),
        type=schlafli_type(ctx, gens),
        generates_full_group=closure(ctx, gens, size_cap=max_proper_order(ctx)).over_cap,
        petrie=petrie_type(ctx, gens),
    )


# --- Candidate check ---

def _check_candidate(ctx: GroupCtx, gens: Tuple[int, ...], report: SearchReport, cap: int) -> None:
    report.candidates += 1
    n = len(gens)
    if not string_condition(ctx, gens):
        return

    # 1. End parabolics equal to G break the property at (all-but-one, {one})
    if closure(ctx, gens[:-1], size_cap=cap).over_cap:
        _reject(report, gens, tuple(range(n - 1)), (n - 1,))
        return
    if closure(ctx, gens[1:], size_cap=cap).over_cap:
        _reject(report, gens, tuple(range(1, n)), (0,))
        return

    # 2. Proper subgroups are tallied, never recorded
    whole = closure(ctx, gens, size_cap=cap)
    if not whole.over_cap:
        report.degenerate[whole.order] += 1
        return

    # 3. Literal intersection property
    failure = first_ip_failure(ctx, gens)
    if failure is not None:
        _reject(report, gens, *failure)
        return

    if not verify_tuple(ctx, gens):
        raise TupleError(f"tuple {gens} passed the pruned checks but fails verification")
    report.records.append(make_record(ctx, gens))


def _reject(report: SearchReport, gens, J, K) -> None:
    report.ip_rejected += 1
    if len(report.fixtures) < config.MAX_IP_FIXTURES:
        report.fixtures.append(IPRejection(GenTuple(tuple(gens)), tuple(J), tuple(K)))


# --- Canonicalized enumeration ---

class _CentralizerCache:
    """Involutions commuting with a given element, memoized per worker."""

    def __init__(self, ctx: GroupCtx):
        self.ctx = ctx
        self._cache: Dict[int, np.ndarray] = {}

    def __call__(self, a: int) -> np.ndarray:
        if a not in self._cache:
            cent = centralizer(self.ctx, a).ids
            self._cache[a] = np.intersect1d(cent, self.ctx.involutions, assume_unique=True)
        return self._cache[a]

    def common(self, ids: Sequence[int]) -> np.ndarray:
        result = self(ids[0])
        for a in ids[1:]:
            result = np.intersect1d(result, self(a), assume_unique=True)
        return result


def _class_representatives(ctx: GroupCtx) -> List[int]:
    classes = involution_classes(ctx)
    if ctx.kind == PSL and ctx.q % 2 == 1 and len(classes) != 1:
        raise GroupError(f"{ctx}: {len(classes)} involution classes, expected one")
    return [int(c[0]) for c in classes]


def search_units(ctx: GroupCtx, rank: int) -> List[Tuple[int, int]]:
    """
    The (first fixed generator, orbit representative) pairs that seed the search.
    rho_1 runs over involution class representatives; the second entry is
    rho_2 (rank 4, 5) or rho_0 (rank 3) modulo conjugation by C(rho_1).
    """
    if rank not in config.SEARCH_RANKS:
        raise TupleError(f"rank must be one of {config.SEARCH_RANKS}, got {rank}")
    units = []
    for r1 in _class_representatives(ctx):
        others = ctx.involutions[ctx.involutions != r1]
        acting = centralizer(ctx, r1).ids
        for rep in orbit_representatives(ctx, others, acting):
            units.append((r1, int(rep)))
    return units


def search_unit(ctx: GroupCtx, rank: int, unit: Tuple[int, int],
                cents: Optional[_CentralizerCache] = None) -> SearchReport:
    cents = cents or _CentralizerCache(ctx)
    report = SearchReport(rank=rank, q=ctx.q)
    cap = max_proper_order(ctx)
    r1, second = unit

    if rank == 3:
        r0 = second
        for r2 in cents(r0):
            if r2 not in (r0, r1):
                _check_candidate(ctx, (r0, r1, int(r2)), report, cap)
        return report

    r2 = second
    for r0 in cents(r2):
        r0 = int(r0)
        if r0 in (r1, r2):
            continue
        for r3 in cents.common([r0, r1]):
            r3 = int(r3)
            if r3 in (r0, r1, r2):
                continue
            if rank == 4:
                _check_candidate(ctx, (r0, r1, r2, r3), report, cap)
                continue
            for r4 in cents.common([r0, r1, r2]):
                r4 = int(r4)
                if r4 not in (r0, r1, r2, r3):
                    _check_candidate(ctx, (r0, r1, r2, r3, r4), report, cap)
    return report


_WORKER_STATE: dict = {}


def _init_worker(ctx: GroupCtx, rank: int) -> None:
    _WORKER_STATE["ctx"] = ctx
    _WORKER_STATE["rank"] = rank
    _WORKER_STATE["cents"] = _CentralizerCache(ctx)


def _run_unit(unit: Tuple[int, int]) -> SearchReport:
    return search_unit(_WORKER_STATE["ctx"], _WORKER_STATE["rank"], unit, _WORKER_STATE["cents"])


def run_search(ctx: GroupCtx, rank: int, workers: int = 1, verbose: bool = False) -> SearchReport:
    """
    Exhaustive search up to conjugacy.

    Returns:
        SearchReport with records sorted by (type, tuple ids) plus statistics.
    """
    start = time.perf_counter()
    units = search_units(ctx, rank)
    logger.info(f"{ctx} rank {rank}: {len(units)} seeds, {workers} worker(s)")
    parts = apply_pool(_run_unit, units, workers=workers, initializer=_init_worker,
                       initargs=(ctx, rank), desc=f"q={ctx.q} rank {rank}", verbose=verbose)

    report = SearchReport(rank=rank, q=ctx.q)
    for part in parts:
        report.merge(part)
    report.records.sort(key=CGroupRecord.sort_key)
    report.elapsed = time.perf_counter() - start
    logger.info(
        f"{ctx} rank {rank}: {report.candidates} candidates, "
        f"{sum(report.degenerate.values())} degenerate, {report.ip_rejected} IP rejections, "
        f"{len(report.records)} records in {report.elapsed:.1f}s"
    )
    if report.degenerate:
        logger.debug(f"degenerate subgroup orders: {dict(sorted(report.degenerate.items()))}")
    return report


def search(ctx: GroupCtx, rank: int, workers: int = 1) -> List[CGroupRecord]:
    return run_search(ctx, rank, workers=workers).records


def naive_search(ctx: GroupCtx, rank: int) -> SearchReport:
    """
    Every involution tuple satisfying the string condition, with no use of
    conjugacy.  Only meant for small q.
    """
    cents = _CentralizerCache(ctx)
    report = SearchReport(rank=rank, q=ctx.q)
    cap = max_proper_order(ctx)

    def extend(prefix: List[int]) -> None:
        if len(prefix) == rank:
            _check_candidate(ctx, tuple(prefix), report, cap)
            return
        far = prefix[:-1]
        allowed = cents.common(far) if far else ctx.involutions
        for x in allowed:
            x = int(x)
            if x not in prefix:
                extend(prefix + [x])

    extend([])
    report.records.sort(key=CGroupRecord.sort_key)
    return report


# --- Classification ---

@dataclass
class EquivalenceClass:
    representative: GenTuple
    type: SchlafliType
    members: List[CGroupRecord]
    orbit_size: int          # distinct tuples in the class
    inner_orbit_size: int    # tuples in one PSL-conjugacy class
    self_dual: bool

    @property
    def inner_classes(self) -> int:
        return self.orbit_size // self.inner_orbit_size


def automorphism_conjugators(ctx: GroupCtx) -> np.ndarray:
    return semilinear_conjugators(ctx)


def tuple_orbit(ctx: GroupCtx, tup, conjugators: np.ndarray, allow_duality: bool) -> np.ndarray:
    """Distinct images of the tuple (and of its reversal) as lexicographically sorted rows."""
    gens = np.array(as_gens(tup), dtype=np.int64)
    rows = conjugate_many(ctx, gens, conjugators)
    if allow_duality:
        rows = np.vstack([rows, rows[:, ::-1]])
    return np.unique(rows, axis=0)


def canonical_form(ctx: GroupCtx, tup, conjugators: np.ndarray, allow_duality: bool) -> GenTuple:
    return GenTuple(tuple(int(x) for x in tuple_orbit(ctx, tup, conjugators, allow_duality)[0]))


def dedupe(ctx: GroupCtx, records: Sequence[CGroupRecord], allow_duality: bool = True,
           conjugators: Optional[np.ndarray] = None) -> List[EquivalenceClass]:
    """
    Groups records into classes of the PGammaL action (optionally with reversal).
    Sorted by (type, representative ids).
    """
    if conjugators is None:
        conjugators = automorphism_conjugators(ctx)
    pending = list(records)
    classes = []
    while pending:
        seed = pending[0]
        orbit = tuple_orbit(ctx, seed.tuple, conjugators, allow_duality)
        members_set = {tuple(int(x) for x in row) for row in orbit}
        members = [rec for rec in pending if rec.tuple.gens in members_set]
        pending = [rec for rec in pending if rec.tuple.gens not in members_set]

        rep = GenTuple(tuple(int(x) for x in orbit[0]))
        inner = tuple_orbit(ctx, rep, ctx.perms, allow_duality=False).shape[0]
        self_dual = rep.reversed().gens in members_set if allow_duality else \
            is_self_dual_tuple(ctx, rep, conjugators)
        classes.append(EquivalenceClass(
            representative=rep,
            type=schlafli_type(ctx, rep),
            members=members,
            orbit_size=int(orbit.shape[0]),
            inner_orbit_size=int(inner),
            self_dual=self_dual,
        ))
    classes.sort(key=lambda c: (c.type, c.representative.gens))
    return classes


def is_self_dual_tuple(ctx: GroupCtx, tup, conjugators: Optional[np.ndarray] = None) -> bool:
    """True iff the reversed tuple is PGammaL-conjugate to the tuple itself."""
    if conjugators is None:
        conjugators = automorphism_conjugators(ctx)
    orbit = tuple_orbit(ctx, tup, conjugators, allow_duality=False)
    target = np.array(as_gens(tup)[::-1], dtype=np.int64)
    return bool((orbit == target).all(axis=1).any())


def class_counts(ctx: GroupCtx, records: Sequence[CGroupRecord],
                 conjugators: Optional[np.ndarray] = None) -> Dict[str, int]:
    """Number of classes under inner conjugacy, PGammaL, and PGammaL with duality."""
    if conjugators is None:
        conjugators = automorphism_conjugators(ctx)
    return {
        "inner": len(dedupe(ctx, records, allow_duality=False, conjugators=ctx.perms)),
        "pgaml": len(dedupe(ctx, records, allow_duality=False, conjugators=conjugators)),
        "pgaml_dual": len(dedupe(ctx, records, allow_duality=True, conjugators=conjugators)),
    }


def equivalent_bruteforce(ctx: GroupCtx, a, b, allow_duality: bool,
                          conjugators: Optional[np.ndarray] = None) -> bool:
    """Pairwise test: some conjugator maps a onto b entrywise (or onto b reversed)."""
    if conjugators is None:
        conjugators = automorphism_conjugators(ctx)
    gens_a = np.array(as_gens(a), dtype=np.int64)
    targets = [np.array(as_gens(b), dtype=np.int64)]
    if allow_duality:
        targets.append(targets[0][::-1])
    for c in conjugators:
        image = conjugate_many(ctx, gens_a, c[None, :])[0]
        if any(np.array_equal(image, t) for t in targets):
            return True
    return False
