# src/todd_coxeter.py
"""
HLT coset enumeration for presentations with involutory generators.

Every generator is its own inverse, so the coset table has one column per
generator and each definition fills two entries.  Coincidences are merged with
a union-find over coset ids (smaller id survives) and a queue of dead cosets
whose rows are folded into their representatives.
"""
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Sequence

import numpy as np

import src.config as config
from src.errors import EnumerationError, PresentationError, StructureError
from src.group import STRUCTURE_PROFILES
from src.presentation import Presentation, Word
from src.utils import setup_logger

logger = setup_logger("ToddCoxeter")

UNDEFINED = -1
CLOSED = "closed"
OVER_LIMIT = "over_limit"


class _CosetLimit(Exception):
    pass


@dataclass
class EnumResult:
    outcome: str
    definitions_made: int
    max_cosets: int
    index: Optional[int] = None
    live_at_stop: Optional[int] = None
    table: Optional[List[List[int]]] = field(default=None, repr=False)

    @property
    def closed(self) -> bool:
        return self.outcome == CLOSED

    def to_json(self) -> dict:
        out = {"outcome": self.outcome, "definitions_made": self.definitions_made}
        if self.closed:
            out["index"] = self.index
        else:
            out["live_at_stop"] = self.live_at_stop
            out["max_cosets"] = self.max_cosets
        return out


class CosetTable:
    def __init__(self, pres: Presentation, max_cosets: int):
        self.ngens = pres.ngens
        self.relators = [list(w) for w in pres.relators]
        self.max_cosets = max_cosets
        self.table: List[List[int]] = [[UNDEFINED] * self.ngens]
        self.p: List[int] = [0]          # union-find parent; p[c] == c iff c is live
        self.live = 1
        self.definitions = 0

    # --- union-find ---

    def rep(self, k: int) -> int:
        p = self.p
        root = k
        while p[root] != root:
            root = p[root]
        while p[k] != root:
            p[k], k = root, p[k]
        return root

    def merge(self, k: int, lam: int, queue: deque) -> None:
        phi, psi = self.rep(k), self.rep(lam)
        if phi != psi:
            mu, nu = min(phi, psi), max(phi, psi)
            self.p[nu] = mu
            self.live -= 1
            queue.append(nu)

    def coincidence(self, alpha: int, beta: int) -> None:
        table = self.table
        queue: deque = deque()
        self.merge(alpha, beta, queue)
        while queue:
            gamma = queue.popleft()
            for x in range(self.ngens):
                delta = table[gamma][x]
                if delta == UNDEFINED:
                    continue
                table[delta][x] = UNDEFINED
                mu, nu = self.rep(gamma), self.rep(delta)
                if table[mu][x] != UNDEFINED:
                    self.merge(nu, table[mu][x], queue)
                elif table[nu][x] != UNDEFINED:
                    self.merge(mu, table[nu][x], queue)
                else:
                    table[mu][x] = nu
                    table[nu][x] = mu

    # --- definitions and scans ---

    def define(self, alpha: int, x: int) -> None:
        if self.live >= self.max_cosets:
            raise _CosetLimit
        beta = len(self.table)
        self.table.append([UNDEFINED] * self.ngens)
        self.p.append(beta)
        self.table[alpha][x] = beta
        self.table[beta][x] = alpha
        self.live += 1
        self.definitions += 1
        if self.definitions % config.TC_LOG_EVERY == 0:
            logger.info(f"{self.definitions} definitions, {self.live} live cosets")

    def scan_and_fill(self, alpha: int, word: Sequence[int]) -> None:
        table = self.table
        r = len(word)
        f, b = alpha, alpha
        i, j = 0, r - 1
        while True:
            while i <= j and table[f][word[i]] != UNDEFINED:
                f = table[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and table[b][word[j]] != UNDEFINED:
                b = table[b][word[j]]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                table[f][word[i]] = b
                table[b][word[i]] = f
                return
            self.define(f, word[i])

    def run(self, subgroup_words: Sequence[Word]) -> None:
        for w in subgroup_words:
            self.scan_and_fill(0, w)
        alpha = 0
        while alpha < len(self.table):
            if self.p[alpha] == alpha:
                for rel in self.relators:
                    self.scan_and_fill(alpha, rel)
                    if self.p[alpha] < alpha:
                        break
                if self.p[alpha] == alpha:
                    for x in range(self.ngens):
                        if self.table[alpha][x] == UNDEFINED:
                            self.define(alpha, x)
            alpha += 1

    def compact(self) -> List[List[int]]:
        live = [c for c in range(len(self.table)) if self.p[c] == c]
        renumber = {c: i for i, c in enumerate(live)}
        return [[renumber[self.rep(self.table[c][x])] for x in range(self.ngens)] for c in live]


def enumerate_cosets(pres: Presentation, subgroup_gens: Sequence[Word] = (),
                     max_cosets: int = config.DEFAULT_MAX_COSETS) -> EnumResult:
    """
    Index of <subgroup_gens> in the group presented by pres.
    With no subgroup generators a closed result's index is the group order.
    Running out of room is reported as an OVER_LIMIT result.
    """
    if max_cosets < 1:
        raise PresentationError("max_cosets must be at least 1")
    if not pres.is_involutory():
        missing = sorted(set(range(pres.ngens)) - pres.involutory())
        raise PresentationError(f"generators {missing} have no r^2 relator")
    for w in list(pres.relators) + list(subgroup_gens):
        if not w or any(not 0 <= x < pres.ngens for x in w):
            raise PresentationError(f"malformed word {w}")

    ct = CosetTable(pres, max_cosets)
    try:
        ct.run(subgroup_gens)
    except _CosetLimit:
        logger.info(f"coset limit {max_cosets} reached after {ct.definitions} definitions")
        return EnumResult(OVER_LIMIT, ct.definitions, max_cosets, live_at_stop=ct.live)

    table = ct.compact()
    logger.debug(f"closed at index {len(table)} after {ct.definitions} definitions")
    return EnumResult(CLOSED, ct.definitions, max_cosets, index=len(table), table=table)


# --- Reading the closed table ---

def permutation_image(result: EnumResult) -> List[np.ndarray]:
    """Each generator's action on the cosets."""
    if not result.closed or result.table is None:
        raise EnumerationError("permutation image needs a closed coset table")
    table = np.array(result.table, dtype=np.int64)
    return [table[:, x].copy() for x in range(table.shape[1])]


def relators_hold(result: EnumResult, pres: Presentation) -> bool:
    """Every relator acts as the identity on every coset."""
    perms = permutation_image(result)
    points = np.arange(result.index)
    for w in pres.relators:
        image = points
        for x in w:
            image = perms[x][image]
        if not np.array_equal(image, points):
            return False
    return True


def perm_group_elements(perms: Sequence[np.ndarray], cap: Optional[int] = None) -> List[np.ndarray]:
    """Breadth-first closure of permutations (right action, a*b = b[a]); stops past cap."""
    degree = perms[0].size
    identity = np.arange(degree)
    seen = {identity.tobytes()}
    elements = [identity]
    frontier = [identity]
    while frontier:
        nxt = []
        for a in frontier:
            for g in perms:
                c = g[a]
                key = c.tobytes()
                if key not in seen:
                    seen.add(key)
                    elements.append(c)
                    nxt.append(c)
                    if cap is not None and len(elements) > cap:
                        return elements
        frontier = nxt
    return elements


def image_order(result: EnumResult, cap: Optional[int] = None) -> int:
    return len(perm_group_elements(permutation_image(result), cap))


class _TableGroup:
    """A small permutation group with its full multiplication table."""

    def __init__(self, elements: List[np.ndarray]):
        self.elements = np.array(elements)
        index: Dict[bytes, int] = {e.tobytes(): i for i, e in enumerate(elements)}
        n = len(elements)
        self.mult = np.empty((n, n), dtype=np.int64)
        for a in range(n):
            composed = self.elements[:, self.elements[a]]   # row b: b[a]
            self.mult[a] = [index[row.tobytes()] for row in composed]
        self.identity = 0
        self.inverse = np.argmax(self.mult == self.identity, axis=1)
        self.orders = self._orders()

    def _orders(self) -> np.ndarray:
        n = len(self.elements)
        orders = np.ones(n, dtype=np.int64)
        current = np.arange(n)
        remaining = current != self.identity
        k = 1
        while remaining.any():
            k += 1
            current = self.mult[current, np.arange(n)]
            newly = remaining & (current == self.identity)
            orders[newly] = k
            remaining &= ~newly
        return orders

    def profile(self) -> Dict[int, int]:
        values, counts = np.unique(self.orders, return_counts=True)
        return {int(v): int(c) for v, c in zip(values, counts)}

    def conjugacy_class(self, x: int) -> frozenset:
        g = np.arange(len(self.elements))
        return frozenset(int(c) for c in self.mult[self.mult[self.inverse[g], x], g])

    def is_subgroup(self, members: frozenset) -> bool:
        ids = np.array(sorted(members))
        return set(self.mult[np.ix_(ids, ids)].ravel().tolist()) <= members

    def commutes(self, a: int, b: int) -> bool:
        return self.mult[a, b] == self.mult[b, a]


def _has_normal_e16_with_nonabelian_s3(group: _TableGroup) -> bool:
    involutions = [i for i in range(len(group.elements)) if group.orders[i] == 2]
    classes = sorted({group.conjugacy_class(i) for i in involutions}, key=min)
    for k in range(1, len(classes) + 1):
        for chosen in combinations(classes, k):
            members = frozenset({group.identity}).union(*chosen)
            if len(members) != 16 or not group.is_subgroup(members):
                continue
            if not all(group.commutes(a, b) for a, b in combinations(members, 2)):
                continue
            g = np.arange(len(group.elements))
            comm = group.mult[group.mult[group.inverse[g][:, None], group.inverse[g][None, :]],
                              group.mult[g[:, None], g[None, :]]]
            if not np.isin(comm, list(members)).all():
                return True
    return False


def profile_labels(profile: Dict[int, int]) -> List[str]:
    """Every known label carrying this element-order profile; two or more is a collision."""
    labels = sorted(label for label, known in STRUCTURE_PROFILES.items() if known == profile)
    if len(labels) > 1:
        raise StructureError(f"labels {labels} share the element-order profile {profile}")
    return labels


def probe_structure(perms: Sequence[np.ndarray], label: str) -> Optional[bool]:
    """
    Brute-force structure check of the group generated by perms.
    Returns None when the label cannot be probed (unknown label or order above
    the probe limit); otherwise whether the group matches.
    """
    elements = perm_group_elements(perms, cap=config.STRUCTURE_PROBE_LIMIT)
    if len(elements) > config.STRUCTURE_PROBE_LIMIT:
        return None
    group = _TableGroup(elements)
    if label in STRUCTURE_PROFILES:
        return profile_labels(group.profile()) == [label]
    if label == "2^4:S3":
        return len(elements) == 96 and _has_normal_e16_with_nonabelian_s3(group)
    return None
