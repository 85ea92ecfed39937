# src/census.py
"""
Brute-force subgroup census of PSL(2,q) against Dickson's classification,
plus the intersection checks on subfield subgroups L2(q') of L2(q).

Subgroups are found by scanning small generating pairs (or p-element
fixed points for the unipotent families), then expanded to whole conjugacy
classes; this gives both the subgroup count and the class count.
"""
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

import src.config as config
from src.errors import CensusError
from src.field import field_new
from src.group import (
    PGL, PSL, STRUCTURE_PROFILES, GroupCtx, build_group, centralizer, closure,
    conjugate_many, conjugate_subgroups, generators_of, mul_ids, normalizer,
    order_profile,
)
from src.utils import divisors, prime_power, setup_logger

logger = setup_logger("Census")

CSV_COLUMNS = ["q", "family", "parameter", "formula_count", "observed_count",
               "classes_formula", "classes_observed", "match"]


@dataclass
class CensusReport:
    q: int
    family: int
    parameter: str
    label: str
    formula_count: int
    observed_count: int
    classes_formula: Optional[int] = None
    classes_observed: Optional[int] = None
    note: str = ""

    @property
    def match(self) -> bool:
        if self.formula_count != self.observed_count:
            return False
        return self.classes_formula is None or self.classes_formula == self.classes_observed

    def to_row(self) -> dict:
        return {
            "q": self.q, "family": self.family, "parameter": self.parameter,
            "formula_count": self.formula_count, "observed_count": self.observed_count,
            "classes_formula": self.classes_formula, "classes_observed": self.classes_observed,
            "match": self.match,
        }


# --- Formula helpers ---

def _gcd2(q: int) -> int:
    return math.gcd(2, q - 1)


def _exact(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise CensusError(f"{what} is not integral: {value}")
    return int(value)


def two_one_one(p: int, r: int, k: int) -> int:
    """2, 1 or 1 according as p > 2 and r/k even, p > 2 and r/k odd, or p = 2."""
    if p == 2:
        return 1
    return 2 if (r // k) % 2 == 0 else 1


def _prod(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        out *= v
    return out


def family5_counts(p: int, r: int, s: int) -> Tuple[Fraction, Fraction]:
    """(number of sets, subgroups per set) for E_{p^s}, 1 <= s <= r-1."""
    k = math.gcd(r, s)
    e = two_one_one(p, r, k)
    q = p ** r
    sets = Fraction(e * (p ** k - 1) * _prod(q - p ** i for i in range(s)),
                    (q - 1) * _prod(p ** s - p ** i for i in range(s)))
    per_set = Fraction(q * q - 1, e * (p ** k - 1))
    return sets, per_set


def family6_printed_counts(p: int, r: int, s: int) -> Tuple[Fraction, Fraction]:
    """The displayed (sets, per set) expression for E_{p^s}:h, kept for comparison."""
    k = math.gcd(r, s)
    e = two_one_one(p, r, k)
    q = p ** r
    sets = Fraction(e * (p ** k - 1) * _prod(q - p ** i for i in range(1, s)),
                    p ** (r - s) * (q - 1) * _prod(p ** s - p ** i for i in range(s)))
    per_set = Fraction((q * q - 1) * p ** (r - s), e * (p ** k - 1))
    return sets, per_set


def family6_h_values(p: int, r: int, s: int) -> List[int]:
    """
    Orders h > 1 of the cyclic tops of E_{p^s}:h.  The torus part normalizing
    E_{p^s} is the group of squares of GF(p^k)^*, which has order
    (p^k - 1)/2 when r/k is odd and p^k - 1 when r/k is even (p odd).
    """
    k = math.gcd(r, s)
    halve = 2 if p > 2 and (r // k) % 2 == 1 else 1
    return [h for h in divisors((p ** k - 1) // halve) if h > 1]


def elementary_abelian_formula(p: int, r: int, s: int) -> Tuple[int, int]:
    """(subgroup count, class count) of E_{p^s}."""
    if s == r:
        return p ** r + 1, 1
    sets, per_set = family5_counts(p, r, s)
    return _exact(sets * per_set, f"E_{p}^{s} count"), _exact(sets, f"E_{p}^{s} sets")


def frobenius_formula(p: int, r: int, s: int) -> Tuple[int, int]:
    """(count, classes) of E_{p^s}:h for each admissible h: every E_{p^s} lies in p^(r-s) of them."""
    count, classes = elementary_abelian_formula(p, r, s)
    return count * p ** (r - s), classes


def cyclic_sign(q: int, d: int) -> int:
    """+1 if d divides (q+1)/g, -1 if d divides (q-1)/g."""
    g = _gcd2(q)
    if d > 1 and ((q - 1) // g) % d == 0:
        return -1
    if d > 1 and ((q + 1) // g) % d == 0:
        return +1
    raise CensusError(f"d={d} divides neither (q-1)/{g} nor (q+1)/{g} for q={q}")


def dihedral_classes_formula(q: int, d: int, reading: str = "same") -> Optional[int]:
    """
    Class count of D_{2d}: one if (q +- 1)/(d g) is odd, two if even.
    reading="same" takes the sign of the divisor case, "opposite" the other
    sign; None when the chosen quotient is not an integer.
    """
    sign = cyclic_sign(q, d)
    if reading == "opposite":
        sign = -sign
    num = q + sign
    den = d * _gcd2(q)
    if num % den:
        return None
    return 1 if (num // den) % 2 else 2


def subfield_formula(p: int, r: int, w: int, kind: str) -> Tuple[int, int]:
    q = p ** r
    base = p ** w * (p ** (2 * w) - 1)
    if kind == PSL:
        count = _exact(Fraction(q * (q * q - 1), base), "L2 subfield count")
        classes = 2 if p > 2 and (r // w) % 2 == 0 else 1
        return count, classes
    per_class = _exact(Fraction(q * (q * q - 1), 2 * base), "PGL2 subfield count")
    return 2 * per_class, 2


# --- Observation helpers ---

def _key(ids) -> bytes:
    return np.asarray(ids, dtype=np.int64).tobytes()


def expand_classes(ctx: GroupCtx, subgroups: Iterable[np.ndarray]) -> Tuple[List[np.ndarray], List[int]]:
    """
    All conjugates of the given subgroups.
    Returns:
        (every distinct subgroup as a sorted id array, size of each class)
    """
    seen: Dict[bytes, int] = {}
    found: List[np.ndarray] = []
    sizes: List[int] = []
    for sub in subgroups:
        sub = np.sort(np.asarray(sub, dtype=np.int64))
        if ctx.order % sub.size:
            raise CensusError(f"subgroup of order {sub.size} does not divide |G| = {ctx.order}")
        if _key(sub) in seen:
            continue
        rows = conjugate_subgroups(ctx, sub)
        for row in rows:
            seen[_key(row)] = len(sizes)
            found.append(row)
        sizes.append(int(rows.shape[0]))
    return found, sizes


def cyclic_subgroups(ctx: GroupCtx, d: int) -> np.ndarray:
    """Every <g> with g of order d, as unique sorted rows."""
    gens = np.flatnonzero(ctx.orders == d)
    if not gens.size:
        return np.empty((0, d), dtype=np.int64)
    cols = [np.zeros_like(gens)]
    current = gens
    for _ in range(d - 1):
        cols.append(current)
        current = mul_ids(ctx, current, gens)
    return np.unique(np.sort(np.stack(cols, axis=1), axis=1), axis=0)


def is_cyclic(ctx: GroupCtx, ids) -> bool:
    ids = np.asarray(ids)
    return bool((ctx.orders[ids] == ids.size).any())


def is_dihedral(ctx: GroupCtx, ids) -> bool:
    """Order 2k with k > 2, a cyclic subgroup of order k, and involutions everywhere else."""
    ids = np.asarray(ids, dtype=np.int64)
    n = ids.size
    if n % 2 or n // 2 <= 2:
        return False
    k = n // 2
    rotations = ids[ctx.orders[ids] == k]
    if not rotations.size:
        return False
    c = rotations[0]
    powers = [0]
    x = c
    for _ in range(k - 1):
        powers.append(int(x))
        x = int(mul_ids(ctx, x, c))
    outside = np.setdiff1d(ids, powers)
    return bool((ctx.orders[outside] == 2).all())


def describe(ctx: GroupCtx, ids) -> str:
    ids = np.asarray(ids, dtype=np.int64)
    n = ids.size
    if n == 1:
        return "1"
    if is_cyclic(ctx, ids):
        return f"Z{n}"
    if n == 4:
        return "2^2"
    if is_dihedral(ctx, ids):
        return f"D{n}"
    profile = order_profile(ctx, ids)
    for name, known in STRUCTURE_PROFILES.items():
        if profile == known:
            return name
    return f"order {n}"


def sylow_subgroups(ctx: GroupCtx) -> List[np.ndarray]:
    """The q+1 Sylow p-subgroups: p-elements grouped by their unique fixed point."""
    q, p = ctx.q, ctx.field.p
    p_elems = np.flatnonzero(ctx.orders == p)
    fixed = (ctx.perms[p_elems] == np.arange(q + 1)).argmax(axis=1)
    sylows = []
    for point in range(q + 1):
        members = np.concatenate([[0], p_elems[fixed == point]])
        if members.size != q:
            raise CensusError(f"Sylow at point {point} has {members.size} elements, expected {q}")
        sylows.append(np.sort(members))
    return sylows


def elementary_subgroups(ctx: GroupCtx, s: int) -> List[np.ndarray]:
    """Every E_{p^s}, found as GF(p)-subspaces of the Sylow p-subgroups."""
    found: Dict[bytes, np.ndarray] = {}
    for sylow in sylow_subgroups(ctx):
        level: Dict[bytes, Tuple[np.ndarray, List[int]]] = {}
        for x in sylow[1:]:
            sub = closure(ctx, [x]).ids
            level.setdefault(_key(sub), (sub, [int(x)]))
        for _ in range(s - 1):
            nxt: Dict[bytes, Tuple[np.ndarray, List[int]]] = {}
            for sub, gens in level.values():
                for x in np.setdiff1d(sylow, sub):
                    bigger = closure(ctx, gens + [int(x)]).ids
                    nxt.setdefault(_key(bigger), (bigger, gens + [int(x)]))
            level = nxt
        for sub, _ in level.values():
            found[_key(sub)] = sub
    return list(found.values())


def _report(ctx, family, parameter, label, formula, classes_formula, subgroups, note="") -> CensusReport:
    everything, sizes = expand_classes(ctx, subgroups)
    report = CensusReport(
        q=ctx.q, family=family, parameter=parameter, label=label,
        formula_count=formula, observed_count=len(everything),
        classes_formula=classes_formula, classes_observed=len(sizes), note=note,
    )
    if not report.match:
        logger.warning(f"q={ctx.q} family {family} ({parameter}): formula {formula}/"
                       f"{classes_formula} classes, observed {len(everything)}/{len(sizes)}")
    return report


def _check_psl(ctx: GroupCtx) -> None:
    if ctx.kind != PSL:
        raise CensusError("the census runs inside PSL(2,q)")


# --- Families ---

def count_cyclic(ctx: GroupCtx, d: int) -> CensusReport:
    """Family 2: q(q -+ 1)/2 cyclic subgroups of order d."""
    _check_psl(ctx)
    q = ctx.q
    sign = cyclic_sign(q, d)
    formula = q * (q - sign) // 2
    return _report(ctx, 2, f"d={d}", f"Z{d}", formula, 1, list(cyclic_subgroups(ctx, d)))


def dihedral_subgroups(ctx: GroupCtx, d: int) -> List[np.ndarray]:
    found: Dict[bytes, np.ndarray] = {}
    involutions = ctx.involutions
    inv_perms = ctx.perms[involutions]
    for row in cyclic_subgroups(ctx, d):
        c = row[ctx.orders[row] == d][0]
        flips = involutions[conjugate_many(ctx, [c], inv_perms)[:, 0] == ctx.inverses[c]]
        for t in flips:
            sub = np.sort(np.concatenate([row, mul_ids(ctx, row, t)]))
            found.setdefault(_key(sub), sub)
    return list(found.values())


def count_dihedral(ctx: GroupCtx, d: int) -> CensusReport:
    """Family 3: q(q^2-1)/(2 d g) dihedral groups D_{2d}, d > 2."""
    _check_psl(ctx)
    if d <= 2:
        raise CensusError("dihedral family needs d > 2")
    q = ctx.q
    cyclic_sign(q, d)
    formula = q * (q * q - 1) // (2 * d * _gcd2(q))
    classes = dihedral_classes_formula(q, d, "same")
    return _report(ctx, 3, f"d={d}", f"D{2 * d}", formula, classes, dihedral_subgroups(ctx, d))


def klein_subgroups(ctx: GroupCtx) -> List[np.ndarray]:
    rows = []
    involutions = ctx.involutions
    for a in involutions:
        partners = np.intersect1d(centralizer(ctx, a).ids, involutions, assume_unique=True)
        partners = partners[partners > a]
        if partners.size:
            products = mul_ids(ctx, a, partners)
            block = np.stack([np.zeros_like(partners), np.full_like(partners, a), partners, products], axis=1)
            rows.append(np.sort(block, axis=1))
    if not rows:
        return []
    return list(np.unique(np.vstack(rows), axis=0))


def count_klein(ctx: GroupCtx) -> CensusReport:
    """Family 4: q(q^2-1)/24 Klein four-groups, q odd."""
    _check_psl(ctx)
    q = ctx.q
    if q % 2 == 0:
        raise CensusError("for even q the four-groups are counted with E_{p^s}")
    formula = q * (q * q - 1) // 24
    classes = 1 if q % 8 in (3, 5) else 2
    return _report(ctx, 4, "-", "2^2", formula, classes, klein_subgroups(ctx))


def count_elem_abelian(ctx: GroupCtx, s: int) -> CensusReport:
    """Family 1 (s = r) and family 5 (1 <= s <= r-1): elementary abelian E_{p^s}."""
    _check_psl(ctx)
    p, r = ctx.field.p, ctx.field.r
    if not 1 <= s <= r:
        raise CensusError(f"s must lie in 1..{r}, got {s}")
    formula, classes = elementary_abelian_formula(p, r, s)
    family = 1 if s == r else 5
    return _report(ctx, family, f"s={s}", f"E_{p}^{s}", formula, classes, elementary_subgroups(ctx, s))


def frobenius_subgroups(ctx: GroupCtx, s: int, h: int) -> List[np.ndarray]:
    """E_{p^s}:h as V<g> for g of order h normalizing V."""
    p = ctx.field.p
    target = p ** s * h
    found: Dict[bytes, np.ndarray] = {}
    for v in elementary_subgroups(ctx, s):
        norm = normalizer(ctx, v).ids
        tops = norm[ctx.orders[norm] == h]
        v_gens = generators_of(ctx, v)
        for g in tops:
            sub = closure(ctx, v_gens + [int(g)], size_cap=target).ids
            if sub.size == target:
                found.setdefault(_key(sub), sub)
    return list(found.values())


def count_frobenius_groups(ctx: GroupCtx, s: int, h: int) -> CensusReport:
    """Family 6: E_{p^s}:h."""
    _check_psl(ctx)
    p, r = ctx.field.p, ctx.field.r
    if not 1 <= s <= r:
        raise CensusError(f"s must lie in 1..{r}, got {s}")
    if h not in family6_h_values(p, r, s):
        raise CensusError(f"h={h} is not admissible for q={ctx.q}, s={s}")
    formula, classes = frobenius_formula(p, r, s)
    return _report(ctx, 6, f"s={s},h={h}", f"E_{p}^{s}:{h}", formula, classes,
                   frobenius_subgroups(ctx, s, h))


def _polyhedral_subgroups(ctx: GroupCtx) -> Dict[str, List[np.ndarray]]:
    """A4, S4, A5 through the representative involution and each element of order 3."""
    t = int(ctx.involutions[0])
    buckets: Dict[str, Dict[bytes, np.ndarray]] = {"A4": {}, "S4": {}, "A5": {}}
    wanted = {"A4": 12, "S4": 24, "A5": 60}
    for x in np.flatnonzero(ctx.orders == 3):
        sub = closure(ctx, [t, int(x)], size_cap=config.SMALL_SUBGROUP_CAP)
        if sub.over_cap or sub.order not in wanted.values():
            continue
        profile = order_profile(ctx, sub.ids)
        for name, order in wanted.items():
            if sub.order == order and profile == STRUCTURE_PROFILES[name]:
                buckets[name].setdefault(sub.key(), sub.ids)
    return {name: list(b.values()) for name, b in buckets.items()}


def count_a4_s4_a5(ctx: GroupCtx) -> List[CensusReport]:
    """Families 7, 8 and 9 with their congruence gates."""
    _check_psl(ctx)
    q, p, r = ctx.q, ctx.field.p, ctx.field.r
    g = _gcd2(q)
    found = _polyhedral_subgroups(ctx)
    is_4m = p == 2 and r % 2 == 0

    # 7. A4 for q odd or q = 4^m
    if q % 2 == 1 or is_4m:
        a4 = q * (q * q - 1) // (12 * g)
        a4_classes = (1 if q % 8 in (3, 5) else 2) if q % 2 == 1 else None
    else:
        a4, a4_classes = 0, 0

    # 8. S4 for q = +-1 (8): two classes
    if q % 8 in (1, 7):
        s4, s4_classes = 2 * (q * (q * q - 1) // (24 * g)), 2
    else:
        s4, s4_classes = 0, 0

    # 9. A5
    note = ""
    if is_4m:
        a5, a5_classes = q * (q * q - 1) // (60 * g), 1
    elif q % 5 in (1, 4):
        a5, a5_classes = 2 * (q * (q * q - 1) // (60 * g)), 2
    elif q % 5 == 0:
        a5, a5_classes = subfield_formula(5, r, 1, PSL)
        note = "listed under family 10"
    else:
        a5, a5_classes = 0, 0

    return [
        _report(ctx, 7, "-", "A4", a4, a4_classes, found["A4"]),
        _report(ctx, 8, "-", "S4", s4, s4_classes, found["S4"]),
        _report(ctx, 9, "-", "A5", a5, a5_classes, found["A5"], note=note),
    ]


def subfield_subgroups(ctx: GroupCtx, w: int, kind: str = PSL) -> List[np.ndarray]:
    """
    Representatives of the L2(p^w) or PGL2(p^w) subgroups, from closures of the
    representative involution with every element, recognized by order and
    element-order profile.
    """
    p = ctx.field.p
    model = build_group(field_new(p, w), kind)
    target = model.order
    expected = order_profile(model, np.arange(model.order))
    if target == ctx.order:
        return [np.arange(ctx.order)] if order_profile(ctx, np.arange(ctx.order)) == expected else []

    t = int(ctx.involutions[0])
    candidates = np.flatnonzero(np.isin(ctx.orders, list(expected)))
    found: Dict[bytes, np.ndarray] = {}
    for x in candidates:
        sub = closure(ctx, [t, int(x)], size_cap=target + 1)
        if sub.over_cap or sub.order != target:
            continue
        if order_profile(ctx, sub.ids) == expected:
            found.setdefault(sub.key(), sub.ids)
    return list(found.values())


def count_subfield_groups(ctx: GroupCtx, w: int, kind: str = PSL) -> CensusReport:
    """Family 10 (L2(p^w), w | r) and family 11 (PGL2(p^w), 2w | r)."""
    _check_psl(ctx)
    p, r, q = ctx.field.p, ctx.field.r, ctx.q
    kind = kind.upper()
    if kind == PSL and (w < 1 or r % w):
        raise CensusError(f"w={w} does not divide r={r}")
    if kind == PGL:
        if q % 2 == 0:
            raise CensusError("for even q the PGL2 subgroups are counted in family 10")
        if w < 1 or r % (2 * w):
            raise CensusError(f"2w={2 * w} does not divide r={r}")
    formula, classes = subfield_formula(p, r, w, kind)
    family = 10 if kind == PSL else 11
    label = f"L2({p ** w})" if kind == PSL else f"PGL2({p ** w})"
    return _report(ctx, family, f"w={w}", label, formula, classes, subfield_subgroups(ctx, w, kind))


# --- Whole census ---

def census_parameters(ctx: GroupCtx) -> List[Tuple[int, Tuple]]:
    """Every applicable (family, parameters) at this q."""
    q, p, r = ctx.q, ctx.field.p, ctx.field.r
    g = _gcd2(q)
    divs = sorted({d for n in ((q - 1) // g, (q + 1) // g) for d in divisors(n) if d > 1})
    params: List[Tuple[int, Tuple]] = [(1, (r,))]
    params += [(2, (d,)) for d in divs]
    params += [(3, (d,)) for d in divs if d > 2]
    if q % 2 == 1:
        params.append((4, ()))
    params += [(5, (s,)) for s in range(1, r)]
    for s in range(1, r + 1):
        if s == r or math.gcd(r, s) == 1:
            params += [(6, (s, h)) for h in family6_h_values(p, r, s)]
    params.append((7, ()))
    params += [(10, (w,)) for w in divisors(r) if w < r]
    if q % 2 == 1:
        params += [(11, (w,)) for w in divisors(r) if r % (2 * w) == 0]
    return params


def run_census(ctx: GroupCtx, families: Optional[Sequence[int]] = None) -> List[CensusReport]:
    wanted = set(families) if families else set(range(1, 12))
    reports: List[CensusReport] = []
    for family, args in census_parameters(ctx):
        if family == 7:
            if wanted & {7, 8, 9}:
                reports += [rep for rep in count_a4_s4_a5(ctx) if rep.family in wanted]
            continue
        if family not in wanted:
            continue
        if family in (1, 5):
            reports.append(count_elem_abelian(ctx, *args))
        elif family == 2:
            reports.append(count_cyclic(ctx, *args))
        elif family == 3:
            reports.append(count_dihedral(ctx, *args))
        elif family == 4:
            reports.append(count_klein(ctx))
        elif family == 6:
            reports.append(count_frobenius_groups(ctx, *args))
        elif family == 10:
            reports.append(count_subfield_groups(ctx, *args, kind=PSL))
        elif family == 11:
            reports.append(count_subfield_groups(ctx, *args, kind=PGL))
    matched = sum(rep.match for rep in reports)
    logger.info(f"census q={ctx.q}: {matched}/{len(reports)} entries match")
    return reports


def census_frame(reports: Sequence[CensusReport]) -> pd.DataFrame:
    return pd.DataFrame([rep.to_row() for rep in reports], columns=CSV_COLUMNS)


# --- Subfield intersections ---

@dataclass
class Lemma3Report:
    q: int
    qprime: int
    subgroups: int
    pairs: int
    dihedral_intersections: int = 0
    profiles: Counter = field(default_factory=Counter)
    cyclic_checks: int = 0            # intersections meeting the normalizer condition
    cyclic_violations: int = 0

    @property
    def ok(self) -> bool:
        return self.dihedral_intersections == 0 and self.cyclic_violations == 0

    def summary(self) -> str:
        return (f"q={self.q}, q'={self.qprime}: {self.subgroups} subgroups, {self.pairs} pairs, "
                f"{self.dihedral_intersections} dihedral intersections of order > 4, "
                f"{self.cyclic_checks} cyclic-normalizer cases, {self.cyclic_violations} violations")


def verify_lemma3(ctx: GroupCtx, qprime: int) -> Lemma3Report:
    """
    Pairwise intersections of the L2(q') subgroups of L2(q), q = q'^m:
    none may be dihedral of order > 4, and an intersection holding a cyclic
    Z_k (k > 2, k | (q' +- 1)/2) whose normalizer in G is a maximal dihedral
    subgroup must be exactly Z_{(q' +- 1)/2}.
    """
    _check_psl(ctx)
    p, r = ctx.field.p, ctx.field.r
    pp = prime_power(qprime)
    if pp is None or pp[0] != p or r % pp[1] or pp[1] >= r:
        raise CensusError(f"q={ctx.q} is not a proper power of q'={qprime}")
    w = pp[1]
    subgroups, _ = expand_classes(ctx, subfield_subgroups(ctx, w, PSL))
    n = len(subgroups)
    report = Lemma3Report(q=ctx.q, qprime=qprime, subgroups=n, pairs=n * (n - 1) // 2)

    halves = [(qprime - 1) // 2, (qprime + 1) // 2]
    maximal_dihedral = {ctx.q - 1, ctx.q + 1}
    normalizer_cache: Dict[bytes, bool] = {}

    def dihedral_normalizer(c: int) -> bool:
        z = closure(ctx, [c]).ids
        zk = _key(z)
        if zk not in normalizer_cache:
            norm = normalizer(ctx, z).ids
            normalizer_cache[zk] = norm.size in maximal_dihedral and is_dihedral(ctx, norm)
        return normalizer_cache[zk]

    def cyclic_case(meet: np.ndarray) -> Optional[int]:
        """The (q' +- 1)/2 this intersection must be cyclic of, or None when no Z_k qualifies."""
        for half in halves:
            for k in divisors(half):
                if k <= 2:
                    continue
                if any(dihedral_normalizer(int(c)) for c in meet[ctx.orders[meet] == k]):
                    return half
        return None

    for i in range(n):
        for j in range(i + 1, n):
            meet = np.intersect1d(subgroups[i], subgroups[j], assume_unique=True)
            report.profiles[describe(ctx, meet)] += 1
            if is_dihedral(ctx, meet):
                report.dihedral_intersections += 1
                logger.error(f"dihedral intersection of order {meet.size} between subgroups {i} and {j}")
            half = cyclic_case(meet)
            if half is None:
                continue
            report.cyclic_checks += 1
            if not (meet.size == half and is_cyclic(ctx, meet)):
                report.cyclic_violations += 1
                logger.error(f"intersection {describe(ctx, meet)} of subgroups {i} and {j} "
                             f"meets a dihedral normalizer but is not Z{half}")
    logger.info(report.summary())
    return report
