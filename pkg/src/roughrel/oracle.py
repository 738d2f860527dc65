"""Relation generators and a sweep harness for the theorems the library relies on.

Every registered claim is a predicate over one or more relations.  A sweep
either enumerates every instance on a small universe (``exhaustive``) or
draws ``trials`` instances from a seeded generator (``random``).  Random
draws use numpy's PCG64 bit generator (``numpy.random.default_rng``), so a
given ``(claim, n, trials, seed)`` always yields the same instance stream.

Counterexamples are recorded as integer relation codes (cell ``(x, y)`` is
bit ``x*n + y``) plus, for subset-quantified claims, the subset mask.  Any
recorded failure can be re-checked with :func:`replay_failure`.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Callable, Iterable, Iterator

import numpy as np

from .closures import (
    closure,
    e_equals_ts_condition,
    equivalence_closure,
    reflexive_closure,
    symmetric_closure,
    transitive_closure,
    ts_closure,
)
from .definable import (
    Partition,
    component_masks,
    definable_count,
    definable_family_fast,
    equivalence_classes,
    equivalence_relations_equal_iff_same_family_check,
    naive_family_masks,
    partition_to_relation,
    same_definable_family,
)
from .relcore import (
    Relation,
    RelationError,
    Subset,
    Universe,
    compose,
    converse,
    identity_relation,
    is_equivalence,
    is_reflexive,
    is_serial,
    is_subrelation,
    is_symmetric,
    is_transitive,
    iter_bits,
    path_witness,
    power,
    predecessor,
    successor,
    union,
)
from .rough import (
    is_definable,
    is_inner_definable,
    is_outer_definable,
    lower,
    pred_set,
    succ_set,
    upper,
    v_set,
)

DENSITIES = (0.1, 0.3, 0.7)
# subset quantification is exhaustive up to this universe size, sampled above it
SUBSET_EXHAUSTIVE_MAX = 12
SUBSET_SAMPLES = 256
EXHAUSTIVE_LIMIT = 1 << 24


@lru_cache(maxsize=None)
def universe_of(n: int) -> Universe:
    return Universe.of_size(n)


# --- generators ---------------------------------------------------------------


def enumerate_relations(n: int) -> Iterator[Relation]:
    """All ``2**(n*n)`` relations on ``{1..n}`` in ascending code order."""
    if n < 1 or n * n > 32:
        raise RelationError(f"cannot enumerate relations for n={n}: need 1 <= n and n*n <= 32")
    u = universe_of(n)
    width = (1 << n) - 1
    shifts = [x * n for x in range(n)]
    for code in range(1 << (n * n)):
        yield Relation(u, tuple((code >> s) & width for s in shifts))


def enumerate_partitions(n: int) -> Iterator[Partition]:
    """Every set partition of ``{1..n}`` (restricted growth strings)."""
    u = universe_of(n)

    def grow(i, blocks):
        if i == n:
            yield Partition(u, tuple(blocks))
            return
        for j in range(len(blocks)):
            blocks[j] |= 1 << i
            yield from grow(i + 1, blocks)
            blocks[j] ^= 1 << i
        blocks.append(1 << i)
        yield from grow(i + 1, blocks)
        blocks.pop()

    yield from grow(0, [])


def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def _check_density(density: float) -> None:
    if not 0.0 <= density <= 1.0:
        raise RelationError(f"density must lie in [0, 1], got {density}")


def _random_rows(n: int, density: float, rng: np.random.Generator) -> list[int]:
    cells = rng.random((n, n)) < density
    weights = 1 << np.arange(n, dtype=np.int64)
    return [int(v) for v in (cells * weights).sum(axis=1)]


def random_relation(n: int, density: float = 0.3, seed=None) -> Relation:
    _check_density(density)
    rng = _rng(seed)
    return Relation(universe_of(n), tuple(_random_rows(n, density, rng)))


def random_serial_relation(n: int, density: float = 0.3, seed=None) -> Relation:
    """Like :func:`random_relation`, then each empty row gets one uniform successor."""
    _check_density(density)
    rng = _rng(seed)
    rows = _random_rows(n, density, rng)
    for x in range(n):
        if not rows[x]:
            rows[x] = 1 << int(rng.integers(n))
    return Relation(universe_of(n), tuple(rows))


@lru_cache(maxsize=None)
def _completions(m: int, k: int) -> int:
    """Ways to place ``m`` further elements when ``k`` blocks already exist."""
    if m == 0:
        return 1
    return k * _completions(m - 1, k) + _completions(m - 1, k + 1)


def random_partition(n: int, seed=None) -> Partition:
    """A set partition of ``{1..n}`` drawn uniformly at random.

    Elements are placed one at a time; each existing block and the option of
    opening a new block are weighted by how many full partitions they lead to.
    """
    rng = _rng(seed)
    blocks: list[int] = []
    for i in range(n):
        rest = n - i - 1
        k = len(blocks)
        join = _completions(rest, k)
        total = k * join + _completions(rest, k + 1)
        pick = rng.random() * total
        j = int(pick // join) if join else k
        if j < k:
            blocks[j] |= 1 << i
        else:
            blocks.append(1 << i)
    return Partition(universe_of(n), tuple(blocks))


def random_equivalence_relation(n: int, seed=None) -> Relation:
    return partition_to_relation(random_partition(n, seed))


# --- closure oracles independent of the Warshall implementation ----------------


def power_union(r: Relation, upto: int | None = None) -> Relation:
    """``R | R^2 | ... | R^upto`` from repeated composition (``upto`` defaults to n)."""
    upto = r.size if upto is None else upto
    acc = Relation.empty(r.universe)
    p = identity_relation(r.universe)
    for _ in range(upto):
        p = compose(p, r)
        acc = union(acc, p)
    return acc


def _oracle_closure(r: Relation, kind: str) -> Relation:
    if kind == "r":
        return union(r, identity_relation(r.universe))
    if kind == "s":
        return union(r, converse(r))
    if kind == "t":
        return power_union(r)
    if kind == "e":
        return union(identity_relation(r.universe), power_union(union(r, converse(r))))
    raise ValueError(kind)


_PROPERTIES = {
    "r": is_reflexive,
    "s": is_symmetric,
    "t": is_transitive,
    "e": is_equivalence,
}


@lru_cache(maxsize=None)
def _property_codes(n: int, kind: str) -> np.ndarray:
    """Codes of every relation on n elements having the property (n <= 4)."""
    pred = _PROPERTIES[kind]
    if kind == "e":
        codes = [partition_to_relation(p).code for p in enumerate_partitions(n)]
    else:
        codes = [r.code for r in enumerate_relations(n) if pred(r)]
    return np.array(codes, dtype=np.int64)


def _minimality_failure(r: Relation, kind: str, c: Relation) -> str | None:
    """Look for a relation with the property that contains ``r`` but not ``c``."""
    n = r.size
    if n <= 4:
        cands = _property_codes(n, kind)
        rc, cc = r.code, c.code
        bad = ((cands & rc) == rc) & ((cands & cc) != cc)
        if bad.any():
            return f"{kind}-closure not below superset code {int(cands[bad][0])}"
        return None
    rng = _rng([n, r.code, ord(kind)])
    pred = _PROPERTIES[kind]
    for _ in range(8):
        noise = Relation(r.universe, tuple(_random_rows(n, 0.15, rng)))
        cand = _oracle_closure(union(r, noise), kind)
        if not pred(cand):
            return f"oracle {kind}-closure candidate lacks the property"
        if not is_subrelation(c, cand):
            return f"{kind}-closure not below superset code {cand.code}"
    return None


# --- claim registry -------------------------------------------------------------


@dataclass(frozen=True)
class Claim:
    claim_id: str
    statement: str
    kind: str
    check: Callable[..., dict | None]


CLAIMS: dict[str, Claim] = {}


def register(claim_id: str, statement: str, kind: str = "relation"):
    if kind not in _KINDS:
        raise ValueError(f"unknown instance kind {kind!r}")

    def deco(fn):
        CLAIMS[claim_id] = Claim(claim_id, statement, kind, fn)
        return fn

    return deco


def _fail(detail: str, subset: int | None = None) -> dict:
    out = {"detail": detail}
    if subset is not None:
        out["subset"] = subset
    return out


def _subsets(r: Relation, *others: Relation) -> Iterator[Subset]:
    u = r.universe
    n = u.size
    if n <= SUBSET_EXHAUSTIVE_MAX:
        for m in range(1 << n):
            yield Subset(u, m)
        return
    rng = _rng([n, r.code, *(o.code for o in others)])
    weights = [1 << i for i in range(n)]
    yield Subset(u, 0)
    yield Subset(u, u.full_mask)
    for bits in rng.integers(0, 2, size=(SUBSET_SAMPLES, n)):
        yield Subset(u, sum(w for w, b in zip(weights, bits) if b))


# instance kinds: how to enumerate and how to sample them


def _mixed(n, rng):
    density = float(rng.choice(DENSITIES))
    if rng.random() < 0.5:
        return random_serial_relation(n, density, rng)
    return random_relation(n, density, rng)


def _all_relations(n):
    for r in enumerate_relations(n):
        yield (r,)


def _all_pairs(n):
    rels = list(enumerate_relations(n))
    for a in rels:
        for b in rels:
            yield (a, b)


def _all_triples(n):
    rels = list(enumerate_relations(n))
    for a, b, c in product(rels, repeat=3):
        yield (a, b, c)


def _all_subrelation_pairs(n):
    u = universe_of(n)
    for big in range(1 << (n * n)):
        sub = big
        while True:
            yield (Relation.from_code(u, sub), Relation.from_code(u, big))
            if sub == 0:
                break
            sub = (sub - 1) & big


def _all_equivalences(n):
    for p in enumerate_partitions(n):
        yield (partition_to_relation(p),)


def _all_equivalence_pairs(n):
    rels = [partition_to_relation(p) for p in enumerate_partitions(n)]
    for a in rels:
        for b in rels:
            yield (a, b)


@lru_cache(maxsize=None)
def _bell(n: int) -> int:
    return _completions(n, 0)


def _sample_family_pair(n, rng):
    r1 = _mixed(n, rng)
    strategy = int(rng.integers(5))
    if strategy == 0:
        r2 = _mixed(n, rng)
    elif strategy == 1:
        r2 = converse(r1)
    elif strategy == 2:
        extra = Relation(r1.universe, tuple(_random_rows(n, float(rng.random()), rng)))
        r2 = union(r1, extra & ts_closure(r1))
    elif strategy == 3:
        r2 = ts_closure(r1)
    else:
        r1 = random_relation(n, 0.1, rng)
        r2 = random_relation(n, 0.1, rng)
    if rng.random() < 0.5:
        r1, r2 = r2, r1
    return (r1, r2)


def _perturb_partition(p: Partition, rng) -> Partition:
    blocks = list(p.masks)
    n = p.universe.size
    if len(blocks) > 1 and rng.random() < 0.5:
        i, j = sorted(rng.choice(len(blocks), size=2, replace=False).tolist())
        blocks[i] |= blocks.pop(j)
    else:
        x = int(rng.integers(n))
        src = next(i for i, b in enumerate(blocks) if b >> x & 1)
        blocks[src] &= ~(1 << x)
        dest = int(rng.integers(len(blocks) + 1))
        if dest == len(blocks):
            blocks.append(1 << x)
        else:
            blocks[dest] |= 1 << x
        blocks = [b for b in blocks if b]
    return Partition.of(p.universe, blocks)


def _sample_equivalence_pair(n, rng):
    p1 = random_partition(n, rng)
    strategy = int(rng.integers(3))
    if strategy == 0:
        p2 = p1
    elif strategy == 1:
        p2 = _perturb_partition(p1, rng)
    else:
        p2 = random_partition(n, rng)
    return (partition_to_relation(p1), partition_to_relation(p2))


def _sample_subrelation_pair(n, rng):
    r1 = _mixed(n, rng)
    extra = Relation(r1.universe, tuple(_random_rows(n, float(rng.choice(DENSITIES)), rng)))
    return (r1, union(r1, extra))


# kind -> (exhaustive enumerator, instance count, random sampler)
_KINDS: dict[str, tuple[Callable, Callable[[int], int], Callable]] = {
    "relation": (_all_relations, lambda n: 1 << (n * n), lambda n, rng: (_mixed(n, rng),)),
    "serial": (
        _all_relations,
        lambda n: 1 << (n * n),
        lambda n, rng: (random_serial_relation(n, float(rng.choice(DENSITIES)), rng),),
    ),
    "symmetric": (
        _all_relations,
        lambda n: 1 << (n * n),
        lambda n, rng: (symmetric_closure(_mixed(n, rng)),),
    ),
    "serial_symmetric": (
        _all_relations,
        lambda n: 1 << (n * n),
        lambda n, rng: (
            symmetric_closure(random_serial_relation(n, float(rng.choice(DENSITIES)), rng)),
        ),
    ),
    "pair": (_all_pairs, lambda n: 1 << (2 * n * n), lambda n, rng: (_mixed(n, rng), _mixed(n, rng))),
    "family_pair": (_all_pairs, lambda n: 1 << (2 * n * n), _sample_family_pair),
    "subrelation_pair": (_all_subrelation_pairs, lambda n: 3 ** (n * n), _sample_subrelation_pair),
    "triple": (
        _all_triples,
        lambda n: 1 << (3 * n * n),
        lambda n, rng: (_mixed(n, rng), _mixed(n, rng), _mixed(n, rng)),
    ),
    "equivalence": (
        _all_equivalences,
        _bell,
        lambda n, rng: (random_equivalence_relation(n, rng),),
    ),
    "equivalence_pair": (_all_equivalence_pairs, lambda n: _bell(n) ** 2, _sample_equivalence_pair),
}


# --- relational claims ------------------------------------------------------------


@register("prop-27A1", "composition is associative", "triple")
def _prop_27a1(a, b, c):
    if compose(compose(a, b), c) != compose(a, compose(b, c)):
        return _fail("(a o b) o c != a o (b o c)")


@register("thm-29", "r(R)=R|I, s(R)=R|R^-1, t(R)=R|R^2|...|R^n")
def _thm_29(r):
    u = r.universe
    if reflexive_closure(r) != union(r, identity_relation(u)):
        return _fail("reflexive closure formula")
    if symmetric_closure(r) != union(r, converse(r)):
        return _fail("symmetric closure formula")
    pu = power_union(r)
    if transitive_closure(r) != pu:
        return _fail("transitive closure differs from power union")
    if not is_subrelation(power(r, r.size + 1), pu):
        return _fail("power union not stationary at exponent n")


@register("closure-minimality", "r/s/t/e closures are extensive, idempotent, have the property, and are least")
def _closure_minimality(r):
    for kind, fn in (("r", reflexive_closure), ("s", symmetric_closure),
                     ("t", transitive_closure), ("e", equivalence_closure)):
        c = fn(r)
        if not is_subrelation(r, c):
            return _fail(f"{kind}-closure does not contain R")
        if not _PROPERTIES[kind](c):
            return _fail(f"{kind}-closure lacks the property")
        if fn(c) != c:
            return _fail(f"{kind}-closure not idempotent")
        msg = _minimality_failure(r, kind, c)
        if msg:
            return _fail(msg)


@register("prop-8B7", "rts = trs = tsr and rst = str = srt")
def _prop_8b7(r):
    if not closure(r, "rts") == closure(r, "trs") == closure(r, "tsr"):
        return _fail("rts/trs/tsr differ")
    if not closure(r, "rst") == closure(r, "str") == closure(r, "srt"):
        return _fail("rst/str/srt differ")


@register("prop-8B8", "rts(R) is the least equivalence relation containing R")
def _prop_8b8(r):
    e = closure(r, "rts")
    if not is_equivalence(e):
        return _fail("rts(R) is not an equivalence relation")
    if not is_subrelation(r, e):
        return _fail("R not contained in rts(R)")
    msg = _minimality_failure(r, "e", e)
    if msg:
        return _fail(msg)


@register("cor-39A3", "e(R) = I | (R|R^-1) | (R|R^-1)^2 | ...")
def _cor_39a3(r):
    s = union(r, converse(r))
    if equivalence_closure(r) != union(identity_relation(r.universe), power_union(s)):
        return _fail("e(R) differs from the power-union formula")


@register("prop-28A", "(x,y) in R^k iff a length-k path x..y exists")
def _prop_28a(r):
    n = r.size
    rows = r.rows
    for k in range(1, n + 2):
        pk = power(r, k)
        for x in range(n):
            for y in range(n):
                w = path_witness(r, k, x, y)
                if (w is not None) != ((x, y) in pk):
                    return _fail(f"witness/power disagree at k={k}, ({x},{y})")
                if w is not None:
                    chain = [x, *w, y]
                    if len(w) != k - 1 or any(not rows[a] >> b & 1 for a, b in zip(chain, chain[1:])):
                        return _fail(f"invalid witness at k={k}, ({x},{y})")


@register("lemma-28D", "symmetric R: (x,x) in R^2 iff S_R(x) nonempty", "symmetric")
def _lemma_28d(r):
    if not is_symmetric(r):
        return None
    sq = power(r, 2)
    for x in range(r.size):
        if ((x, x) in sq) != bool(r.rows[x]):
            return _fail(f"diagonal of R^2 disagrees with successor at {x}")


@register(
    "lemma-28E",
    "symmetric R: (x,x) in R^k implies (x,x) in R^2; equality for even k; some k>=1 iff k=2",
    "symmetric",
)
def _lemma_28e(r):
    if not is_symmetric(r):
        return None
    powers = {k: power(r, k) for k in range(1, 7)}
    for x in range(r.size):
        in2 = (x, x) in powers[2]
        some = False
        for k, pk in powers.items():
            ink = (x, x) in pk
            some |= ink
            if ink and not in2:
                return _fail(f"(x,x) in R^{k} but not R^2 at {x}")
            if k % 2 == 0 and ink != in2:
                return _fail(f"even power {k} disagrees with R^2 at {x}")
        if some != in2:
            return _fail(f"existential form fails at {x}")


@register("lemma-28F", "S_{R1|R2}(x) = S_R1(x) | S_R2(x)", "pair")
def _lemma_28f(a, b):
    ab = union(a, b)
    for x in range(a.size):
        if successor(ab, x).mask != successor(a, x).mask | successor(b, x).mask:
            return _fail(f"successor of union differs at {x}")


@register("prop-39A1", "R1 <= R2 implies S_R1(x) <= S_R2(x) and P_R1(x) <= P_R2(x)", "subrelation_pair")
def _prop_39a1(a, b):
    if not is_subrelation(a, b):
        return None
    for x in range(a.size):
        if not successor(a, x) <= successor(b, x):
            return _fail(f"successor not monotone at {x}")
        if not predecessor(a, x) <= predecessor(b, x):
            return _fail(f"predecessor not monotone at {x}")


@register("thm-39A7", "e(R) = ts(R) iff every x has a successor or predecessor")
def _thm_39a7(r):
    if e_equals_ts_condition(r) != (equivalence_closure(r) == ts_closure(r)):
        return _fail("condition disagrees with e(R) == ts(R)")


@register("cor-39A5", "serial R: e(R) = ts(R) = (R|R^-1) | (R|R^-1)^2 | ...", "serial")
def _cor_39a5(r):
    if not is_serial(r):
        return None
    ts = ts_closure(r)
    if equivalence_closure(r) != ts:
        return _fail("e(R) != ts(R) for serial R")
    if ts != power_union(union(r, converse(r))):
        return _fail("ts(R) differs from the power-union formula")


@register("thm-A7", "equivalence relations and partitions round-trip")
def _thm_a7(r):
    candidates = [equivalence_closure(r)]
    if is_equivalence(r):
        candidates.append(r)
    for e in candidates:
        p = equivalence_classes(e)
        for block in p.masks:
            for x in iter_bits(block):
                if e.rows[x] != block:
                    return _fail("block differs from the class of its member")
        if partition_to_relation(p) != e:
            return _fail("partition -> relation does not restore e")
        if equivalence_classes(partition_to_relation(p)) != p:
            return _fail("relation -> partition does not restore the partition")


# --- approximation and definability claims -------------------------------------------


@register("def-8", "S_R(X), P_R(X), V_R(X) agree with unions of neighbourhoods")
def _def_8(r):
    inv = converse(r)
    for xs in _subsets(r):
        s = Subset(r.universe, 0)
        p = Subset(r.universe, 0)
        for x in xs:
            s = s | successor(r, x)
            p = p | predecessor(r, x)
        if succ_set(r, xs) != s or pred_set(r, xs) != p or v_set(r, xs) != s | p:
            return _fail("neighbourhood unions differ", xs.mask)
        if pred_set(r, xs) != succ_set(inv, xs):
            return _fail("P_R(X) != S_{R^-1}(X)", xs.mask)


@register("prop-4", "upper(X) = -lower(-X) and lower(X) = -upper(-X)")
def _prop_4(r):
    for xs in _subsets(r):
        if upper(r, xs) != ~lower(r, ~xs) or lower(r, xs) != ~upper(r, ~xs):
            return _fail("duality fails", xs.mask)


@register("prop-3A", "serial R: lower(X) <= upper(X)", "serial")
def _prop_3a(r):
    if not is_serial(r):
        return None
    for xs in _subsets(r):
        if not lower(r, xs) <= upper(r, xs):
            return _fail("lower not below upper", xs.mask)


@register("prop-8A6", "X<=lower iff S(X)<=X; upper<=X iff P(X)<=X; upper<=X<=lower iff V(X)<=X")
def _prop_8a6(r):
    for xs in _subsets(r):
        lo, up = lower(r, xs), upper(r, xs)
        if (xs <= lo) != (succ_set(r, xs) <= xs):
            return _fail("first biconditional", xs.mask)
        if (up <= xs) != (pred_set(r, xs) <= xs):
            return _fail("second biconditional", xs.mask)
        if (up <= xs and xs <= lo) != (v_set(r, xs) <= xs):
            return _fail("third biconditional", xs.mask)


@register("prop-8A3", "serial R: X definable iff V(X) <= X", "serial")
def _prop_8a3(r):
    if not is_serial(r):
        return None
    for xs in _subsets(r):
        if is_definable(r, xs) != (v_set(r, xs) <= xs):
            return _fail("definable vs V(X) <= X", xs.mask)


@register("prop-17A", "serial R: V(X) = X iff V(X) <= X", "serial")
def _prop_17a(r):
    if not is_serial(r):
        return None
    for xs in _subsets(r):
        v = v_set(r, xs)
        if (v == xs) != (v <= xs):
            return _fail("V(X) = X vs V(X) <= X", xs.mask)


@register("prop-8A4", "serial R: X definable iff V(X) = X", "serial")
def _prop_8a4(r):
    if not is_serial(r):
        return None
    for xs in _subsets(r):
        if is_definable(r, xs) != (v_set(r, xs) == xs):
            return _fail("definable vs V(X) = X", xs.mask)


@register("prop-32B", "X inner definable iff -X outer definable")
def _prop_32b(r):
    for xs in _subsets(r):
        if is_inner_definable(r, xs) != is_outer_definable(r, ~xs):
            return _fail("inner/outer complement", xs.mask)


@register("prop-32B11", "X definable iff -X definable")
def _prop_32b11(r):
    for xs in _subsets(r):
        if is_definable(r, xs) != is_definable(r, ~xs):
            return _fail("definable complement", xs.mask)


@register("lemma-8B5", "symmetric R: S_R(X) = P_R(X)", "symmetric")
def _lemma_8b5(r):
    if not is_symmetric(r):
        return None
    for xs in _subsets(r):
        if succ_set(r, xs) != pred_set(r, xs):
            return _fail("S(X) != P(X)", xs.mask)


@register("prop-8B4", "serial R with S(X)<=X => P(X)<=X for all X has I = O", "serial")
def _prop_8b4(r):
    if not is_serial(r) or r.size > SUBSET_EXHAUSTIVE_MAX:
        return None
    for xs in _subsets(r):
        if succ_set(r, xs) <= xs and not pred_set(r, xs) <= xs:
            return None
    inner, outer, _ = naive_family_masks(r)
    if inner != outer:
        return _fail("hypothesis holds but I != O")


@register("prop-8B6", "serial symmetric R: I = O", "serial_symmetric")
def _prop_8b6(r):
    if not (is_serial(r) and is_symmetric(r)):
        return None
    inner, outer, _ = naive_family_masks(r)
    if inner != outer:
        return _fail("I != O")


@register("thm-32A", "D(U,R) nonempty iff R serial")
def _thm_32a(r):
    _, _, d = naive_family_masks(r)
    if bool(d) != is_serial(r):
        return _fail("nonempty family vs seriality")


@register("prop-44", "I(U,R) = O(U,R) implies R serial")
def _prop_44(r):
    inner, outer, _ = naive_family_masks(r)
    if inner == outer and not is_serial(r):
        return _fail("I = O for a non-serial relation")


@register("lemma-39A9", "serial R, X definable: X closed under one R|R^-1 step", "serial")
def _lemma_39a9(r):
    if not is_serial(r):
        return None
    for xs in _subsets(r):
        if not is_definable(r, xs):
            continue
        for x in xs:
            if (successor(r, x) | predecessor(r, x)).mask & ~xs.mask:
                return _fail(f"step from {x} leaves X", xs.mask)


@register("lemma-39A", "serial R, X definable: X closed under R|R^-1 paths", "serial")
def _lemma_39a(r):
    if not is_serial(r):
        return None
    s = symmetric_closure(r)
    for xs in _subsets(r):
        if not is_definable(r, xs):
            continue
        for x in xs:
            seen = frontier = 1 << x
            while frontier:
                reach = 0
                for z in iter_bits(frontier):
                    reach |= s.rows[z]
                frontier = reach & ~seen
                seen |= frontier
            if seen & ~xs.mask:
                return _fail(f"path from {x} leaves X", xs.mask)


@register("thm-40B", "serial R: D(U,R) = D(U,ts(R))", "serial")
def _thm_40b(r):
    if not is_serial(r):
        return None
    if naive_family_masks(r)[2] != naive_family_masks(ts_closure(r))[2]:
        return _fail("D(R) != D(ts(R))")


@register("prop-40B1", "equivalence relations: same definable family iff equal", "equivalence_pair")
def _prop_40b1(a, b):
    same_family = naive_family_masks(a)[2] == naive_family_masks(b)[2]
    verdict = equivalence_relations_equal_iff_same_family_check(a, b)
    if same_family != (a == b) or verdict != same_family:
        return _fail("family equality vs relation equality")


@register("thm-40B2", "same D iff both non-serial, or both serial with equal ts-closures", "family_pair")
def _thm_40b2(a, b):
    report = same_definable_family(a, b)
    d1 = naive_family_masks(a)[2]
    d2 = naive_family_masks(b)[2]
    if report.equal != (d1 == d2):
        return _fail(f"verdict {report.equal} ({report.reason}) vs naive families")
    if report.witness is not None:
        w = report.witness
        if is_definable(a, w) == is_definable(b, w):
            return _fail("witness is not definable under exactly one relation", w.mask)
        if w.mask not in set(d1) ^ set(d2):
            return _fail("witness not in the symmetric difference of the families", w.mask)
    elif not report.equal and is_serial(a) and is_serial(b):
        return _fail("missing witness for serial pair")


@register("fast-naive", "structural definable family equals powerset enumeration")
def _fast_naive(r):
    if definable_family_fast(r).masks != tuple(naive_family_masks(r)[2]):
        return _fail("fast family differs from naive family")


@register("count-law", "definable_count = |D| = 2**(#classes of e(R)) for serial R")
def _count_law(r):
    d = naive_family_masks(r)[2]
    count = definable_count(r)
    if count != len(d):
        return _fail(f"count {count} != naive size {len(d)}")
    if is_serial(r):
        classes = len(set(equivalence_closure(r).rows))
        if count != 1 << classes:
            return _fail(f"count {count} != 2**{classes}")
        if len(component_masks(r)) != classes:
            return _fail("component count differs from class count")


# --- sweeps -------------------------------------------------------------------------


@dataclass
class SweepReport:
    claim_id: str
    mode: str
    universe_size: int
    trials: int
    failures: list[dict] = field(default_factory=list)
    elapsed: float = 0.0
    seed: int | None = None

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self, include_elapsed: bool = True) -> dict:
        out = {
            "claim_id": self.claim_id,
            "mode": self.mode,
            "universe_size": self.universe_size,
            "trials": self.trials,
            "seed": self.seed,
            "failures": self.failures,
        }
        if include_elapsed:
            out["elapsed"] = round(self.elapsed, 6)
        return out

    def to_json(self, include_elapsed: bool = True) -> str:
        return json.dumps(self.to_dict(include_elapsed), sort_keys=True, indent=2)

    def summary(self) -> str:
        status = "ok" if self.ok else "FAILED"
        return (
            f"{self.claim_id} n={self.universe_size} {self.mode}: {self.trials} instances, "
            f"{len(self.failures)} failures [{status}] ({self.elapsed:.2f}s)"
        )


def get_claim(claim_id: str) -> Claim:
    try:
        return CLAIMS[claim_id]
    except KeyError:
        raise RelationError(
            f"unknown claim {claim_id!r}; known claims: {', '.join(sorted(CLAIMS))}"
        ) from None


def _failure_key(f: dict):
    return (f["relations"], f.get("subset", -1), f["detail"])


def verify_claim(
    claim_id: str,
    n: int,
    mode: str = "exhaustive",
    trials: int = 1000,
    seed: int | None = 0,
) -> SweepReport:
    claim = get_claim(claim_id)
    if n < 1:
        raise RelationError("universe size must be at least 1")
    enumerate_all, count, sample = _KINDS[claim.kind]
    if mode == "exhaustive":
        total = count(n)
        if total > EXHAUSTIVE_LIMIT:
            raise RelationError(
                f"exhaustive sweep of {claim_id} at n={n} needs {total} instances "
                f"(limit {EXHAUSTIVE_LIMIT}); use random mode"
            )
        instances: Iterable = enumerate_all(n)
        seed = None
    elif mode == "random":
        if trials < 0:
            raise RelationError("trials must be nonnegative")
        rng = _rng(seed)
        instances = (sample(n, rng) for _ in range(trials))
    else:
        raise RelationError(f"unknown sweep mode {mode!r}")

    start = time.perf_counter()
    failures = []
    done = 0
    for inst in instances:
        done += 1
        result = claim.check(*inst)
        if result is not None:
            failures.append({"relations": [r.code for r in inst], **result})
    failures.sort(key=_failure_key)
    return SweepReport(claim_id, mode, n, done, failures, time.perf_counter() - start, seed)


def replay_failure(claim_id: str, n: int, failure: dict) -> bool:
    """Re-run a recorded counterexample; True when it still fails."""
    claim = get_claim(claim_id)
    u = universe_of(n)
    rels = [Relation.from_code(u, code) for code in failure["relations"]]
    return claim.check(*rels) is not None
