"""Finite sets, maps and posets.

Elements are arbitrary hashables (strings from user input, frozensets for
powersets and downsets).  Subsets of a carrier are handled internally as
bitmasks over the carrier's order; public results are frozensets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Hashable, Iterable, Iterator, Mapping, Sequence

from .errors import CycleError, GuardExceeded, InputError


def canonical_key(x: Any) -> tuple:
    """Sort key giving a deterministic order across mixed nested values."""
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, (int, Fraction)):
        return (1, x, 0)
    if hasattr(x, "im") and hasattr(x, "re"):
        return (1, x.re, x.im)
    if isinstance(x, str):
        return (2, x)
    if isinstance(x, tuple):
        return (3, len(x), tuple(canonical_key(y) for y in x))
    if isinstance(x, (frozenset, set)):
        return (4, len(x), tuple(sorted(canonical_key(y) for y in x)))
    if hasattr(x, "sort_key"):
        return (5, x.sort_key())
    return (6, repr(x))


def show(x: Any) -> str:
    """Compact text for an element; frozensets print as {a,b}."""
    if isinstance(x, str):
        return x
    if isinstance(x, (frozenset, set)):
        return "{" + ",".join(show(y) for y in sorted(x, key=canonical_key)) + "}"
    if isinstance(x, tuple):
        return "(" + ",".join(show(y) for y in x) + ")"
    if isinstance(x, bool):
        return "true" if x else "false"
    return str(x)


@dataclass(frozen=True)
class FinSet:
    elements: tuple
    index: Mapping[Hashable, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        els = tuple(self.elements)
        idx = {x: i for i, x in enumerate(els)}
        if len(idx) != len(els):
            raise InputError("duplicate labels in carrier")
        object.__setattr__(self, "elements", els)
        object.__setattr__(self, "index", idx)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self.index

    def mask(self, xs: Iterable) -> int:
        m = 0
        for x in xs:
            try:
                m |= 1 << self.index[x]
            except KeyError:
                raise InputError(f"unknown element {show(x)}") from None
        return m

    def unmask(self, m: int) -> frozenset:
        return frozenset(self.elements[i] for i in _bits(m))

    def ordered(self, xs: Iterable) -> list:
        return sorted(xs, key=lambda x: self.index[x])

    def subsets(self) -> Iterator[frozenset]:
        for m in range(1 << len(self)):
            yield self.unmask(m)


def _bits(m: int) -> Iterator[int]:
    i = 0
    while m:
        if m & 1:
            yield i
        m >>= 1
        i += 1


@dataclass(frozen=True)
class FinMap:
    source: FinSet
    target: FinSet
    table: Mapping[Hashable, Hashable]

    def __post_init__(self):
        t = dict(self.table)
        for x in self.source:
            if x not in t:
                raise InputError(f"map undefined at {show(x)}")
            if t[x] not in self.target:
                raise InputError(f"image {show(t[x])} of {show(x)} outside target")
        object.__setattr__(self, "table", t)

    def __call__(self, x):
        return self.table[x]

    @classmethod
    def of(cls, source: FinSet, target: FinSet, fn: Callable) -> "FinMap":
        return cls(source, target, {x: fn(x) for x in source})


def equalize(f: FinMap, g: FinMap) -> tuple[FinSet, FinMap]:
    """The subset where f and g agree, with its inclusion."""
    if f.source != g.source or f.target != g.target:
        raise InputError("equalize needs parallel maps")
    sub = FinSet(tuple(x for x in f.source if f(x) == g(x)))
    return sub, FinMap(sub, f.source, {x: x for x in sub})


class FinPoset:
    """A finite partial order stored as a reflexive, transitive boolean matrix."""

    def __init__(self, elements: Sequence, leq: Sequence[Sequence[bool]]):
        self.carrier = FinSet(tuple(elements))
        n = len(self.carrier)
        self.leq = tuple(tuple(bool(v) for v in row) for row in leq)
        if len(self.leq) != n or any(len(r) != n for r in self.leq):
            raise InputError("order matrix has the wrong shape")
        # below[i]: mask of elements <= element i; above[i] likewise
        self.below = tuple(sum(1 << j for j in range(n) if self.leq[j][i]) for i in range(n))
        self.above = tuple(sum(1 << j for j in range(n) if self.leq[i][j]) for i in range(n))
        self._downsets: list[int] | None = None
        self._joins: dict[int, int | None] = {}

    # basic access
    @property
    def elements(self) -> tuple:
        return self.carrier.elements

    def __len__(self):
        return len(self.carrier)

    def __iter__(self):
        return iter(self.carrier)

    def __contains__(self, x):
        return x in self.carrier

    def idx(self, x) -> int:
        try:
            return self.carrier.index[x]
        except KeyError:
            raise InputError(f"unknown element {show(x)}") from None

    def le(self, x, y) -> bool:
        return self.leq[self.idx(x)][self.idx(y)]

    def __eq__(self, other):
        return isinstance(other, FinPoset) and self.elements == other.elements and self.leq == other.leq

    def __hash__(self):
        return hash((self.elements, self.leq))

    def __repr__(self):
        return f"FinPoset({[show(x) for x in self.elements]})"

    # masks
    def mask(self, xs: Iterable) -> int:
        return self.carrier.mask(xs)

    def unmask(self, m: int) -> frozenset:
        return self.carrier.unmask(m)

    def down_mask(self, m: int) -> int:
        out = 0
        for i in _bits(m):
            out |= self.below[i]
        return out

    def up_mask(self, m: int) -> int:
        out = 0
        for i in _bits(m):
            out |= self.above[i]
        return out

    def principal(self, x) -> frozenset:
        return self.unmask(self.below[self.idx(x)])

    def is_downset(self, s: Iterable) -> bool:
        m = self.mask(s)
        return self.down_mask(m) == m

    def downset_masks(self, limit: int | None = None) -> list[int]:
        """Every downset, in a fixed order (by size, then mask).

        With ``limit`` set, gives up with GuardExceeded once more are found.
        """
        if self._downsets is None:
            n = len(self)
            out: list[int] = []
            # grow along a linear extension: element k may be added once all below it are in
            order = linear_extension(self)

            stack = [(0, 0)]
            while stack:
                k, m = stack.pop()
                if k == n:
                    out.append(m)
                    if limit is not None and len(out) > limit:
                        raise GuardExceeded("downset enumeration", len(out), limit)
                    continue
                i = order[k]
                stack.append((k + 1, m))
                if self.below[i] & ~(1 << i) & ~m == 0:
                    stack.append((k + 1, m | (1 << i)))
            out.sort(key=lambda m: (bin(m).count("1"), m))
            self._downsets = out
        return self._downsets

    def downsets(self) -> list[frozenset]:
        return [self.unmask(m) for m in self.downset_masks()]

    # bounds and lattice operations
    def upper_bounds_mask(self, m: int) -> int:
        full = (1 << len(self)) - 1
        out = full
        for i in _bits(m):
            out &= self.above[i]
        return out

    def lower_bounds_mask(self, m: int) -> int:
        out = (1 << len(self)) - 1
        for i in _bits(m):
            out &= self.below[i]
        return out

    def least_in_mask(self, m: int) -> int | None:
        for i in _bits(m):
            if self.above[i] & m == m:
                return i
        return None

    def greatest_in_mask(self, m: int) -> int | None:
        for i in _bits(m):
            if self.below[i] & m == m:
                return i
        return None

    def join_index(self, m: int) -> int | None:
        if m not in self._joins:
            self._joins[m] = self.least_in_mask(self.upper_bounds_mask(m))
        return self._joins[m]

    def join(self, xs: Iterable):
        j = self.join_index(self.mask(xs))
        if j is None:
            raise InputError("join does not exist")
        return self.elements[j]

    def meet(self, xs: Iterable):
        j = self.greatest_in_mask(self.lower_bounds_mask(self.mask(xs)))
        if j is None:
            raise InputError("meet does not exist")
        return self.elements[j]

    def is_lattice(self) -> bool:
        """Finite lattice: every subset, empty included, has a join."""
        n = len(self)
        if n == 0:
            return False
        if self.join_index(0) is None:
            return False
        return all(
            self.join_index((1 << i) | (1 << j)) is not None
            for i in range(n)
            for j in range(i + 1, n)
        ) and self.greatest_in_mask((1 << n) - 1) is not None

    def bottom(self):
        j = self.join_index(0)
        return None if j is None else self.elements[j]

    def top(self):
        j = self.greatest_in_mask((1 << len(self)) - 1)
        return None if j is None else self.elements[j]

    def is_monotone(self, f: Callable, target: "FinPoset") -> bool:
        return all(
            target.le(f(x), f(y))
            for x in self
            for y in self
            if self.le(x, y)
        )

    def subposet(self, xs: Iterable) -> "FinPoset":
        keep = self.carrier.ordered(set(xs))
        ii = [self.idx(x) for x in keep]
        return FinPoset(keep, [[self.leq[i][j] for j in ii] for i in ii])

    def dwn(self) -> "FinPoset":
        """Downsets ordered by inclusion."""
        ds = self.downset_masks()
        return FinPoset(
            [self.unmask(m) for m in ds],
            [[a & ~b == 0 for b in ds] for a in ds],
        )

    def is_distributive(self) -> bool:
        for x in self:
            for y in self:
                for z in self:
                    if self.meet([x, self.join([y, z])]) != self.join(
                        [self.meet([x, y]), self.meet([x, z])]
                    ):
                        return False
        return True


def inclusion_poset(family: Sequence[frozenset]) -> FinPoset:
    return FinPoset(list(family), [[a <= b for b in family] for a in family])


def linear_extension(p: FinPoset) -> list[int]:
    n = len(p)
    return sorted(range(n), key=lambda i: bin(p.below[i]).count("1"))


def poset_from_pairs(elements: Sequence, pairs: Iterable[Sequence]) -> FinPoset:
    """Reflexive-transitive closure of the given pairs; cycles are rejected."""
    fs = FinSet(tuple(elements))
    n = len(fs)
    r = [[i == j for j in range(n)] for i in range(n)]
    for pair in pairs:
        if len(pair) != 2:
            raise InputError(f"order pair {pair!r} is not a pair")
        a, b = pair
        if a not in fs or b not in fs:
            raise InputError(f"order pair {pair!r} names an unknown element")
        r[fs.index[a]][fs.index[b]] = True
    for k in range(n):
        for i in range(n):
            if r[i][k]:
                for j in range(n):
                    if r[k][j]:
                        r[i][j] = True
    for i in range(n):
        for j in range(i + 1, n):
            if r[i][j] and r[j][i]:
                raise CycleError(
                    f"order is cyclic: {show(fs.elements[i])} <= {show(fs.elements[j])} <= {show(fs.elements[i])}",
                    (fs.elements[i], fs.elements[j]),
                )
    return FinPoset(fs.elements, r)


def discrete(elements: Sequence) -> FinPoset:
    return poset_from_pairs(elements, [])


def chain(elements: Sequence) -> FinPoset:
    els = list(elements)
    return poset_from_pairs(els, list(zip(els, els[1:])))


def powerset_lattice(base: Sequence) -> FinPoset:
    """All subsets of ``base`` ordered by inclusion."""
    fs = FinSet(tuple(base))
    return inclusion_poset(list(fs.subsets()))


def downward_close(p: FinPoset, s: Iterable) -> frozenset:
    return p.unmask(p.down_mask(p.mask(s)))


def all_posets(n: int, labels: Sequence | None = None) -> Iterator[FinPoset]:
    """Every partial order on n labelled elements (1, 1, 3, 19, 219, ...)."""
    labels = list(labels) if labels is not None else [str(i) for i in range(n)]
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    for bits in range(1 << len(pairs)):
        rel = [[i == j for j in range(n)] for i in range(n)]
        for k, (i, j) in enumerate(pairs):
            if bits >> k & 1:
                rel[i][j] = True
        if _is_partial_order(rel, n):
            yield FinPoset(labels, rel)


def naturally_labelled_posets(n: int, labels: Sequence | None = None) -> Iterator[FinPoset]:
    """Orders where i <= j forces i <= j as integers; one per linear extension."""
    labels = list(labels) if labels is not None else [str(i) for i in range(n)]
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for bits in range(1 << len(pairs)):
        rel = [[i == j for j in range(n)] for i in range(n)]
        for k, (i, j) in enumerate(pairs):
            if bits >> k & 1:
                rel[i][j] = True
        if _is_transitive(rel, n):
            yield FinPoset(labels, rel)


def _is_transitive(rel, n) -> bool:
    return all(
        rel[i][j]
        for i in range(n)
        for k in range(n)
        if rel[i][k]
        for j in range(n)
        if rel[k][j]
    )


def _is_partial_order(rel, n) -> bool:
    if any(rel[i][j] and rel[j][i] for i in range(n) for j in range(i + 1, n)):
        return False
    return _is_transitive(rel, n)


def _order_invariant(p: FinPoset) -> tuple:
    n = len(p)
    return tuple(sorted(
        (bin(p.below[i]).count("1"), bin(p.above[i]).count("1")) for i in range(n)
    ))


def isomorphic(p: FinPoset, q: FinPoset) -> bool:
    n = len(p)
    if n != len(q) or _order_invariant(p) != _order_invariant(q):
        return False
    return _find_iso(p, q) is not None


def _find_iso(p: FinPoset, q: FinPoset) -> list[int] | None:
    n = len(p)
    sig_p = [(bin(p.below[i]).count("1"), bin(p.above[i]).count("1")) for i in range(n)]
    sig_q = [(bin(q.below[i]).count("1"), bin(q.above[i]).count("1")) for i in range(n)]
    image = [-1] * n
    used = [False] * n

    def rec(i: int) -> bool:
        if i == n:
            return True
        for j in range(n):
            if used[j] or sig_p[i] != sig_q[j]:
                continue
            if all(
                p.leq[i][k] == q.leq[j][image[k]] and p.leq[k][i] == q.leq[image[k]][j]
                for k in range(i)
            ):
                image[i] = j
                used[j] = True
                if rec(i + 1):
                    return True
                used[j] = False
        return False

    return image if rec(0) else None


def lattices_up_to_iso(n: int) -> list[FinPoset]:
    """One representative per isomorphism class of n-element lattices.

    Built as bottom + (naturally labelled inner poset) + top, then deduplicated.
    """
    if n == 1:
        return [FinPoset(["0"], [[True]])]
    if n == 2:
        return [chain(["0", "1"])]
    reps: list[FinPoset] = []
    buckets: dict[tuple, list[FinPoset]] = {}
    for inner in naturally_labelled_posets(n - 2):
        m = n
        rel = [[False] * m for _ in range(m)]
        for i in range(m):
            rel[0][i] = True
            rel[i][m - 1] = True
            rel[i][i] = True
        for i in range(n - 2):
            for j in range(n - 2):
                rel[i + 1][j + 1] = inner.leq[i][j]
        labels = ["0"] + [f"x{i}" for i in range(n - 2)] + ["1"]
        cand = FinPoset(labels, rel)
        if not cand.is_lattice():
            continue
        key = _order_invariant(cand)
        bucket = buckets.setdefault(key, [])
        if any(_find_iso(cand, r) is not None for r in bucket):
            continue
        bucket.append(cand)
        reps.append(cand)
    return reps


def monotone_maps(src: FinPoset, dst: FinPoset) -> Iterator[dict]:
    """All monotone maps, by backtracking along a linear extension of src."""
    order = linear_extension(src)
    n = len(src)
    choice = [0] * n

    def rec(k: int):
        if k == n:
            yield {src.elements[i]: dst.elements[choice[i]] for i in range(n)}
            return
        i = order[k]
        # must sit above the images of everything below i, placed earlier
        lower = [choice[j] for j in order[:k] if src.leq[j][i]]
        upper = [choice[j] for j in order[:k] if src.leq[i][j]]
        for c in range(len(dst)):
            if all(dst.leq[l][c] for l in lower) and all(dst.leq[c][u] for u in upper):
                choice[i] = c
                yield from rec(k + 1)

    yield from rec(0)


def all_maps(src: Sequence, dst: Sequence) -> Iterator[dict]:
    for image in itertools.product(dst, repeat=len(src)):
        yield dict(zip(src, image))
