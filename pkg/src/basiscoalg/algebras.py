"""Eilenberg-Moore algebras in four presentations.

* ``LatticeAlgebra`` with the powerset monad: a finite lattice, structure map = join.
* ``LatticeAlgebra`` with the downset monad ("frame"): join of a downset.
* ``ModuleAlgebra``: S^n for a scalar domain S, evaluating formal sums.
* ``ConvexAlgebra``: convex hull of rational points, evaluating distributions.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Any, Callable, Iterable, Mapping, Sequence

from .errors import GuardExceeded, InputError, PreconditionError
from .exactnum import RATIONAL, ScalarDomain
from .finstruct import FinPoset, powerset_lattice, show
from .monads import DISTRIBUTION, DOWNSET, POWERSET, Distribution, FormalSum, Monad, Multiset
from .report import Report

TABLE_LIMIT = 16


class LatticeAlgebra:
    """A finite lattice as an algebra for the powerset or downset monad."""

    def __init__(
        self,
        poset: FinPoset,
        monad: Monad = POWERSET,
        free_on: Any = None,
        overrides: Mapping[frozenset, Any] | None = None,
    ):
        if monad not in (POWERSET, DOWNSET):
            raise InputError("lattice algebras are for the powerset or downset monad")
        if not poset.is_lattice():
            raise InputError("carrier is not a lattice")
        n = len(poset)
        if n > TABLE_LIMIT:
            raise GuardExceeded("join table", n, TABLE_LIMIT)
        self.poset = poset
        self.monad = monad
        self.free_on = free_on
        self.presentation = "frame" if monad is DOWNSET else "lattice-join"
        join2 = [[poset.join_index((1 << i) | (1 << j)) for j in range(n)] for i in range(n)]
        table = [0] * (1 << n)
        table[0] = poset.join_index(0)
        for m in range(1, 1 << n):
            low = (m & -m).bit_length() - 1
            rest = m & (m - 1)
            table[m] = low if rest == 0 else join2[table[rest]][low]
        self._table = table
        self._overrides = {poset.mask(k): poset.idx(v) for k, v in (overrides or {}).items()}

    @property
    def elements(self) -> tuple:
        return self.poset.elements

    def with_overrides(self, overrides: Mapping[frozenset, Any]) -> "LatticeAlgebra":
        """A copy whose structure map is altered on the given subsets (unvalidated)."""
        merged = {self.poset.unmask(m): self.poset.elements[v] for m, v in self._overrides.items()}
        merged.update(overrides)
        return LatticeAlgebra(self.poset, self.monad, self.free_on, merged)

    def structure_mask(self, m: int) -> int:
        if m in self._overrides:
            return self._overrides[m]
        return self._table[m]

    def structure(self, t: Iterable) -> Any:
        m = self.poset.mask(t)
        if self.monad is DOWNSET and self.poset.down_mask(m) != m:
            raise InputError(f"{show(frozenset(t))} is not a downset")
        return self.poset.elements[self.structure_mask(m)]

    def domain_masks(self) -> list[int]:
        """Masks of every element of T(X)."""
        if self.monad is POWERSET:
            return list(range(1 << len(self.poset)))
        return self.poset.downset_masks()

    def t_values(self) -> list[frozenset]:
        return [self.poset.unmask(m) for m in self.domain_masks()]

    def unit(self, x) -> frozenset:
        return self.monad.unit(x, over=self.poset)

    def tmap(self, f: Callable, t: Iterable, target: "LatticeAlgebra") -> frozenset:
        return self.monad.fmap(f, frozenset(t), target=target.poset)

    def __repr__(self):
        return f"LatticeAlgebra({self.presentation}, {len(self.poset)} elements)"


def lattice_algebra(poset: FinPoset, presentation: str = "lattice-join") -> LatticeAlgebra:
    if presentation == "lattice-join":
        return LatticeAlgebra(poset, POWERSET)
    if presentation == "frame":
        alg = LatticeAlgebra(poset, DOWNSET)
        if not poset.is_distributive():
            raise InputError("a finite frame must be a distributive lattice")
        return alg
    raise InputError(f"unknown lattice presentation {presentation!r}")


def free_algebra(monad: Monad, base) -> LatticeAlgebra:
    """The free algebra on ``base``: subsets (powerset) or downsets (downset monad)."""
    if monad is POWERSET:
        elements = base.elements if isinstance(base, FinPoset) else tuple(base)
        return LatticeAlgebra(powerset_lattice(elements), POWERSET, free_on=elements)
    if monad is DOWNSET:
        if not isinstance(base, FinPoset):
            raise InputError("the free downset algebra needs a poset")
        return LatticeAlgebra(base.dwn(), DOWNSET, free_on=base)
    raise InputError(f"free algebras are built here only for powerset and downset, not {monad.name}")


class ModuleAlgebra:
    """S^n with the multiset monad over S; elements are tuples of payloads."""

    presentation = "free-module"

    def __init__(self, domain: ScalarDomain, dim: int):
        if dim < 0:
            raise InputError("negative dimension")
        self.domain = domain
        self.dim = dim
        self.monad = Multiset(domain)

    def __eq__(self, other):
        return isinstance(other, ModuleAlgebra) and (self.domain, self.dim) == (other.domain, other.dim)

    def __hash__(self):
        return hash((self.domain, self.dim))

    def vector(self, xs: Sequence) -> tuple:
        if len(xs) != self.dim:
            raise InputError(f"expected {self.dim} coordinates, got {len(xs)}")
        return tuple(self.domain.coerce(x) for x in xs)

    def zero(self) -> tuple:
        return tuple(self.domain.zero() for _ in range(self.dim))

    def add(self, u, v) -> tuple:
        return tuple(self.domain.add(a, b) for a, b in zip(u, v))

    def scale(self, s, v) -> tuple:
        return tuple(self.domain.mul(s, a) for a in v)

    def structure(self, t: FormalSum) -> tuple:
        acc = self.zero()
        for v, s in t.items():
            acc = self.add(acc, self.scale(s, v))
        return acc

    def basis_vector(self, j: int) -> tuple:
        d = self.domain
        return tuple(d.one() if i == j else d.zero() for i in range(self.dim))

    def sample_element(self, rng: random.Random) -> tuple:
        return tuple(self.domain.random(rng) for _ in range(self.dim))

    def sample_t(self, rng: random.Random, size: int = 3) -> FormalSum:
        return FormalSum(
            self.domain,
            [(self.domain.random(rng), self.sample_element(rng)) for _ in range(size)],
        )

    def __repr__(self):
        return f"ModuleAlgebra({self.domain.name}^{self.dim})"


class ConvexAlgebra:
    """The convex hull of finitely many rational points, for the distribution monad."""

    presentation = "convex-simplex"
    monad = DISTRIBUTION

    def __init__(self, generators: Sequence[Sequence]):
        pts = [tuple(RATIONAL.coerce(c) for c in p) for p in generators]
        if not pts:
            raise InputError("need at least one generator")
        if len({len(p) for p in pts}) != 1:
            raise InputError("generators have different dimensions")
        self.generators = tuple(pts)
        self.dim = len(pts[0])

    def structure(self, t: FormalSum) -> tuple:
        acc = [Fraction(0)] * self.dim
        for p, w in t.items():
            for i, c in enumerate(p):
                acc[i] += w * c
        return tuple(acc)

    def sample_weights(self, rng: random.Random, k: int) -> list[Fraction]:
        ws = [rng.randint(0, 4) for _ in range(k)]
        if sum(ws) == 0:
            ws[rng.randrange(k)] = 1
        tot = sum(ws)
        return [Fraction(w, tot) for w in ws]

    def sample_element(self, rng: random.Random) -> tuple:
        ws = self.sample_weights(rng, len(self.generators))
        return self.structure(Distribution(list(zip(ws, self.generators))))

    def sample_t(self, rng: random.Random, size: int = 3) -> Distribution:
        pts = [self.sample_element(rng) for _ in range(size)]
        return Distribution(list(zip(self.sample_weights(rng, size), pts)))

    def __repr__(self):
        return f"ConvexAlgebra({len(self.generators)} generators in Q^{self.dim})"


# law checks ---------------------------------------------------------------


def check_em_laws(alg, samples: int = 100, seed: int = 0, literal_limit: int = 20_000) -> Report:
    """Unit law a . eta = id and multiplication law a . mu = a . T(a)."""
    if isinstance(alg, LatticeAlgebra):
        return _lattice_em(alg, literal_limit)
    return _sampled_em(alg, samples, seed)


def _lattice_em(alg: LatticeAlgebra, literal_limit: int) -> Report:
    p = alg.poset
    n = len(p)
    rep = Report(f"algebra laws ({alg.presentation}, {n} elements)")
    down = alg.monad is DOWNSET
    unit_of = (lambda i: p.below[i]) if down else (lambda i: 1 << i)

    bad = next((i for i in range(n) if alg.structure_mask(unit_of(i)) != i), None)
    rep.add(
        "unit: a . eta = id",
        bad is None,
        None if bad is None else {"element": p.elements[bad], "a(eta(x))": p.elements[alg.structure_mask(unit_of(bad))]},
        f"all {n} elements",
    )

    # a(U + x) = a({a(U), x}); together with the unit law this forces the
    # multiplication law on every finite family (induction on family size)
    witness = None
    masks = alg.domain_masks()
    for m in masks:
        am = alg.structure_mask(m)
        for i in range(n):
            grown = m | unit_of(i)
            pair = unit_of(am) | unit_of(i)
            if down:
                pair = p.down_mask(pair)
            if alg.structure_mask(grown) != alg.structure_mask(pair):
                witness = {
                    "U": p.unmask(m),
                    "x": p.elements[i],
                    "a(U with x)": p.elements[alg.structure_mask(grown)],
                    "a({a(U), x})": p.elements[alg.structure_mask(pair)],
                }
                break
        if witness:
            break
    rep.add(
        "multiplication: a . mu = a . T(a) (one-step families)",
        witness is None,
        witness,
        f"all {len(masks)} values U of T(X) against every x",
    )

    if down:
        rep.add(
            "structure map is monotone",
            *_monotone_on_masks(alg, masks),
        )

    literal = _literal_families(alg, literal_limit)
    if literal is not None:
        families, how = literal
        w = None
        for fam in families:
            union = 0
            images = 0
            for m in fam:
                union |= m
                images |= unit_of(alg.structure_mask(m))
            if down:
                images = p.down_mask(images)
            if alg.structure_mask(union) != alg.structure_mask(images):
                w = {
                    "family": [p.unmask(m) for m in fam],
                    "a(mu(family))": p.elements[alg.structure_mask(union)],
                    "a(T(a)(family))": p.elements[alg.structure_mask(images)],
                }
                break
        rep.add("multiplication: a . mu = a . T(a) (every family)", w is None, w, how)
    return rep


def _monotone_on_masks(alg: LatticeAlgebra, masks: list[int]):
    p = alg.poset
    for a in masks:
        for b in masks:
            if a & ~b == 0 and not p.leq[alg.structure_mask(a)][alg.structure_mask(b)]:
                return False, {"U": p.unmask(a), "V": p.unmask(b)}, ""
    return True, None, f"{len(masks)} downsets"


def _literal_families(alg: LatticeAlgebra, limit: int):
    """Every element of T(T(X)) as a list of T(X)-masks, when few enough."""
    p = alg.poset
    if alg.monad is POWERSET:
        masks = alg.domain_masks()
        if (1 << len(masks)) > limit:
            return None
        fams = [[masks[i] for i in range(len(masks)) if f >> i & 1] for f in range(1 << len(masks))]
        return fams, f"all {len(fams)} elements of T(T(X))"
    masks = p.downset_masks()
    if len(masks) > 24:
        return None
    dwn = p.dwn()
    try:
        outer = dwn.downset_masks(limit=limit)
    except GuardExceeded:
        return None
    # element k of dwn corresponds to masks[k] (same enumeration order)
    fams = [[masks[k] for k in range(len(masks)) if f >> k & 1] for f in outer]
    return fams, f"all {len(fams)} elements of T(T(X))"


def _sampled_em(alg, samples: int, seed: int) -> Report:
    rng = random.Random(seed)
    rep = Report(f"algebra laws ({alg.presentation})")
    monad = alg.monad
    w = None
    for _ in range(samples):
        x = alg.sample_element(rng)
        if alg.structure(monad.unit(x)) != x:
            w = {"element": x}
            break
    rep.add("unit: a . eta = id", w is None, w, f"{samples} seeded samples")
    w = None
    for _ in range(samples):
        inner = [alg.sample_t(rng) for _ in range(3)]
        if isinstance(alg, ConvexAlgebra):
            outer = Distribution(list(zip(alg.sample_weights(rng, 3), inner)))
        else:
            outer = FormalSum(alg.domain, [(alg.domain.random(rng), t) for t in inner])
        lhs = alg.structure(monad.mult(outer))
        rhs = alg.structure(monad.fmap(alg.structure, outer))
        if lhs != rhs:
            w = {"value": outer, "a(mu)": lhs, "a(T(a))": rhs}
            break
    rep.add("multiplication: a . mu = a . T(a)", w is None, w, f"{samples} seeded samples")
    return rep


def check_homomorphism(src, dst, h, samples: int = 100, seed: int = 0) -> Report:
    """h . a = a' . T(h); ``h`` is a dict for lattices and a matrix (rows) for modules."""
    rep = Report("algebra homomorphism")
    if isinstance(src, LatticeAlgebra):
        if not isinstance(dst, LatticeAlgebra) or dst.monad is not src.monad:
            raise InputError("homomorphism between algebras of different monads")
        f = h if callable(h) else h.__getitem__
        w = None
        for t in src.t_values():
            lhs = f(src.structure(t))
            rhs = dst.structure(src.tmap(f, t, dst))
            if lhs != rhs:
                w = {"value": t, "h(a(t))": lhs, "a'(T(h)(t))": rhs}
                break
        rep.add("h . a = a' . T(h)", w is None, w, f"all {len(src.t_values())} values of T(X)")
        return rep
    if isinstance(src, ModuleAlgebra):
        from .linalg import matvec

        rows = tuple(tuple(src.domain.coerce(x) for x in r) for r in h)
        if len(rows) != dst.dim or any(len(r) != src.dim for r in rows):
            raise InputError("homomorphism matrix has the wrong shape")
        f = lambda v: matvec(rows, v)
        rng = random.Random(seed)
        w = None
        for _ in range(samples):
            t = src.sample_t(rng)
            lhs = f(src.structure(t))
            rhs = dst.structure(src.monad.fmap(f, t))
            if lhs != rhs:
                w = {"value": t, "h(a(t))": lhs, "a'(T(h)(t))": rhs}
                break
        rep.add("h . a = a' . T(h)", w is None, w, f"{samples} seeded samples")
        return rep
    raise InputError(f"no homomorphism check for {type(src).__name__}")
