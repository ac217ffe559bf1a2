"""The five concrete monads and an exhaustive or sampled law checker.

Values:

* powerset and downset: ``frozenset`` of carrier elements
* multiset and distribution: ``FormalSum`` (coefficients kept nonzero)
* coproduct ``F + (-)``: ``("inl", f)`` or ``("inr", x)``

Nested values are just nested Python values, so ``T(T(X))`` never has to be
materialised as a whole unless a check enumerates it on purpose.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Any, Callable, Hashable, Iterable, Iterator, Mapping, Sequence

from .errors import GuardExceeded, InputError, PreconditionError, ScalarError
from .exactnum import RATIONAL, ScalarDomain
from .finstruct import FinPoset, FinSet, canonical_key, downward_close, show
from .report import Report


class FormalSum:
    """A finitely supported map from values to nonzero scalars."""

    __slots__ = ("domain", "_c", "_hash")

    def __init__(self, domain: ScalarDomain, terms: Mapping | Iterable = ()):
        c: dict = {}
        pairs = terms.items() if isinstance(terms, Mapping) else ((k, v) for v, k in terms)
        for k, v in pairs:
            v = domain.coerce(v)
            c[k] = domain.add(c[k], v) if k in c else v
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "_c", {k: v for k, v in c.items() if not domain.is_zero(v)})
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("FormalSum is immutable")

    @classmethod
    def of_pairs(cls, domain: ScalarDomain, pairs: Iterable[tuple[Any, Hashable]]) -> "FormalSum":
        """Build from (scalar, value) pairs, adding repeated values."""
        return cls(domain, list(pairs))

    def items(self):
        return self._c.items()

    def sorted_items(self) -> list:
        return sorted(self._c.items(), key=lambda kv: canonical_key(kv[0]))

    def support(self) -> frozenset:
        return frozenset(self._c)

    def coefficient(self, x) -> Any:
        return self._c.get(x, self.domain.zero())

    def total(self):
        return self.domain.total(self._c.values())

    def __len__(self):
        return len(self._c)

    def __eq__(self, other):
        return isinstance(other, FormalSum) and self.domain == other.domain and self._c == other._c

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.domain.name, frozenset(self._c.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def sort_key(self):
        return tuple((canonical_key(k), canonical_key(v)) for k, v in self.sorted_items())

    def __repr__(self):
        body = " + ".join(f"{self.domain.format(v)}*{show(k)}" for k, v in self.sorted_items())
        return f"FormalSum({body or '0'})"

    __str__ = __repr__


class Distribution(FormalSum):
    """A FormalSum over the rationals with positive weights summing to 1."""

    __slots__ = ()

    def __init__(self, terms: Mapping | Iterable = ()):
        super().__init__(RATIONAL, terms)
        if any(v < 0 for v in self._c.values()):
            raise InputError("negative probability")
        if self.total() != 1:
            raise InputError(f"probabilities sum to {self.total()}, not 1")


def _as_carrier(carrier) -> FinSet | FinPoset:
    if isinstance(carrier, (FinSet, FinPoset)):
        return carrier
    return FinSet(tuple(carrier))


class Monad:
    """Interface: unit, mult, fmap, plus optional strength and enumeration."""

    name = "monad"
    finite = True

    def unit(self, x, over=None):
        raise NotImplementedError

    def mult(self, tt):
        raise NotImplementedError

    def fmap(self, f: Callable, v, target=None):
        raise NotImplementedError

    def strength(self, v, y):
        raise PreconditionError(f"no strength implemented for the {self.name} monad")

    def lift(self, carrier):
        """The carrier T(X) as a FinSet (or FinPoset), for finite monads."""
        raise PreconditionError(f"{self.name} values cannot be enumerated")

    def sample(self, carrier, rng: random.Random):
        """A random value of T(X); default picks from the enumeration."""
        vals = self.lift(carrier).elements
        return vals[rng.randrange(len(vals))]

    def __repr__(self):
        return f"<{self.name} monad>"


class Powerset(Monad):
    name = "powerset"

    def unit(self, x, over=None):
        return frozenset((x,))

    def mult(self, tt):
        out: set = set()
        for t in tt:
            out |= t
        return frozenset(out)

    def fmap(self, f, v, target=None):
        return frozenset(f(x) for x in v)

    def strength(self, v, y):
        return frozenset((x, y) for x in v)

    def lift(self, carrier):
        c = _as_carrier(carrier)
        return FinSet(tuple(FinSet(c.elements).subsets()))

    def sample(self, carrier, rng):
        c = _as_carrier(carrier)
        return frozenset(x for x in c.elements if rng.random() < 0.5)


class Multiset(Monad):
    """Finitely supported S-valued weights, for a semiring S."""

    finite = False

    def __init__(self, domain: ScalarDomain):
        self.domain = domain
        self.name = f"multiset[{domain.name}]"

    def __eq__(self, other):
        return isinstance(other, Multiset) and type(other) is type(self) and other.domain == self.domain

    def __hash__(self):
        return hash((type(self).__name__, self.domain))

    def _make(self, terms):
        return FormalSum(self.domain, terms)

    def unit(self, x, over=None):
        return self._make({x: self.domain.one()})

    def mult(self, tt):
        d = self.domain
        pairs = tt.items() if isinstance(tt, FormalSum) else ((phi, s) for s, phi in tt)
        acc: dict = {}
        for phi, s in pairs:
            for x, t in phi.items():
                v = d.mul(s, t)
                acc[x] = d.add(acc[x], v) if x in acc else v
        return self._make(acc)

    def fmap(self, f, v, target=None):
        return self._make([(s, f(x)) for x, s in v.items()])

    def strength(self, v, y):
        return self._make([(s, (x, y)) for x, s in v.items()])

    def sample(self, carrier, rng):
        c = _as_carrier(carrier)
        terms = []
        for x in c.elements:
            if rng.random() < 0.6:
                terms.append((self.domain.random(rng), x))
        return self._make(terms)


class DistributionMonad(Multiset):
    name = "distribution"

    def __init__(self):
        super().__init__(RATIONAL)
        self.name = "distribution"

    def _make(self, terms):
        return Distribution(terms)

    def sample(self, carrier, rng):
        c = _as_carrier(carrier)
        els = c.elements
        if not els:
            raise PreconditionError("no distributions on the empty set")
        k = rng.randint(1, len(els))
        chosen = rng.sample(list(els), k)
        weights = [rng.randint(1, 5) for _ in chosen]
        tot = sum(weights)
        return Distribution([(Fraction(w, tot), x) for w, x in zip(weights, chosen)])


class Downset(Monad):
    """Downsets of a poset, ordered by inclusion; the carrier must be a FinPoset."""

    name = "downset"

    def unit(self, x, over=None):
        if not isinstance(over, FinPoset):
            raise InputError("downset unit needs the carrier poset")
        return over.principal(x)

    def mult(self, tt):
        out: set = set()
        for t in tt:
            out |= t
        return frozenset(out)

    def fmap(self, f, v, target=None):
        if not isinstance(target, FinPoset):
            raise InputError("downset map needs the target poset")
        return downward_close(target, (f(x) for x in v))

    def lift(self, carrier):
        if not isinstance(carrier, FinPoset):
            raise InputError("downset monad needs a poset carrier")
        return carrier.dwn()

    def sample(self, carrier, rng):
        picked = [x for x in carrier.elements if rng.random() < 0.4]
        return downward_close(carrier, picked)


class Coproduct(Monad):
    """X |-> F + X; the left summand absorbs."""

    def __init__(self, left: Sequence[Hashable]):
        self.left = tuple(left)
        self.name = "coproduct"

    def __eq__(self, other):
        return isinstance(other, Coproduct) and other.left == self.left

    def __hash__(self):
        return hash(("coproduct", self.left))

    def unit(self, x, over=None):
        return ("inr", x)

    def mult(self, tt):
        tag, v = tt
        return tt if tag == "inl" else v

    def fmap(self, f, v, target=None):
        tag, x = v
        return v if tag == "inl" else ("inr", f(x))

    def lift(self, carrier):
        c = _as_carrier(carrier)
        return FinSet(tuple(("inl", f) for f in self.left) + tuple(("inr", x) for x in c.elements))


POWERSET = Powerset()
DOWNSET = Downset()
DISTRIBUTION = DistributionMonad()


def monad_named(name: str, domain: ScalarDomain | None = None, left: Sequence = ()) -> Monad:
    if name == "powerset":
        return POWERSET
    if name == "downset":
        return DOWNSET
    if name == "distribution":
        return DISTRIBUTION
    if name == "multiset":
        if domain is None:
            raise InputError("multiset needs a scalar domain")
        return Multiset(domain)
    if name == "coproduct":
        return Coproduct(left)
    raise InputError(f"unknown monad {name!r}")


def _third_level(monad: Monad, ttx, limit: int) -> tuple[list, str]:
    """Values of T^3(X): all of them when small, else those generated by <= 2 elements."""
    els = ttx.elements
    if isinstance(monad, Powerset) and len(els) <= 16:
        return list(FinSet(els).subsets()), "all of T^3(X)"
    if isinstance(monad, Downset):
        if len(els) <= 24:
            dw = ttx.downset_masks()
            if len(dw) <= limit:
                return [ttx.unmask(m) for m in dw], "all of T^3(X)"
        gen = [downward_close(ttx, ())]
        for i, a in enumerate(els):
            gen.append(ttx.principal(a))
            for b in els[i + 1:]:
                gen.append(downward_close(ttx, (a, b)))
        return gen, "T^3(X) values generated by at most two elements"
    if isinstance(monad, Coproduct):
        return list(monad.lift(ttx).elements), "all of T^3(X)"
    gen = [frozenset()]
    for i, a in enumerate(els):
        gen.append(frozenset((a,)))
        for b in els[i + 1:]:
            gen.append(frozenset((a, b)))
    return gen, "T^3(X) values with at most two elements"


def check_monad_laws(
    monad: Monad,
    carrier,
    samples: int = 100,
    seed: int = 0,
    limit: int = 200_000,
) -> Report:
    """Unit and associativity laws: exhaustive for finite monads, sampled otherwise."""
    rep = Report(f"monad laws for {monad.name}")
    x = carrier if isinstance(carrier, FinPoset) else _as_carrier(carrier)
    eta_x = lambda v: monad.unit(v, over=x)

    if monad.finite:
        tx = monad.lift(x)
        ttx = monad.lift(tx)
        level1 = list(tx.elements)
        level3, scope3 = _third_level(monad, ttx, limit)
        scope1 = "all of T(X)"
    else:
        rng = random.Random(seed)
        tx = ttx = None
        level1 = [monad.sample(x, rng) for _ in range(samples)]
        level3 = [_sample_nested(monad, x, rng, 3) for _ in range(samples)]
        scope1 = f"{samples} seeded samples of T(X)"
        scope3 = f"{samples} seeded samples of T^3(X)"

    def first_bad(values, lhs, rhs):
        for v in values:
            a, b = lhs(v), rhs(v)
            if a != b:
                return {"value": v, "lhs": a, "rhs": b}
        return None

    w = first_bad(level1, lambda t: monad.mult(monad.unit(t, over=tx)), lambda t: t)
    rep.add("unit-left: mu . eta_T = id", w is None, w, scope1)
    w = first_bad(
        level1, lambda t: monad.mult(monad.fmap(eta_x, t, target=tx)), lambda t: t
    )
    rep.add("unit-right: mu . T(eta) = id", w is None, w, scope1)
    w = first_bad(
        level3,
        lambda p: monad.mult(monad.mult(p)),
        lambda p: monad.mult(monad.fmap(monad.mult, p, target=tx)),
    )
    rep.add("associativity: mu . mu = mu . T(mu)", w is None, w, scope3)
    rep.data["carrier size"] = len(x)
    rep.data["checked T(X) values"] = len(level1)
    rep.data["checked T^3(X) values"] = len(level3)
    return rep


def _sample_nested(monad: Monad, x, rng: random.Random, depth: int):
    """A random element of T^depth(X), built bottom-up from small pools."""
    pool = list(_as_carrier(x).elements)
    for _ in range(depth):
        pool_set = FinSet(tuple(dict.fromkeys(pool)))
        pool = [monad.sample(pool_set, rng) for _ in range(4)]
    return pool[0]


def check_equaliser_requirement(monad: Monad, carrier) -> Report:
    """Is eta_A the equaliser of T(eta_A) and eta_{T(A)}?

    Enumerates every t in T(A) and compares the set where the two maps agree
    with the image of eta_A.
    """
    a = carrier if isinstance(carrier, FinPoset) else _as_carrier(carrier)
    if not monad.finite:
        raise PreconditionError(f"{monad.name}: T(A) is infinite, no exhaustive check")
    ta = monad.lift(a)
    agree = [
        t
        for t in ta.elements
        if monad.fmap(lambda v: monad.unit(v, over=a), t, target=ta) == monad.unit(t, over=ta)
    ]
    image = [monad.unit(v, over=a) for v in a.elements]
    extra = [t for t in agree if t not in image]
    missing = [t for t in image if t not in agree]
    rep = Report(f"equaliser requirement for {monad.name} on {len(a)} elements")
    rep.add(
        "image of eta lies in the agreement set",
        not missing,
        missing[0] if missing else None,
    )
    rep.add(
        "agreement set is exactly the image of eta",
        not extra,
        extra[0] if extra else None,
        f"{len(ta)} candidates in T(A)",
    )
    rep.data["agreement set"] = agree
    return rep
