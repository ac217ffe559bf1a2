"""The exception transformer E(T) = T(E + -) with throws and handlers.

Values of E + X are ``("inl", e)`` for an exception and ``("inr", x)`` for a
plain value.  A throw map sends each exception to an element of T(0); a handler
is a family of maps T(E + X) -> T(X), one per carrier X.  The two directions

* throws -> handler: ``r |-> mu . T([T(!) . r, eta])``
* handler -> throws: ``sigma |-> sigma_0 . T(inl) . eta``

are mutually inverse for monad maps.
"""

from __future__ import annotations

import itertools
import random
from typing import Any, Callable, Hashable, Mapping, Sequence

from .errors import InputError
from .finstruct import FinSet
from .monads import Coproduct, Monad, Powerset
from .report import Report


def inl(v):
    return ("inl", v)


def inr(v):
    return ("inr", v)


def _absurd(_):
    raise AssertionError("a value of T(0) contains no elements")


class ExceptionSetup:
    """A base monad T (coproduct F + - or powerset) and a finite set E of exceptions."""

    def __init__(self, base: Monad, exceptions: Sequence[Hashable]):
        if not isinstance(base, (Coproduct, Powerset)):
            raise InputError("base monad must be a coproduct F + - or the powerset monad")
        self.base = base
        self.exceptions = tuple(exceptions)
        if len(set(self.exceptions)) != len(self.exceptions):
            raise InputError("duplicate exception labels")

    # E + X and the transformed monad
    def plus(self, carrier: Sequence) -> FinSet:
        return FinSet(tuple(inl(e) for e in self.exceptions) + tuple(inr(x) for x in carrier))

    def plus_map(self, h: Callable) -> Callable:
        return lambda v: v if v[0] == "inl" else inr(h(v[1]))

    def values(self, carrier: Sequence) -> tuple:
        """All of T(E + X)."""
        return self.base.lift(self.plus(carrier)).elements

    def t_values(self, carrier: Sequence) -> tuple:
        return self.base.lift(FinSet(tuple(carrier))).elements

    def unit(self, x):
        return self.base.fmap(inr, self.base.unit(x))

    def mult(self, tt):
        t = self.base
        return t.mult(t.fmap(lambda v: t.unit(v) if v[0] == "inl" else v[1], tt))

    def fmap(self, h: Callable, t):
        return self.base.fmap(self.plus_map(h), t)

    def zero_values(self) -> tuple:
        """T(0)."""
        return self.base.lift(FinSet(())).elements


class Handler:
    """A family of maps T(E + X) -> T(X) given by a rule valid at every carrier."""

    def __init__(self, setup: ExceptionSetup, rule: Callable[[Sequence, Any], Any]):
        self.setup = setup
        self._rule = rule

    def apply(self, carrier: Sequence, t):
        return self._rule(tuple(carrier), t)

    def component(self, carrier: Sequence) -> dict:
        return {t: self.apply(carrier, t) for t in self.setup.values(carrier)}

    def with_overrides(self, carrier: Sequence, table: Mapping) -> "Handler":
        """A copy changed at one carrier (for fault injection)."""
        key = tuple(carrier)
        inner = self._rule

        def rule(c, t):
            if c == key and t in table:
                return table[t]
            return inner(c, t)

        return Handler(self.setup, rule)


def parse_throws(setup: ExceptionSetup, throws: Mapping) -> dict:
    """Throw-map input: for a coproduct base, e -> f label; for powerset, e -> [] (empty set)."""
    out = {}
    for e in setup.exceptions:
        if e not in throws:
            raise InputError(f"throw map undefined at {e}")
        v = throws[e]
        if isinstance(setup.base, Coproduct):
            if v not in setup.base.left:
                raise InputError(f"throw target {v!r} is not in F")
            out[e] = inl(v)
        else:
            if v not in ([], (), frozenset()):
                raise InputError("the only element of P(0) is the empty set")
            out[e] = frozenset()
    extra = set(throws) - set(setup.exceptions)
    if extra:
        raise InputError(f"throw map names unknown exception {sorted(extra)[0]}")
    return out


def throw_to_handler(setup: ExceptionSetup, r: Mapping) -> Handler:
    """r-hat_X = mu . T([T(!) . r, eta])."""
    t = setup.base

    def rule(carrier, v):
        def copair(z):
            if z[0] == "inl":
                return t.fmap(_absurd, r[z[1]])
            return t.unit(z[1])

        return t.mult(t.fmap(copair, v))

    return Handler(setup, rule)


def handler_to_throw(setup: ExceptionSetup, sigma: Handler) -> dict:
    """sigma-hat = sigma_0 . T(inl) . eta."""
    t = setup.base
    return {e: sigma.apply((), t.unit(inl(e))) for e in setup.exceptions}


def all_throw_maps(setup: ExceptionSetup):
    zero = setup.zero_values()
    for image in itertools.product(zero, repeat=len(setup.exceptions)):
        yield dict(zip(setup.exceptions, image))


def carriers_up_to(n: int, prefix: str = "x") -> list[tuple]:
    return [tuple(f"{prefix}{i}" for i in range(k)) for k in range(n + 1)]


def _pairs_limited(values: Sequence, rng: random.Random, samples: int):
    """All values of size <= 2 over the given atoms, plus random larger subsets."""
    vals = list(values)
    out = [frozenset()] + [frozenset((v,)) for v in vals]
    out += [frozenset(p) for p in itertools.combinations(vals, 2)]
    for _ in range(samples):
        out.append(frozenset(v for v in vals if rng.random() < 0.3))
    return out


def check_handler_laws(
    setup: ExceptionSetup,
    sigma: Handler,
    carriers: Sequence[Sequence],
    samples: int = 100,
    seed: int = 0,
) -> Report:
    """Unit and multiplication squares of a monad map E(T) -> T, plus naturality."""
    t = setup.base
    rep = Report("handler is a monad map")
    rng = random.Random(seed)

    w = None
    for c in carriers:
        for x in c:
            if sigma.apply(c, setup.unit(x)) != t.unit(x):
                w = {"carrier": list(c), "x": x}
                break
        if w:
            break
    rep.add("sigma . eta_E = eta", w is None, w)

    w = None
    count = 0
    for c in carriers:
        inner = setup.values(c)
        outer_atoms = [inl(e) for e in setup.exceptions] + [inr(v) for v in inner]
        if isinstance(t, Coproduct):
            tts = list(t.lift(FinSet(tuple(outer_atoms))).elements)
        else:
            tts = _pairs_limited(outer_atoms, rng, samples)
        tc = setup.t_values(c)
        for tt in tts:
            count += 1
            lhs = sigma.apply(c, setup.mult(tt))
            rhs = t.mult(sigma.apply(tc, setup.fmap(lambda v: sigma.apply(c, v), tt)))
            if lhs != rhs:
                w = {"carrier": list(c), "value": tt, "lhs": lhs, "rhs": rhs}
                break
        if w:
            break
    scope = "exhaustive" if isinstance(t, Coproduct) else "all values with at most two elements plus seeded samples"
    rep.add("sigma . mu_E = mu . sigma_T . E(T)(sigma)", w is None, w, f"{count} values, {scope}")

    w = None
    checked = 0
    for cx in carriers:
        for cy in carriers:
            for h in itertools.product(cy, repeat=len(cx)):
                hm = dict(zip(cx, h))
                for v in setup.values(cx):
                    checked += 1
                    lhs = sigma.apply(cy, setup.fmap(hm.__getitem__, v))
                    rhs = t.fmap(hm.__getitem__, sigma.apply(cx, v))
                    if lhs != rhs:
                        w = {"from": list(cx), "to": list(cy), "map": hm, "value": v}
                        break
                if w:
                    break
            if w:
                break
        if w:
            break
    rep.add("naturality: sigma_Y . T(E + h) = T(h) . sigma_X", w is None, w, f"{checked} instances")
    return rep


def roundtrip_check(
    setup: ExceptionSetup,
    carriers: Sequence[Sequence],
    handler: Handler | None = None,
) -> Report:
    """throws -> handler -> throws for every throw map; handler -> throws -> handler if given."""
    rep = Report("throw/handler round trip")
    w = None
    n = 0
    for r in all_throw_maps(setup):
        n += 1
        back = handler_to_throw(setup, throw_to_handler(setup, r))
        if back != r:
            w = {"throws": r, "recovered": back}
            break
    rep.add("throws -> handler -> throws is the identity", w is None, w, f"{n} throw maps")
    if handler is not None:
        r = handler_to_throw(setup, handler)
        rebuilt = throw_to_handler(setup, r)
        w = None
        for c in carriers:
            for v in setup.values(c):
                if rebuilt.apply(c, v) != handler.apply(c, v):
                    w = {"carrier": list(c), "value": v, "handler": handler.apply(c, v), "rebuilt": rebuilt.apply(c, v)}
                    break
            if w:
                break
        rep.add("handler -> throws -> handler is the identity", w is None, w, f"{len(carriers)} carriers")
    return rep


def catch_compose(setup: ExceptionSetup, handle: Callable, f: Callable, g: Callable) -> Callable:
    """mu . T([f, g]) . handle, where handle: T(X) -> T(X + E)."""
    t = setup.base

    def run(v):
        return t.mult(t.fmap(lambda z: f(z[1]) if z[0] == "inl" else g(z[1]), handle(v)))

    return run
