"""Order-enriched checks for the downset monad on finite posets.

Downsets are handled as bitmasks over the carrier; a map out of Dwn(X) is a
dict keyed by frozensets.  Everything here is brute force over finite
structures, guarded by size limits.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Mapping

from .algebras import LatticeAlgebra
from .bases import TableBasis, _table_laws
from .errors import GuardExceeded, InputError, PreconditionError
from .finstruct import FinPoset, _bits, downward_close, monotone_maps, show
from .monads import DOWNSET
from .report import Report

KZ_GUARD = 12
WAY_BELOW_GUARD = 15
CHAIN_GUARD = 4


def _guard(what: str, size: int, guard: int | None):
    if guard is not None and size > guard:
        raise GuardExceeded(what, size, guard)


# the KZ inequality -----------------------------------------------------------


def kz_check(x: FinPoset, guard: int = KZ_GUARD) -> Report:
    """T(eta) <= eta_T pointwise on Dwn(X): {V : V under some down x, x in U} vs {V : V <= U}."""
    _guard("kz check", len(x), guard)
    ds = x.downset_masks()
    rep = Report(f"KZ inequality on {len(x)} elements")
    strict = []
    w = None
    for u in ds:
        lhs = {v for v in ds if any(v & ~x.below[i] == 0 for i in _bits(u))}
        rhs = {v for v in ds if v & ~u == 0}
        if not lhs <= rhs:
            w = {"U": x.unmask(u), "extra": x.unmask(next(iter(lhs - rhs)))}
            break
        if lhs != rhs:
            strict.append({"U": x.unmask(u), "only on the right": x.unmask(min(rhs - lhs))})
    rep.add("T(eta)(U) is contained in eta(U) for every downset U", w is None, w, f"{len(ds)} downsets")
    rep.data["strict at"] = strict
    return rep


def kz_mult_below(x: FinPoset, a: Mapping) -> Report:
    """mu <= T(a) on Dwn(Dwn(X)) for a structure map a."""
    tx = x.dwn()
    rep = Report("mu below T(a)")
    w = None
    for fam in tx.downsets():
        union = frozenset().union(*fam) if fam else frozenset()
        ta = downward_close(x, (a[u] for u in fam))
        if not union <= ta:
            w = {"family": fam, "mu": union, "T(a)": ta}
            break
    rep.add("mu(F) is contained in T(a)(F)", w is None, w)
    return rep


# algebras as reflections ---------------------------------------------------------


def _check_monotone_dwn(x: FinPoset, a: Mapping):
    ds = x.downsets()
    for u in ds:
        if u not in a:
            raise InputError(f"structure map undefined at {show(u)}")
    for u in ds:
        for v in ds:
            if u <= v and not x.le(a[u], a[v]):
                raise InputError(f"structure map is not monotone: {show(u)} <= {show(v)}")


def em_laws_dwn(x: FinPoset, a: Mapping) -> tuple[bool, Any]:
    """Both algebra laws over all of Dwn(X) and Dwn(Dwn(X))."""
    for e in x.elements:
        if a[x.principal(e)] != e:
            return False, {"law": "unit", "x": e}
    tx = x.dwn()
    for fam in tx.downsets():
        union = frozenset().union(*fam) if fam else frozenset()
        images = downward_close(x, (a[u] for u in fam))
        if a[union] != a[images]:
            return False, {"law": "multiplication", "family": fam}
    return True, None


def reflection_dwn(x: FinPoset, a: Mapping) -> tuple[bool, Any]:
    """a . down = id and U contained in down(a(U))."""
    for e in x.elements:
        if a[x.principal(e)] != e:
            return False, {"law": "a(down x) = x", "x": e}
    for u in x.downsets():
        if not u <= x.principal(a[u]):
            return False, {"law": "U below down(a(U))", "U": u}
    return True, None


def algebra_iff_reflection(x: FinPoset, a: Mapping) -> Report:
    """Compare the algebra laws with the reflection conditions for one monotone a."""
    _check_monotone_dwn(x, a)
    em, w1 = em_laws_dwn(x, a)
    refl, w2 = reflection_dwn(x, a)
    rep = Report("algebra versus reflection")
    rep.add("verdicts agree", em == refl, None if em == refl else {"algebra": w1, "reflection": w2})
    rep.data["algebra"] = em
    rep.data["reflection"] = refl
    if w1:
        rep.data["algebra failure"] = w1
    if w2:
        rep.data["reflection failure"] = w2
    return rep


def structure_maps(x: FinPoset):
    """Every monotone map Dwn(X) -> X, as dicts keyed by downsets."""
    yield from monotone_maps(x.dwn(), x)


def sweep_algebra_iff_reflection(x: FinPoset, guard: int = KZ_GUARD) -> Report:
    _guard("structure map sweep", len(x), guard)
    rep = Report(f"algebra versus reflection over all monotone maps ({len(x)} elements)")
    total = algebras = 0
    w = None
    for a in structure_maps(x):
        total += 1
        em, _ = em_laws_dwn(x, a)
        refl, _ = reflection_dwn(x, a)
        algebras += em
        if em != refl and w is None:
            w = {"a": a, "algebra": em, "reflection": refl}
    rep.add("verdicts agree on every monotone map", w is None, w, f"{total} maps")
    rep.data["monotone maps"] = total
    rep.data["algebras"] = algebras
    return rep


# coalgebras as coreflections -------------------------------------------------------


def coalgebra_iff_coreflection(alg: LatticeAlgebra, c: Mapping) -> Report:
    """For an algebra map c: X -> Dwn(X), coalgebra laws versus a . c = id and c . a <= id."""
    if alg.monad is not DOWNSET:
        raise InputError("needs a downset (frame) algebra")
    p = alg.poset
    cb = TableBasis(alg, c)
    for u in p.downsets():
        lhs = cb(alg.structure(u))
        rhs = frozenset().union(*(cb(y) for y in u)) if u else frozenset()
        if lhs != rhs:
            raise PreconditionError(
                "c is not an algebra map",
                {"U": u, "c(a(U))": lhs, "union of c over U": rhs},
            )
    laws = _table_laws(cb)
    coalg = laws.passed
    core_w = None
    for e in p.elements:
        if alg.structure(cb(e)) != e:
            core_w = {"law": "a(c(x)) = x", "x": e}
            break
    if core_w is None:
        for u in p.downsets():
            if not cb(alg.structure(u)) <= u:
                core_w = {"law": "c(a(U)) inside U", "U": u}
                break
    core = core_w is None
    rep = Report("coalgebra versus coreflection")
    rep.add("verdicts agree", coalg == core)
    rep.data["coalgebra"] = coalg
    rep.data["coreflection"] = core
    if not coalg:
        rep.data["coalgebra failure"] = [c_.name for c_ in laws.failures()]
    if core_w:
        rep.data["coreflection failure"] = core_w
    return rep


def join_left_adjoint(alg: LatticeAlgebra) -> dict | None:
    """The left adjoint of the join map Dwn(X) -> X, if it exists.

    c(x) is the least downset whose join is above x; on a finite distributive
    lattice this is the downset generated by the join-primes below x.
    """
    p = alg.poset
    ds = p.downset_masks()
    out = {}
    full = (1 << len(p)) - 1
    for i, e in enumerate(p.elements):
        cover = full
        for u in ds:
            if p.leq[i][alg.structure_mask(u)]:
                cover &= u
        if not p.leq[i][alg.structure_mask(cover)]:
            return None
        out[e] = p.unmask(cover)
    return out


def algebra_map_candidates(alg: LatticeAlgebra, guard: int = 5):
    """Every c: X -> Dwn(X) with c(a(U)) = union of c over U."""
    p = alg.poset
    _guard("algebra map enumeration", len(p), guard)
    import itertools

    ds = p.downset_masks()
    n = len(p)
    for choice in itertools.product(ds, repeat=n):
        ok = True
        for u in ds:
            acc = 0
            for y in _bits(u):
                acc |= choice[y]
            if choice[alg.structure_mask(u)] != acc:
                ok = False
                break
        if ok:
            yield {p.elements[i]: p.unmask(choice[i]) for i in range(n)}


def sweep_coalgebra_iff_coreflection(alg: LatticeAlgebra, guard: int = 5) -> Report:
    rep = Report("coalgebra versus coreflection over all algebra maps")
    total = coalgebras = 0
    w = None
    for c in algebra_map_candidates(alg, guard):
        r = coalgebra_iff_coreflection(alg, c)
        total += 1
        coalgebras += r.data["coalgebra"]
        if not r.passed and w is None:
            w = {"c": c, **r.data}
    rep.add("verdicts agree on every algebra map", w is None, w, f"{total} maps")
    rep.data["algebra maps"] = total
    rep.data["coalgebras"] = coalgebras
    return rep


# way-below ---------------------------------------------------------------------------


def _is_directed(p: FinPoset, m: int) -> bool:
    if m == 0:
        return False
    idx = list(_bits(m))
    for i in idx:
        for j in idx:
            if p.above[i] & p.above[j] & m == 0:
                return False
    return True


def way_below(lat: FinPoset, guard: int = WAY_BELOW_GUARD) -> list[list[bool]]:
    """x << y iff every directed U with y <= join U meets the up-set of x.

    Brute force over all nonempty directed subsets.
    """
    n = len(lat)
    _guard("way-below", n, guard)
    if not lat.is_lattice():
        raise InputError("way-below is computed on lattices")
    full = (1 << n) - 1
    # wb[y]: mask of x with x << y so far
    wb = [full] * n
    for m in range(1, 1 << n):
        if not _is_directed(lat, m):
            continue
        j = lat.join_index(m)
        covered = lat.down_mask(m)
        for y in _bits(lat.below[j]):
            wb[y] &= covered
    return [[bool(wb[y] >> x & 1) for y in range(n)] for x in range(n)]


def continuity_and_stability(lat: FinPoset, guard: int = WAY_BELOW_GUARD) -> Report:
    n = len(lat)
    wb = way_below(lat, guard)
    rep = Report(f"way-below on {n} elements")
    els = lat.elements

    w = next(({"x": els[x], "y": els[y]} for x in range(n) for y in range(n)
              if wb[x][y] and not lat.leq[x][y]), None)
    rep.add("x << y implies x <= y", w is None, w)

    w = None
    for y in range(n):
        m = sum(1 << x for x in range(n) if wb[x][y])
        if not _is_directed(lat, m) or lat.join_index(m) != y:
            w = {"y": els[y], "way-below set": lat.unmask(m)}
            break
    rep.add("each y is the directed join of the elements way below it", w is None, w)

    top = lat.idx(lat.top())
    rep.add("top << top", wb[top][top], None if wb[top][top] else {"top": els[top]})

    w = None
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if wb[x][y] and wb[x][z]:
                    mt = lat.greatest_in_mask(lat.lower_bounds_mask((1 << y) | (1 << z)))
                    if not wb[x][mt]:
                        w = {"x": els[x], "y": els[y], "z": els[z]}
    rep.add("x << y and x << z imply x << y meet z", w is None, w)

    w = None
    for u in range(n):
        for x in range(n):
            for y in range(n):
                for v in range(n):
                    if lat.leq[u][x] and wb[x][y] and lat.leq[y][v] and not wb[u][v]:
                        w = {"u": els[u], "x": els[x], "y": els[y], "v": els[v]}
    rep.add("u <= x << y <= v implies u << v", w is None, w)

    eq = all(wb[x][y] == lat.leq[x][y] for x in range(n) for y in range(n))
    rep.data["equals the order"] = eq
    rep.data["pairs"] = [[els[x], els[y]] for x in range(n) for y in range(n) if wb[x][y]]
    return rep


# adjunctions --------------------------------------------------------------------------


def adjunction_witness(f: Callable, g: Callable, p: FinPoset, q: FinPoset):
    """None when f -| g for f: P -> Q and g: Q -> P, else a failing instance."""
    for x in p.elements:
        if not p.le(x, g(f(x))):
            return {"unit fails at": x, "g(f(x))": g(f(x))}
    for y in q.elements:
        if not q.le(f(g(y)), y):
            return {"counit fails at": y, "f(g(y))": f(g(y))}
    for x in p.elements:
        for x2 in p.elements:
            if p.le(x, x2) and not q.le(f(x), f(x2)):
                return {"left map not monotone": [x, x2]}
    for y in q.elements:
        for y2 in q.elements:
            if q.le(y, y2) and not p.le(g(y), g(y2)):
                return {"right map not monotone": [y, y2]}
    return None


def left_adjoint_of(g: Callable, p: FinPoset, q: FinPoset) -> dict | None:
    """For g: Q -> P, the map p |-> least q with p <= g(q), or None if some least is missing."""
    out = {}
    for x in p.elements:
        m = q.mask(y for y in q.elements if p.le(x, g(y)))
        i = q.least_in_mask(m)
        if i is None:
            return None
        out[x] = q.elements[i]
    return out


def _dwn_maps(a_poset: FinPoset):
    ta = a_poset.dwn()
    tta = ta.dwn()
    eta_t = lambda u: ta.principal(u)
    mu = lambda fam: frozenset().union(*fam) if fam else frozenset()
    t_eta = lambda u: downward_close(ta, (a_poset.principal(e) for e in u))
    return ta, tta, eta_t, mu, t_eta


def adjoint_chain_verify(a_poset: FinPoset, guard: int = CHAIN_GUARD) -> Report:
    """T(a) -| T(eta) -| mu -| eta on Dwn(Dwn(A)) and Dwn(A).

    The leftmost link needs a Dwn-algebra a on A, which exists exactly when A
    is a lattice; otherwise its absence is confirmed by search.
    """
    _guard("adjoint chain", len(a_poset), guard)
    ta, tta, eta_t, mu, t_eta = _dwn_maps(a_poset)
    rep = Report(f"adjoint chain on {len(a_poset)} elements")

    w = next(({"U": u} for u in ta.elements if mu(eta_t(u)) != u), None)
    rep.add("mu . eta = id", w is None, w)
    w = next(({"U": u} for u in ta.elements if mu(t_eta(u)) != u), None)
    rep.add("mu . T(eta) = id", w is None, w)
    w = adjunction_witness(mu, eta_t, tta, ta)
    rep.add("mu -| eta", w is None, w)
    w = adjunction_witness(t_eta, mu, ta, tta)
    rep.add("T(eta) -| mu", w is None, w)

    if a_poset.is_lattice():
        join = lambda u: a_poset.join(u)
        t_a = lambda fam: downward_close(a_poset, (join(u) for u in fam))
        w = next(({"U": u} for u in ta.elements if t_a(t_eta(u)) != u), None)
        rep.add("T(a) . T(eta) = id", w is None, w)
        w = adjunction_witness(t_a, t_eta, tta, ta)
        rep.add("T(a) -| T(eta)", w is None, w)
        rep.data["leftmost link"] = "present: A is a lattice, a = join"
    else:
        found = [a for a in structure_maps(a_poset) if em_laws_dwn(a_poset, a)[0]]
        rep.add("no Dwn-algebra structure on A", not found, found[0] if found else None,
                "searched every monotone map Dwn(A) -> A")
        la = left_adjoint_of(t_eta, tta, ta)
        rep.add("T(eta) has no left adjoint", la is None, la)
        rep.data["leftmost link"] = "absent: A is not a lattice"
    return rep


@dataclass
class AdjointChain:
    """Maps b -| c -| a -| eta for a poset X with T = Dwn."""

    x: FinPoset
    b: Mapping  # Dwn(X) -> X
    c: Mapping  # X -> Dwn(X)
    a: Mapping  # Dwn(X) -> X


def canonical_chain(a_poset: FinPoset) -> AdjointChain:
    """On X = Dwn(A): b = T(join), c = T(eta), a = mu.  A must be a lattice."""
    if not a_poset.is_lattice():
        raise PreconditionError(
            "A carries no Dwn-algebra (not a lattice), so T(eta) has no left adjoint",
            {"A": list(a_poset.elements)},
        )
    ta, tta, eta_t, mu, t_eta = _dwn_maps(a_poset)
    t_a = lambda fam: downward_close(a_poset, (a_poset.join(u) for u in fam))
    return AdjointChain(
        ta,
        {f: t_a(f) for f in tta.elements},
        {u: t_eta(u) for u in ta.elements},
        {f: mu(f) for f in tta.elements},
    )


def compact_freeness(chain: AdjointChain) -> Report:
    """From b -| c -| a -| eta, recover X as free on X_c = {x : c(x) = down x}."""
    x = chain.x
    tx = x.dwn()
    eta = lambda e: x.principal(e)
    links = [
        ("b -| c", lambda: adjunction_witness(chain.b.__getitem__, chain.c.__getitem__, tx, x)),
        ("c -| a", lambda: adjunction_witness(chain.c.__getitem__, chain.a.__getitem__, x, tx)),
        ("a -| eta", lambda: adjunction_witness(chain.a.__getitem__, eta, tx, x)),
    ]
    for name, test in links:
        w = test()
        if w is not None:
            raise PreconditionError(f"adjunction {name} fails", w)
    rep = Report("freeness from an adjoint chain")
    basics = [e for e in x.elements if chain.c[e] == eta(e)]
    xc = x.subposet(basics)
    k = {e: chain.b[eta(e)] for e in x.elements}
    w = next(({"x": e, "k(x)": k[e]} for e in x.elements if k[e] not in xc), None)
    rep.add("k = b . eta lands in X_c", w is None, w)
    if w is not None:
        return rep
    phi = lambda s: chain.a[downward_close(x, s)]
    psi = lambda e: downward_close(xc, (k[y] for y in chain.c[e]))
    w = next(({"x": e, "psi": psi(e), "phi(psi)": phi(psi(e))} for e in x.elements
              if phi(psi(e)) != e), None)
    rep.add("a . T(e) then T(k) . c is the identity on X", w is None, w)
    dom = xc.downsets()
    w = next(({"S": s, "psi(phi(S))": psi(phi(s))} for s in dom if psi(phi(s)) != s), None)
    rep.add("T(k) . c then a . T(e) is the identity on Dwn(X_c)", w is None, w, f"{len(dom)} downsets")
    mono = all(x.le(phi(s), phi(t)) for s in dom for t in dom if s <= t)
    rep.add("the isomorphism is monotone", mono)
    rep.data["X_c"] = basics
    return rep
