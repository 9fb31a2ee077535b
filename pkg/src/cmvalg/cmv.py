"""Finite CMV-algebras: an MV-algebra with a compatible composition monoid.

Monoid orientation is fixed so that on function algebras the extra
operation is literal composition: (f <> g)(t) = f(g(t)).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import (
    InternalInvariantError,
    LawViolationError,
    MalformedTableError,
    SizeBoundError,
)
from .mv import (
    DEFAULT_MAX_CELLS,
    FiniteMvAlgebra,
    lukasiewicz_chain,
    mv_isomorphism,
    product_mv,
    trivial_mv,
)


class FiniteCmvAlgebra:
    """A validated CMV-algebra on indices 0..size-1.

    ``maps``/``base`` are set when the algebra is concretely an algebra of
    self-maps of ``base`` (element k is the function ``maps[k]``); abstract
    algebras (e.g. quotients) leave them None.
    """

    __slots__ = ("mv", "diamond", "identity", "maps", "base")

    def __init__(self, mv_alg: FiniteMvAlgebra, diamond, identity: int,
                 maps=None, base=None):
        n = mv_alg.size
        diamond = np.asarray(diamond, dtype=np.int64)
        if diamond.shape != (n, n):
            raise MalformedTableError(
                f"diamond must have shape {(n, n)}, got {diamond.shape}")
        if diamond.size and (diamond.min() < 0 or diamond.max() >= n):
            raise MalformedTableError("diamond contains an out-of-range index")
        if not 0 <= int(identity) < n:
            raise MalformedTableError(f"identity index {identity} out of range")
        diamond.setflags(write=False)
        self.mv = mv_alg
        self.diamond = diamond
        self.identity = int(identity)
        if maps is not None:
            maps = tuple(tuple(int(v) for v in m) for m in maps)
        self.maps = maps
        self.base = base
        self._check_laws()

    def _check_laws(self) -> None:
        n, dia, i = self.size, self.diamond, self.identity
        mv_alg = self.mv
        idx = np.arange(n)
        w = kernels.assoc_witness(dia)
        if w is not None:
            raise LawViolationError("MONOID_ASSOC", w)
        if (dia[i, :] != idx).any():
            x = int(np.flatnonzero(dia[i, :] != idx)[0])
            raise LawViolationError("MONOID_IDENTITY", (x,), "i <> x != x")
        if (dia[:, i] != idx).any():
            x = int(np.flatnonzero(dia[:, i] != idx)[0])
            raise LawViolationError("MONOID_IDENTITY", (x,), "x <> i != x")
        w = kernels.right_compat_witness(mv_alg.oplus, dia)
        if w is not None:
            raise LawViolationError("CMV_I", w, "(y+z)<>x != (y<>x)+(z<>x)")
        bad = np.argwhere(dia[mv_alg.neg, :] != mv_alg.neg[dia])
        if bad.size:
            x, y = bad[0]
            raise LawViolationError("CMV_II", (int(x), int(y)), "x*<>y != (x<>y)*")
        bad = np.flatnonzero(dia[mv_alg.zero, :] != mv_alg.zero)
        if bad.size:
            raise LawViolationError("CMV_III", (int(bad[0]),), "0<>x != 0")
        if n > 1:
            star = int(mv_alg.neg[i])
            if i in (mv_alg.zero, mv_alg.one):
                raise LawViolationError("NONTRIVIAL", (i,), "0 < i < 1 fails")
            if star == i:
                raise LawViolationError("NONTRIVIAL", (i,), "i = i*")
            if int(dia[star, star]) != i:
                raise LawViolationError("NONTRIVIAL", (star,), "i* <> i* != i")
            if n < 4:
                raise LawViolationError("NONTRIVIAL", (n,), "fewer than 4 elements")

    @property
    def size(self) -> int:
        return self.mv.size

    @property
    def is_trivial(self) -> bool:
        return self.size == 1

    @property
    def names(self):
        return self.mv.names

    def __repr__(self) -> str:
        kind = "functional " if self.maps is not None else ""
        return f"FiniteCmvAlgebra({kind}size={self.size})"


def validate_cmv(mv_alg: FiniteMvAlgebra, diamond, identity: int,
                 maps=None, base=None) -> FiniteCmvAlgebra:
    """Validate the monoid and compatibility laws, or raise with a witness."""
    return FiniteCmvAlgebra(mv_alg, diamond, identity, maps=maps, base=base)


def check_derived_compat(algebra: FiniteCmvAlgebra):
    """Compatibility of ., join, meet, minus and <= with the monoid.

    Returns None or (op name, witness).
    """
    d = algebra.mv.derived
    for name, table in (("odot", d.odot), ("vee", d.vee),
                        ("wedge", d.wedge), ("ominus", d.ominus)):
        w = kernels.right_compat_witness(table, algebra.diamond)
        if w is not None:
            return (name, w)
    w = kernels.le_right_monotone_witness(d.le, algebra.diamond)
    if w is not None:
        return ("le", w)
    return None


def incomparable_pair(algebra: FiniteCmvAlgebra):
    """Some (x, y) with neither x <= y nor y <= x, or None if a chain."""
    le = algebra.mv.derived.le
    bad = np.argwhere(~le & ~le.T)
    if bad.size == 0:
        return None
    x, y = bad[0]
    return int(x), int(y)


# ---------------------------------------------------------------------------
# Function algebras


def _maps_to_keys(maps_arr: np.ndarray, base_size: int) -> np.ndarray:
    weights = base_size ** np.arange(maps_arr.shape[1], dtype=np.int64)
    return maps_arr @ weights


def algebra_from_maps(base: FiniteMvAlgebra, maps,
                      max_cells: int = DEFAULT_MAX_CELLS) -> FiniteCmvAlgebra:
    """The algebra of the given self-maps of ``base`` under pointwise
    MV operations and composition.

    The map set must be closed and contain the zero map and the identity;
    the first missing element is reported.
    """
    maps = sorted({tuple(int(v) for v in m) for m in maps})
    n = base.size
    for m in maps:
        if len(m) != n or any(not 0 <= v < n for v in m):
            raise MalformedTableError(f"map {m} is not a self-map of the base")
    size = len(maps)
    if size * size > max_cells:
        raise SizeBoundError(f"function algebra needs {size * size} cells "
                             f"(bound {max_cells})")
    arr = np.array(maps, dtype=np.int64)
    keys = _maps_to_keys(arr, n)
    lookup = {int(k): idx for idx, k in enumerate(keys)}

    def to_index(result: np.ndarray, op_name: str) -> np.ndarray:
        flat_keys = _maps_to_keys(result.reshape(-1, n), n)
        out = np.empty(flat_keys.shape[0], dtype=np.int64)
        for pos, k in enumerate(flat_keys):
            idx = lookup.get(int(k))
            if idx is None:
                raise MalformedTableError(
                    f"map set not closed under {op_name}: "
                    f"{tuple(result.reshape(-1, n)[pos])} missing")
            out[pos] = idx
        return out.reshape(result.shape[:-1])

    oplus = to_index(base.oplus[arr[:, None, :], arr[None, :, :]], "pointwise +")
    neg = to_index(base.neg[arr], "pointwise *")
    comp = to_index(arr[:, arr], "composition")
    try:
        identity = maps.index(tuple(range(n)))
    except ValueError:
        raise MalformedTableError("identity map missing from the map set")
    try:
        zero = maps.index(tuple([base.zero] * n))
    except ValueError:
        raise MalformedTableError("zero map missing from the map set")
    names = tuple("(" + ",".join(base.names[v] for v in m) + ")" for m in maps)
    mv_alg = FiniteMvAlgebra(oplus, neg, zero, names)
    return FiniteCmvAlgebra(mv_alg, comp, identity, maps=maps, base=base)


def function_cmv(base: FiniteMvAlgebra,
                 max_cells: int = DEFAULT_MAX_CELLS) -> FiniteCmvAlgebra:
    """The full algebra of all self-maps of ``base``."""
    n = base.size
    size = n ** n
    if size * size > max_cells:
        raise SizeBoundError(f"{size}^2 cells exceed bound {max_cells}")
    maps = itertools.product(range(n), repeat=n)
    return algebra_from_maps(base, maps, max_cells=max_cells)


def is_mv_subalgebra(base: FiniteMvAlgebra, subset) -> bool:
    """Subset contains 0 and is closed under + and *."""
    sub = sorted({int(s) for s in subset})
    if any(not 0 <= s < base.size for s in sub):
        return False
    sset = set(sub)
    if base.zero not in sset:
        return False
    for x in sub:
        if int(base.neg[x]) not in sset:
            return False
        for y in sub:
            if int(base.oplus[x, y]) not in sset:
                return False
    return True


def restricted_function_cmv(base: FiniteMvAlgebra, subset,
                            max_cells: int = DEFAULT_MAX_CELLS) -> FiniteCmvAlgebra:
    """Self-maps of ``base`` sending the subalgebra ``subset`` into itself."""
    sub = sorted({int(s) for s in subset})
    if not is_mv_subalgebra(base, sub):
        raise MalformedTableError(f"{sub} is not an MV-subalgebra of the base")
    sset = set(sub)
    n = base.size
    maps = [m for m in itertools.product(range(n), repeat=n)
            if all(m[s] in sset for s in sub)]
    return algebra_from_maps(base, maps, max_cells=max_cells)


def constants_of(algebra: FiniteCmvAlgebra) -> np.ndarray:
    """Indices a with a <> x = a for all x, computed via a <> 1 = a."""
    n = algebra.size
    dia = algebra.diamond
    idx = np.arange(n)
    via_one = np.flatnonzero(dia[:, algebra.mv.one] == idx)
    via_zero = np.flatnonzero(dia[:, algebra.mv.zero] == idx)
    full = np.flatnonzero((dia == idx[:, None]).all(axis=1))
    if not (np.array_equal(via_one, full) and np.array_equal(via_zero, full)):
        raise InternalInvariantError("constant criteria disagree")
    kset = set(int(k) for k in full)
    mv_alg = algebra.mv
    if mv_alg.zero not in kset or mv_alg.one not in kset:
        raise InternalInvariantError("0 or 1 not constant")
    for a in full:
        if int(mv_alg.neg[a]) not in kset:
            raise InternalInvariantError("constants not closed under *")
        for b in full:
            if int(mv_alg.oplus[a, b]) not in kset:
                raise InternalInvariantError("constants not closed under +")
        for x in range(n):
            if int(dia[x, a]) not in kset:
                raise InternalInvariantError("constants not a left monoid ideal")
    return full


@dataclass(frozen=True)
class CayleyEmbedding:
    """The map a -> (x -> a <> x) realizing the algebra inside a function
    algebra over its own MV-reduct."""

    source: FiniteCmvAlgebra = field(repr=False)
    maps: tuple
    image: FiniteCmvAlgebra = field(repr=False)
    image_index: np.ndarray


def cayley_embed(algebra: FiniteCmvAlgebra,
                 max_cells: int = DEFAULT_MAX_CELLS) -> CayleyEmbedding:
    """Verify a -> f_a with f_a(x) = a <> x embeds the algebra into the
    function algebra over its MV-reduct; only the image is materialized."""
    n = algebra.size
    dia = algebra.diamond
    mv_alg = algebra.mv
    rows = [tuple(int(v) for v in dia[a]) for a in range(n)]
    if len(set(rows)) != n:
        raise InternalInvariantError("Cayley map is not injective")
    for a in range(n):
        for b in range(n):
            s = rows[int(mv_alg.oplus[a, b])]
            t = tuple(int(mv_alg.oplus[rows[a][x], rows[b][x]]) for x in range(n))
            if s != t:
                raise InternalInvariantError(f"f_(a+b) != f_a + f_b at {(a, b)}")
            s = rows[int(dia[a, b])]
            t = tuple(rows[a][rows[b][x]] for x in range(n))
            if s != t:
                raise InternalInvariantError(f"f_(a<>b) != f_a o f_b at {(a, b)}")
        if rows[int(mv_alg.neg[a])] != tuple(int(mv_alg.neg[v]) for v in rows[a]):
            raise InternalInvariantError(f"f_(a*) != (f_a)* at {a}")
    if rows[algebra.identity] != tuple(range(n)):
        raise InternalInvariantError("f_i is not the identity map")
    if rows[mv_alg.zero] != tuple([mv_alg.zero] * n):
        raise InternalInvariantError("f_0 is not the zero map")
    image = algebra_from_maps(mv_alg, rows, max_cells=max_cells)
    index = np.array([image.maps.index(r) for r in rows], dtype=np.int64)
    return CayleyEmbedding(algebra, tuple(rows), image, index)


def tilde_closure(base: FiniteMvAlgebra,
                  max_cells: int = DEFAULT_MAX_CELLS) -> FiniteCmvAlgebra:
    """CMV-subalgebra of the function algebra generated by the constant
    maps together with the identity, by worklist saturation."""
    n = base.size
    oplus, neg = base.oplus, base.neg
    seeds = {tuple([a] * n) for a in range(n)}
    seeds.add(tuple(range(n)))
    elems = sorted(seeds)
    seen = set(elems)
    i = 0
    while i < len(elems):
        if len(elems) ** 2 > max_cells:
            raise SizeBoundError("tilde closure exceeded the size bound")
        f = elems[i]
        new = [tuple(int(neg[v]) for v in f)]
        for j in range(i + 1):
            g = elems[j]
            new.append(tuple(int(oplus[f[t], g[t]]) for t in range(n)))
            new.append(tuple(f[g[t]] for t in range(n)))
            new.append(tuple(g[f[t]] for t in range(n)))
        for h in new:
            if h not in seen:
                seen.add(h)
                elems.append(h)
        i += 1
    return algebra_from_maps(base, elems, max_cells=max_cells)


# ---------------------------------------------------------------------------
# Endomorphism monoid and actions


def is_mv_endo(base: FiniteMvAlgebra, h) -> bool:
    h = np.asarray(h, dtype=np.int64)
    if h.shape != (base.size,):
        return False
    if int(h[base.zero]) != base.zero:
        return False
    if (base.neg[h] != h[base.neg]).any():
        return False
    return bool((h[base.oplus] == base.oplus[h[:, None], h[None, :]]).all())


@dataclass(frozen=True)
class EndoMonoid:
    """All MV-endomorphisms of one algebra with composition f [.] g = g o f."""

    base: FiniteMvAlgebra = field(repr=False)
    maps: tuple
    compose: np.ndarray
    identity_index: int


def endo_monoid(base: FiniteMvAlgebra, max_size: int = 12) -> EndoMonoid:
    """Enumerate End(base) by backtracking over images."""
    n = base.size
    if n > max_size:
        raise SizeBoundError(f"endomorphism enumeration limited to size {max_size}")
    oplus, neg, zero = base.oplus, base.neg, base.zero
    out = []
    h = [-1] * n

    def ok(k: int) -> bool:
        if k == zero and h[k] != zero:
            return False
        nk = int(neg[k])
        if nk <= k and h[nk] != int(neg[h[k]]):
            return False
        for x in range(k + 1):
            for (a, b) in ((x, k), (k, x)):
                s = int(oplus[a, b])
                if s <= k and h[s] != int(oplus[h[a], h[b]]):
                    return False
            # pairs below k whose sum lands exactly on k
            if x < k:
                for y in range(x, k):
                    if int(oplus[x, y]) == k and h[k] != int(oplus[h[x], h[y]]):
                        return False
        return True

    def place(k: int) -> None:
        if k == n:
            out.append(tuple(h))
            return
        for v in range(n):
            h[k] = v
            if ok(k):
                place(k + 1)
        h[k] = -1

    place(0)
    maps = tuple(sorted(out))
    for m in maps:
        if not is_mv_endo(base, m):
            raise InternalInvariantError("backtracking produced a non-endomorphism")
    index = {m: i for i, m in enumerate(maps)}
    k = len(maps)
    compose = np.zeros((k, k), dtype=np.int64)
    for a, f in enumerate(maps):
        for b, g in enumerate(maps):
            fg = tuple(g[f[t]] for t in range(n))
            if fg not in index:
                raise InternalInvariantError("endomorphisms not closed under [.]")
            compose[a, b] = index[fg]
    ident = index[tuple(range(n))]
    compose.setflags(write=False)
    return EndoMonoid(base, maps, compose, ident)


@dataclass(frozen=True)
class MuHom:
    """The injective monoid map y -> mu_y with mu_y(x) = x <> y, landing in
    the endomorphism monoid of the MV-reduct."""

    source: FiniteCmvAlgebra = field(repr=False)
    maps: tuple


def mu_hom(algebra: FiniteCmvAlgebra) -> MuHom:
    n = algebra.size
    dia = algebra.diamond
    cols = [tuple(int(v) for v in dia[:, y]) for y in range(n)]
    for y, col in enumerate(cols):
        if not is_mv_endo(algebra.mv, col):
            raise InternalInvariantError(f"mu_{y} is not an MV-endomorphism")
    if len(set(cols)) != n:
        raise InternalInvariantError("mu is not injective")
    for y in range(n):
        for z in range(n):
            lhs = cols[int(dia[y, z])]
            rhs = tuple(cols[z][cols[y][x]] for x in range(n))
            if lhs != rhs:
                raise InternalInvariantError(
                    f"mu_(y<>z) != mu_y [.] mu_z at {(y, z)}")
    return MuHom(algebra, tuple(cols))


def cmv_from_action(base: FiniteMvAlgebra, phi) -> FiniteCmvAlgebra:
    """Build x <> y = phi(y)(x) from an endomorphism assignment.

    The four preconditions are reported separately with witnesses.
    """
    n = base.size
    phi = [tuple(int(v) for v in p) for p in phi]
    if len(phi) != n:
        raise MalformedTableError(f"expected {n} endomorphisms, got {len(phi)}")
    for y, p in enumerate(phi):
        if not is_mv_endo(base, p):
            raise LawViolationError("ACTION_ENDO", (y,),
                                    "assigned map is not an MV-endomorphism")
    if len(set(phi)) != n:
        dup = [y for y in range(n) if phi.index(phi[y]) != y]
        raise LawViolationError("ACTION_INJECTIVE", (phi.index(phi[dup[0]]), dup[0]))
    ident = tuple(range(n))
    if ident not in phi:
        raise LawViolationError("ACTION_IDENTITY", (),
                                "identity endomorphism not in the image")
    i = phi.index(ident)
    phi_set = set(phi)
    for y in range(n):
        for z in range(n):
            # phi(y) [.] phi(z), i.e. apply phi(y) first; this orientation
            # makes x <> y := phi(y)(x) associative.
            comp = tuple(phi[z][phi[y][x]] for x in range(n))
            if comp not in phi_set:
                raise LawViolationError("ACTION_SUBMONOID", (y, z),
                                        "image not closed under [.]")
            if phi[phi[z][y]] != comp:
                raise LawViolationError("ACTION_COMPOSE", (y, z),
                                        "phi(phi(z)(y)) != phi(y) [.] phi(z)")
    for x in range(n):
        if phi[x][i] != x:
            raise LawViolationError("ACTION_UNIT", (x,), "phi(x)(i) != x")
    diamond = np.array(phi, dtype=np.int64).T
    algebra = FiniteCmvAlgebra(base, diamond, i)
    recovered = mu_hom(algebra).maps
    if tuple(recovered) != tuple(phi):
        raise InternalInvariantError("mu round-trip does not recover the action")
    return algebra


# ---------------------------------------------------------------------------
# Enumeration up to isomorphism


def cmv_isomorphism(a: FiniteCmvAlgebra, b: FiniteCmvAlgebra):
    """Bijection carrying a onto b preserving +, *, 0, <>, i; None if none."""
    if a.size != b.size:
        return None
    n = a.size
    perm0 = mv_isomorphism(a.mv, b.mv)
    if perm0 is None:
        return None
    la, lb = a.mv.derived.le, b.mv.derived.le

    def sig(alg, le, x):
        return (
            x == alg.mv.zero,
            x == alg.identity,
            int(alg.mv.oplus[x, x] == x),
            int(le[:, x].sum()),
            int(le[x, :].sum()),
            int((alg.diamond[x, :] == x).sum()),
            int((alg.diamond[:, x] == np.arange(n)).sum()),
        )
    sig_a = [sig(a, la, x) for x in range(n)]
    sig_b = [sig(b, lb, x) for x in range(n)]
    if sorted(sig_a) != sorted(sig_b):
        return None
    img = [-1] * n
    used = [False] * n

    def consistent(x, y):
        if img[int(a.mv.neg[x])] not in (-1, int(b.mv.neg[y])):
            return False
        for t in range(n):
            if img[t] == -1:
                continue
            for (p, q, bp, bq) in ((x, t, y, img[t]), (t, x, img[t], y)):
                s = int(a.mv.oplus[p, q])
                if img[s] != -1 and img[s] != int(b.mv.oplus[bp, bq]):
                    return False
                s = int(a.diamond[p, q])
                if img[s] != -1 and img[s] != int(b.diamond[bp, bq]):
                    return False
        return True

    def extend(x):
        if x == n:
            perm = np.array(img, dtype=np.int64)
            ok = (perm[a.mv.oplus] == b.mv.oplus[perm[:, None], perm[None, :]]).all()
            ok = ok and (perm[a.diamond] == b.diamond[perm[:, None], perm[None, :]]).all()
            ok = ok and (perm[a.mv.neg] == b.mv.neg[perm]).all()
            ok = ok and img[a.mv.zero] == b.mv.zero and img[a.identity] == b.identity
            return perm if ok else None
        for y in range(n):
            if used[y] or sig_a[x] != sig_b[y] or not consistent(x, y):
                continue
            img[x] = y
            used[y] = True
            res = extend(x + 1)
            if res is not None:
                return res
            img[x] = -1
            used[y] = False
        return None

    return extend(0)


def _chain_partitions(size: int):
    """Multisets of chain sizes (each >= 2) with the given product."""
    def rec(remaining, minimum):
        if remaining == 1:
            yield []
            return
        for k in range(minimum, remaining + 1):
            if remaining % k == 0:
                for rest in rec(remaining // k, k):
                    yield [k] + rest
    yield from rec(size, 2)


def _exhaustive_mv_search(size: int):
    """All MV-algebras of a tiny size by raw table search (zero fixed at 0)."""
    found = []
    idx = list(range(size))
    for neg in itertools.permutations(idx):
        if any(neg[neg[x]] != x for x in idx):
            continue
        if size > 1 and neg[0] == 0:
            continue
        free = [(i, j) for i in range(1, size) for j in range(i, size)]
        for choice in itertools.product(idx, repeat=len(free)):
            table = [[0] * size for _ in range(size)]
            for x in idx:
                table[0][x] = x
                table[x][0] = x
            for (i, j), v in zip(free, choice):
                table[i][j] = v
                table[j][i] = v
            try:
                cand = FiniteMvAlgebra(table, list(neg), 0)
            except LawViolationError:
                continue
            if not any(mv_isomorphism(cand, seen) is not None for seen in found):
                found.append(cand)
    return found


def enumerate_mv_algebras(size: int,
                          cross_check: bool = True) -> list:
    """All MV-algebras of the size up to isomorphism.

    Built from products of chains (the finite classification); at size <= 4
    an exhaustive raw table search double-checks completeness.
    """
    if size < 1:
        raise ValueError("size must be >= 1")
    if size == 1:
        return [trivial_mv()]
    catalog = [product_mv([lukasiewicz_chain(k - 1) for k in parts])
               if len(parts) > 1 else lukasiewicz_chain(parts[0] - 1)
               for parts in _chain_partitions(size)]
    if size <= 4 and cross_check:
        brute = _exhaustive_mv_search(size)
        if len(brute) != len(catalog):
            raise InternalInvariantError(
                f"catalog({len(catalog)}) and table search({len(brute)}) disagree")
        for cand in brute:
            if not any(mv_isomorphism(cand, c) is not None for c in catalog):
                raise InternalInvariantError("table search found an algebra "
                                             "outside the chain-product catalog")
    return catalog


@dataclass(frozen=True)
class CmvEnumeration:
    size: int
    algebras: list
    trivial: object


def enumerate_cmv(size: int, max_size: int = 6) -> CmvEnumeration:
    """All CMV-algebras of the size up to isomorphism.

    Diamond tables are searched column-wise through the endomorphism
    monoid of each candidate MV-reduct: every column mu_y must be an
    endomorphism with mu_y(i) = y and mu_i = id, which collapses the raw
    table space to a handful of assignments.
    """
    if size > max_size:
        raise SizeBoundError(f"enumeration limited to size {max_size}")
    trivial = None
    if size == 1:
        trivial = FiniteCmvAlgebra(trivial_mv(), [[0]], 0)
        return CmvEnumeration(size, [], trivial)
    found = []
    for mv_alg in enumerate_mv_algebras(size):
        endos = endo_monoid(mv_alg)
        for i in range(size):
            pools = []
            feasible = True
            for y in range(size):
                pool = [m for m in endos.maps if m[i] == y]
                if y == i:
                    pool = [m for m in pool if m == tuple(range(size))]
                if not pool:
                    feasible = False
                    break
                pools.append(pool)
            if not feasible:
                continue
            for assignment in itertools.product(*pools):
                if not _closed_assignment(assignment, size):
                    continue
                diamond = np.array(assignment, dtype=np.int64).T
                try:
                    cand = FiniteCmvAlgebra(mv_alg, diamond, i)
                except LawViolationError:
                    continue
                if not any(cmv_isomorphism(cand, seen) is not None
                           for seen in found):
                    found.append(cand)
    return CmvEnumeration(size, found, trivial)


def _closed_assignment(mu, n: int) -> bool:
    for y in range(n):
        for z in range(n):
            target = mu[mu[z][y]]
            for x in range(n):
                if target[x] != mu[z][mu[y][x]]:
                    return False
    return True


def cmv_subalgebra(parent: FiniteCmvAlgebra, subset) -> tuple:
    """Re-index a closed subset as a standalone algebra.

    Returns (algebra, index array into the parent).  Function metadata is
    inherited so the sub-tables can be cross-checked against the maps.
    """
    sub = sorted({int(s) for s in subset})
    sset = set(sub)
    need = {parent.mv.zero, parent.identity}
    if not need <= sset:
        raise MalformedTableError("subalgebra must contain 0 and i")
    for x in sub:
        if int(parent.mv.neg[x]) not in sset:
            raise MalformedTableError(f"not closed under * at {x}")
        for y in sub:
            if int(parent.mv.oplus[x, y]) not in sset:
                raise MalformedTableError(f"not closed under + at {(x, y)}")
            if int(parent.diamond[x, y]) not in sset:
                raise MalformedTableError(f"not closed under <> at {(x, y)}")
    pos = {x: k for k, x in enumerate(sub)}
    idx = np.array(sub, dtype=np.int64)
    reindex = np.vectorize(pos.get)
    oplus = reindex(parent.mv.oplus[np.ix_(idx, idx)])
    neg = reindex(parent.mv.neg[idx])
    dia = reindex(parent.diamond[np.ix_(idx, idx)])
    names = tuple(parent.mv.names[x] for x in sub)
    maps = None
    if parent.maps is not None:
        maps = tuple(parent.maps[x] for x in sub)
    mv_alg = FiniteMvAlgebra(oplus, neg, pos[parent.mv.zero], names)
    alg = FiniteCmvAlgebra(mv_alg, dia, pos[parent.identity],
                           maps=maps, base=parent.base)
    return alg, idx
