"""Brute-force search for gadget sets that the density pipeline certifies.

Gadgets are 1-qubit-output (k = 1) and are enumerated in a fixed order. Their
normalized actions form a pool, deduplicated up to sign. An element enters a
candidate only together with its inverse partner (up to sign), so candidates
are unions of such "units" and are always inverse closed.

With word depth 1 every pipeline stage is a union over elements or ordered
pairs: a set is DENSE iff it holds a loxodromic element, a non-elementary pair
and a pair firing a discreteness rule. A smallest DENSE set containing the
newest unit is therefore that unit plus the units of at most three such
providers, which is what the candidate step enumerates.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .circuit import Circuit, GateSet, Placement, assemble_unitary
from .criterion import CriterionReport, density_pipeline, discrete_pair, is_elementary_pair
from .errors import BadParam
from .gadget import Gadget, GeneratorSet, project
from .linalg import DEFAULT_TOL, Tolerance, det, inv2, principal_root, trace

_SWAP = np.eye(4)[[0, 2, 1, 3]]


@dataclass(frozen=True)
class SearchBounds:
    max_qubits: int = 3
    max_depth: int = 4
    max_gadgets_in_set: int = 6
    dedupe_eps: float = 1e-8
    budget: int | None = None

    def __post_init__(self):
        if not 1 <= self.max_qubits <= 4:
            raise BadParam("max_qubits must be in 1..4")
        if not 0 <= self.max_depth <= 6:
            raise BadParam("max_depth must be in 0..6")
        if not 1 <= self.max_gadgets_in_set <= 8:
            raise BadParam("max_gadgets_in_set must be in 1..8")
        if not self.dedupe_eps > 0:
            raise BadParam("dedupe_eps must be positive")
        if self.budget is not None and self.budget < 0:
            raise BadParam("budget must be non-negative")


def _placements(s: GateSet, j: int) -> list[tuple[int, tuple[int, ...]]]:
    out = []
    for gi, g in enumerate(s.gates):
        if g.arity > j:
            continue
        symmetric = g.arity == 2 and np.allclose(_SWAP @ g.matrix @ _SWAP, g.matrix)
        for t in itertools.permutations(range(j), g.arity):
            if symmetric and list(t) != sorted(t):
                continue
            out.append((gi, t))
    return sorted(out)


def moment_alphabet(s: GateSet, j: int) -> list[tuple[Placement, ...]]:
    """Non-empty sets of disjoint placements, in lexicographic order of placement index."""
    pl = _placements(s, j)
    moments = []

    def grow(start, used, chosen):
        if chosen:
            moments.append(tuple(chosen))
        for i in range(start, len(pl)):
            gi, t = pl[i]
            if used.isdisjoint(t):
                grow(i + 1, used | set(t), chosen + [i])

    grow(0, frozenset(), [])
    moments.sort()
    return [tuple(Placement(s.gates[pl[i][0]].name, pl[i][1]) for i in m) for m in moments]


def _patterns(j: int):
    """(ancilla map, postselect map) pairs for k = 1 in lexicographic order."""
    subsets = list(itertools.combinations(range(j), j - 1))
    bits = list(itertools.product((0, 1), repeat=j - 1))
    for aq, ab, pq, pb in itertools.product(subsets, bits, subsets, bits):
        yield dict(zip(aq, ab)), dict(zip(pq, pb))


def _circuits(s: GateSet, b: SearchBounds) -> Iterator[Circuit]:
    for j in range(1, b.max_qubits + 1):
        alphabet = moment_alphabet(s, j)
        for d in range(b.max_depth + 1):
            for ms in itertools.product(alphabet, repeat=d):
                yield Circuit(j, ms)


def enumerate_gadgets(s: GateSet, b: SearchBounds) -> Iterator[Gadget]:
    """All k = 1 gadgets within bounds: qubits, then depth, then moments, then patterns."""
    n = 0
    for c in _circuits(s, b):
        for anc, post in _patterns(c.qubits):
            yield Gadget(f"g{n}", c, anc, post)
            n += 1


# --- pool -----------------------------------------------------------------------

def fingerprint(m: np.ndarray, eps: float) -> tuple:
    """Entries rounded to multiples of ``eps`` after fixing the overall sign."""
    flat = m.flatten()
    for x in flat:
        if abs(x) > 10 * eps:
            if x.real < -10 * eps or (abs(x.real) <= 10 * eps and x.imag < 0):
                flat = -flat
            break
    return tuple(int(v) for x in flat for v in (round(x.real / eps), round(x.imag / eps)))


@dataclass
class _Entry:
    index: int  # stream index of the gadget
    gadget: Gadget
    matrix: np.ndarray
    unit: int | None = None


@dataclass
class SearchResult:
    witness: GeneratorSet | None
    report: CriterionReport | None
    gadgets: list[Gadget]
    evaluated: int
    pool_size: int
    cursor: str | None
    exhausted: bool
    caveat: str | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.witness is not None

    def to_dict(self) -> dict:
        return {
            "found": self.found,
            "witness": self.witness.labels if self.witness else None,
            "overall": self.report.overall if self.report else None,
            "evaluated": self.evaluated,
            "pool_size": self.pool_size,
            "cursor": self.cursor,
            "exhausted": self.exhausted,
            "caveat": self.caveat,
        }


def _normalized(g: Gadget, u: np.ndarray, tol: Tolerance) -> np.ndarray | None:
    raw = project(u, g)
    d = det(raw)
    if abs(d) <= tol.det_eps:
        return None
    return raw / principal_root(d, 2, tol)


def _actions(chunk, s, tol):
    out = []
    for c in chunk:
        u = assemble_unitary(c, s)
        out.append([(anc, post, u) for anc, post in _patterns(c.qubits)])
    return out


def _bits(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


class _Searcher:
    def __init__(self, b: SearchBounds, tol: Tolerance):
        self.b = b
        self.tol = tol
        self.pool: list[_Entry] = []
        self.by_fp: dict[tuple, int] = {}
        self.units: list[tuple[int, ...]] = []
        self.size: list[int] = []
        self.lox_mask = 0
        self.ne_adj: list[int] = []  # unit -> units it forms a non-elementary pair with
        self.d_adj: list[int] = []  # unit -> units it forms a discrete-firing pair with
        self.ne_opts: set[int] = set()
        self.d_opts: set[int] = set()
        self.best_ab: tuple | None = None  # smallest loxodromic-free NE/D provider union

    # -- pool ---------------------------------------------------------------------

    def add(self, e: _Entry) -> int | None:
        """Add to the pool; return the new unit index if the entry completes one."""
        fp = fingerprint(e.matrix, self.b.dedupe_eps)
        if fp in self.by_fp:
            return None
        pos = len(self.pool)
        self.pool.append(e)
        self.by_fp[fp] = pos
        partner = self.by_fp.get(fingerprint(inv2(e.matrix), self.b.dedupe_eps))
        if partner is None:
            return None
        if partner != pos and self.pool[partner].unit is not None:
            return None
        members = (pos,) if partner == pos else (partner, pos)
        u = len(self.units)
        for m in members:
            self.pool[m].unit = u
        self.units.append(members)
        self.size.append(len(members))
        self._index_unit(u)
        return u

    def _index_unit(self, u: int) -> None:
        tol = self.tol
        bit = 1 << u
        if any(abs(trace(self.pool[m].matrix).imag) > tol.eq_eps for m in self.units[u]):
            self.lox_mask |= bit
        self.ne_adj.append(0)
        self.d_adj.append(0)
        new_ne, new_d = set(), set()
        for v in range(u + 1):
            for x in self.units[u]:
                for y in self.units[v]:
                    if x == y:
                        continue
                    g, h = self.pool[x].matrix, self.pool[y].matrix
                    ne = not is_elementary_pair(g, h, tol).elementary
                    d = bool(discrete_pair(g, h, tol)[0]) or bool(discrete_pair(h, g, tol)[0])
                    opt = bit | (1 << v)
                    if ne:
                        self.ne_adj[u] |= 1 << v
                        self.ne_adj[v] |= bit
                        new_ne.add(opt)
                    if d:
                        self.d_adj[u] |= 1 << v
                        self.d_adj[v] |= bit
                        new_d.add(opt)
        new_ne -= self.ne_opts
        new_d -= self.d_opts
        self.ne_opts |= new_ne
        self.d_opts |= new_d
        for a in new_ne:
            for b in self.d_opts:
                self._offer_ab(a | b)
        for b in new_d:
            for a in self.ne_opts - new_ne:
                self._offer_ab(a | b)

    def _members(self, mask: int) -> int:
        return sum(self.size[u] for u in _bits(mask))

    def _key(self, mask: int) -> tuple:
        return (self._members(mask), _bits(mask))

    def _offer_ab(self, mask: int) -> None:
        if mask & self.lox_mask:
            return
        k = self._key(mask)
        if self.best_ab is None or k < self.best_ab[0]:
            self.best_ab = (k, mask)

    # -- candidates -----------------------------------------------------------------

    def dense(self, mask: int) -> bool:
        if not mask & self.lox_mask:
            return False
        us = _bits(mask)
        return (any(self.ne_adj[u] & mask for u in us)
                and any(self.d_adj[u] & mask for u in us))

    def best_with(self, n: int) -> int | None:
        """Smallest DENSE unit set containing unit ``n`` in which ``n`` is needed.

        Sets are ordered by member count, then by their sorted unit indices.
        """
        nbit = 1 << n
        cap = self.b.max_gadgets_in_set
        lox_units = sorted(_bits(self.lox_mask), key=lambda u: (self.size[u], u))
        best = None

        def offer(mask):
            nonlocal best
            if self._members(mask) > cap or self.dense(mask & ~nbit):
                return
            k = self._key(mask)
            if best is None or k < best[0]:
                best = (k, mask)

        def with_lox(m):
            if m & self.lox_mask:
                offer(m)
                return
            for c in lox_units:
                mc = m | (1 << c)
                if not self.dense(mc & ~nbit):
                    offer(mc)
                    return

        for a in self.ne_opts:
            a_has = a & nbit
            for b in self.d_opts:
                if a_has or b & nbit:
                    m = nbit | a | b
                    if best is None or self._members(m) <= best[0][0]:
                        with_lox(m)
        if self.lox_mask & nbit and self.best_ab is not None:
            offer(nbit | self.best_ab[1])
        return None if best is None else best[1]

    def generator_set(self, mask: int) -> tuple[GeneratorSet, list[Gadget]]:
        members = sorted(m for u in _bits(mask) for m in self.units[u])
        gadgets = [self.pool[m].gadget for m in members]
        gs = GeneratorSet(tuple((g.name, self.pool[m].matrix) for m, g in zip(members, gadgets)))
        return gs, gadgets


def parse_cursor(cursor: str | None) -> int:
    if not cursor:
        return 0
    try:
        idx = int(cursor)
    except ValueError:
        raise BadParam(f"malformed cursor {cursor!r}") from None
    if idx < 0:
        raise BadParam(f"malformed cursor {cursor!r}")
    return idx


def find_witnesses(s: GateSet, b: SearchBounds = SearchBounds(), tol: Tolerance = DEFAULT_TOL,
                   cursor: str | None = None, workers: int = 1) -> SearchResult:
    """Stream gadgets and return the first DENSE generator set, if any.

    The cursor of a result is the stream index to resume from: after a witness
    it points past the gadget that completed it, after a budget stop at the
    first gadget not evaluated. Gadgets before the cursor are replayed into
    the pool without searching. Output does not depend on ``workers``.
    """
    start = parse_cursor(cursor)
    caveat = None
    if not s.has_entangler(tol):
        caveat = "gate set has no entangling gate; the hardness criterion presumes one"
    srch = _Searcher(b, tol)
    evaluated = 0
    circuits = _circuits(s, b)
    n = 0
    with ThreadPoolExecutor(max(1, workers)) as ex:
        chunk = 32
        while True:
            batch = list(itertools.islice(circuits, chunk * max(1, workers)))
            if not batch:
                break
            parts = [batch[i:i + chunk] for i in range(0, len(batch), chunk)]
            results = list(ex.map(lambda p: _actions(p, s, tol), parts))
            for part, res in zip(parts, results):
                for c, rows in zip(part, res):
                    for anc, post, u in rows:
                        idx = n
                        n += 1
                        replay = idx < start
                        if not replay:
                            if b.budget is not None and evaluated >= b.budget:
                                return SearchResult(None, None, [], evaluated, len(srch.pool),
                                                    str(idx), False, caveat)
                            evaluated += 1
                        g = Gadget(f"g{idx}", c, anc, post)
                        m = _normalized(g, u, tol)
                        if m is None:
                            continue
                        unit = srch.add(_Entry(idx, g, m))
                        if unit is None or replay:
                            continue
                        mask = srch.best_with(unit)
                        if mask is None:
                            continue
                        gs, gadgets = srch.generator_set(mask)
                        rep = density_pipeline(gs, tol)
                        if rep.dense:
                            return SearchResult(gs, rep, gadgets, evaluated, len(srch.pool),
                                                str(idx + 1), False, caveat)
    return SearchResult(None, None, [], evaluated, len(srch.pool), None, True, caveat,
                        [f"stream length {n}"])


__all__ = [
    "SearchBounds", "SearchResult", "enumerate_gadgets", "find_witnesses", "fingerprint",
    "moment_alphabet", "parse_cursor",
]
