"""Reaction network construction and its structural invariants.

Networks are stored with exact rational stoichiometry: the complex matrix Y,
the incidence matrix Ia and the stoichiometric matrix N = Y @ Ia are nested
tuples of Fractions, so every rank-derived quantity (dim S, deficiency,
independence of decompositions) is an exact integer. Float copies are only
produced on demand for the numeric solvers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import rational


class CrnError(Exception):
    """Base class for all analysis errors raised by this package."""


class DuplicateSpeciesError(CrnError):
    pass


class DuplicateComplexError(CrnError):
    pass


class DuplicateReactionError(CrnError):
    pass


class SelfLoopReactionError(CrnError):
    pass


class UnusedComplexError(CrnError):
    pass


class UnusedSpeciesError(CrnError):
    pass


class NegativeCoefficientError(CrnError):
    pass


@dataclass(frozen=True)
class Complex:
    """A formal nonnegative rational combination of the species."""

    coeffs: tuple[Fraction, ...]

    def format(self, species: tuple[str, ...]) -> str:
        parts = []
        for c, name in zip(self.coeffs, species):
            if c == 0:
                continue
            parts.append(name if c == 1 else f"{c} {name}")
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class Reaction:
    reactant: int
    product: int
    label: str


@dataclass(frozen=True)
class ReactionNetwork:
    species: tuple[str, ...]
    complexes: tuple[Complex, ...]
    reactions: tuple[Reaction, ...]
    y: tuple[tuple[Fraction, ...], ...]   # m x n
    ia: tuple[tuple[Fraction, ...], ...]  # n x r
    n: tuple[tuple[Fraction, ...], ...]   # m x r

    @property
    def num_species(self) -> int:
        return len(self.species)

    @property
    def num_complexes(self) -> int:
        return len(self.complexes)

    @property
    def num_reactions(self) -> int:
        return len(self.reactions)

    @property
    def reactant_complexes(self) -> tuple[int, ...]:
        """Indices of complexes that appear as a reactant, in index order."""
        return tuple(sorted({r.reactant for r in self.reactions}))

    def y_array(self) -> np.ndarray:
        return np.array(self.y, dtype=float)

    def ia_array(self) -> np.ndarray:
        return np.array(self.ia, dtype=float)

    def n_array(self) -> np.ndarray:
        return np.array(self.n, dtype=float)

    def reactions_by_reactant(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for qi, r in enumerate(self.reactions):
            out.setdefault(r.reactant, []).append(qi)
        return out


@dataclass(frozen=True)
class StructuralInvariants:
    m: int
    n: int
    n_r: int
    r: int
    l: int
    sl: int
    t: int
    s: int
    delta: int
    weakly_reversible: bool
    t_minimal: bool
    cycle_terminal: bool
    conservative: bool
    linkage_partition: tuple[tuple[int, ...], ...]   # reaction indices per class
    terminal_classes: tuple[tuple[int, ...], ...]    # complex indices per class


def build_network(species, complexes, reactions) -> ReactionNetwork:
    """Assemble a validated network from raw lists.

    species: list of unique names. complexes: list of coefficient vectors
    (ints, Fractions or 'p/q' strings; floats rejected). reactions: list of
    (reactant_index, product_index) or (reactant_index, product_index, label).
    """
    species = tuple(species)
    seen: dict[str, int] = {}
    for name in species:
        if not name:
            raise DuplicateSpeciesError("empty species name")
        if name in seen:
            raise DuplicateSpeciesError(f"duplicate species {name!r}")
        seen[name] = 1

    m = len(species)
    built: list[Complex] = []
    for ci, coeffs in enumerate(complexes):
        vec = tuple(rational.frac(c) for c in coeffs)
        if len(vec) != m:
            raise CrnError(f"complex {ci} has {len(vec)} coefficients, expected {m}")
        for c, name in zip(vec, species):
            if c < 0:
                raise NegativeCoefficientError(
                    f"complex {ci} has negative coefficient {c} for {name}")
        cpx = Complex(vec)
        if cpx in built:
            raise DuplicateComplexError(
                f"duplicate complex {cpx.format(species)!r} at index {ci}")
        built.append(cpx)
    n = len(built)

    rxns: list[Reaction] = []
    seen_pairs: set[tuple[int, int]] = set()
    for qi, item in enumerate(reactions):
        if len(item) == 3:
            reactant, product, label = item
        else:
            reactant, product = item
            label = f"R{qi + 1}"
        if not (0 <= reactant < n and 0 <= product < n):
            raise CrnError(f"reaction {label}: complex index out of range")
        if reactant == product:
            raise SelfLoopReactionError(
                f"reaction {label}: reactant and product are both "
                f"{built[reactant].format(species)!r}")
        if (reactant, product) in seen_pairs:
            raise DuplicateReactionError(
                f"reaction {label} duplicates an earlier reactant/product pair")
        seen_pairs.add((reactant, product))
        rxns.append(Reaction(reactant, product, str(label)))
    r = len(rxns)

    used = {rx.reactant for rx in rxns} | {rx.product for rx in rxns}
    for ci in range(n):
        if ci not in used:
            raise UnusedComplexError(
                f"complex {built[ci].format(species)!r} appears in no reaction")
    for si, name in enumerate(species):
        if all(cpx.coeffs[si] == 0 for cpx in built):
            raise UnusedSpeciesError(f"species {name!r} appears in no complex")

    zero = Fraction(0)
    y = tuple(tuple(built[ci].coeffs[si] for ci in range(n)) for si in range(m))
    ia_rows = [[zero] * r for _ in range(n)]
    for qi, rx in enumerate(rxns):
        ia_rows[rx.reactant][qi] = Fraction(-1)
        ia_rows[rx.product][qi] = Fraction(1)
    ia = tuple(tuple(row) for row in ia_rows)
    n_mat = tuple(tuple(row) for row in rational.matmul([list(rw) for rw in y],
                                                        [list(rw) for rw in ia]))
    return ReactionNetwork(species, tuple(built), tuple(rxns), y, ia, n_mat)


def rational_rank(mat) -> int:
    """Exact rank of a rational matrix (deterministic, no tolerances)."""
    return rational.rank(mat)


def _undirected_components(n_nodes: int, edges: list[tuple[int, int]]) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(n_nodes)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = [False] * n_nodes
    comps = []
    for root in range(n_nodes):
        if seen[root]:
            continue
        comp = []
        stack = [root]
        seen[root] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _strongly_connected_components(n_nodes: int, succ: list[list[int]]) -> list[list[int]]:
    """Tarjan's algorithm, iterative to be safe on deep graphs."""
    index_of = [-1] * n_nodes
    low = [0] * n_nodes
    on_stack = [False] * n_nodes
    stack: list[int] = []
    sccs: list[list[int]] = []
    counter = 0
    for root in range(n_nodes):
        if index_of[root] != -1:
            continue
        index_of[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        call: list[tuple[int, int]] = [(root, 0)]
        while call:
            v, ptr = call[-1]
            advanced = False
            while ptr < len(succ[v]):
                w = succ[v][ptr]
                ptr += 1
                if index_of[w] == -1:
                    index_of[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    call[-1] = (v, ptr)
                    call.append((w, 0))
                    advanced = True
                    break
                if on_stack[w] and index_of[w] < low[v]:
                    low[v] = index_of[w]
            if advanced:
                continue
            call.pop()
            if call:
                u = call[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
            if low[v] == index_of[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                sccs.append(sorted(comp))
    return sccs


def linkage_classes(net: ReactionNetwork) -> list[list[int]]:
    """Connected components of the undirected reaction graph (complex indices)."""
    edges = [(rx.reactant, rx.product) for rx in net.reactions]
    return _undirected_components(net.num_complexes, edges)


def is_conservative(net: ReactionNetwork) -> tuple[bool, tuple[Fraction, ...] | None]:
    """Whether S-perp contains a strictly positive vector, with an exact witness.

    Decided by exact rational feasibility of N^T z = 0, z >= 1 (positivity is
    scale invariant), so the verdict carries no float tolerance.
    """
    nt = rational.transpose([list(row) for row in net.n])
    z = rational.positive_kernel_vector(nt)
    if z is None:
        return False, None
    return True, tuple(z)


def structural_invariants(net: ReactionNetwork) -> StructuralInvariants:
    """All scalar invariants and class partitions of the reaction graph."""
    m, n, r = net.num_species, net.num_complexes, net.num_reactions
    n_r = len(net.reactant_complexes)

    comps = linkage_classes(net)
    l = len(comps)
    comp_of = {}
    for idx, comp in enumerate(comps):
        for c in comp:
            comp_of[c] = idx
    linkage_partition = tuple(
        tuple(qi for qi, rx in enumerate(net.reactions) if comp_of[rx.reactant] == idx)
        for idx in range(l)
    )

    succ: list[list[int]] = [[] for _ in range(n)]
    for rx in net.reactions:
        succ[rx.reactant].append(rx.product)
    sccs = _strongly_connected_components(n, succ)
    sl = len(sccs)
    scc_of = {}
    for idx, comp in enumerate(sccs):
        for c in comp:
            scc_of[c] = idx
    outgoing = [False] * sl
    for rx in net.reactions:
        if scc_of[rx.reactant] != scc_of[rx.product]:
            outgoing[scc_of[rx.reactant]] = True
    terminal = tuple(tuple(sccs[i]) for i in range(sl) if not outgoing[i])
    t = len(terminal)

    sccs_per_component = [0] * l
    for comp in sccs:
        sccs_per_component[comp_of[comp[0]]] += 1
    weakly_reversible = all(c == 1 for c in sccs_per_component)

    s = rational.rank([list(row) for row in net.n])
    delta = n - l - s
    conservative, _ = is_conservative(net)

    return StructuralInvariants(
        m=m, n=n, n_r=n_r, r=r, l=l, sl=sl, t=t, s=s, delta=delta,
        weakly_reversible=weakly_reversible,
        t_minimal=(t == l),
        cycle_terminal=(n - n_r == 0),
        conservative=conservative,
        linkage_partition=linkage_partition,
        terminal_classes=terminal,
    )


def stoichiometric_basis(net: ReactionNetwork) -> list[list[Fraction]]:
    """Exact basis of the stoichiometric subspace S (as row vectors)."""
    cols = rational.column_basis([list(row) for row in net.n])
    return [list(v) for v in cols]
