"""Decompositions of the reaction set and their independence verdicts.

A decomposition partitions the reactions; each part induces a subnetwork on
the complexes and species it touches. Independence (stoichiometric subspaces
sum directly), incidence independence (incidence images sum directly) and
bi-independence (both) are decided with exact ranks, so the deficiency
inequalities they certify are exact integer claims.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kinetics import (InvalidKineticsError, Kinetics, PolyPLKinetics,
                       PowerLawKinetics)
from .network import (CrnError, ReactionNetwork, build_network,
                      structural_invariants)


class EmptySelectionError(CrnError):
    pass


class NotAPartitionError(CrnError):
    pass


class TooLargeError(CrnError):
    pass


_SEARCH_GUARD = 12  # set partitions beyond this reaction count are not desk scale


@dataclass(frozen=True)
class SubnetworkSummary:
    reactions: tuple[int, ...]
    n: int
    l: int
    s: int
    delta: int


@dataclass(frozen=True)
class Decomposition:
    parts: tuple[tuple[int, ...], ...]
    summaries: tuple[SubnetworkSummary, ...]

    @property
    def deficiency_sum(self) -> int:
        return sum(p.delta for p in self.summaries)


@dataclass(frozen=True)
class IndependenceVerdict:
    independent: bool
    incidence_independent: bool
    bi_independent: bool
    deficiency: int
    deficiency_sum: int
    relation: str | None  # which deficiency inequality is certified


def subnetwork(net: ReactionNetwork, reactions) -> ReactionNetwork:
    """The subnetwork induced by a set of reaction indices.

    Keeps exactly the complexes and species the chosen reactions touch,
    in their original index order; reaction labels are preserved.
    """
    idxs = sorted(set(int(q) for q in reactions))
    if not idxs:
        raise EmptySelectionError("no reactions selected")
    if idxs[0] < 0 or idxs[-1] >= net.num_reactions:
        raise CrnError("reaction index out of range")
    touched_cpx = sorted({net.reactions[q].reactant for q in idxs}
                         | {net.reactions[q].product for q in idxs})
    cpx_map = {c: i for i, c in enumerate(touched_cpx)}
    touched_sp = sorted({si for c in touched_cpx
                         for si in range(net.num_species)
                         if net.complexes[c].coeffs[si] != 0})
    species = [net.species[si] for si in touched_sp]
    complexes = [[net.complexes[c].coeffs[si] for si in touched_sp] for c in touched_cpx]
    rxns = [(cpx_map[net.reactions[q].reactant], cpx_map[net.reactions[q].product],
             net.reactions[q].label) for q in idxs]
    return build_network(species, complexes, rxns)


def restrict_kinetics(kin: Kinetics, reactions, species_keep=None) -> Kinetics:
    """Kinetics of a subnetwork: row restriction of orders and rates.

    When `species_keep` is given, order columns are restricted too; a kept
    reaction whose orders touch a dropped species cannot be restricted and
    raises.
    """
    idxs = sorted(set(int(q) for q in reactions))
    if isinstance(kin, PowerLawKinetics):
        orders = kin.orders[idxs]
        exact = (tuple(kin.exact_orders[q] for q in idxs)
                 if kin.exact_orders is not None else None)
        if species_keep is not None:
            keep = list(species_keep)
            dropped = [i for i in range(kin.num_species) if i not in keep]
            if dropped and np.any(orders[:, dropped] != 0):
                raise InvalidKineticsError(
                    "kinetic orders reference a species outside the subnetwork")
            orders = orders[:, keep]
            if exact is not None:
                exact = tuple(tuple(row[i] for i in keep) for row in exact)
        return PowerLawKinetics(orders, kin.rates[idxs], exact)
    if isinstance(kin, PolyPLKinetics):
        coeffs = tuple(kin.term_coeffs[q] for q in idxs)
        orders = tuple(kin.term_orders[q] for q in idxs)
        e_c = (tuple(kin.exact_term_coeffs[q] for q in idxs)
               if kin.exact_term_coeffs is not None else None)
        e_o = (tuple(kin.exact_term_orders[q] for q in idxs)
               if kin.exact_term_orders is not None else None)
        if species_keep is not None:
            keep = list(species_keep)
            dropped = [i for i in range(kin.num_species) if i not in keep]
            if dropped and any(np.any(f[:, dropped] != 0) for f in orders):
                raise InvalidKineticsError(
                    "kinetic orders reference a species outside the subnetwork")
            orders = tuple(f[:, keep] for f in orders)
            if e_o is not None:
                e_o = tuple(tuple(tuple(row[i] for i in keep) for row in rows)
                            for rows in e_o)
        return PolyPLKinetics(coeffs, orders, kin.rates[idxs], e_c, e_o)
    raise InvalidKineticsError("only power-law and poly-PL kinetics restrict to parts")


def _validate_partition(net: ReactionNetwork, parts) -> list[tuple[int, ...]]:
    cleaned = [tuple(sorted(set(int(q) for q in part))) for part in parts]
    if any(not part for part in cleaned):
        raise NotAPartitionError("empty part")
    flat = [q for part in cleaned for q in part]
    if sorted(flat) != list(range(net.num_reactions)):
        raise NotAPartitionError("parts must partition the reaction set")
    return cleaned


def decompose(net: ReactionNetwork, parts) -> Decomposition:
    cleaned = _validate_partition(net, parts)
    summaries = []
    for part in cleaned:
        inv = structural_invariants(subnetwork(net, part))
        summaries.append(SubnetworkSummary(part, inv.n, inv.l, inv.s, inv.delta))
    return Decomposition(tuple(cleaned), tuple(summaries))


def check_decomposition(net: ReactionNetwork, parts) -> IndependenceVerdict:
    """Independence / incidence independence / bi-independence, exactly."""
    deco = decompose(net, parts)
    inv = structural_invariants(net)
    s_sum = sum(p.s for p in deco.summaries)
    im_sum = sum(p.n - p.l for p in deco.summaries)
    independent = (inv.s == s_sum)
    incidence = (inv.n - inv.l == im_sum)
    bi = independent and incidence
    if bi:
        relation = "delta == sum(delta_i)"
    elif independent:
        relation = "delta <= sum(delta_i)"
    elif incidence:
        relation = "delta >= sum(delta_i)"
    else:
        relation = None
    return IndependenceVerdict(
        independent=independent,
        incidence_independent=incidence,
        bi_independent=bi,
        deficiency=inv.delta,
        deficiency_sum=deco.deficiency_sum,
        relation=relation,
    )


def linkage_class_parts(net: ReactionNetwork) -> tuple[tuple[int, ...], ...]:
    """The linkage-class decomposition of the reaction set."""
    return structural_invariants(net).linkage_partition


class _RankTracker:
    """Incremental exact rank of a growing set of rational column vectors."""

    def __init__(self):
        self.echelon: list[list] = []

    def copy(self) -> "_RankTracker":
        out = _RankTracker()
        out.echelon = [row[:] for row in self.echelon]
        return out

    def add(self, vec) -> None:
        v = list(vec)
        for row in self.echelon:
            lead = next((i for i, x in enumerate(row) if x != 0), None)
            if lead is not None and v[lead] != 0:
                f = v[lead] / row[lead]
                v = [a - f * b for a, b in zip(v, row)]
        if any(x != 0 for x in v):
            self.echelon.append(v)

    @property
    def rank(self) -> int:
        return len(self.echelon)


def search_decompositions(net: ReactionNetwork, predicate: str,
                          max_parts: int | None = None) -> list[Decomposition]:
    """All partitions of the reaction set satisfying the predicate.

    predicate: 'independent', 'incidence_independent' or 'bi_independent'.
    Enumerates restricted-growth strings in lexicographic order, pruning any
    prefix whose running per-part rank sums already exceed the whole
    network's rank (rank sums only grow as reactions are added, so such a
    prefix cannot finish at equality). Deterministic output order.
    """
    if predicate not in ("independent", "incidence_independent", "bi_independent"):
        raise ValueError(f"unknown predicate {predicate!r}")
    r = net.num_reactions
    if r > _SEARCH_GUARD:
        raise TooLargeError(f"{r} reactions exceed the desk-scale guard of {_SEARCH_GUARD}")
    if max_parts is None:
        max_parts = r

    inv = structural_invariants(net)
    n_cols = [ [row[qi] for row in net.n] for qi in range(r) ]
    ia_cols = [ [row[qi] for row in net.ia] for qi in range(r) ]
    need_s = predicate in ("independent", "bi_independent")
    need_i = predicate in ("incidence_independent", "bi_independent")

    results: list[Decomposition] = []

    def recurse(q: int, blocks: list[list[int]],
                s_tr: list[_RankTracker], i_tr: list[_RankTracker]) -> None:
        if need_s and sum(t.rank for t in s_tr) > inv.s:
            return
        if need_i and sum(t.rank for t in i_tr) > inv.n - inv.l:
            return
        if q == r:
            ok = True
            if need_s:
                ok = ok and sum(t.rank for t in s_tr) == inv.s
            if need_i:
                ok = ok and sum(t.rank for t in i_tr) == inv.n - inv.l
            if ok:
                results.append(decompose(net, [tuple(b) for b in blocks]))
            return
        limit = min(len(blocks) + 1, max_parts)
        for b in range(limit):
            if b == len(blocks):
                blocks.append([q])
                s_new = s_tr + [_RankTracker()]
                i_new = i_tr + [_RankTracker()]
            else:
                blocks[b].append(q)
                s_new = [t.copy() if idx == b else t for idx, t in enumerate(s_tr)]
                i_new = [t.copy() if idx == b else t for idx, t in enumerate(i_tr)]
            if need_s:
                s_new[b].add(n_cols[q])
            if need_i:
                i_new[b].add(ia_cols[q])
            recurse(q + 1, blocks, s_new, i_new)
            if b == len(blocks) - 1 and blocks[b] == [q]:
                blocks.pop()
            else:
                blocks[b].pop()

    recurse(0, [], [], [])
    return results
