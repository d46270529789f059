import dataclasses
import itertools
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from . import morphisms
from .config import TorsionLabConfig
from .logging import log
from .structures import (FiniteMonoid, FiniteMSetStructure, FiniteStructure, abelian_group, downset_lattice,
                         lukasiewicz_chain, monoid_from_table, poset_downsets)
from .types import Family

# The sub-families each generator can be restricted to
SEED_FAMILIES: Dict[Family, Tuple[str, ...]] = {
    Family.MV: ("chains", "products"),
    Family.Heyting: ("downsets",),
    Family.MSet: ("actions",),
    Family.Coslice: ("cyclic", "sums"),
}

# Size bounds used when neither the caller nor the config sets one
DEFAULT_BOUNDS: Dict[Family, int] = {
    Family.MV: 9,
    Family.Heyting: 8,
    Family.MSet: 4,
    Family.Coslice: 12,
}


@dataclasses.dataclass(frozen=True)
class Catalog:
    """
    A deterministic, ordered family of small structures checked by the oracles and condition sweeps
    """
    family: Family
    size_bound: int
    instances: Tuple[FiniteStructure, ...]
    parameters: Dict[str, Any] = dataclasses.field(default_factory=dict, compare=False)

    def __len__(self) -> int:
        return len(self.instances)

    def __iter__(self) -> Iterator[FiniteStructure]:
        return iter(self.instances)

    def like(self, a: FiniteStructure) -> List[FiniteStructure]:
        """
        :return: The instances living in the same category as a (same monoid or modulus)
        """
        return [b for b in self.instances if b.signature == a.signature]

    def select(self, names: Iterable[str]) -> "Catalog":
        """
        :return: A catalog restricted to the instances with the provided names, in catalog order
        """
        wanted = set(names)
        return dataclasses.replace(self, instances=tuple(a for a in self.instances if a.describe() in wanted))

    def names(self) -> List[str]:
        return [a.describe() for a in self.instances]


def _mv_catalog(bound: int, seeds: Sequence[str]) -> List[FiniteStructure]:
    instances: List[FiniteStructure] = []
    if "chains" in seeds:
        instances.extend(lukasiewicz_chain(n) for n in range(bound))
    if "products" in seeds:
        for i in range(1, bound):
            for j in range(i, bound):
                if (i + 1) * (j + 1) <= bound:
                    a, b = lukasiewicz_chain(i), lukasiewicz_chain(j)
                    instances.append(morphisms.product(a, b, name="{}×{}".format(a.name, b.name)).obj)
    return instances


def _close(poset: nx.DiGraph) -> nx.DiGraph:
    return nx.transitive_closure_dag(poset)


def small_posets(bound: int) -> List[nx.DiGraph]:
    """
    All finite posets (up to isomorphism) whose lattice of downsets has at most the provided number of elements.
    Posets are grown by adding a new maximal point above an existing downset, and pruned as soon as the lattice
    exceeds the bound (adding points never shrinks it)

    :param bound: The maximum size of the downset lattice
    :return: The posets as transitively closed DAGs on 0..n-1, ordered by number of points and discovery
    """
    empty = nx.DiGraph()
    found: List[nx.DiGraph] = [empty] if bound >= 1 else []
    frontier = list(found)
    while frontier:
        discovered: List[nx.DiGraph] = []
        for poset in frontier:
            n = poset.number_of_nodes()
            for below in poset_downsets(poset):
                grown = poset.copy()
                grown.add_node(n)
                grown.add_edges_from((p, n) for p in below)
                grown = _close(grown)
                if len(poset_downsets(grown)) > bound:
                    continue
                if any(nx.is_isomorphic(grown, other) for other in discovered):
                    continue
                discovered.append(grown)
        found.extend(discovered)
        frontier = discovered
    return found


def _poset_name(poset: nx.DiGraph) -> str:
    covers = nx.transitive_reduction(poset) if poset.number_of_edges() else poset
    relations = ",".join("{}<{}".format(u, v) for u, v in sorted(covers.edges))
    return "D{}[{}]".format(poset.number_of_nodes(), relations)


def _heyting_catalog(bound: int, seeds: Sequence[str]) -> List[FiniteStructure]:
    if "downsets" not in seeds:
        return []
    return [downset_lattice(poset, name=_poset_name(poset)) for poset in small_posets(bound)]


def small_monoids(max_order: int = 3) -> List[FiniteMonoid]:
    """
    All monoids of order at most max_order up to isomorphism, named "M<order>.<i>". The identity is element 0

    :param max_order: The largest order to enumerate
    :return: The monoids, ordered by order and then by their multiplication tables
    """
    result: List[FiniteMonoid] = []
    for k in range(1, max_order + 1):
        others = list(range(1, k))
        free = list(itertools.product(others, others))
        tables = []
        for values in itertools.product(range(k), repeat=len(free)):
            table = [[x if y == 0 else y if x == 0 else -1 for y in range(k)] for x in range(k)]
            for (x, y), v in zip(free, values):
                table[x][y] = v
            triples = itertools.product(range(k), repeat=3)
            if all(table[table[x][y]][z] == table[x][table[y][z]] for x, y, z in triples):
                tables.append(tuple(tuple(row) for row in table))
        kept: List[Tuple[Tuple[int, ...], ...]] = []
        for table in tables:
            if not any(_monoids_isomorphic(table, other) for other in kept):
                kept.append(table)
        for i, table in enumerate(kept):
            result.append(monoid_from_table(table, name="M{}.{}".format(k, i)))
    return result


def _monoids_isomorphic(t1: Sequence[Sequence[int]], t2: Sequence[Sequence[int]]) -> bool:
    k = len(t1)
    for perm in itertools.permutations(range(1, k)):
        p = (0,) + perm
        if all(p[t1[x][y]] == t2[p[x]][p[y]] for x in range(k) for y in range(k)):
            return True
    return False


def monoid_actions(monoid: FiniteMonoid, size: int) -> List[FiniteMSetStructure]:
    """
    Enumerate every action of a monoid on the carrier {0, ..., size-1}, by assigning a self-map to each element in
    index order and propagating the products forced by the multiplication table

    :param monoid: The acting monoid
    :param size: The size of the carrier
    :return: The M-sets, ordered by their action tables
    """
    k, t, e = monoid.size, monoid.table, monoid.identity
    maps = list(itertools.product(range(size), repeat=size))
    identity_map = tuple(range(size))
    results = []

    def _consistent(assignment: List[Optional[Tuple[int, ...]]]) -> bool:
        changed = True
        while changed:
            changed = False
            for m1, m2 in itertools.product(range(k), repeat=2):
                f1, f2 = assignment[m1], assignment[m2]
                if f1 is None or f2 is None:
                    continue
                composite = tuple(f1[f2[x]] for x in range(size))
                product = t[m1][m2]
                if assignment[product] is None:
                    assignment[product] = composite
                    changed = True
                elif assignment[product] != composite:
                    return False
        return True

    def _extend(assignment: List[Optional[Tuple[int, ...]]]) -> None:
        if not _consistent(assignment):
            return
        if None not in assignment:
            results.append(tuple(assignment))
            return
        m = assignment.index(None)
        for f in maps:
            extended = list(assignment)
            extended[m] = f
            _extend(extended)

    start: List[Optional[Tuple[int, ...]]] = [None] * k
    start[e] = identity_map
    _extend(start)
    labels = tuple("x{}".format(i) for i in range(size))
    return [FiniteMSetStructure(monoid, labels, action) for action in sorted(set(results))]


def _mset_invariant(x: FiniteMSetStructure) -> Tuple:
    fixed = sum(1 for p in range(x.size) if all(row[p] == p for row in x.action))
    images = tuple(sorted(len(set(row)) for row in x.action))
    return x.size, fixed, images


def _mset_catalog(bound: int, seeds: Sequence[str]) -> List[FiniteStructure]:
    if "actions" not in seeds:
        return []
    instances: List[FiniteStructure] = []
    for monoid in small_monoids(3):
        for size in range(bound + 1):
            buckets: Dict[Tuple, List[FiniteMSetStructure]] = {}
            for x in monoid_actions(monoid, size):
                bucket = buckets.setdefault(_mset_invariant(x), [])
                if any(morphisms.is_isomorphic(x, y) for y in bucket):
                    continue
                bucket.append(x)
                named = dataclasses.replace(x, name="{}:X{}.{}".format(monoid.name, size, len(instances)))
                instances.append(named)
    return instances


def invariant_factors(order: int) -> List[Tuple[int, ...]]:
    """
    :return: The invariant factor sequences d1 | d2 | ... | dk (d1 > 1) with product order, fewest factors first
    """
    results: List[Tuple[int, ...]] = []

    def _extend(prefix: Tuple[int, ...], remaining: int) -> None:
        if remaining == 1:
            results.append(prefix)
            return
        for d in range(2, remaining + 1):
            if remaining % d == 0 and (not prefix or d % prefix[-1] == 0):
                _extend(prefix + (d,), remaining // d)

    _extend((), order)
    return sorted(results, key=lambda s: (len(s), s))


def _coslice_catalog(bound: int, seeds: Sequence[str], modulus: int) -> List[FiniteStructure]:
    instances: List[FiniteStructure] = []
    for order in range(1, bound + 1):
        for factors in invariant_factors(order):
            if len(factors) <= 1 and "cyclic" not in seeds:
                continue
            if len(factors) > 1 and "sums" not in seeds:
                continue
            pointed: List[FiniteStructure] = []
            for basepoint in itertools.product(*(range(d) for d in factors)):
                if any((modulus * c) % d for c, d in zip(basepoint, factors)):
                    continue
                group = abelian_group(factors, basepoint, modulus)
                if any(morphisms.is_isomorphic(group, other) for other in pointed):
                    continue
                pointed.append(group)
            instances.extend(pointed)
    return instances


def generate_catalog(family: Family, size_bound: Optional[int] = None, seed_families: Optional[Iterable[str]] = None,
                     modulus: Optional[int] = None) -> Catalog:
    """
    Generate the deterministic catalog of a family:
      - MV: the chains Ł_0, ..., Ł_{bound-1}, then the products Ł_i × Ł_j (1 <= i <= j) with at most bound elements
      - Heyting: the downset lattices of all posets whose lattice has at most bound elements
      - M-set: every action (up to isomorphism) of every monoid of order <= 3 on carriers of 0 to bound points
      - coslice: every group of order <= bound in invariant factor form, with every basepoint a satisfying m·a = 0 (up
        to pointed isomorphism)

    :param family: The family to generate
    :param size_bound: The size bound, defaults to the setting in torsionlab's config, or DEFAULT_BOUNDS if unset
    :param seed_families: Optional sub-families to restrict to (see SEED_FAMILIES)
    :param modulus: The modulus of the coslice family, defaults to the setting in torsionlab's config
    :return: The catalog
    """
    config = TorsionLabConfig.get()
    bound = size_bound if size_bound is not None else config.catalog_bound
    if bound is None:
        bound = DEFAULT_BOUNDS[family]
    if bound < 1:
        raise ValueError("Catalog size bound must be at least 1, got {}".format(bound))
    seeds = SEED_FAMILIES[family] if seed_families is None else tuple(seed_families)
    unknown = set(seeds) - set(SEED_FAMILIES[family])
    if unknown:
        raise ValueError("Unknown seed families for {}: {}".format(family, ", ".join(sorted(unknown))))
    parameters: Dict[str, Any] = {"family": str(family), "size_bound": bound, "seed_families": list(seeds)}

    instances: List[FiniteStructure]
    if family == Family.MV:
        instances = _mv_catalog(bound, seeds)
    elif family == Family.Heyting:
        instances = _heyting_catalog(bound, seeds)
    elif family == Family.MSet:
        instances = _mset_catalog(bound, seeds)
    else:
        m = config.modulus if modulus is None else modulus
        parameters["modulus"] = m
        instances = _coslice_catalog(bound, seeds, m)
    log.debug("Generated {} catalog with bound {}: {} instances".format(family, bound, len(instances)))
    return Catalog(family, bound, tuple(instances), parameters)
