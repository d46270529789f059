import dataclasses
import itertools
from functools import cached_property, lru_cache
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Set, Tuple

from networkx.utils import UnionFind

from .errors import FamilyMismatchError, InvalidMorphismError
from .logging import log
from .structures import FiniteMVAlgebra, FiniteMSetStructure, FiniteStructure, derive_mv_tables

# Entries kept by the hom-set and congruence lattice caches
CACHE_SIZE = 4096


@dataclasses.dataclass(frozen=True)
class Morphism:
    """
    A structure-preserving map between two finite structures of the same signature, stored as an index table
    """
    source: FiniteStructure
    target: FiniteStructure
    map: Tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.map[x]

    @staticmethod
    def create(source: FiniteStructure, target: FiniteStructure, mapping: Sequence[int]) -> "Morphism":
        """
        Create a morphism after checking that the map preserves every operation

        :param source: The source structure
        :param target: The target structure
        :param mapping: The image index of every source element
        :return: The certified morphism
        """
        require_same_signature(source, target)
        mapping = tuple(mapping)
        if len(mapping) != source.size or any(v < 0 or v >= target.size for v in mapping):
            raise InvalidMorphismError("Map {} does not send {} into {}".format(mapping, source.describe(),
                                                                                   target.describe()))
        problem = _preservation_problem(source, target, mapping)
        if problem is not None:
            raise InvalidMorphismError("Map from {} to {} does not preserve {}".format(source.describe(),
                                                                                       target.describe(), problem))
        return Morphism(source, target, mapping)

    def as_labels(self) -> Dict[str, str]:
        return {self.source.labels[x]: self.target.labels[y] for x, y in enumerate(self.map)}

    @cached_property
    def image_set(self) -> frozenset:
        return frozenset(self.map)


class MorphismKind(NamedTuple):
    mono: bool
    epi: bool
    iso: bool


def require_same_signature(a: FiniteStructure, b: FiniteStructure) -> None:
    if a.signature != b.signature:
        raise FamilyMismatchError("{} and {} do not live in the same category".format(a.describe(), b.describe()))


def _same(a: FiniteStructure, b: FiniteStructure) -> bool:
    return a is b or a == b


def _preservation_problem(source: FiniteStructure, target: FiniteStructure, mapping: Sequence[int]) -> Optional[str]:
    for s_op, t_op in zip(source.operations(), target.operations()):
        for args in itertools.product(range(source.size), repeat=s_op.arity):
            if mapping[s_op(*args)] != t_op(*(mapping[x] for x in args)):
                return "{} at ({})".format(s_op.name, ",".join(source.labels_of(*args)))
    return None


@lru_cache(maxsize=CACHE_SIZE)
def _hom_maps(source: FiniteStructure, target: FiniteStructure, injective: bool) -> Tuple[Tuple[int, ...], ...]:
    n, k = source.size, target.size
    ops = list(zip(source.operations(), target.operations()))
    start = [-1] * n
    for s_op, t_op in ops:
        if s_op.arity == 0:
            if start[s_op.table] not in (-1, t_op.table):
                return ()
            start[s_op.table] = t_op.table
    instances = [(s_op, t_op, args) for s_op, t_op in ops if s_op.arity > 0
                 for args in itertools.product(range(n), repeat=s_op.arity)]
    results: List[Tuple[int, ...]] = []

    def _propagate(assignment: List[int]) -> bool:
        changed = True
        while changed:
            changed = False
            for s_op, t_op, args in instances:
                images = [assignment[x] for x in args]
                if -1 in images:
                    continue
                required = t_op(*images)
                out = s_op(*args)
                if assignment[out] == -1:
                    assignment[out] = required
                    changed = True
                elif assignment[out] != required:
                    return False
        if injective:
            assigned = [v for v in assignment if v != -1]
            return len(assigned) == len(set(assigned))
        return True

    def _extend(assignment: List[int]) -> None:
        if not _propagate(assignment):
            return
        try:
            i = assignment.index(-1)
        except ValueError:
            results.append(tuple(assignment))
            return
        for v in range(k):
            if injective and v in assignment:
                continue
            extended = list(assignment)
            extended[i] = v
            _extend(extended)

    _extend(start)
    return tuple(sorted(results))


def enumerate_homs(source: FiniteStructure, target: FiniteStructure) -> List[Morphism]:
    """
    Enumerate all structure-preserving maps between two structures by backtracking over the source elements in index
    order, propagating the images forced by every operation instance

    :param source: The source structure
    :param target: The target structure
    :return: All morphisms, sorted by their map tuples
    """
    require_same_signature(source, target)
    maps = _hom_maps(source, target, False)
    log.debug("Found {} homs from {} to {}".format(len(maps), source.describe(), target.describe()))
    return [Morphism(source, target, m) for m in maps]


def find_isomorphism(a: FiniteStructure, b: FiniteStructure) -> Optional[Morphism]:
    """
    :return: The first isomorphism from a to b in map order, or None if the structures are not isomorphic
    """
    if a.signature != b.signature or a.size != b.size:
        return None
    for m in _hom_maps(a, b, True):
        return Morphism(a, b, m)
    return None


def is_isomorphic(a: FiniteStructure, b: FiniteStructure) -> bool:
    return find_isomorphism(a, b) is not None


def classify_morphism(f: Morphism) -> MorphismKind:
    """
    In the varieties considered here monos are the injective morphisms and regular epis the surjective ones
    """
    mono = len(f.image_set) == f.source.size
    epi = len(f.image_set) == f.target.size
    return MorphismKind(mono, epi, mono and epi)


def identity(a: FiniteStructure) -> Morphism:
    return Morphism(a, a, tuple(range(a.size)))


def compose(g: Morphism, f: Morphism) -> Morphism:
    """
    :return: The composite g∘f
    """
    if not _same(f.target, g.source):
        raise ValueError("Cannot compose: target of {} is not the source of {}".format(f.target.describe(),
                                                                                       g.source.describe()))
    return Morphism(f.source, g.target, tuple(g.map[y] for y in f.map))


def inverse(f: Morphism) -> Morphism:
    if not classify_morphism(f).iso:
        raise ValueError("Morphism is not invertible")
    inv = [0] * f.source.size
    for x, y in enumerate(f.map):
        inv[y] = x
    return Morphism(f.target, f.source, tuple(inv))


def substructure(a: FiniteStructure, members: Iterable[int], name: str = "") -> Tuple[FiniteStructure, Morphism]:
    """
    Restrict a structure to a subset closed under all of its operations

    :param a: The ambient structure
    :param members: Indices of the closed subset
    :param name: An optional name for the substructure
    :return: The substructure and its inclusion into a
    """
    kept = sorted(set(members))
    position = {x: i for i, x in enumerate(kept)}
    tables = {}
    try:
        for op in a.operations():
            if op.arity == 0:
                tables[op.name] = position[op.table]
            elif op.arity == 1:
                tables[op.name] = tuple(position[op.table[x]] for x in kept)
            else:
                tables[op.name] = tuple(tuple(position[op.table[x][y]] for y in kept) for x in kept)
    except KeyError:
        raise ValueError("Subset {} is not closed in {}".format(a.labels_of(*kept), a.describe())) from None
    sub = a.with_tables([a.labels[x] for x in kept], tables, name=name)
    return sub, Morphism(sub, a, tuple(kept))


def closure(a: FiniteStructure, subset: Iterable[int]) -> Set[int]:
    """
    :return: The least subset containing the input and every constant that is closed under all operations
    """
    members = set(subset)
    ops = a.operations()
    members.update(op.table for op in ops if op.arity == 0)
    changed = True
    while changed:
        changed = False
        current = sorted(members)
        for op in ops:
            if op.arity == 0:
                continue
            for args in itertools.product(current, repeat=op.arity):
                value = op(*args)
                if value not in members:
                    members.add(value)
                    changed = True
    return members


def subalgebra_generated(a: FiniteStructure, subset: Iterable[int],
                         name: str = "") -> Tuple[FiniteStructure, Morphism]:
    """
    :return: The substructure generated by the subset (constants always added) and its inclusion
    """
    return substructure(a, closure(a, subset), name=name)


def preimage(f: Morphism, subset: Iterable[int], name: str = "") -> Tuple[FiniteStructure, Morphism]:
    """
    :return: The substructure of the source on all elements mapped into the (closed) subset of the target
    """
    wanted = set(subset)
    return substructure(f.source, [x for x, y in enumerate(f.map) if y in wanted], name=name)


@dataclasses.dataclass(frozen=True)
class Congruence:
    """
    A partition of the element indices of a structure, blocks sorted internally and ordered by their least element
    """
    blocks: Tuple[Tuple[int, ...], ...]

    @staticmethod
    def from_blocks(blocks: Iterable[Iterable[int]]) -> "Congruence":
        normalized = [tuple(sorted(b)) for b in blocks]
        return Congruence(tuple(sorted((b for b in normalized if b), key=lambda b: b[0])))

    @staticmethod
    def identity(size: int) -> "Congruence":
        return Congruence(tuple((x,) for x in range(size)))

    @staticmethod
    def total(size: int) -> "Congruence":
        return Congruence((tuple(range(size)),) if size > 0 else ())

    @staticmethod
    def of_map(mapping: Sequence[int]) -> "Congruence":
        """
        :return: The kernel Eq(f) = {(x, y) | f(x) = f(y)} of a map given as an index table
        """
        groups: Dict[int, List[int]] = {}
        for x, y in enumerate(mapping):
            groups.setdefault(y, []).append(x)
        return Congruence.from_blocks(groups.values())

    @property
    def size(self) -> int:
        return sum(len(b) for b in self.blocks)

    @cached_property
    def block_of(self) -> Tuple[int, ...]:
        result = [0] * self.size
        for i, block in enumerate(self.blocks):
            for x in block:
                result[x] = i
        return tuple(result)

    def related(self, x: int, y: int) -> bool:
        return self.block_of[x] == self.block_of[y]

    def pairs(self) -> List[Tuple[int, int]]:
        return [(x, y) for block in self.blocks for x in block for y in block if x < y]

    def meet(self, other: "Congruence") -> "Congruence":
        return Congruence.of_map([self.block_of[x] * len(other.blocks) + other.block_of[x] for x in range(self.size)])

    def join(self, other: "Congruence") -> "Congruence":
        uf = UnionFind(range(self.size))
        for block in self.blocks + other.blocks:
            uf.union(*block)
        return Congruence.from_blocks(uf.to_sets())

    def refines(self, other: "Congruence") -> bool:
        return all(other.block_of[x] == other.block_of[block[0]] for block in self.blocks for x in block)

    def is_identity(self) -> bool:
        return len(self.blocks) == self.size


def _union(uf: UnionFind, x: int, y: int) -> bool:
    if uf[x] == uf[y]:
        return False
    uf.union(x, y)
    return True


def congruence_generated(a: FiniteStructure, pairs: Iterable[Tuple[int, int]]) -> Congruence:
    """
    The least congruence containing the pairs, computed with a union-find closed under every operation in every slot

    :param a: The structure
    :param pairs: Pairs of element indices to identify
    :return: The generated congruence
    """
    n = a.size
    uf = UnionFind(range(n))
    for x, y in pairs:
        uf.union(x, y)
    ops = [op for op in a.operations() if op.arity > 0]
    changed = True
    while changed:
        changed = False
        for x in range(n):
            r = uf[x]
            if r == x:
                continue
            for op in ops:
                t = op.table
                if op.arity == 1:
                    changed |= _union(uf, t[x], t[r])
                else:
                    for c in range(n):
                        changed |= _union(uf, t[x][c], t[r][c])
                        changed |= _union(uf, t[c][x], t[c][r])
    return Congruence.from_blocks(uf.to_sets())


def is_compatible(a: FiniteStructure, theta: Congruence) -> bool:
    """
    :return: Whether the partition is respected by every operation of the structure
    """
    b = theta.block_of
    for op in a.operations():
        if op.arity == 1:
            if any(b[op(x)] != b[op(y)] for x, y in theta.pairs()):
                return False
        elif op.arity == 2:
            for (x, y), c in itertools.product(theta.pairs(), range(a.size)):
                if b[op(x, c)] != b[op(y, c)] or b[op(c, x)] != b[op(c, y)]:
                    return False
    return True


def quotient(a: FiniteStructure, theta: Congruence, name: str = "") -> Tuple[FiniteStructure, Morphism]:
    """
    Build the quotient structure on the blocks of a congruence, each block labelled "[x]" after its least element

    :param a: The structure
    :param theta: A congruence of the structure
    :param name: An optional name for the quotient
    :return: The quotient and the projection onto it
    """
    if theta.size != a.size or not is_compatible(a, theta):
        raise ValueError("Partition is not a congruence of {}".format(a.describe()))
    b = theta.block_of
    reps = [block[0] for block in theta.blocks]
    tables = {}
    for op in a.operations():
        if op.arity == 0:
            tables[op.name] = b[op.table]
        elif op.arity == 1:
            tables[op.name] = tuple(b[op(r)] for r in reps)
        else:
            tables[op.name] = tuple(tuple(b[op(r, s)] for s in reps) for r in reps)
    q = a.with_tables(["[{}]".format(a.labels[r]) for r in reps], tables, name=name)
    return q, Morphism(a, q, b)


@lru_cache(maxsize=CACHE_SIZE)
def congruence_lattice(a: FiniteStructure) -> Tuple[Congruence, ...]:
    """
    All congruences of a structure as joins of principal congruences, finest first

    :param a: The structure
    :return: The congruences, ordered by decreasing number of blocks and then by their blocks
    """
    n = a.size
    principal = {congruence_generated(a, [(x, y)]) for x in range(n) for y in range(x + 1, n)}
    found = {Congruence.identity(n)} | principal
    frontier = list(found)
    while frontier:
        discovered = []
        for c in frontier:
            for p in principal:
                j = c.join(p)
                if j not in found:
                    found.add(j)
                    discovered.append(j)
        frontier = discovered
    log.debug("{} has {} congruences".format(a.describe(), len(found)))
    return tuple(sorted(found, key=lambda c: (-len(c.blocks), c.blocks)))


def congruence_from_mv_ideal(a: FiniteMVAlgebra, ideal: Iterable[int]) -> Congruence:
    """
    The congruence θ_I = {(x, y) | d(x, y) ∈ I} of an MV-algebra induced by an ideal I
    """
    members = set(ideal)
    d = derive_mv_tables(a).distance
    blocks: List[List[int]] = []
    for x in range(a.size):
        for block in blocks:
            if d[x][block[0]] in members:
                block.append(x)
                break
        else:
            blocks.append([x])
    return Congruence.from_blocks(blocks)


class Product(NamedTuple):
    obj: FiniteStructure
    pi1: Morphism
    pi2: Morphism


def _pair_label(a: FiniteStructure, b: FiniteStructure, x: int, y: int) -> str:
    return "({},{})".format(a.labels[x], b.labels[y])


def product(a: FiniteStructure, b: FiniteStructure, name: str = "") -> Product:
    """
    The componentwise product, with element (x, y) at index x·|b| + y and labelled "(x,y)"

    :param a: The first factor
    :param b: The second factor
    :param name: An optional name for the product
    :return: The product and its two projections
    """
    require_same_signature(a, b)
    nb = b.size
    pairs = list(itertools.product(range(a.size), range(nb)))
    tables = {}
    for op_a, op_b in zip(a.operations(), b.operations()):
        if op_a.arity == 0:
            tables[op_a.name] = op_a.table * nb + op_b.table
        elif op_a.arity == 1:
            tables[op_a.name] = tuple(op_a(x) * nb + op_b(y) for x, y in pairs)
        else:
            tables[op_a.name] = tuple(tuple(op_a(x1, x2) * nb + op_b(y1, y2) for x2, y2 in pairs)
                                      for x1, y1 in pairs)
    p = a.with_tables([_pair_label(a, b, x, y) for x, y in pairs], tables, name=name)
    return Product(p, Morphism(p, a, tuple(x for x, _ in pairs)), Morphism(p, b, tuple(y for _, y in pairs)))


class Pullback(NamedTuple):
    obj: FiniteStructure
    pi1: Morphism
    pi2: Morphism
    pairs: Tuple[Tuple[int, int], ...]


def pullback(f: Morphism, g: Morphism, name: str = "") -> Pullback:
    """
    The pullback {(x, y) | f(x) = g(y)} of two morphisms with a common target, as a substructure of the product

    :param f: A morphism A -> C
    :param g: A morphism B -> C
    :param name: An optional name for the pullback object
    :return: The pullback object with its projections onto A and B
    """
    if not _same(f.target, g.target):
        raise FamilyMismatchError("Cannot pull back morphisms with different targets")
    prod = product(f.source, g.source)
    nb = g.source.size
    members = [x * nb + y for x in range(f.source.size) for y in range(nb) if f(x) == g(y)]
    obj, _ = substructure(prod.obj, members, name=name)
    pairs = tuple((m // nb, m % nb) for m in members)
    return Pullback(obj, Morphism(obj, f.source, tuple(x for x, _ in pairs)),
                    Morphism(obj, g.source, tuple(y for _, y in pairs)), pairs)


def induced_into_pullback(pb: Pullback, u: Morphism, v: Morphism) -> Morphism:
    """
    :return: The unique morphism h into the pullback with π1∘h = u and π2∘h = v
    """
    position = {pair: i for i, pair in enumerate(pb.pairs)}
    try:
        return Morphism(u.source, pb.obj, tuple(position[(u(c), v(c))] for c in range(u.source.size)))
    except KeyError:
        raise ValueError("Morphisms do not form a cone over the pullback") from None


class KernelPair(NamedTuple):
    congruence: Congruence
    obj: FiniteStructure
    pi1: Morphism
    pi2: Morphism
    diagonal: Morphism


def kernel_pair(f: Morphism) -> KernelPair:
    """
    :return: Eq(f) as a congruence, the kernel pair object with its projections, and the diagonal into it
    """
    pb = pullback(f, f)
    diagonal = induced_into_pullback(pb, identity(f.source), identity(f.source))
    return KernelPair(Congruence.of_map(f.map), pb.obj, pb.pi1, pb.pi2, diagonal)


class Image(NamedTuple):
    obj: FiniteStructure
    epi: Morphism
    mono: Morphism


def image(f: Morphism) -> Image:
    """
    :return: The image of f with the epi-mono factorization f = mono∘epi
    """
    obj, mono = substructure(f.target, f.image_set)
    position = {y: i for i, y in enumerate(mono.map)}
    return Image(obj, Morphism(f.source, obj, tuple(position[y] for y in f.map)), mono)


def pushout_of_quotient(q: Morphism, f: Morphism) -> Tuple[Morphism, Morphism]:
    """
    Push a surjective morphism q: A -> M out along f: A -> B, as the quotient of B by the congruence generated by the
    f-images of the pairs identified by q

    :param q: A surjective morphism
    :param f: A morphism with the same source
    :return: The quotient map B -> P and the induced map M -> P
    """
    if not _same(q.source, f.source):
        raise ValueError("Pushout needs morphisms with a common source")
    if not classify_morphism(q).epi:
        raise ValueError("Pushouts are only computed along surjective morphisms")
    theta = congruence_generated(f.target, [(f(x), f(y)) for x, y in Congruence.of_map(q.map).pairs()])
    p, projection = quotient(f.target, theta)
    preimage_of = {}
    for x, m in enumerate(q.map):
        preimage_of.setdefault(m, x)
    induced = Morphism(q.target, p, tuple(projection(f(preimage_of[m])) for m in range(q.target.size)))
    return projection, induced


# Colimits of M-sets (limits of the opposite category)


class Coproduct(NamedTuple):
    obj: FiniteMSetStructure
    inj1: Morphism
    inj2: Morphism


def coproduct(x: FiniteMSetStructure, y: FiniteMSetStructure) -> Coproduct:
    """
    The disjoint union of two M-sets, elements of x first, labelled "(0,x)" and "(1,y)"
    """
    require_same_signature(x, y)
    nx_ = x.size
    labels = ["(0,{})".format(label) for label in x.labels] + ["(1,{})".format(label) for label in y.labels]
    action = tuple(tuple(x.action[m]) + tuple(nx_ + v for v in y.action[m]) for m in range(x.monoid.size))
    obj = FiniteMSetStructure(x.monoid, tuple(labels), action)
    return Coproduct(obj, Morphism(x, obj, tuple(range(nx_))), Morphism(y, obj, tuple(nx_ + i for i in range(y.size))))


class Pushout(NamedTuple):
    obj: FiniteStructure
    into1: Morphism
    into2: Morphism


def pushout(f: Morphism, g: Morphism) -> Pushout:
    """
    The pushout of two M-set maps f: A -> B and g: A -> C, computed as the quotient of B + C by the equivalence
    generated by f(a) ~ g(a)
    """
    if not isinstance(f.target, FiniteMSetStructure) or not isinstance(g.target, FiniteMSetStructure):
        raise FamilyMismatchError("General pushouts are only available for M-sets")
    if not _same(f.source, g.source):
        raise ValueError("Pushout needs morphisms with a common source")
    cp = coproduct(f.target, g.target)
    theta = congruence_generated(cp.obj, [(cp.inj1(f(a)), cp.inj2(g(a))) for a in range(f.source.size)])
    obj, projection = quotient(cp.obj, theta)
    return Pushout(obj, compose(projection, cp.inj1), compose(projection, cp.inj2))


def induced_from_pushout(po: Pushout, u: Morphism, v: Morphism) -> Morphism:
    """
    :return: The unique morphism h out of the pushout with h∘into1 = u and h∘into2 = v
    """
    assignment: Dict[int, int] = {}
    for leg, other in ((po.into1, u), (po.into2, v)):
        for x in range(leg.source.size):
            q, value = leg(x), other(x)
            if assignment.setdefault(q, value) != value:
                raise ValueError("Morphisms do not form a cocone over the pushout")
    return Morphism(po.obj, u.target, tuple(assignment[q] for q in range(po.obj.size)))


def mapping_from_labels(source: FiniteStructure, target: FiniteStructure, mapping: Mapping[str, str]) -> Morphism:
    """
    :return: The certified morphism given by a label-to-label mapping
    """
    missing = [label for label in source.labels if label not in mapping]
    if missing:
        raise InvalidMorphismError("Map does not assign images to {}".format(", ".join(missing)))
    return Morphism.create(source, target, [target.index(mapping[label]) for label in source.labels])
