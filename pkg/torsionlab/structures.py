import abc
import dataclasses
import itertools
from fractions import Fraction
from functools import cached_property
from typing import Any, Dict, Hashable, List, Mapping, NamedTuple, Optional, Sequence, Tuple

import networkx as nx

from .errors import InvalidStructureError, MalformedStructureError, NotHeytingError
from .types import Family

Table1 = Tuple[int, ...]
Table2 = Tuple[Tuple[int, ...], ...]


class Operation(NamedTuple):
    """
    A single operation of a finite structure given by its full table. Constants have arity 0 and store the index of
    the constant as their table
    """
    name: str
    arity: int
    table: Any

    def __call__(self, *args: int) -> int:
        if self.arity == 0:
            return self.table
        if self.arity == 1:
            return self.table[args[0]]
        return self.table[args[0]][args[1]]


class Violation(NamedTuple):
    axiom: str
    witness: Tuple[str, ...]

    def __str__(self) -> str:
        return "{} at ({})".format(self.axiom, ",".join(self.witness))


class ValidationReport(NamedTuple):
    """
    The outcome of validating a structure: every violated axiom with the first witnessing tuple found
    """
    structure: str
    violations: Tuple[Violation, ...]

    @property
    def valid(self) -> bool:
        return len(self.violations) == 0


class FiniteStructure(abc.ABC):
    """
    Common interface of the four families of finite structures. Elements are addressed by index, labels are only used
    for presentation and files
    """
    labels: Tuple[str, ...]
    name: str

    @property
    @abc.abstractmethod
    def family(self) -> Family:
        pass

    @property
    def signature(self) -> Hashable:
        """
        :return: A key identifying the category the structure lives in - structures can only be related by morphisms
                 when their signatures agree
        """
        return self.family

    @property
    def size(self) -> int:
        return len(self.labels)

    @abc.abstractmethod
    def operations(self) -> Tuple[Operation, ...]:
        pass

    @abc.abstractmethod
    def with_tables(self, labels: Sequence[str], tables: Mapping[str, Any], name: str = "") -> "FiniteStructure":
        """
        Build a structure of the same signature from new labels and operation tables keyed by operation name

        :param labels: The labels of the new structure
        :param tables: The table of every operation returned by operations()
        :param name: An optional name for the new structure
        :return: The new structure
        """
        pass

    @abc.abstractmethod
    def terminal(self) -> "FiniteStructure":
        """
        :return: The one-element structure with the same signature
        """
        pass

    @abc.abstractmethod
    def _shape_problems(self) -> List[str]:
        pass

    @abc.abstractmethod
    def _axiom_violations(self) -> List[Violation]:
        pass

    @cached_property
    def _label_index(self) -> Dict[str, int]:
        return {label: i for i, label in enumerate(self.labels)}

    def index(self, label: str) -> int:
        """
        :param label: The label of an element
        :return: The index of the element with the provided label
        """
        try:
            return self._label_index[label]
        except KeyError:
            raise ValueError("No element labelled '{}' in {}".format(label, self.describe())) from None

    def describe(self) -> str:
        return self.name if self.name else "{} structure of size {}".format(self.family, self.size)

    def labels_of(self, *indices: int) -> Tuple[str, ...]:
        """
        :return: The labels of the elements at the provided indices
        """
        return tuple(self.labels[i] for i in indices)


def _check_table1(problems: List[str], name: str, table: Sequence[int], length: int, bound: int) -> None:
    if len(table) != length:
        problems.append("table '{}' has length {}, expected {}".format(name, len(table), length))
    elif any(not isinstance(v, int) or v < 0 or v >= bound for v in table):
        problems.append("table '{}' contains entries outside 0..{}".format(name, bound - 1))


def _check_table2(problems: List[str], name: str, table: Sequence[Sequence[int]], rows: int, cols: int,
                  bound: int) -> None:
    if len(table) != rows:
        problems.append("table '{}' has {} rows, expected {}".format(name, len(table), rows))
        return
    for i, row in enumerate(table):
        _check_table1(problems, "{}[{}]".format(name, i), row, cols, bound)


def _check_constant(problems: List[str], name: str, value: int, bound: int) -> None:
    if not isinstance(value, int) or value < 0 or value >= bound:
        problems.append("constant '{}' = {} is outside 0..{}".format(name, value, bound - 1))


def _first(found: Optional[Tuple[str, ...]], axiom: str, violations: List[Violation]) -> None:
    if found is not None:
        violations.append(Violation(axiom, found))


def _search(structure: FiniteStructure, arity: int, predicate) -> Optional[Tuple[str, ...]]:
    for args in itertools.product(range(structure.size), repeat=arity):
        if not predicate(*args):
            return structure.labels_of(*args)
    return None


@dataclasses.dataclass(frozen=True)
class FiniteMVAlgebra(FiniteStructure):
    """
    A finite MV-algebra (A, ⊕, ¬, 0). Index 0 is the constant 0, and 1 is ¬0
    """
    labels: Tuple[str, ...]
    oplus: Table2
    neg: Table1
    name: str = dataclasses.field(default="", compare=False)

    @property
    def family(self) -> Family:
        return Family.MV

    @property
    def one(self) -> int:
        return self.neg[0]

    def operations(self) -> Tuple[Operation, ...]:
        return Operation("zero", 0, 0), Operation("oplus", 2, self.oplus), Operation("neg", 1, self.neg)

    def with_tables(self, labels: Sequence[str], tables: Mapping[str, Any], name: str = "") -> "FiniteMVAlgebra":
        return FiniteMVAlgebra(tuple(labels), tables["oplus"], tables["neg"], name=name)

    def terminal(self) -> "FiniteMVAlgebra":
        return FiniteMVAlgebra(("0",), ((0,),), (0,), name="terminal")

    def _shape_problems(self) -> List[str]:
        problems: List[str] = []
        n = self.size
        if n == 0:
            problems.append("an MV-algebra needs at least the element 0")
        _check_table2(problems, "oplus", self.oplus, n, n, n)
        _check_table1(problems, "neg", self.neg, n, n)
        return problems

    def _axiom_violations(self) -> List[Violation]:
        o, ng = self.oplus, self.neg
        one = ng[0]
        violations: List[Violation] = []
        _first(_search(self, 3, lambda x, y, z: o[o[x][y]][z] == o[x][o[y][z]]), "associativity", violations)
        _first(_search(self, 2, lambda x, y: x >= y or o[x][y] == o[y][x]), "commutativity", violations)
        _first(_search(self, 1, lambda x: o[x][0] == x), "identity", violations)
        _first(_search(self, 1, lambda x: ng[ng[x]] == x), "involution", violations)
        _first(_search(self, 1, lambda x: o[x][one] == one), "absorption", violations)
        _first(_search(self, 2, lambda x, y: o[ng[o[ng[x]][y]]][y] == o[ng[o[ng[y]][x]]][x]), "lukasiewicz",
               violations)
        return violations


@dataclasses.dataclass(frozen=True)
class FiniteHeytingAlgebra(FiniteStructure):
    """
    A finite Heyting algebra (H, ∨, ∧, 1, 0, ⇒). The implication is always derived from the lattice by residuation
    (see derive_heyting_implication)
    """
    labels: Tuple[str, ...]
    meet: Table2
    join: Table2
    bottom: int
    top: int
    imp: Table2
    name: str = dataclasses.field(default="", compare=False)

    @property
    def family(self) -> Family:
        return Family.Heyting

    @cached_property
    def neg(self) -> Table1:
        return tuple(self.imp[x][self.bottom] for x in range(self.size))

    def leq(self, x: int, y: int) -> bool:
        return self.meet[x][y] == x

    def operations(self) -> Tuple[Operation, ...]:
        return (Operation("bottom", 0, self.bottom), Operation("top", 0, self.top), Operation("meet", 2, self.meet),
                Operation("join", 2, self.join), Operation("imp", 2, self.imp))

    def with_tables(self, labels: Sequence[str], tables: Mapping[str, Any],
                    name: str = "") -> "FiniteHeytingAlgebra":
        return FiniteHeytingAlgebra(tuple(labels), tables["meet"], tables["join"], tables["bottom"], tables["top"],
                                    tables["imp"], name=name)

    def terminal(self) -> "FiniteHeytingAlgebra":
        return FiniteHeytingAlgebra(("0",), ((0,),), ((0,),), 0, 0, ((0,),), name="terminal")

    def _shape_problems(self) -> List[str]:
        problems: List[str] = []
        n = self.size
        if n == 0:
            problems.append("a Heyting algebra needs at least one element")
        _check_table2(problems, "meet", self.meet, n, n, n)
        _check_table2(problems, "join", self.join, n, n, n)
        _check_table2(problems, "imp", self.imp, n, n, n)
        _check_constant(problems, "bottom", self.bottom, n)
        _check_constant(problems, "top", self.top, n)
        return problems

    def _axiom_violations(self) -> List[Violation]:
        violations = _lattice_violations(self, self.meet, self.join, self.bottom, self.top)
        m, i = self.meet, self.imp
        _first(_search(self, 3, lambda x, y, z: (m[m[x][y]][z] == m[x][y]) == (m[x][i[y][z]] == x)), "residuation",
               violations)
        return violations


def _lattice_violations(structure: FiniteStructure, meet: Table2, join: Table2, bottom: int,
                        top: int) -> List[Violation]:
    violations: List[Violation] = []
    for name, op in (("meet", meet), ("join", join)):
        _first(_search(structure, 3, lambda x, y, z: op[op[x][y]][z] == op[x][op[y][z]]),
               "{} associativity".format(name), violations)
        _first(_search(structure, 2, lambda x, y: op[x][y] == op[y][x]), "{} commutativity".format(name), violations)
    _first(_search(structure, 2, lambda x, y: meet[x][join[x][y]] == x and join[x][meet[x][y]] == x), "absorption",
           violations)
    _first(_search(structure, 1, lambda x: join[x][bottom] == x), "bottom", violations)
    _first(_search(structure, 1, lambda x: meet[x][top] == x), "top", violations)
    return violations


@dataclasses.dataclass(frozen=True)
class FiniteMonoid:
    """
    A finite monoid given by its multiplication table
    """
    labels: Tuple[str, ...]
    table: Table2
    identity: int = 0
    name: str = dataclasses.field(default="", compare=False)

    @property
    def size(self) -> int:
        return len(self.labels)

    def violations(self) -> List[Violation]:
        n, t, e = self.size, self.table, self.identity
        problems: List[str] = []
        _check_table2(problems, "monoid", t, n, n, n)
        _check_constant(problems, "identity", e, n)
        if problems:
            raise MalformedStructureError("Malformed monoid: {}".format("; ".join(problems)))
        violations: List[Violation] = []
        for x, y, z in itertools.product(range(n), repeat=3):
            if t[t[x][y]][z] != t[x][t[y][z]]:
                violations.append(Violation("monoid associativity", (self.labels[x], self.labels[y], self.labels[z])))
                break
        for x in range(n):
            if t[e][x] != x or t[x][e] != x:
                violations.append(Violation("monoid identity", (self.labels[x],)))
                break
        return violations


@dataclasses.dataclass(frozen=True)
class FiniteMSetStructure(FiniteStructure):
    """
    A finite set with a left action of a finite monoid, action[m][x] = m·x. The carrier may be empty
    """
    monoid: FiniteMonoid
    labels: Tuple[str, ...]
    action: Table2
    name: str = dataclasses.field(default="", compare=False)

    @property
    def family(self) -> Family:
        return Family.MSet

    @property
    def signature(self) -> Hashable:
        return self.family, self.monoid.table, self.monoid.identity

    def operations(self) -> Tuple[Operation, ...]:
        return tuple(Operation("act[{}]".format(m), 1, self.action[m]) for m in range(self.monoid.size))

    def with_tables(self, labels: Sequence[str], tables: Mapping[str, Any],
                    name: str = "") -> "FiniteMSetStructure":
        action = tuple(tables["act[{}]".format(m)] for m in range(self.monoid.size))
        return FiniteMSetStructure(self.monoid, tuple(labels), action, name=name)

    def terminal(self) -> "FiniteMSetStructure":
        return FiniteMSetStructure(self.monoid, ("*",), tuple((0,) for _ in range(self.monoid.size)), name="1")

    def empty(self) -> "FiniteMSetStructure":
        """
        :return: The empty M-set over the same monoid
        """
        return FiniteMSetStructure(self.monoid, (), tuple(() for _ in range(self.monoid.size)), name="∅")

    def _shape_problems(self) -> List[str]:
        problems: List[str] = []
        _check_table2(problems, "action", self.action, self.monoid.size, self.size, self.size)
        return problems

    def _axiom_violations(self) -> List[Violation]:
        violations = self.monoid.violations()
        t, a = self.monoid.table, self.action
        ml = self.monoid.labels
        for x in range(self.size):
            if a[self.monoid.identity][x] != x:
                violations.append(Violation("unit action", self.labels_of(x)))
                break
        for m1, m2, x in itertools.product(range(self.monoid.size), range(self.monoid.size), range(self.size)):
            if a[t[m1][m2]][x] != a[m1][a[m2][x]]:
                violations.append(Violation("compatibility", (ml[m1], ml[m2], self.labels[x])))
                break
        return violations


@dataclasses.dataclass(frozen=True)
class PointedFiniteAbelianGroup(FiniteStructure):
    """
    A finite abelian group A with a basepoint a satisfying m·a = 0, i.e. an object (A, a) of the coslice category
    Z_m/Ab. Index 0 is the group zero
    """
    labels: Tuple[str, ...]
    add: Table2
    neg: Table1
    basepoint: int
    modulus: int
    name: str = dataclasses.field(default="", compare=False)

    @property
    def family(self) -> Family:
        return Family.Coslice

    @property
    def signature(self) -> Hashable:
        return self.family, self.modulus

    def multiple(self, x: int, k: int) -> int:
        """
        :return: The element k·x
        """
        result = 0
        for _ in range(k):
            result = self.add[result][x]
        return result

    def is_divisible(self, h: int) -> bool:
        """
        :return: Whether every element is h·y for some y
        """
        return len({self.multiple(y, h) for y in range(self.size)}) == self.size

    def operations(self) -> Tuple[Operation, ...]:
        return (Operation("zero", 0, 0), Operation("basepoint", 0, self.basepoint), Operation("add", 2, self.add),
                Operation("neg", 1, self.neg))

    def with_tables(self, labels: Sequence[str], tables: Mapping[str, Any],
                    name: str = "") -> "PointedFiniteAbelianGroup":
        return PointedFiniteAbelianGroup(tuple(labels), tables["add"], tables["neg"], tables["basepoint"],
                                         self.modulus, name=name)

    def terminal(self) -> "PointedFiniteAbelianGroup":
        return PointedFiniteAbelianGroup(("0",), ((0,),), (0,), 0, self.modulus, name="terminal")

    def _shape_problems(self) -> List[str]:
        problems: List[str] = []
        n = self.size
        if n == 0:
            problems.append("a group needs at least the element 0")
        if not isinstance(self.modulus, int) or self.modulus < 1:
            problems.append("modulus must be a positive integer, got {}".format(self.modulus))
        _check_table2(problems, "add", self.add, n, n, n)
        _check_table1(problems, "neg", self.neg, n, n)
        _check_constant(problems, "basepoint", self.basepoint, n)
        return problems

    def _axiom_violations(self) -> List[Violation]:
        ad, ng = self.add, self.neg
        violations: List[Violation] = []
        _first(_search(self, 3, lambda x, y, z: ad[ad[x][y]][z] == ad[x][ad[y][z]]), "associativity", violations)
        _first(_search(self, 2, lambda x, y: x >= y or ad[x][y] == ad[y][x]), "commutativity", violations)
        _first(_search(self, 1, lambda x: ad[x][0] == x), "identity", violations)
        _first(_search(self, 1, lambda x: ad[x][ng[x]] == 0), "inverse", violations)
        if self.multiple(self.basepoint, self.modulus) != 0:
            violations.append(Violation("basepoint annihilated by modulus", self.labels_of(self.basepoint)))
        return violations


def check_shape(structure: FiniteStructure) -> None:
    """
    Reject structures whose tables have the wrong dimensions or out-of-range entries

    :param structure: The structure to check
    """
    problems = structure._shape_problems()
    if problems:
        raise MalformedStructureError("Malformed {}: {}".format(structure.describe(), "; ".join(problems)))


def validate(structure: FiniteStructure) -> ValidationReport:
    """
    Exhaustively check the axioms of the structure's family

    :param structure: The structure to validate
    :return: A report listing every violated axiom with a witnessing tuple
    """
    check_shape(structure)
    return ValidationReport(structure.describe(), tuple(structure._axiom_violations()))


def require_valid(structure: FiniteStructure) -> FiniteStructure:
    """
    Validate a structure and raise if any axiom is violated

    :param structure: The structure to validate
    :return: The input structure (to allow chaining calls)
    """
    report = validate(structure)
    if not report.valid:
        raise InvalidStructureError("{} violates: {}".format(report.structure,
                                                              ", ".join(str(v) for v in report.violations)))
    return structure


class DerivedTables(NamedTuple):
    """
    The derived operations of an MV-algebra, all as index tables
    """
    odot: Table2
    ominus: Table2
    implies: Table2
    distance: Table2
    leq: Tuple[Tuple[bool, ...], ...]


def derive_mv_tables(algebra: FiniteMVAlgebra) -> DerivedTables:
    """
    Derive ⊙, ⊖, →, the distance d and the order ≤ of an MV-algebra from ⊕ and ¬

    :param algebra: A valid MV-algebra
    :return: The derived tables
    """
    o, ng, n = algebra.oplus, algebra.neg, algebra.size
    odot = tuple(tuple(ng[o[ng[x]][ng[y]]] for y in range(n)) for x in range(n))
    ominus = tuple(tuple(odot[x][ng[y]] for y in range(n)) for x in range(n))
    implies = tuple(tuple(o[ng[x]][y] for y in range(n)) for x in range(n))
    distance = tuple(tuple(o[ominus[x][y]][ominus[y][x]] for y in range(n)) for x in range(n))
    leq = tuple(tuple(implies[x][y] == algebra.one for y in range(n)) for x in range(n))
    return DerivedTables(odot, ominus, implies, distance, leq)


def is_distributive_lattice(size: int, leq: Sequence[Sequence[bool]]) -> bool:
    """
    Check that an order relation is a distributive lattice order

    :param size: The number of elements
    :param leq: The order relation as a boolean matrix
    :return: Whether every pair has a meet and a join, and meets distribute over joins
    """
    try:
        lattice = lattice_from_order(tuple(str(i) for i in range(size)), leq)
    except InvalidStructureError:
        return False
    m, j = lattice.meet, lattice.join
    return all(m[x][j[y][z]] == j[m[x][y]][m[x][z]] for x, y, z in itertools.product(range(size), repeat=3))


def is_mv_ideal(algebra: FiniteMVAlgebra, subset: Sequence[int]) -> bool:
    """
    :return: Whether the subset contains 0, is closed under ⊕ and is downward closed
    """
    members = set(subset)
    leq = derive_mv_tables(algebra).leq
    if 0 not in members:
        return False
    if any(algebra.oplus[x][y] not in members for x in members for y in members):
        return False
    return all(y in members for x in members for y in range(algebra.size) if leq[y][x])


class BoundedLattice(NamedTuple):
    labels: Tuple[str, ...]
    meet: Table2
    join: Table2
    bottom: int
    top: int


def lattice_from_order(labels: Sequence[str], leq: Sequence[Sequence[bool]]) -> BoundedLattice:
    """
    Compute meet and join tables of a finite order that is a bounded lattice

    :param labels: Labels of the elements
    :param leq: The order relation as a boolean matrix
    :return: The lattice tables
    """
    n = len(labels)

    def _extreme(candidates: List[int], below: bool) -> int:
        for c in candidates:
            if all((leq[x][c] if below else leq[c][x]) for x in candidates):
                return c
        raise InvalidStructureError("Order is not a lattice")

    meet = tuple(tuple(_extreme([z for z in range(n) if leq[z][x] and leq[z][y]], below=True) for y in range(n))
                 for x in range(n))
    join = tuple(tuple(_extreme([z for z in range(n) if leq[x][z] and leq[y][z]], below=False) for y in range(n))
                 for x in range(n))
    bottom = _extreme(list(range(n)), below=False)
    top = _extreme(list(range(n)), below=True)
    return BoundedLattice(tuple(labels), meet, join, bottom, top)


def derive_heyting_implication(lattice: BoundedLattice, name: str = "") -> FiniteHeytingAlgebra:
    """
    Turn a bounded lattice into a Heyting algebra by computing y ⇒ z as the greatest x with x ∧ y ≤ z

    :param lattice: The lattice tables
    :param name: An optional name of the resulting algebra
    :return: The Heyting algebra
    """
    n = len(lattice.labels)
    placeholder = FiniteHeytingAlgebra(lattice.labels, lattice.meet, lattice.join, lattice.bottom, lattice.top,
                                       tuple(tuple(0 for _ in range(n)) for _ in range(n)), name=name)
    check_shape(placeholder)
    violations = _lattice_violations(placeholder, lattice.meet, lattice.join, lattice.bottom, lattice.top)
    if violations:
        raise InvalidStructureError("Not a bounded lattice: {}".format(", ".join(str(v) for v in violations)))

    m = lattice.meet
    imp: List[Tuple[int, ...]] = []
    for y in range(n):
        row = []
        for z in range(n):
            below = [x for x in range(n) if m[m[x][y]][z] == m[x][y]]
            greatest = [c for c in below if all(m[x][c] == x for x in below)]
            if not greatest:
                raise NotHeytingError(lattice.labels[y], lattice.labels[z])
            row.append(greatest[0])
        imp.append(tuple(row))
    return dataclasses.replace(placeholder, imp=tuple(imp))


# Named constructors


def lukasiewicz_chain(n: int) -> FiniteMVAlgebra:
    """
    The Łukasiewicz chain Ł_n = {0, 1/n, ..., 1} with x ⊕ y = min(1, x + y) and ¬x = 1 - x. Ł_0 is the terminal
    algebra

    :param n: The number of steps of the chain
    :return: The MV-algebra
    """
    if n < 0:
        raise ValueError("Chain length must be non-negative, got {}".format(n))
    if n == 0:
        return FiniteMVAlgebra(("0",), ((0,),), (0,), name="Ł0")
    labels = tuple(str(Fraction(i, n)) for i in range(n + 1))
    oplus = tuple(tuple(min(n, i + j) for j in range(n + 1)) for i in range(n + 1))
    neg = tuple(n - i for i in range(n + 1))
    return FiniteMVAlgebra(labels, oplus, neg, name="Ł{}".format(n))


def _chain_labels(size: int) -> Tuple[str, ...]:
    if size == 1:
        return ("0",)
    middle = [chr(ord("a") + i) for i in range(size - 2)]
    return tuple(["0"] + middle + ["1"])


def heyting_chain(size: int) -> FiniteHeytingAlgebra:
    """
    The chain with the provided number of elements, labelled 0, a, b, ..., 1
    """
    if size < 1:
        raise ValueError("A chain needs at least one element")
    rng = range(size)
    lattice = BoundedLattice(_chain_labels(size), tuple(tuple(min(x, y) for y in rng) for x in rng),
                             tuple(tuple(max(x, y) for y in rng) for x in rng), 0, size - 1)
    return derive_heyting_implication(lattice, name="chain{}".format(size))


def diamond_lattice() -> BoundedLattice:
    """
    The non-distributive lattice M3 = {0, a, b, c, 1}
    """
    labels = ("0", "a", "b", "c", "1")
    leq = tuple(tuple(x == y or x == 0 or y == 4 for y in range(5)) for x in range(5))
    return lattice_from_order(labels, leq)


def poset_downsets(poset: nx.DiGraph) -> List[frozenset]:
    """
    Enumerate the downsets of a finite poset, where an edge u -> v means u < v

    :param poset: The poset as a directed acyclic graph
    :return: The downsets ordered by size and then by their sorted points
    """
    downsets = set()
    for antichain in nx.antichains(poset):
        points = set(antichain)
        for p in antichain:
            points |= nx.ancestors(poset, p)
        downsets.add(frozenset(points))
    return sorted(downsets, key=lambda d: (len(d), sorted(d)))


def downset_lattice(poset: nx.DiGraph, name: str = "") -> FiniteHeytingAlgebra:
    """
    The Heyting algebra of downsets of a finite poset, ordered by inclusion

    :param poset: The poset as a directed acyclic graph on integer points, an edge u -> v means u < v
    :param name: An optional name of the algebra
    :return: The Heyting algebra
    """
    downsets = poset_downsets(poset)
    position = {d: i for i, d in enumerate(downsets)}
    labels = tuple("{" + ",".join(str(p) for p in sorted(d)) + "}" for d in downsets)
    meet = tuple(tuple(position[x & y] for y in downsets) for x in downsets)
    join = tuple(tuple(position[x | y] for y in downsets) for x in downsets)
    lattice = BoundedLattice(labels, meet, join, 0, len(downsets) - 1)
    return derive_heyting_implication(lattice, name=name)


def boolean_algebra(atoms: int) -> FiniteHeytingAlgebra:
    """
    The Boolean algebra of subsets of a set with the provided number of atoms
    """
    poset = nx.DiGraph()
    poset.add_nodes_from(range(atoms))
    return downset_lattice(poset, name="2^{}".format(atoms))


def monoid_from_table(table: Sequence[Sequence[int]], identity: int = 0, labels: Optional[Sequence[str]] = None,
                      name: str = "") -> FiniteMonoid:
    """
    Build a monoid from a multiplication table, raising if the monoid laws fail

    :param table: The multiplication table
    :param identity: Index of the identity element
    :param labels: Optional element labels, defaults to "1" for the identity and "m<i>" for the others
    :param name: An optional name for the monoid
    :return: The monoid
    """
    if labels is None:
        labels = ["1" if i == identity else "m{}".format(i) for i in range(len(table))]
    monoid = FiniteMonoid(tuple(labels), tuple(tuple(row) for row in table), identity, name=name)
    violations = monoid.violations()
    if violations:
        raise InvalidStructureError("Not a monoid: {}".format(", ".join(str(v) for v in violations)))
    return monoid


def trivial_monoid() -> FiniteMonoid:
    return monoid_from_table(((0,),), name="1")


def idempotent_monoid() -> FiniteMonoid:
    """
    The monoid {1, e} with e·e = e
    """
    return monoid_from_table(((0, 1), (1, 1)), labels=("1", "e"), name="idempotent")


def cyclic_group_monoid(order: int) -> FiniteMonoid:
    """
    The cyclic group of the provided order seen as a monoid
    """
    rng = range(order)
    labels = ["1"] + ["g{}".format(i) if i > 1 else "g" for i in range(1, order)]
    return monoid_from_table(tuple(tuple((i + j) % order for j in rng) for i in rng), labels=labels,
                             name="C{}".format(order))


def mset(monoid: FiniteMonoid, labels: Sequence[str], action: Mapping[str, Mapping[str, str]],
         name: str = "") -> FiniteMSetStructure:
    """
    Build an M-set from an action given by labels, e.g. {"e": {"x": "y", "y": "y"}}. Monoid elements without an entry
    (including the identity) act as the identity

    :param monoid: The acting monoid
    :param labels: The labels of the carrier
    :param action: Per monoid label, the image of each carrier label
    :param name: An optional name for the M-set
    :return: The M-set
    """
    index = {label: i for i, label in enumerate(labels)}
    table = []
    for m, m_label in enumerate(monoid.labels):
        mapping = action.get(m_label, {})
        table.append(tuple(index[mapping.get(x, x)] for x in labels))
    return FiniteMSetStructure(monoid, tuple(labels), tuple(table), name=name)


def abelian_group(orders: Sequence[int], basepoint: Sequence[int], modulus: int,
                  name: str = "") -> PointedFiniteAbelianGroup:
    """
    The pointed group (Z_{n1} ⊕ ... ⊕ Z_{nk}, a) with elements ordered lexicographically. Elements of a single cyclic
    factor are labelled "x", elements of a sum "(x,y,...)"

    :param orders: The orders of the cyclic factors, an empty sequence gives the trivial group
    :param basepoint: The coordinates of the basepoint
    :param modulus: The modulus m of the coslice category
    :param name: An optional name for the group
    :return: The pointed group
    """
    orders = tuple(orders)
    if any(o < 1 for o in orders):
        raise ValueError("Cyclic factors must have positive order, got {}".format(orders))
    if len(basepoint) != len(orders):
        raise ValueError("Basepoint {} does not match factors {}".format(tuple(basepoint), orders))
    elements = list(itertools.product(*(range(o) for o in orders)))
    position = {e: i for i, e in enumerate(elements)}
    if len(orders) == 1:
        labels = tuple(str(e[0]) for e in elements)
    elif len(orders) == 0:
        labels = ("0",)
    else:
        labels = tuple("(" + ",".join(str(c) for c in e) + ")" for e in elements)

    def _add(x, y):
        return position[tuple((a + b) % o for a, b, o in zip(x, y, orders))]

    add = tuple(tuple(_add(x, y) for y in elements) for x in elements)
    neg = tuple(position[tuple((-a) % o for a, o in zip(x, orders))] for x in elements)
    point = position[tuple(c % o for c, o in zip(basepoint, orders))]
    if not name:
        name = "(" + "⊕".join("Z{}".format(o) for o in orders) + "," + labels[point] + ")" if orders else "(Z1,0)"
    return PointedFiniteAbelianGroup(labels, add, neg, point, modulus, name=name)


def cyclic_group(order: int, basepoint: int, modulus: int) -> PointedFiniteAbelianGroup:
    """
    The pointed cyclic group (Z_order, basepoint)
    """
    return abelian_group((order,), (basepoint,), modulus)
