import dataclasses
from typing import Any, Callable, Dict, Iterable, List, NamedTuple, Optional, Tuple

from .catalogs import Catalog
from .config import TorsionLabConfig
from .errors import CertificationError, FamilyMismatchError, NoDecompositionError
from .logging import log
from .morphisms import Morphism
from .structures import FiniteStructure
from .sweep import first_failure, run_sweep
from .torsion import TorsionTheory
from .types import ConditionTag, ProgressType
from .zeroclass import ZKernelWitness

Counterexample = Optional[Dict[str, Any]]


def in_E(theory: TorsionTheory, f: Morphism) -> bool:
    """
    :return: Whether f is a Z-cokernel (of its own Z-kernel) whose Z-kernel is a torsion object
    """
    cat, zc = theory.category, theory.zero_class
    k = zc.zker(f).kernel
    if not theory.is_torsion(cat.dom(k)):
        return False
    cokernel = zc.zcoker(k)
    return cokernel is not None and cat.same_quotient(cokernel.cokernel, f)


def in_M(theory: TorsionTheory, f: Morphism) -> bool:
    """
    :return: Whether the Z-kernel of f is a torsion-free object
    """
    cat, zc = theory.category, theory.zero_class
    return theory.is_torsion_free(cat.dom(zc.zker(f).kernel))


class FactorizationResult(NamedTuple):
    """
    An (E, M)-factorization f = m∘e through the middle object, with the Z-kernels certifying class membership
    """
    arrow: Morphism
    e: Morphism
    middle: FiniteStructure
    m: Morphism
    e_kernel: ZKernelWitness
    m_kernel: ZKernelWitness
    generic_e: Optional[Morphism]


def generic_e(theory: TorsionTheory, f: Morphism) -> Morphism:
    """
    The E-part of f built from the torsion theory alone: the Z-cokernel of k∘t, where k is the Z-kernel of f and t the
    torsion part of its domain

    :param theory: The torsion theory
    :param f: The arrow to factorize
    :return: The E-part
    """
    cat, zc = theory.category, theory.zero_class
    k = zc.zker(f).kernel
    _, t = theory.torsion_part(cat.dom(k))
    cokernel = zc.zcoker(cat.compose(k, t))
    if cokernel is None:
        raise CertificationError("Torsion part of the Z-kernel of {} has no maximum quotient in Z".format(
            cat.describe(f)))
    return cokernel.cokernel


def factorize(theory: TorsionTheory, f: Morphism, certify: Optional[bool] = None) -> FactorizationResult:
    """
    Factorize an arrow as f = m∘e with e in E and m in M, using the closed form of the family for e

    :param theory: The torsion theory
    :param f: The arrow to factorize
    :param certify: Whether to certify class membership and cross-check e against the generic construction up to
                    isomorphism of the middle objects. If None, the setting in torsionlab's config is used
    :return: The factorization
    """
    cat, zc = theory.category, theory.zero_class
    if cat.dom(f).family != theory.family:
        raise FamilyMismatchError("{} theory cannot factorize arrows of {}".format(theory.name, cat.dom(f).family))
    if certify is None:
        certify = TorsionLabConfig.get().certify
    e = theory.closed_form_e(f)
    m = cat.factor_through(f, e)
    if m is None:
        raise CertificationError("{} does not factor through its E-part".format(cat.describe(f)))
    generic = None
    if certify:
        if not in_E(theory, e):
            raise CertificationError("E-part of {} is not in E".format(cat.describe(f)))
        if not in_M(theory, m):
            raise CertificationError("M-part of {} is not in M".format(cat.describe(f)))
        generic = generic_e(theory, f)
        if not cat.same_quotient(e, generic):
            raise CertificationError("Closed form and generic factorizations of {} disagree".format(cat.describe(f)))
    return FactorizationResult(f, e, cat.cod(e), m, zc.zker(e), zc.zker(m), generic)


class OrthogonalityReport(NamedTuple):
    holds: bool
    squares: int
    diagonals: List[Morphism]
    counterexample: Counterexample


def check_orthogonality(theory: TorsionTheory, e: Morphism, m: Morphism,
                        squares: Optional[Iterable[Tuple[Morphism, Morphism]]] = None) -> OrthogonalityReport:
    """
    Check e ↓ m: for every commuting square m∘u = v∘e there is exactly one diagonal d with d∘e = u and m∘d = v

    :param theory: The torsion theory providing the category
    :param e: An arrow A -> B
    :param m: An arrow C -> D
    :param squares: The squares as pairs (u: A -> C, v: B -> D). Defaults to every commuting square
    :return: The report with the diagonal of every square, or the first square without a unique diagonal
    """
    cat = theory.category
    a, b, c, d = cat.dom(e), cat.cod(e), cat.dom(m), cat.cod(m)
    if squares is None:
        candidates = [(u, v) for u in cat.homs(a, c) for v in cat.homs(b, d)
                      if cat.compose(m, u) == cat.compose(v, e)]
    else:
        candidates = list(squares)
        for u, v in candidates:
            if cat.compose(m, u) != cat.compose(v, e):
                raise ValueError("Square given by {} and {} does not commute".format(cat.describe(u),
                                                                                      cat.describe(v)))
    diagonal_candidates = cat.homs(b, c)
    diagonals = []
    for u, v in candidates:
        fillers = [h for h in diagonal_candidates if cat.compose(h, e) == u and cat.compose(m, h) == v]
        if len(fillers) != 1:
            return OrthogonalityReport(False, len(candidates), diagonals,
                                       {"u": cat.describe(u), "v": cat.describe(v), "diagonals": len(fillers)})
        diagonals.append(fillers[0])
    return OrthogonalityReport(True, len(candidates), diagonals, None)


@dataclasses.dataclass(frozen=True)
class ConditionReport:
    """
    The verdict of checking one condition of a torsion theory over a catalog
    """
    tag: ConditionTag
    theory: str
    catalog: Dict[str, Any]
    checked: int
    verdict: bool
    counterexample: Counterexample = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "condition": str(self.tag),
            "theory": self.theory,
            "catalog": self.catalog,
            "checked": self.checked,
            "verdict": self.verdict,
            "counterexample": self.counterexample,
        }


def _check_family(theory: TorsionTheory, catalog: Catalog) -> None:
    if catalog.family != theory.family:
        raise FamilyMismatchError("Cannot check the {} theory on a {} catalog".format(theory.name, catalog.family))


def _catalog_info(catalog: Catalog) -> Dict[str, Any]:
    return dict(catalog.parameters, instances=len(catalog))


def check_axioms(theory: TorsionTheory, catalog: Catalog, *, jobs: Optional[int] = None,
                 progress_type: Optional[ProgressType] = None) -> ConditionReport:
    """
    Check the defining properties of a torsion theory on every catalog object: T ∩ F = Z, every arrow from a torsion
    to a torsion-free object is trivial, and every object has a short Z-exact sequence

    :param theory: The torsion theory
    :param catalog: The catalog to check on
    :param jobs: The number of jobs of the sweep
    :param progress_type: The progress display of the sweep
    :return: The report
    """
    _check_family(theory, catalog)
    cat, zc = theory.category, theory.zero_class

    def _check(a: FiniteStructure) -> Counterexample:
        torsion, torsion_free = theory.is_torsion(a), theory.is_torsion_free(a)
        if (torsion and torsion_free) != zc.contains(a):
            return {"property": "T ∩ F = Z", "object": a.describe(), "torsion": torsion,
                    "torsion_free": torsion_free}
        try:
            sequence = theory.find_decomposition(a)
        except NoDecompositionError:
            sequence = None
        if sequence is None:
            return {"property": "decomposition", "object": a.describe()}
        if torsion:
            for b in catalog.like(a):
                if not theory.is_torsion_free(b):
                    continue
                for h in cat.homs(a, b):
                    if not zc.is_trivial(h):
                        return {"property": "Hom(T, F) trivial", "arrow": cat.describe(h)}
        return None

    results = run_sweep(_check, catalog.instances, "{} axioms".format(theory.name), jobs=jobs,
                        progress_type=progress_type)
    counterexample = first_failure(results)
    return ConditionReport(ConditionTag.Axioms, theory.name, _catalog_info(catalog), len(results),
                           counterexample is None, counterexample)


def _condition_n(theory: TorsionTheory, catalog: Catalog) -> Callable[[FiniteStructure], Counterexample]:
    cat, zc = theory.category, theory.zero_class

    def _check(a: FiniteStructure) -> Counterexample:
        # A subobject is a Z-kernel exactly when it is the Z-kernel of a quotient of its ambient object
        kernels = {cat.subobject_key(zc.zker(q).kernel) for q in cat.regular_quotients(a)}
        for b in catalog.like(a):
            for f in cat.homs(a, b):
                k = zc.zker(f).kernel
                _, t = theory.torsion_part(cat.dom(k))
                kt = cat.compose(k, t)
                if cat.subobject_key(kt) not in kernels:
                    return {"arrow": cat.describe(f), "subobject": cat.describe(kt)}
        return None

    return _check


def _condition_m(theory: TorsionTheory, catalog: Catalog) -> Callable[[FiniteStructure], Counterexample]:
    cat, zc = theory.category, theory.zero_class

    def _check(a: FiniteStructure) -> Counterexample:
        for q in cat.regular_quotients(a):
            k = zc.zker(q).kernel
            torsion = cat.dom(k)
            if not theory.is_torsion(torsion):
                continue
            cokernel = zc.zcoker(k)
            if cokernel is None or not cat.same_quotient(cokernel.cokernel, q):
                continue
            reflected, _ = theory.reflection(torsion)
            zero = zc.zero_part(cat.cod(q)).obj
            if cat.find_isomorphism(reflected, zero) is None:
                return {"sequence": {"k": cat.describe(k), "q": cat.describe(q)}, "F(T)": reflected.describe(),
                        "Z(Q)": zero.describe()}
        return None

    return _check


def strict_terminal_counterexample(theory: TorsionTheory, catalog: Catalog) -> Counterexample:
    """
    Look for an arrow out of the terminal object that is not an isomorphism. With none on the catalog the terminal
    object is strict there, and a theory whose zero class holds only the initial and terminal objects then satisfies
    Condition (M)

    :param theory: The torsion theory providing the category
    :param catalog: The objects to check
    :return: The first such arrow, or None
    """
    _check_family(theory, catalog)
    cat = theory.category
    for a in catalog:
        terminal = cat.cod(cat.terminal_arrow(a))
        for f in cat.homs(terminal, a):
            if not cat.is_iso(f):
                return {"object": a.describe(), "arrow": cat.describe(f)}
    return None


def _condition_m_prime(theory: TorsionTheory, catalog: Catalog) -> Callable[[FiniteStructure], Counterexample]:
    cat, zc = theory.category, theory.zero_class

    def _check(a: FiniteStructure) -> Counterexample:
        torsion, _ = theory.torsion_part(a)
        reflected_torsion, _ = theory.reflection(torsion)
        reflected, _ = theory.reflection(a)
        zero = zc.zero_part(reflected).obj
        if cat.find_isomorphism(reflected_torsion, zero) is None:
            return {"object": a.describe(), "F(T(A))": reflected_torsion.describe(), "Z(F(A))": zero.describe()}
        return None

    return _check


def _condition_s(theory: TorsionTheory, catalog: Catalog) -> Callable[[FiniteStructure], Counterexample]:
    cat, zc = theory.category, theory.zero_class

    def _check(a: FiniteStructure) -> Counterexample:
        if not theory.is_torsion(a):
            return None
        reflected, eta = theory.reflection(a)
        for zero in zc.members(a):
            for z in cat.homs(zero, reflected):
                cone = cat.pullback(eta, z)
                chi = cone.pi2
                if not theory.is_torsion(cone.obj):
                    return {"torsion": a.describe(), "z": cat.describe(z), "pullback": cone.obj.describe(),
                            "reason": "pullback is not torsion"}
                _, eta_pullback = theory.reflection(cone.obj)
                if not cat.same_quotient(eta_pullback, chi):
                    return {"torsion": a.describe(), "z": cat.describe(z), "chi": cat.describe(chi),
                            "reason": "pullback of the unit is not the unit"}
        return None

    return _check


def _condition_p(theory: TorsionTheory, catalog: Catalog) -> Callable[[FiniteStructure], Counterexample]:
    cat, zc = theory.category, theory.zero_class

    def _check(a: FiniteStructure) -> Counterexample:
        arrows = [g for x in catalog.like(a) for g in cat.homs(x, a)]
        if theory.preserves_all_pullbacks:
            split_epis, inverted = arrows, arrows
        else:
            split_epis = [p for p in arrows if cat.is_split_epi(p)]
            inverted = [g for g in arrows if zc.is_inverted(g)]
        for p in split_epis:
            reflected_p = theory.reflect_arrow(p)
            for g in inverted:
                cone = cat.pullback(p, g)
                reflected_cone = cat.pullback(reflected_p, theory.reflect_arrow(g))
                comparison = cat.induced_into_pullback(reflected_cone, theory.reflect_arrow(cone.pi1),
                                                       theory.reflect_arrow(cone.pi2))
                if not cat.is_iso(comparison):
                    return {"split_epi": cat.describe(p), "along": cat.describe(g),
                            "pullback": cone.obj.describe()}
        return None

    return _check


_CONDITIONS = {
    ConditionTag.N: _condition_n,
    ConditionTag.M: _condition_m,
    ConditionTag.MPrime: _condition_m_prime,
    ConditionTag.S: _condition_s,
    ConditionTag.P: _condition_p,
}


def check_condition(theory: TorsionTheory, tag: ConditionTag, catalog: Catalog, *, jobs: Optional[int] = None,
                    progress_type: Optional[ProgressType] = None) -> ConditionReport:
    """
    Check one of the conditions (N), (M), (M'), (S) or (P) over every object of a catalog. The torsion theory axioms
    are checked first, and a theory failing them fails every condition with the axiom counterexample

    :param theory: The torsion theory
    :param tag: The condition to check
    :param catalog: The catalog to check on
    :param jobs: The number of jobs of the sweep
    :param progress_type: The progress display of the sweep
    :return: The report, with a counterexample if the verdict is negative
    """
    axioms = check_axioms(theory, catalog, jobs=jobs, progress_type=progress_type)
    if tag == ConditionTag.Axioms or not axioms.verdict:
        return dataclasses.replace(axioms, tag=tag)
    results = run_sweep(_CONDITIONS[tag](theory, catalog), catalog.instances,
                        "{} ({})".format(theory.name, tag), jobs=jobs, progress_type=progress_type)
    counterexample = first_failure(results)
    log.debug("Condition ({}) for {}: {}".format(tag, theory.name, counterexample is None))
    return ConditionReport(tag, theory.name, _catalog_info(catalog), len(results), counterexample is None,
                           counterexample)


@dataclasses.dataclass(frozen=True)
class FactorizationSystemReport:
    theory: str
    catalog: Dict[str, Any]
    arrows: int
    pullbacks: int
    squares: int
    verdict: bool
    counterexample: Counterexample = None

    def to_dict(self) -> Dict[str, Any]:
        return dataclasses.asdict(self)


def verify_factorization_system(theory: TorsionTheory, catalog: Catalog, orthogonality: bool = False, *,
                                jobs: Optional[int] = None,
                                progress_type: Optional[ProgressType] = None) -> FactorizationSystemReport:
    """
    Verify that the (E, M) classes of a torsion theory form a stable factorization system on a catalog: every arrow
    factors with the closed form agreeing with the generic construction, and the pullback of every E-part along
    every arrow inverted by Z is again in E. Optionally also check e ↓ m for every pair of computed parts

    :param theory: The torsion theory
    :param catalog: The catalog to check on
    :param orthogonality: Whether to check orthogonality over every commuting square
    :param jobs: The number of jobs of the sweep
    :param progress_type: The progress display of the sweep
    :return: The report
    """
    _check_family(theory, catalog)
    cat, zc = theory.category, theory.zero_class

    def _check(a: FiniteStructure) -> Tuple[Counterexample, int, int, List[Morphism], List[Morphism]]:
        arrows, pullbacks = 0, 0
        es: List[Morphism] = []
        ms: List[Morphism] = []
        for b in catalog.like(a):
            for f in cat.homs(a, b):
                try:
                    result = factorize(theory, f, certify=True)
                except CertificationError as exc:
                    return {"property": "factorization", "arrow": cat.describe(f), "reason": str(exc)}, arrows, \
                        pullbacks, es, ms
                arrows += 1
                es.append(result.e)
                ms.append(result.m)
                for c in catalog.like(result.middle):
                    for g in cat.homs(c, result.middle):
                        if not zc.is_inverted(g):
                            continue
                        pullbacks += 1
                        pulled = cat.pullback(result.e, g).pi2
                        if not in_E(theory, pulled):
                            return {"property": "stability", "e": cat.describe(result.e), "along": cat.describe(g)}, \
                                arrows, pullbacks, es, ms
        return None, arrows, pullbacks, es, ms

    results = run_sweep(_check, catalog.instances, "{} factorizations".format(theory.name), jobs=jobs,
                        progress_type=progress_type)
    counterexample = first_failure([r[0] for r in results])
    arrows = sum(r[1] for r in results)
    pullbacks = sum(r[2] for r in results)
    squares = 0
    if counterexample is None and orthogonality:
        es = list(dict.fromkeys(e for r in results for e in r[3]))
        ms = list(dict.fromkeys(m for r in results for m in r[4]))
        for e in es:
            for m in ms:
                if cat.dom(e).signature != cat.dom(m).signature:
                    continue
                report = check_orthogonality(theory, e, m)
                squares += report.squares
                if not report.holds:
                    counterexample = {"property": "orthogonality", "e": cat.describe(e), "m": cat.describe(m),
                                      "square": report.counterexample}
                    break
            if counterexample is not None:
                break
    return FactorizationSystemReport(theory.name, _catalog_info(catalog), arrows, pullbacks, squares,
                                     counterexample is None, counterexample)
