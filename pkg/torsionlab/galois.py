import dataclasses
from typing import Any, Dict, NamedTuple, Optional, Tuple

from .catalogs import Catalog
from .categories import Category
from .errors import AdmissibilityError, CertificationError, NotDescentError
from .factorization import ConditionReport, check_condition
from .logging import log
from .morphisms import Morphism
from .structures import FiniteStructure
from .sweep import first_failure, run_sweep
from .torsion import TorsionTheory
from .types import ConditionTag, ExtensionTag, Family, ProgressType


class ExtensionClass(NamedTuple):
    tag: ExtensionTag
    evidence: Dict[str, Any]

    def to_dict(self) -> Dict[str, Any]:
        return {"tag": str(self.tag), "evidence": self.evidence}


class GaloisContext:
    """
    The Galois structure (F, i, all arrows, arrows of F) of a torsion theory. When a catalog is provided, the theory
    must satisfy Conditions (M') and (S) on it, which make the structure admissible
    """

    def __init__(self, theory: TorsionTheory, catalog: Optional[Catalog] = None, cross_check: bool = True, *,
                 jobs: Optional[int] = None, progress_type: Optional[ProgressType] = None):
        """
        :param theory: The torsion theory
        :param catalog: An optional catalog to check admissibility on
        :param cross_check: Whether classification checks normality via kernel pairs against the Z-kernel criterion
        :param jobs: The number of jobs of the admissibility sweeps
        :param progress_type: The progress display of the admissibility sweeps
        """
        self.theory = theory
        self.cross_check = cross_check
        self.admissibility: Dict[ConditionTag, ConditionReport] = {}
        if catalog is not None:
            self.check_admissibility(catalog, jobs=jobs, progress_type=progress_type)

    @property
    def category(self) -> Category:
        return self.theory.category

    def check_admissibility(self, catalog: Catalog, *, jobs: Optional[int] = None,
                            progress_type: Optional[ProgressType] = None) -> None:
        """
        Check Conditions (M') and (S) on a catalog, keeping the reports in `admissibility`

        :param catalog: The catalog to check on
        :param jobs: The number of jobs of the sweeps
        :param progress_type: The progress display of the sweeps
        :raises AdmissibilityError: With the counterexample of the first failing condition
        """
        for tag in (ConditionTag.MPrime, ConditionTag.S):
            report = check_condition(self.theory, tag, catalog, jobs=jobs, progress_type=progress_type)
            self.admissibility[tag] = report
            if not report.verdict:
                raise AdmissibilityError("The {} theory fails Condition ({}) on the catalog".format(
                    self.theory.name, tag), report.counterexample)

    def _require_descent(self, f: Morphism) -> None:
        if not self.category.is_descent(f):
            raise NotDescentError("{} is not an effective descent morphism".format(self.category.describe(f)))

    def trivial_evidence(self, f: Morphism) -> Tuple[bool, Dict[str, Any]]:
        """
        Build the comparison A -> B ×_{F(B)} F(A) induced by f and η_A

        :param f: The arrow A -> B
        :return: Whether the comparison is an isomorphism, and a description of the pullback
        """
        cat, theory = self.category, self.theory
        _, eta_a = theory.reflection(cat.dom(f))
        _, eta_b = theory.reflection(cat.cod(f))
        cone = cat.pullback(eta_b, theory.reflect_arrow(f))
        comparison = cat.induced_into_pullback(cone, f, eta_a)
        iso = cat.is_iso(comparison)
        return iso, {"pullback": cone.obj.size, "comparison_iso": iso}


def is_trivial_extension(ctx: GaloisContext, f: Morphism) -> bool:
    """
    :return: Whether the naturality square of the unit at f is a pullback
    """
    return ctx.trivial_evidence(f)[0]


def is_normal_extension(ctx: GaloisContext, f: Morphism) -> bool:
    """
    :return: Whether both kernel pair projections of an effective descent morphism are trivial extensions
    """
    ctx._require_descent(f)
    cone = ctx.category.kernel_pair(f)
    return is_trivial_extension(ctx, cone.pi1) and is_trivial_extension(ctx, cone.pi2)


def is_central_extension(ctx: GaloisContext, f: Morphism) -> bool:
    """
    Decide centrality of an effective descent morphism by its Z-kernel being torsion-free

    :param ctx: The Galois context
    :param f: The arrow
    :return: Whether f is a central extension
    """
    ctx._require_descent(f)
    cat, theory = ctx.category, ctx.theory
    return theory.is_torsion_free(cat.dom(theory.zero_class.zker(f).kernel))


def classify_extension(ctx: GaloisContext, f: Morphism) -> ExtensionClass:
    """
    Classify an arrow as a trivial, normal, central or non-central extension, strongest first. Arrows that are not
    effective descent morphisms can only be classified as trivial

    :param ctx: The Galois context
    :param f: The arrow to classify
    :return: The tag and the evidence it is based on
    """
    cat, theory = ctx.category, ctx.theory
    trivial, evidence = ctx.trivial_evidence(f)
    evidence = dict(evidence, trivial=trivial)
    descent = cat.is_descent(f)
    evidence["descent"] = descent
    if not descent:
        if trivial:
            return ExtensionClass(ExtensionTag.Trivial, evidence)
        raise NotDescentError("{} is neither trivial nor an effective descent morphism".format(cat.describe(f)))

    kernel = cat.dom(theory.zero_class.zker(f).kernel)
    central = theory.is_torsion_free(kernel)
    evidence.update({"kernel": kernel.describe(), "kernel_torsion_free": central})
    if trivial and not central:
        raise CertificationError("Trivial extension {} is not central".format(cat.describe(f)))
    if theory.family == Family.Heyting and central and not trivial:
        raise CertificationError("Central Heyting extension {} is not trivial".format(cat.describe(f)))
    if not ctx.cross_check:
        tag = ExtensionTag.Trivial if trivial else ExtensionTag.Central if central else ExtensionTag.NonCentral
        return ExtensionClass(tag, evidence)

    cone = cat.kernel_pair(f)
    projections = [is_trivial_extension(ctx, cone.pi1), is_trivial_extension(ctx, cone.pi2)]
    normal = all(projections)
    evidence["kernel_pair_trivial"] = projections
    if normal != central:
        raise CertificationError("Normality and centrality of {} disagree".format(cat.describe(f)))
    tag = ExtensionTag.Trivial if trivial else ExtensionTag.Normal if normal else ExtensionTag.NonCentral
    log.debug("Classified {} as {}".format(cat.describe(f), tag))
    return ExtensionClass(tag, evidence)


@dataclasses.dataclass(frozen=True)
class ExtensionSweepReport:
    theory: str
    catalog: Dict[str, Any]
    counts: Dict[str, int]
    verdict: bool
    counterexample: Optional[Dict[str, Any]] = None

    def to_dict(self) -> Dict[str, Any]:
        return dataclasses.asdict(self)


def sweep_extensions(ctx: GaloisContext, catalog: Catalog, *, jobs: Optional[int] = None,
                     progress_type: Optional[ProgressType] = None) -> ExtensionSweepReport:
    """
    Classify every effective descent morphism between catalog objects, failing on the first arrow where the
    classification cannot be certified (normality and centrality disagreeing, or a Heyting central extension that is
    not trivial). The theory is first checked to be admissible on the catalog, unless the context already was

    :param ctx: The Galois context
    :param catalog: The catalog to sweep
    :param jobs: The number of jobs of the sweep
    :param progress_type: The progress display of the sweep
    :return: The number of arrows per tag and the verdict
    :raises AdmissibilityError: When the theory fails Condition (M') or (S) on the catalog
    """
    if not ctx.admissibility:
        ctx.check_admissibility(catalog, jobs=jobs, progress_type=progress_type)
    cat = ctx.category

    def _classify(a: FiniteStructure) -> Tuple[Optional[Dict[str, Any]], Dict[str, int]]:
        counts: Dict[str, int] = {}
        for b in catalog.like(a):
            for f in cat.homs(a, b):
                if not cat.is_descent(f):
                    continue
                try:
                    tag = classify_extension(ctx, f).tag
                except CertificationError as exc:
                    return {"arrow": cat.describe(f), "reason": str(exc)}, counts
                counts[str(tag)] = counts.get(str(tag), 0) + 1
        return None, counts

    results = run_sweep(_classify, catalog.instances, "{} extensions".format(ctx.theory.name), jobs=jobs,
                        progress_type=progress_type)
    totals = {str(tag): 0 for tag in ExtensionTag}
    for _, counts in results:
        for tag, count in counts.items():
            totals[tag] += count
    counterexample = first_failure([r[0] for r in results])
    info = dict(catalog.parameters, instances=len(catalog))
    return ExtensionSweepReport(ctx.theory.name, info, totals, counterexample is None, counterexample)
