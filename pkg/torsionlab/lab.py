import argparse
import contextlib
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, TextIO

from rich import console

from . import schemas, serialization
from .catalogs import SEED_FAMILIES, generate_catalog
from .checksums import checksum
from .config import TorsionLabConfig
from .errors import AdmissibilityError, FamilyMismatchError, TorsionLabError
from .factorization import check_condition, factorize, verify_factorization_system
from .galois import GaloisContext, classify_extension, sweep_extensions
from .logging import log
from .morphisms import Morphism, classify_morphism, enumerate_homs
from .structures import FiniteMSetStructure, FiniteMVAlgebra, FiniteStructure, PointedFiniteAbelianGroup, validate
from .torsion import (THEORY_NAMES, TorsionTheory, coslice_divisible_part, coslice_divisible_part_by_chains,
                      mset_fix, mv_radical, theory_for)
from .types import ConditionTag, Family, ProgressType
from .version import __version__

# Sweeps beyond the conditions that "check" can run
EXTRA_CHECKS = ("factorization", "extensions")


class UsageError(Exception):
    """
    Raised by a command when its arguments are inconsistent in a way argparse cannot detect
    """


class Lab:
    """
    The torsionlab command line interface. Every command prints one JSON document to the output stream, and
    diagnostics to standard error
    """

    def __init__(self, name: str = "torsionlab"):
        """
        Creates a new Lab with the provided name

        :param name: The name of the Lab, used as the program name
        """
        self._name = name
        self._commands: Dict[str, Callable[[argparse.Namespace], Any]] = {
            "validate": self._validate,
            "homs": self._homs,
            "decompose": self._decompose,
            "radical": self._radical,
            "fix": self._fix,
            "divisible-part": self._divisible_part,
            "zker": self._zker,
            "zcoker": self._zcoker,
            "factorize": self._factorize,
            "check": self._check,
            "classify-extension": self._classify_extension,
            "catalog": self._catalog,
            "schema": self._schema,
        }
        self._exit_code = 0

    @property
    def name(self) -> str:
        return self._name

    @property
    def commands(self) -> List[str]:
        return list(self._commands.keys())

    def _create_parser(self) -> argparse.ArgumentParser:
        """
        Create the top-level parser and one subparser per command. Options shared by several commands live on parent
        parsers so that they can be given after the command name
        """
        parser = argparse.ArgumentParser(self._name, description="Torsion theories on finite structures")
        parser.add_argument("-v", "--verbose", action="store_true", help="Turn on verbose logging")
        parser.add_argument("--version", action="version", version="%(prog)s {}".format(__version__))
        subparsers = parser.add_subparsers(dest="command", metavar="")

        theory = argparse.ArgumentParser(add_help=False)
        theory.add_argument("--theory", choices=THEORY_NAMES, default=None,
                            help="The torsion theory to use, defaults to the family of the input structure")
        theory.add_argument("--modulus", type=int, default=None, metavar="M",
                            help="The modulus m of the coslice category, defaults to that of the input structure")
        sweep = argparse.ArgumentParser(add_help=False)
        sweep.add_argument("--catalog-bound", type=int, default=None, metavar="N",
                           help="The size bound of the oracle catalogs")
        sweep.add_argument("-j", "--jobs", type=int, default=None, metavar="N",
                           help="Use N jobs for catalog sweeps, zero or negative values use the system default")
        sweep.add_argument("--progress", type=ProgressType, default=None, choices=list(ProgressType),
                           help="The type of progress indication to use")
        certify = argparse.ArgumentParser(add_help=False)
        certify.add_argument("--no-certify", dest="certify", action="store_false", default=None,
                             help="Skip the bounded oracles certifying the computed constructions")
        arrow = argparse.ArgumentParser(add_help=False)
        arrow.add_argument("source", type=Path, help="The structure file of the source")
        arrow.add_argument("target", type=Path, help="The structure file of the target")
        arrow.add_argument("morphism", type=Path,
                           help="The morphism file (M-set maps are read backwards, as arrows of M-Set^op)")

        p = subparsers.add_parser("validate", help="Check a structure file against the axioms of its family")
        p.add_argument("structure", type=Path)
        p = subparsers.add_parser("homs", help="Enumerate all morphisms between two structures")
        p.add_argument("source", type=Path)
        p.add_argument("target", type=Path)
        p = subparsers.add_parser("decompose", parents=[theory, sweep, certify],
                                  help="Compute the short Z-exact sequence T(A) -> A -> F(A)")
        p.add_argument("structure", type=Path)
        p = subparsers.add_parser("radical", help="Compute the radical of an MV-algebra")
        p.add_argument("structure", type=Path)
        p = subparsers.add_parser("fix", help="Compute the fixed points of an M-set")
        p.add_argument("structure", type=Path)
        p = subparsers.add_parser("divisible-part", parents=[theory],
                                  help="Compute the m-divisible part of a pointed abelian group")
        p.add_argument("structure", type=Path)
        subparsers.add_parser("zker", parents=[theory, arrow], help="Compute the Z-kernel of a morphism")
        subparsers.add_parser("zcoker", parents=[theory, arrow], help="Compute the Z-cokernel of a morphism")
        subparsers.add_parser("factorize", parents=[theory, certify, arrow],
                              help="Compute the (E, M)-factorization of a morphism")
        p = subparsers.add_parser("check", parents=[theory, sweep],
                                  help="Check a condition of a torsion theory over a catalog")
        p.add_argument("--condition", choices=[str(tag) for tag in ConditionTag] + list(EXTRA_CHECKS),
                       default=None, help="The condition to check, all conditions if omitted")
        p.add_argument("--orthogonality", action="store_true",
                       help="Also check orthogonality when checking the factorization system")
        p = subparsers.add_parser("classify-extension", parents=[theory, sweep, arrow],
                                  help="Classify a morphism as a trivial, normal, central or non-central extension")
        p.add_argument("--no-cross-check", dest="cross_check", action="store_false",
                       help="Skip the kernel pair normality check")
        p.add_argument("--no-admissibility", dest="admissibility", action="store_false",
                       help="Skip checking Conditions (M') and (S) on the catalog before classifying")
        p = subparsers.add_parser("catalog", parents=[theory, sweep], help="Generate the catalog of a family")
        p.add_argument("family", choices=[str(family) for family in Family])
        p.add_argument("--seed-families", nargs="*", default=None, metavar="NAME",
                       help="Restrict to sub-families: {}".format(
                           "; ".join("{}: {}".format(f, ", ".join(s)) for f, s in SEED_FAMILIES.items())))
        p.add_argument("--out", type=Path, default=None, help="A directory to write the catalog files to")
        p = subparsers.add_parser("schema", help="Print the JSON schema of a document kind, or write them all")
        p.add_argument("kind", nargs="?", choices=list(schemas.SCHEMAS), default=None)
        p.add_argument("--out", type=Path, default=None, help="A directory to write every schema to")
        return parser

    def open(self, args: Optional[List[str]] = None, stream: TextIO = sys.stdout,
             err_stream: TextIO = sys.stderr) -> int:
        """
        Runs the command line interface by parsing command line arguments and carrying out the designated command

        :param args: The input arguments to use - will default to system args
        :param stream: The stream to print the JSON result to
        :param err_stream: The stream to print diagnostics and log messages to
        :return: The exit code: 0 on success, 1 on domain errors, 2 on usage errors
        """
        if args is None:
            args = sys.argv[1:]
        parser = self._create_parser()
        try:
            with contextlib.redirect_stderr(err_stream):
                parsed_args = parser.parse_args(args)
        except SystemExit as e:
            return e.code if isinstance(e.code, int) else 2
        if parsed_args.command is None:
            parser.print_help(file=err_stream)
            return 2

        handler = logging.StreamHandler(err_stream)
        log.addHandler(handler)
        log.setLevel(logging.DEBUG if parsed_args.verbose else logging.INFO)
        diagnostics = console.Console(file=err_stream)

        config = TorsionLabConfig.get()
        saved = (config.catalog_bound, config.modulus, config.jobs, config.progress_type, config.certify)
        self._exit_code = 0
        try:
            self._apply_overrides(config, parsed_args)
            result = self._commands[parsed_args.command](parsed_args)
            stream.write(serialization.dumps(result))
            return self._exit_code
        except UsageError as e:
            diagnostics.print("usage error:", str(e), style="bold red", markup=False, highlight=False)
            return 2
        except AdmissibilityError as e:
            # The refusal still prints its counterexample as the result
            stream.write(serialization.dumps({"error": str(e), "counterexample": e.counterexample}))
            diagnostics.print("error:", str(e), style="bold red", markup=False, highlight=False)
            return 1
        except (TorsionLabError, ValueError, OSError, json.JSONDecodeError) as e:
            diagnostics.print("error:", str(e), style="bold red", markup=False, highlight=False)
            return 1
        finally:
            config.catalog_bound, config.modulus, config.jobs, config.progress_type, config.certify = saved
            log.removeHandler(handler)

    @staticmethod
    def _apply_overrides(config: TorsionLabConfig, args: argparse.Namespace) -> None:
        """
        Set the config values given on the command line, for the duration of one command
        """
        if getattr(args, "catalog_bound", None) is not None:
            config.catalog_bound = args.catalog_bound
        if getattr(args, "modulus", None) is not None:
            config.modulus = args.modulus
        if getattr(args, "jobs", None) is not None:
            config.jobs = args.jobs
        if getattr(args, "progress", None) is not None:
            config.progress_type = args.progress
        if getattr(args, "certify", None) is not None:
            config.certify = args.certify

    @staticmethod
    def _theory(args: argparse.Namespace, *structures: FiniteStructure) -> TorsionTheory:
        """
        Resolve the torsion theory of a command from --theory, or from the family of its input structures
        """
        families = {s.family for s in structures}
        if len(families) > 1:
            raise FamilyMismatchError("Input structures belong to different families: {}".format(
                ", ".join(sorted(str(f) for f in families))))
        name = args.theory
        if name is None:
            if not families:
                raise UsageError("--theory is required for {}".format(args.command))
            name = str(next(iter(families)))
        modulus = args.modulus
        if modulus is None:
            groups = [s for s in structures if isinstance(s, PointedFiniteAbelianGroup)]
            modulus = groups[0].modulus if groups else TorsionLabConfig.get().modulus
        theory = theory_for(name, modulus)
        for s in structures:
            if s.family != theory.family:
                raise FamilyMismatchError("The {} theory cannot act on {} ({})".format(theory.name, s.describe(),
                                                                                      s.family))
        return theory

    @staticmethod
    def _load_arrow(args: argparse.Namespace) -> Morphism:
        source = serialization.load_structure(args.source)
        target = serialization.load_structure(args.target)
        return serialization.load_morphism(args.morphism, [source, target])

    @staticmethod
    def _require_family(structure: FiniteStructure, family: Family, command: str) -> None:
        if structure.family != family:
            raise FamilyMismatchError("{} needs a {} structure, got {} ({})".format(command, family,
                                                                                  structure.describe(),
                                                                                  structure.family))

    def _validate(self, args: argparse.Namespace) -> Dict[str, Any]:
        document = serialization.read_json(args.structure)
        try:
            structure = serialization.structure_from_document(document, validated=False)
            report = validate(structure)
        except TorsionLabError as e:
            self._exit_code = 1
            return {"valid": False, "structure": str(args.structure), "violations": [], "error": str(e)}
        if not report.valid:
            self._exit_code = 1
        return {"valid": report.valid, "structure": report.structure,
                "violations": [{"axiom": v.axiom, "witness": list(v.witness)} for v in report.violations]}

    def _homs(self, args: argparse.Namespace) -> Dict[str, Any]:
        source = serialization.load_structure(args.source)
        target = serialization.load_structure(args.target)
        homs = []
        for f in enumerate_homs(source, target):
            kind = classify_morphism(f)
            homs.append({"map": f.as_labels(), "mono": kind.mono, "epi": kind.epi, "iso": kind.iso})
        return {"source": source.describe(), "target": target.describe(), "count": len(homs), "homs": homs}

    def _decompose(self, args: argparse.Namespace) -> Dict[str, Any]:
        structure = serialization.load_structure(args.structure)
        theory = self._theory(args, structure)
        test_objects = None
        if TorsionLabConfig.get().certify:
            modulus = getattr(theory, "modulus", None)
            test_objects = generate_catalog(theory.family, modulus=modulus).like(structure)
        sequence = theory.decompose(structure, test_objects)
        document = serialization.sequence_to_document(theory.category, sequence)
        document["theory"] = theory.name
        return document

    def _radical(self, args: argparse.Namespace) -> Dict[str, Any]:
        structure = serialization.load_structure(args.structure)
        self._require_family(structure, Family.MV, "radical")
        assert isinstance(structure, FiniteMVAlgebra)
        radical = sorted(mv_radical(structure))
        return {"structure": structure.describe(), "radical": list(structure.labels_of(*radical)),
                "semisimple": radical == [0]}

    def _fix(self, args: argparse.Namespace) -> Dict[str, Any]:
        structure = serialization.load_structure(args.structure)
        self._require_family(structure, Family.MSet, "fix")
        assert isinstance(structure, FiniteMSetStructure)
        fixed = sorted(mset_fix(structure))
        return {"structure": structure.describe(), "fix": list(structure.labels_of(*fixed))}

    def _divisible_part(self, args: argparse.Namespace) -> Dict[str, Any]:
        structure = serialization.load_structure(args.structure)
        self._require_family(structure, Family.Coslice, "divisible-part")
        assert isinstance(structure, PointedFiniteAbelianGroup)
        modulus = structure.modulus if args.modulus is None else args.modulus
        divisible = coslice_divisible_part(structure, modulus)
        by_chains = coslice_divisible_part_by_chains(structure, modulus)
        if divisible != by_chains:
            raise TorsionLabError("Divisible parts disagree: {} by powers, {} by chains".format(
                structure.labels_of(*sorted(divisible)), structure.labels_of(*sorted(by_chains))))
        return {"structure": structure.describe(), "modulus": modulus,
                "divisible_part": list(structure.labels_of(*sorted(divisible)))}

    def _zker(self, args: argparse.Namespace) -> Dict[str, Any]:
        f = self._load_arrow(args)
        theory = self._theory(args, f.source, f.target)
        cat = theory.category
        witness = theory.zero_class.zker(f)
        return {"arrow": cat.describe(f), "kernel": cat.describe(witness.kernel),
                "object": serialization.structure_to_document(cat.dom(witness.kernel)),
                "zero_part": cat.describe(witness.zero_inclusion)}

    def _zcoker(self, args: argparse.Namespace) -> Dict[str, Any]:
        f = self._load_arrow(args)
        theory = self._theory(args, f.source, f.target)
        cat = theory.category
        witness = theory.zero_class.zcoker(f)
        if witness is None:
            return {"arrow": cat.describe(f), "exists": False}
        return {"arrow": cat.describe(f), "exists": True, "cokernel": cat.describe(witness.cokernel),
                "object": serialization.structure_to_document(cat.cod(witness.cokernel)),
                "max_quotient": cat.describe(witness.max_quotient)}

    def _factorize(self, args: argparse.Namespace) -> Dict[str, Any]:
        f = self._load_arrow(args)
        theory = self._theory(args, f.source, f.target)
        cat = theory.category
        result = factorize(theory, f)
        return {"theory": theory.name, "arrow": cat.describe(f), "e": cat.describe(result.e),
                "middle": serialization.structure_to_document(result.middle), "m": cat.describe(result.m),
                "certified": result.generic_e is not None}

    def _check(self, args: argparse.Namespace) -> Dict[str, Any]:
        theory = self._theory(args)
        catalog = generate_catalog(theory.family, modulus=getattr(theory, "modulus", None))
        if args.condition == "factorization":
            return verify_factorization_system(theory, catalog, args.orthogonality).to_dict()
        if args.condition == "extensions":
            return sweep_extensions(GaloisContext(theory, catalog), catalog).to_dict()
        if args.condition is not None:
            return check_condition(theory, ConditionTag(args.condition), catalog).to_dict()
        reports = [check_condition(theory, tag, catalog).to_dict() for tag in ConditionTag]
        return {"theory": theory.name, "verdict": all(r["verdict"] for r in reports),
                "conditions": {r["condition"]: r for r in reports}}

    def _classify_extension(self, args: argparse.Namespace) -> Dict[str, Any]:
        f = self._load_arrow(args)
        theory = self._theory(args, f.source, f.target)
        catalog = None
        if args.admissibility:
            catalog = generate_catalog(theory.family, modulus=getattr(theory, "modulus", None))
        ctx = GaloisContext(theory, catalog, cross_check=args.cross_check)
        document = classify_extension(ctx, f).to_dict()
        document.update({"theory": theory.name, "arrow": theory.category.describe(f)})
        return document

    def _catalog(self, args: argparse.Namespace) -> Dict[str, Any]:
        family = Family(args.family)
        if args.theory is not None and theory_for(args.theory).family != family:
            raise UsageError("--theory {} does not act on the {} family".format(args.theory, family))
        catalog = generate_catalog(family, seed_families=args.seed_families)
        document: Dict[str, Any] = {"parameters": catalog.parameters, "instances": catalog.names(),
                                    "checksum": checksum(list(catalog.instances))}
        if args.out is not None:
            document["manifest"] = str(serialization.save_catalog(catalog, args.out))
        return document

    def _schema(self, args: argparse.Namespace) -> Dict[str, Any]:
        if args.out is not None:
            return {"written": [str(path) for path in serialization.write_schemas(args.out)]}
        if args.kind is None:
            raise UsageError("schema needs a document kind or --out")
        return schemas.json_schema(args.kind)


def run(argv: Optional[List[str]] = None, stream: TextIO = sys.stdout, err_stream: TextIO = sys.stderr) -> int:
    """
    Run one torsionlab command

    :param argv: The command line arguments, defaults to system args
    :param stream: The stream to print the JSON result to
    :param err_stream: The stream to print diagnostics to
    :return: The exit code
    """
    return Lab().open(argv, stream, err_stream)


def main() -> None:
    sys.exit(run())
