"""
This class implements the knot algebra pipeline.
It consists of the following steps:
1. Parse: read the diagram from PD or Gauss code, a file or the builtin table
2. Quiver: build the signed quiver and its fundamental cycles
3. Algebra: build the algebra over the chosen field and tau
4. Checks: run the structural verifiers on the algebra
5. Grading: Wirtinger presentation, arrow degrees, homogeneity and connectedness
"""

import logging
from functools import cached_property
from pathlib import Path
from typing import List

from src.data.knot_helper import builtin, builtin_table
from src.interfaces.verifierAbstract import Verifier
from src.models.algebra.algebra import DiagramAlgebra, Variant, build_algebra
from src.models.algebra.tau import TauAssignment
from src.models.diagram.diagram import Diagram
from src.models.diagram.gauss_parser import GaussParser
from src.models.diagram.pd_parser import PDParser
from src.models.exceptions import ConfigError
from src.models.grading.checks import ConnectedVerdict, HomogeneityVerdict, check_connected, check_homogeneity
from src.models.grading.degrees import arrow_degrees, basis_degrees
from src.models.grading.representations import RepresentationSearch
from src.models.grading.wirtinger import abelianization_rank, wirtinger
from src.models.properties.biserial import SpecialBiserialVerifier
from src.models.properties.frobenius import FrobeniusVerifier
from src.models.properties.structure import (
    AdmissibilityVerifier,
    AssociativityVerifier,
    BasicVerifier,
    OracleVerifier,
    UnitVerifier,
)
from src.models.quiver.quiver import SignedQuiver, build_quiver
from src.models.scalars.scalars import FieldContext
from src.pipeline.run_config import RunConfig

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1


class KnotAlgebraPipeline:
    """
    Knot algebra pipeline.

    Attributes:
        config (RunConfig): input, field, tau, variant and budgets of the run.
    """

    def __init__(self, config: RunConfig):
        self.config = config

    def _envelope(self, command: str, payload: dict) -> dict:
        return {"schema": SCHEMA_VERSION, "command": command, "diagram": self.diagram.name, **payload}

    """
    Parse Block
    """

    @cached_property
    def diagram(self) -> Diagram:
        kind, source = self.config.source_kind, self.config.source
        if kind == "builtin":
            return builtin(source)
        if kind == "pd":
            return PDParser().parse(source)
        if kind == "gauss":
            return GaussParser().parse(source)
        try:
            text = Path(source).read_text().strip()
        except OSError as e:
            raise ConfigError(f"cannot read diagram file {source}: {e}") from None
        parser = PDParser() if text.upper().startswith("X") else GaussParser()
        logger.debug("reading %s as %s code", source, parser.notation)
        return parser.parse(text, name=Path(source).stem)

    def parse_report(self) -> dict:
        d = self.diagram
        return self._envelope(
            "parse",
            {
                "c": d.c,
                "n_D": d.n_segments,
                "writhe": d.writhe,
                "genus": d.genus,
                "virtual": d.is_virtual,
                "pd": d.to_pd(),
                "diagram_json": d.to_json(),
            },
        )

    """
    Quiver Block
    """

    @cached_property
    def quiver(self) -> SignedQuiver:
        return build_quiver(self.diagram)

    def quiver_report(self) -> dict:
        q = self.quiver
        cycles = []
        for vertex in q.vertices:
            cycles.append(
                {
                    "vertex": vertex,
                    "alpha": q.path_arrows(q.alpha(vertex)),
                    "beta": q.path_arrows(q.beta(vertex)),
                }
            )
        return self._envelope("quiver", {"quiver": q.to_json(), "fundamental_cycles": cycles})

    def quiver_dot(self) -> str:
        return self.quiver.to_dot()

    """
    Algebra Block
    """

    @cached_property
    def field_context(self) -> FieldContext:
        return FieldContext.from_string(self.config.field)

    @cached_property
    def tau(self) -> TauAssignment:
        q = None if self.config.q is None else self.field_context.parse(self.config.q)
        return TauAssignment.from_spec(self.quiver, self.field_context, self.config.tau, q)

    @cached_property
    def algebra(self) -> DiagramAlgebra:
        return build_algebra(self.quiver, self.tau, self.field_context, Variant(self.config.variant))

    def algebra_report(self) -> dict:
        A = self.algebra
        payload = A.to_json()
        payload["relations"] = A.relations().to_json()
        return self._envelope("algebra", payload)

    """
    Check Block
    """

    def verifiers(self) -> List[Verifier]:
        progress = self.config.progress
        suite: List[Verifier] = [
            AdmissibilityVerifier(),
            BasicVerifier(),
            SpecialBiserialVerifier(),
            UnitVerifier(),
            AssociativityVerifier(progress),
            OracleVerifier(),
        ]
        if self.algebra.variant is Variant.LAMBDA:
            suite.append(FrobeniusVerifier(progress))
        return suite

    def check_report(self) -> dict:
        reports = []
        for verifier in self.verifiers():
            report = verifier.verify(self.algebra)
            logger.info("%s: %s", verifier.name, "pass" if report.passed else "FAIL")
            reports.append(report.to_json())
        skipped = [] if self.algebra.variant is Variant.LAMBDA else ["frobenius"]
        return self._envelope(
            "check",
            {
                "variant": self.algebra.variant.value,
                "field": self.field_context.label(),
                "passed": all(report["passed"] for report in reports),
                "checks": reports,
                "skipped": skipped,
            },
        )

    """
    Grading Block
    """

    def grading_report(self) -> dict:
        budgets = self.config.budgets
        presentation = wirtinger(self.diagram)
        assignment = arrow_degrees(self.quiver, self.diagram)
        representations = RepresentationSearch(budgets, progress=self.config.progress)
        homogeneity = check_homogeneity(self.algebra, assignment, presentation, budgets, representations)
        connected = check_connected(self.quiver, assignment, presentation, budgets, representations)

        payload = {
            "presentation": presentation.to_json(),
            "abelianization_rank": abelianization_rank(presentation),
            "degrees": assignment.to_json(),
            "homogeneity": homogeneity.to_json(),
            "connected": connected.to_json(),
            "budgets": budgets.to_json(),
            "inconclusive": homogeneity.verdict is HomogeneityVerdict.INCONCLUSIVE
            or connected.verdict is ConnectedVerdict.INCONCLUSIVE,
        }
        if homogeneity.verdict is HomogeneityVerdict.HOMOGENEOUS:
            payload["basis_degrees"] = {
                self.algebra.basis[index].describe(): word.render()
                for index, word in basis_degrees(self.algebra, assignment).items()
            }
        return self._envelope("grading", payload)

    """
    Table Block
    """

    @staticmethod
    def table_report() -> dict:
        table = builtin_table()
        return {"schema": SCHEMA_VERSION, "command": "table", "diagrams": table.to_dict(orient="records")}

    def run(self, command: str) -> dict:
        blocks = {
            "parse": self.parse_report,
            "quiver": self.quiver_report,
            "algebra": self.algebra_report,
            "check": self.check_report,
            "grading": self.grading_report,
        }
        if command not in blocks:
            raise ConfigError(f"unknown command '{command}'")
        return blocks[command]()
