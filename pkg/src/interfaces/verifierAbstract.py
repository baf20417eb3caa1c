from abc import ABC, abstractmethod

from src.models.report import CheckReport


class Verifier(ABC):
    """
    Abstract base class for structural checks on a diagram algebra.

    A verifier runs one exact check (admissibility, basicness, special biserial, Frobenius, ...) and
    always returns a CheckReport; failures are data, not exceptions.

    Methods
    -------
    verify(algebra) -> CheckReport:
        Abstract method that runs the check. This method should be implemented in a subclass.

    Output Format (verify().to_json())
    -------
    {
        "name": "frobenius",
        "passed": true,
        "details": {"triples_checked": 1296, ...},
        "witness": null
    }
    """

    @property
    def name(self) -> str:
        return ""

    @abstractmethod
    def verify(self, algebra) -> CheckReport:
        """
        Abstract method that checks the algebra.

        Parameters
        ----------
        algebra : DiagramAlgebra
            A built diagram algebra.

        Returns
        -------
        CheckReport
            Verdict, statistics and a witness when the check fails.
        """
        pass
