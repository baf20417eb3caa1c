from abc import ABC, abstractmethod

from src.models.diagram.diagram import Diagram


class DiagramParser(ABC):
    """
    Abstract base class for knot diagram parsers.

    A parser turns one textual encoding of an oriented knot diagram into a validated Diagram. Validation
    (label multiplicities, strand continuity, single traversal component) is shared through
    `src.models.diagram.diagram.build_diagram`; a parser only has to produce the PD tuples.

    Methods
    -------
    parse(text: str) -> Diagram:
        Abstract method that parses the text. This method should be implemented in a subclass.

    Input Format (PD)
    -------
    X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)

    Input Format (Gauss)
    -------
    O1+U2+O3+U1+O2+U3+

    Output Format (parse().to_json())
    -------
    {
        "c": 3,
        "crossings": [{"id": 0, "label": 1, "slots": [1, 4, 2, 5], "sign": "-", ...}, ...],
        "segments": [{"id": 1, "from": 1, "departs": "over", "to": 0, "arrives": "under", "arc": 2}, ...],
        "arcs": [{"id": 0, "segments": [2, 3]}, ...],
        ...
    }
    """

    @property
    def notation(self) -> str:
        return ""

    @abstractmethod
    def parse(self, text: str) -> Diagram:
        """
        Abstract method that parses a diagram.

        Parameters
        ----------
        text : str
            The encoded diagram.

        Returns
        -------
        Diagram
            The validated diagram.

        Raises
        ------
        DiagramError
            The text is malformed or does not describe a single oriented knot.
        """
        pass
