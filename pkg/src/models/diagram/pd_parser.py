import logging
import re
from typing import Optional

from src.interfaces.parserAbstract import DiagramParser
from src.models.diagram.diagram import Diagram, build_diagram
from src.models.exceptions import DiagramError

logger = logging.getLogger(__name__)

_ENTRY = re.compile(r"^X\((\d+),(\d+),(\d+),(\d+)\)$")


class PDParser(DiagramParser):
    """
    Parser for planar diagram codes "X(a,b,c,d);X(...)". Whitespace is ignored, a trailing ";" is allowed.
    """

    @property
    def notation(self) -> str:
        return "pd"

    def parse(self, text: str, name: Optional[str] = None) -> Diagram:
        compact = re.sub(r"\s+", "", text or "")
        pieces = [piece for piece in compact.split(";") if piece]
        if not pieces:
            raise DiagramError("empty diagram: no X(a,b,c,d) entries found")

        entries = []
        for position, piece in enumerate(pieces, start=1):
            match = _ENTRY.match(piece)
            if not match:
                raise DiagramError(f"entry {position} '{piece}' is not of the form X(a,b,c,d)")
            entries.append(tuple(int(group) for group in match.groups()))

        logger.debug("parsed %d PD entries", len(entries))
        return build_diagram(entries, source=text.strip(), name=name)


def parse_pd(text: str) -> Diagram:
    return PDParser().parse(text)
