import logging
import re
from collections import defaultdict
from typing import Dict, List, Optional, Tuple

from src.interfaces.parserAbstract import DiagramParser
from src.models.diagram.diagram import Diagram, build_diagram
from src.models.exceptions import DiagramError

logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"([OU])(\d+)([+-])")


class GaussParser(DiagramParser):
    """
    Parser for signed Gauss codes such as "O1+U2+O3+U1+O2+U3+".

    Token k (1-based) is the k-th passage through a crossing along the orientation and segment k runs from passage
    k to passage k+1 (cyclically). Every label must occur once as O and once as U with the same sign.
    Crossing indices follow the sorted crossing labels.
    """

    @property
    def notation(self) -> str:
        return "gauss"

    def parse(self, text: str, name: Optional[str] = None) -> Diagram:
        tokens = self.__tokenize(text)
        passages = self.__collect_passages(tokens)
        n = len(tokens)

        def prev(position: int) -> int:
            return n if position == 1 else position - 1

        entries = []
        labels = sorted(passages)
        for label in labels:
            sign, over_at, under_at = passages[label]
            under_in, under_out = prev(under_at), under_at
            over_in, over_out = prev(over_at), over_at
            if sign == "+":
                entries.append((under_in, over_out, under_out, over_in))
            else:
                entries.append((under_in, over_in, under_out, over_out))

        diagram = build_diagram(entries, labels=labels, source=text.strip(), name=name)
        for x, label in zip(diagram.crossings, labels):
            if x.sign.value != passages[label][0]:
                # the slot order above must reproduce the token sign
                raise DiagramError(f"crossing {label}: sign {passages[label][0]} is not realized by the code")
        return diagram

    def __tokenize(self, text: str) -> List[Tuple[str, int, str]]:
        compact = re.sub(r"\s+", "", text or "")
        if not compact:
            raise DiagramError("empty Gauss code")
        tokens = []
        position = 0
        for match in _TOKEN.finditer(compact):
            if match.start() != position:
                raise DiagramError(f"unexpected text '{compact[position:match.start()]}' in Gauss code")
            tokens.append((match.group(1), int(match.group(2)), match.group(3)))
            position = match.end()
        if position != len(compact):
            raise DiagramError(f"unexpected text '{compact[position:]}' at the end of the Gauss code")
        return tokens

    def __collect_passages(self, tokens: List[Tuple[str, int, str]]) -> Dict[int, Tuple[str, int, int]]:
        """Map crossing label -> (sign, position of the O token, position of the U token)."""
        seen: Dict[int, Dict[str, List[Tuple[int, str]]]] = defaultdict(lambda: {"O": [], "U": []})
        for position, (kind, label, sign) in enumerate(tokens, start=1):
            seen[label][kind].append((position, sign))

        passages = {}
        for label in sorted(seen):
            overs, unders = seen[label]["O"], seen[label]["U"]
            if len(overs) != 1 or len(unders) != 1:
                raise DiagramError(
                    f"crossing {label} appears {len(overs)} times over and {len(unders)} times under, "
                    "expected once each"
                )
            if overs[0][1] != unders[0][1]:
                raise DiagramError(f"crossing {label} has inconsistent signs {overs[0][1]} and {unders[0][1]}")
            passages[label] = (overs[0][1], overs[0][0], unders[0][0])
        return passages


def parse_gauss(text: str) -> Diagram:
    return GaussParser().parse(text)
