import logging
from pathlib import Path
from typing import List

import pandas as pd

from src.models.diagram.diagram import Diagram
from src.models.diagram.pd_parser import PDParser
from src.models.exceptions import UnknownBuiltinError

logger = logging.getLogger(__name__)

"""
Helper Class for the builtin knot diagrams to fetch fixtures and the overview table without loading the csv individually
"""

BUILTIN_PATH = Path(__file__).with_name("builtin_diagrams.csv")


class knot_helper:
    def __init__(self, path_to_table: str = str(BUILTIN_PATH)):
        self.path = path_to_table
        self.look_up_table = self.load_look_up_table()
        self.parser = PDParser()

    def load_look_up_table(self) -> pd.DataFrame:
        """
        Load the fixture table
        :return: Dataframe indexed by builtin name with columns pd and description
        """
        table = pd.read_csv(self.path, dtype=str)
        table.set_index("name", inplace=True)
        return table

    def names(self) -> List[str]:
        return self.look_up_table.index.tolist()

    def look_up_pd(self, name: str) -> str:
        if name not in self.look_up_table.index:
            raise UnknownBuiltinError(f"unknown builtin '{name}', choose one of {', '.join(self.names())}")
        return self.look_up_table.loc[name, "pd"]

    def get_diagram(self, name: str) -> Diagram:
        return self.parser.parse(self.look_up_pd(name), name=name)

    def get_table(self) -> pd.DataFrame:
        """
        Overview of all builtins
        :return: Dataframe with name, c, n_D, writhe, genus, pd and description
        """
        rows = []
        for name in self.names():
            diagram = self.get_diagram(name)
            rows.append(
                {
                    "name": name,
                    "c": diagram.c,
                    "n_D": diagram.n_segments,
                    "writhe": diagram.writhe,
                    "genus": diagram.genus,
                    "pd": diagram.to_pd(),
                    "description": self.look_up_table.loc[name, "description"],
                }
            )
        return pd.DataFrame(rows, columns=["name", "c", "n_D", "writhe", "genus", "pd", "description"])


_default_helper = None


def builtin(name: str) -> Diagram:
    """Return the stored fixture diagram for a builtin name."""
    global _default_helper
    if _default_helper is None:
        _default_helper = knot_helper()
    return _default_helper.get_diagram(name)


def builtin_table() -> pd.DataFrame:
    global _default_helper
    if _default_helper is None:
        _default_helper = knot_helper()
    return _default_helper.get_table()
