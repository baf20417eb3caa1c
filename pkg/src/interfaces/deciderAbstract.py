from abc import ABC, abstractmethod


class WordDecider(ABC):
    """
    Abstract base class for bounded searches on the word problem of a knot group.

    A decider looks for one kind of evidence about a group word: a finite representation sending it to a
    non-identity permutation, or an expression of it as a product of conjugated relators. It returns a
    Certificate; a search that runs out of budget returns an inconclusive one instead of raising.

    Methods
    -------
    decide(word, presentation, deadline) -> Certificate:
        Abstract method that runs the search. This method should be implemented in a subclass.

    Output Format (decide().to_json())
    -------
    {
        "verdict": "proved-trivial",
        "word": "x1 x2 x1^-1 x2^-1",
        "relator_product": [{"conjugator": "x1", "relator": 0, "exponent": 1}, ...],
        "representation": null,
        "reason": ""
    }
    """

    @abstractmethod
    def decide(self, word, presentation, deadline=None):
        """
        Abstract method that searches for evidence about the word.

        Parameters
        ----------
        word : GroupWord
            Freely reduced word in the arc generators.
        presentation : WirtingerPresentation
            Presentation the word is read in.
        deadline : float, optional
            time.monotonic() value after which the search gives up.

        Returns
        -------
        Certificate
            Proof of triviality, proof of non-triviality, or an inconclusive result.
        """
        pass
