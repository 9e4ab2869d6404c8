"""Shared data types for modext."""

from enum import Enum, StrEnum

__all__ = [
    "ClassLabel",
    "DecisionMethod",
    "EndTerm",
]


class EndTerm(StrEnum):
    """The end term of an extension a class label looks at.

    Attributes:
        LOWER: The subterm A.
        UPPER: The quotient term C.
    """

    LOWER = "l"
    UPPER = "u"


class ClassLabel(Enum):
    """One of the four (a, b) class labels.

    The first letter says whether the class is a monogeny ("m") or an epigeny
    ("e") class, the second whether it looks at the lower term A ("l") or the
    upper term C ("u").

    Examples:
        >>> ClassLabel.ML.a, ClassLabel.ML.b
        ('m', <EndTerm.LOWER: 'l'>)
        >>> str(ClassLabel.EU)
        '(e,u)'
        >>> ClassLabel.parse("e,l")
        <ClassLabel.EL: ('e', 'l')>
    """

    ML = ("m", "l")
    EL = ("e", "l")
    MU = ("m", "u")
    EU = ("e", "u")

    @property
    def a(self) -> str:
        """Monogeny or epigeny letter."""
        return self.value[0]

    @property
    def b(self) -> EndTerm:
        """End term the label looks at."""
        return EndTerm(self.value[1])

    @property
    def key(self) -> str:
        """Compact key used in reports, e.g. ``"ml"``."""
        return "".join(self.value)

    @classmethod
    def parse(cls, text: str) -> "ClassLabel":
        """Parse ``"m,l"``, ``"(m,l)"`` or ``"ml"`` into a label.

        Raises:
            ValueError: If the text does not name one of the four labels.
        """
        letters = tuple(ch for ch in text.lower() if ch.isalpha())
        for label in cls:
            if label.value == letters:
                return label
        raise ValueError(f"Unknown class label: {text!r}")

    def __str__(self):
        return f"({self.a},{self.b.value})"


class DecisionMethod(StrEnum):
    """Decision procedures for isomorphism of direct sums."""

    PARZIALE = "parziale"
    COMPLETO = "completo"
    COMPLETO_PRIME = "completo_prime"
    BRUTE_FORCE = "brute_force"
