from abc import ABC, abstractmethod
from typing import Any, Dict, Hashable, List, Optional, Sequence, Union

import numpy as np

from cayley_isoperimetry.exceptions import AlphabetError, DomainError

Element = Hashable
Word = Union[str, Sequence[str]]

INVERSE_SUFFIX = "^-1"


def tokenize(word: Word) -> List[str]:
    """Split a word into letter tokens.

    Strings are split on whitespace, ``*`` and ``·``; the empty string is the
    identity word. Sequences are taken as already tokenized.
    """
    if isinstance(word, str):
        return word.replace("*", " ").replace("·", " ").split()
    return [str(token) for token in word]


def invert_token(token: str) -> str:
    if token.endswith(INVERSE_SUFFIX):
        return token[: -len(INVERSE_SUFFIX)]
    return token + INVERSE_SUFFIX


def invert_word(word: Word) -> List[str]:
    """Formal inverse of a word: reversed order, every letter inverted."""
    return [invert_token(token) for token in reversed(tokenize(word))]


def _tupleify(obj: Any) -> Any:
    if isinstance(obj, list):
        return tuple(_tupleify(item) for item in obj)
    return obj


def _listify(obj: Any) -> Any:
    if isinstance(obj, tuple):
        return [_listify(item) for item in obj]
    return obj


class GroupBackend(ABC):
    """A group with canonical element encodings and a named alphabet.

    Elements are hashable normal forms (ints or nested int tuples), so two
    elements are equal exactly when their encodings are equal. Backends are
    immutable after construction.

    Attributes:
        kind: Backend type name used in descriptors and reports
    """

    kind: str = ""

    def __init__(self, letters: Dict[str, Element]):
        self._letters: Dict[str, Element] = dict(letters)
        self._elements: Optional[List[Element]] = None

    @property
    def letters(self) -> Dict[str, Element]:
        """Named generators; each letter ``x`` also has the formal inverse ``x^-1``."""
        return dict(self._letters)

    @property
    @abstractmethod
    def identity(self) -> Element:
        pass

    @abstractmethod
    def multiply(self, g: Element, h: Element) -> Element:
        pass

    @abstractmethod
    def inverse(self, g: Element) -> Element:
        pass

    @abstractmethod
    def encode(self, g: Element) -> str:
        """Canonical string form of an element."""
        pass

    @property
    @abstractmethod
    def descriptor(self) -> Dict[str, Any]:
        """JSON-serialisable description from which the backend can be rebuilt."""
        pass

    @property
    def is_finite(self) -> bool:
        return False

    @property
    def is_amenable(self) -> Optional[bool]:
        return None

    @property
    def contains_free_subgroup(self) -> Optional[bool]:
        return None

    def order(self) -> Optional[int]:
        return len(self.elements()) if self.is_finite else None

    def elements(self) -> List[Element]:
        """All elements of a finite backend, breadth-first from the identity."""
        if not self.is_finite:
            raise DomainError(
                f"{self.kind} group is infinite; elements are not listable"
            )
        if self._elements is None:
            generators = self.generator_elements()
            seen = {self.identity}
            ordered = [self.identity]
            frontier = [self.identity]
            while frontier:
                next_frontier = []
                for x in frontier:
                    for s in generators:
                        y = self.multiply(x, s)
                        if y not in seen:
                            seen.add(y)
                            ordered.append(y)
                            next_frontier.append(y)
                frontier = next_frontier
            self._elements = ordered
        return list(self._elements)

    def generator_elements(self) -> List[Element]:
        """Letters and their inverses in letter order, deduplicated, without e."""
        result: List[Element] = []
        seen = set()
        for name in self._letters:
            for g in (self._letters[name], self.inverse(self._letters[name])):
                if g != self.identity and g not in seen:
                    seen.add(g)
                    result.append(g)
        return result

    def resolve_token(self, token: str) -> Element:
        if token in self._letters:
            return self._letters[token]
        if token.endswith(INVERSE_SUFFIX):
            base = token[: -len(INVERSE_SUFFIX)]
            if base in self._letters:
                return self.inverse(self._letters[base])
        raise AlphabetError(
            f"Unknown letter '{token}' for {self.kind} group "
            f"(alphabet: {', '.join(self._letters)})"
        )

    def evaluate(self, word: Word) -> Element:
        """Evaluate a word to its canonical element."""
        result = self.identity
        for token in tokenize(word):
            result = self.multiply(result, self.resolve_token(token))
        return result

    def power(self, g: Element, exponent: int) -> Element:
        base = g if exponent >= 0 else self.inverse(g)
        result = self.identity
        for _ in range(abs(exponent)):
            result = self.multiply(result, base)
        return result

    def sort_key(self, g: Element) -> str:
        return self.encode(g)

    def to_payload(self, g: Element) -> Any:
        """JSON-compatible form of an element (tuples become lists)."""
        return _listify(g)

    def from_payload(self, obj: Any) -> Element:
        return _tupleify(obj)

    def alphabet(self) -> List[str]:
        """All letter tokens including formal inverses, in a fixed order."""
        tokens = list(self._letters)
        return tokens + [name + INVERSE_SUFFIX for name in self._letters]

    def random_word(self, rng: np.random.Generator, length: int) -> List[str]:
        tokens = self.alphabet()
        return [tokens[i] for i in rng.integers(len(tokens), size=length)]

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self.descriptor})"
