"""Words in the free monoid on x, y and the monomial orders used throughout.

Words are plain strings over the alphabet {"x", "y"}; "" is the empty word.
A MonomialOrder fixes a variable precedence ("xy" means x > y) and a mode:

* "local": the leading word of a polynomial is the lex-greatest word among
  those of minimal degree, matching power-series conventions where low
  degree terms dominate.
* "global": the leading word is the lex-greatest among the maximal-degree
  words (ordinary deglex), used as a cross-check only.
"""

from __future__ import annotations

import itertools

ALPHABET = "xy"
EMPTY = ""


def rotations(w: str) -> list:
    """All |w| rotations of w, in shift order; duplicates are kept."""
    return [w[i:] + w[:i] for i in range(len(w))]


def all_words(degree: int, precedence: str = "xy") -> list:
    """Words of the given degree in lex order by the given precedence."""
    if degree == 0:
        return [EMPTY]
    return ["".join(t) for t in itertools.product(precedence, repeat=degree)]


def words_up_to(cap: int, precedence: str = "xy") -> list:
    out = []
    for d in range(cap + 1):
        out.extend(all_words(d, precedence))
    return out


class MonomialOrder:
    """Variable precedence plus a local/global leading-term convention."""

    __slots__ = ("precedence", "mode", "_rank")

    def __init__(self, precedence: str = "xy", mode: str = "local"):
        if sorted(precedence) != ["x", "y"]:
            raise ValueError("precedence must be a permutation of 'xy'")
        if mode not in ("local", "global"):
            raise ValueError("mode must be 'local' or 'global'")
        self.precedence = precedence
        self.mode = mode
        self._rank = {precedence[0]: 0, precedence[1]: 1}

    def rank_tuple(self, w: str) -> tuple:
        r = self._rank
        return tuple(r[c] for c in w)

    def sort_key(self, w: str) -> tuple:
        """Presentation order: degree ascending, lex-greatest first within
        a degree. Used for rendering and normal-basis listings."""
        return (len(w), self.rank_tuple(w))

    def leading_key(self, w: str):
        """Key whose minimum over the support picks the leading word."""
        if self.mode == "local":
            return (len(w), self.rank_tuple(w))
        return (-len(w), self.rank_tuple(w))

    def __eq__(self, other):
        return (isinstance(other, MonomialOrder)
                and other.precedence == self.precedence
                and other.mode == self.mode)

    def __hash__(self):
        return hash((self.precedence, self.mode))

    def __repr__(self):
        return "MonomialOrder(%r, %r)" % (self.precedence, self.mode)

    def to_json(self) -> dict:
        return {"precedence": self.precedence, "mode": self.mode}

    @classmethod
    def from_json(cls, doc: dict) -> "MonomialOrder":
        return cls(doc.get("precedence", "xy"), doc.get("mode", "local"))


def compare_words(u: str, v: str, order: MonomialOrder) -> int:
    """Total order on words: degree first, then left-to-right lex by
    precedence. Returns -1, 0, or 1 for u < v, u = v, u > v.

    Higher degree compares greater; within a degree the lex-greater word
    (earlier letters higher in precedence) compares greater. The order is
    multiplicative within a fixed degree.
    """
    if len(u) != len(v):
        return -1 if len(u) < len(v) else 1
    ru, rv = order.rank_tuple(u), order.rank_tuple(v)
    if ru == rv:
        return 0
    # smaller rank tuple = earlier precedence letters = greater word
    return 1 if ru < rv else -1
