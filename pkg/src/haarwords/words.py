"""Words in the free group: parsing, reduction, inverses and powers.

A word is a tuple of nonzero integers; ``i`` stands for the generator x_i and
``-i`` for its inverse.  Text input uses single letters (x, y, z, then a, b,
...) or numbered generators ``x7``; an uppercase letter is the inverse.
``[u,v]`` is the commutator u v u^-1 v^-1, ``^k`` raises to an integer power
and parentheses group.
"""
from __future__ import annotations

from typing import Iterable

_LETTERS = "xyz" + "".join(chr(c) for c in range(ord("a"), ord("w") + 1))
_INDEX = {ch: i + 1 for i, ch in enumerate(_LETTERS)}


class WordSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class Word(tuple):
    """A freely reduced word; construction performs the free reduction."""

    def __new__(cls, letters: Iterable[int] = ()):
        stack: list[int] = []
        for a in letters:
            a = int(a)
            if a == 0:
                raise ValueError("letters must be nonzero")
            if stack and stack[-1] == -a:
                stack.pop()
            else:
                stack.append(a)
        return super().__new__(cls, stack)

    @property
    def rank(self) -> int:
        return max((abs(a) for a in self), default=0)

    @property
    def length(self) -> int:
        return len(self)

    def __mul__(self, other):  # concatenation in the free group
        if isinstance(other, int):
            return power(self, other)
        return Word(tuple(self) + tuple(other))

    def __pow__(self, k: int) -> "Word":
        return power(self, k)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({tuple(self)!r})"


def generator_name(i: int) -> str:
    k = abs(i)
    name = _LETTERS[k - 1] if k <= len(_LETTERS) else f"x{k}"
    return name.upper() if i < 0 else name


def format_word(w: Iterable[int]) -> str:
    """Compact display such as ``xyXYz`` (empty word prints as ``1``)."""
    s = "".join(generator_name(a) for a in w)
    return s or "1"


def inverse_word(w: Iterable[int]) -> Word:
    return Word(-a for a in reversed(tuple(w)))


def power(w: Iterable[int], k: int) -> Word:
    base = Word(w) if k >= 0 else inverse_word(w)
    return Word(tuple(base) * abs(k))


def commutator(u: Iterable[int], v: Iterable[int]) -> Word:
    u, v = Word(u), Word(v)
    return Word(u + v + inverse_word(u) + inverse_word(v))


def cyclic_reduce(w: Iterable[int]) -> Word:
    w = tuple(Word(w))
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    return Word(w[i:j])


def is_cyclically_reduced(w: Iterable[int]) -> bool:
    w = tuple(w)
    if any(w[k] == -w[k + 1] for k in range(len(w) - 1)):
        return False
    return len(w) < 2 or w[0] != -w[-1]


def power_decomposition(w: Iterable[int]) -> tuple[Word, int]:
    """Return ``(u, p)`` with ``w = u^p`` literally and ``p`` maximal."""
    w = tuple(w)
    n = len(w)
    if n == 0:
        raise ValueError("the empty word has no power decomposition")
    for k in range(1, n + 1):
        if n % k == 0 and w[:k] * (n // k) == w:
            return Word(w[:k]), n // k
    raise AssertionError("unreachable")


def primitivity_exponent(w: Iterable[int]) -> int:
    return power_decomposition(cyclic_reduce(w))[1]


def concatenate_fresh(w1: Iterable[int], w2: Iterable[int]) -> Word:
    """``w1`` followed by ``w2`` written in generators disjoint from those of ``w1``."""
    w1 = Word(w1)
    shift = w1.rank
    return Word(tuple(w1) + tuple(a + shift if a > 0 else a - shift for a in Word(w2)))


def rotate(w: Iterable[int], k: int) -> Word:
    w = tuple(w)
    if not w:
        return Word()
    k %= len(w)
    return Word(w[k:] + w[:k])


def relabel(w: Iterable[int], mapping: dict[int, int]) -> Word:
    """Rename generators by ``mapping`` (positive index -> positive index)."""
    return Word(mapping[abs(a)] * (1 if a > 0 else -1) for a in w)


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            found = repr(self.peek()) if self.peek() else "end of input"
            raise WordSyntaxError(f"expected {ch!r}, found {found}", self.pos)
        self.pos += 1

    def parse(self) -> Word:
        w = self.expr()
        if self.peek():
            raise WordSyntaxError(f"unexpected {self.peek()!r}", self.pos)
        return w

    def expr(self) -> Word:
        letters: list[int] = []
        while self.peek() and self.peek() not in ",)]^":
            letters.extend(self.term())
        return Word(letters)

    def term(self) -> Word:
        w = self.atom()
        while self.peek() == "^":
            self.pos += 1
            w = power(w, self.integer())
        return w

    def integer(self) -> int:
        self.skip()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        digits = self.text[start:self.pos]
        if digits in ("", "+", "-"):
            raise WordSyntaxError("expected an integer exponent", start)
        return int(digits)

    def atom(self) -> Word:
        ch = self.peek()
        start = self.pos
        if ch == "(":
            self.pos += 1
            w = self.expr()
            self.expect(")")
            return w
        if ch == "[":
            self.pos += 1
            u = self.expr()
            self.expect(",")
            v = self.expr()
            self.expect("]")
            return commutator(u, v)
        if ch == "1":
            self.pos += 1
            return Word()
        if ch.isalpha() and ch.lower() in _INDEX:
            self.pos += 1
            index = _INDEX[ch.lower()]
            if ch.lower() == "x":
                j = self.pos
                while j < len(self.text) and self.text[j].isdigit():
                    j += 1
                if j > self.pos:
                    index = int(self.text[self.pos:j])
                    self.pos = j
                    if index == 0:
                        raise WordSyntaxError("generator index must be positive", start)
            return Word([-index if ch.isupper() else index])
        found = repr(ch) if ch else "end of input"
        raise WordSyntaxError(f"unexpected {found}", start)


def parse_word(text: str) -> Word:
    """Parse a word expression, e.g. ``"[[x,y],y]"`` or ``"x^3 Y"``."""
    return _Parser(text).parse()


ENGEL = parse_word("[[x,y],y]")
