"""Concrete syntax: `o` unit, lowercase atoms, `~` negation, `<A;B>` seq,
`[A,B]` par, `(A,B)` copar, `{}` hole (contexts only).  Whitespace is
insignificant.  The printer emits the canonical form bit-exactly: children
in canonical order, negation only on atoms, no redundant brackets.
"""
from __future__ import annotations

from .core import (
    Atom,
    Copar,
    HOLE,
    Hole,
    Par,
    Seq,
    Structure,
    UNIT,
    canonicalize,
)

__all__ = ["ParseError", "format_structure", "parse_structure", "parse_context", "parse_raw"]


class ParseError(ValueError):
    """Syntax error with 1-based line/column position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


def format_structure(s: Structure) -> str:
    if s is UNIT:
        return "o"
    if s is HOLE:
        return "{}"
    if isinstance(s, Atom):
        return ("~" if s.negative else "") + s.name
    if isinstance(s, Seq):
        return "<" + ";".join(format_structure(c) for c in s.children) + ">"
    if isinstance(s, Par):
        return "[" + ",".join(format_structure(c) for c in s.children) + "]"
    if isinstance(s, Copar):
        return "(" + ",".join(format_structure(c) for c in s.children) + ")"
    raise TypeError(f"not a structure: {s!r}")


_PUNCT = {
    "<": "LANGLE",
    ">": "RANGLE",
    "[": "LBRACK",
    "]": "RBRACK",
    "(": "LPAREN",
    ")": "RPAREN",
    ",": "COMMA",
    ";": "SEMI",
    "~": "TILDE",
}

_CLOSER = {"seq": (">", "RANGLE", "SEMI"), "par": ("]", "RBRACK", "COMMA"), "copar": (")", "RPAREN", "COMMA")}
_OPENER = {"LANGLE": "seq", "LBRACK": "par", "LPAREN": "copar"}


def _tokenize(text: str):
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch in _PUNCT:
            tokens.append((_PUNCT[ch], ch, line, col))
            col += 1
            i += 1
            continue
        if ch == "{":
            j = i + 1
            c2 = col + 1
            while j < n and text[j] in " \t":
                j += 1
                c2 += 1
            if j < n and text[j] == "}":
                tokens.append(("HOLE", "{}", line, col))
                i = j + 1
                col = c2 + 1
                continue
            raise ParseError("expected '}' after '{'", line, col)
        if ch.islower() and ch.isalpha():
            j = i
            while j < n and (text[j].islower() and text[j].isalpha() or text[j].isdigit() or text[j] == "_"):
                j += 1
            name = text[i:j]
            tokens.append(("IDENT", name, line, col))
            col += j - i
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(("EOF", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message: str):
        _, _, line, col = self.peek()
        raise ParseError(message, line, col)

    def term(self):
        kind, value, line, col = self.take()
        if kind == "IDENT":
            return ("unit",) if value == "o" else ("atom", value, False)
        if kind == "TILDE":
            return ("neg", self.term())
        if kind == "HOLE":
            return ("hole",)
        if kind in _OPENER:
            tag = _OPENER[kind]
            closer_char, closer, sep = _CLOSER[tag]
            items = []
            if self.peek()[0] == closer:
                self.take()
                return (tag, ())
            items.append(self.term())
            while True:
                k = self.peek()[0]
                if k == closer:
                    self.take()
                    return (tag, tuple(items))
                if k == sep:
                    self.take()
                    items.append(self.term())
                    continue
                self.fail(f"expected {sep.lower()!r} separator or {closer_char!r}")
        self.fail("expected a structure")

    def parse(self):
        t = self.term()
        if self.peek()[0] != "EOF":
            self.fail("trailing input")
        return t


def parse_raw(text: str):
    """Parse into a raw term tuple without canonicalizing."""
    return _Parser(text).parse()


def parse_structure(text: str) -> Structure:
    """Parse and canonicalize; holes are rejected."""
    s = _canonical(text)
    if s._holes:
        line, col = 1, 1
        raise ParseError("hole is only allowed in contexts", line, col)
    return s


def parse_context(text: str) -> Structure:
    """Parse a one-hole context; the hole may not sit under a negation."""
    s = _canonical(text)
    if s._holes != 1:
        raise ParseError(f"context must contain exactly one hole, found {s._holes}", 1, 1)
    return s


def _canonical(text: str) -> Structure:
    raw = parse_raw(text)
    try:
        return canonicalize(raw)
    except ValueError as exc:
        raise ParseError(str(exc), 1, 1) from None
