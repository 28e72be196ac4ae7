"""Parser and formatter for the plain-text ket expression language (ket-v1).

Grammar:

    state   := ['-'] term (('+' | '-') term)*
    term    := [scalar ['*']] factor TENSOR factor
    factor  := ket | '(' linear ')'
    linear  := ['-'] sterm (('+' | '-') sterm)*
    sterm   := [scalar ['*']] ket
    ket     := '|' LABEL '>'            LABEL = letter (letter | digit | '_')*
    scalar  := real | real? 'i' | real '/' real | real '/sqrt(' real ')'
             | 'sqrt(' real ')' | '(' real ('+' | '-') real? 'i' ')'
    TENSOR  := '(x)' | 'x' | '⊗'

Kets left of the tensor operator belong to subsystem A (the Latin side), kets
to the right to subsystem B (the Greek side); the two label sets must be
disjoint. Basis order is first appearance in the text. Whitespace between
tokens never matters. Reals may carry an exponent (``1.5e-3``), and a leading
'-' on a state or parenthesized combination works as in ordinary arithmetic.

``format_state`` emits canonical text in this grammar: one parenthesized
Latin combination per Greek basis ket, Greek kets in basis order, integer
coefficients printed as integers and all others with 15 significant digits.
Only labels that match the LABEL rule survive a round trip.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .errors import ParseError
from .modes import BipartitePureState

FORMAT_VERSION = "ket-v1"

_TOKEN_RE = re.compile(
    r"\s+"
    r"|(?P<number>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z][A-Za-z0-9_]*)"
    r"|(?P<sym>[|><()+\-*/⊗])"
)


@dataclass(frozen=True)
class _Token:
    kind: str  # "number", "name", a single symbol, or "end"
    text: str
    pos: int  # 1-based character offset


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    index = 0
    while index < len(text):
        match = _TOKEN_RE.match(text, index)
        if match is None:
            raise ParseError(f"unexpected character {text[index]!r}", index + 1)
        if match.lastgroup == "number":
            tokens.append(_Token("number", match.group(), index + 1))
        elif match.lastgroup == "name":
            tokens.append(_Token("name", match.group(), index + 1))
        elif match.lastgroup == "sym":
            tokens.append(_Token(match.group(), match.group(), index + 1))
        index = match.end()
    tokens.append(_Token("end", "", len(text) + 1))
    return tokens


@dataclass(frozen=True)
class KetTerm:
    """One tensor-product term: coefficient * (Latin combo) (x) (Greek combo).

    Each side is a tuple of (coefficient, label) pairs.
    """

    coefficient: complex
    latin: tuple[tuple[complex, str], ...]
    greek: tuple[tuple[complex, str], ...]


@dataclass(frozen=True)
class KetExpression:
    """Parsed ket expression: a sum of tensor-product terms."""

    terms: tuple[KetTerm, ...]

    def to_state(self, strict_norm: bool = False) -> BipartitePureState:
        """Distribute the tensor products into an amplitude matrix."""
        latin: list[str] = []
        greek: list[str] = []
        for term in self.terms:
            for _, label in term.latin:
                if label not in latin:
                    latin.append(label)
            for _, label in term.greek:
                if label not in greek:
                    greek.append(label)
        overlap = set(latin) & set(greek)
        if overlap:
            raise ParseError(
                f"label {sorted(overlap)[0]!r} appears on both sides of a tensor product", 1
            )
        amps = np.zeros((len(latin), len(greek)), dtype=complex)
        for term in self.terms:
            for lcoef, llabel in term.latin:
                for gcoef, glabel in term.greek:
                    amps[latin.index(llabel), greek.index(glabel)] += (
                        term.coefficient * lcoef * gcoef
                    )
        return BipartitePureState.from_amplitudes(latin, greek, amps, strict_norm)


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.index = 0
        self.latin_seen: set[str] = set()
        self.greek_seen: set[str] = set()

    def peek(self, ahead: int = 0) -> _Token:
        return self.tokens[min(self.index + ahead, len(self.tokens) - 1)]

    def advance(self) -> _Token:
        tok = self.tokens[self.index]
        if tok.kind != "end":
            self.index += 1
        return tok

    def accept(self, kind: str) -> _Token | None:
        if self.peek().kind == kind:
            return self.advance()
        return None

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            found = repr(tok.text) if tok.kind != "end" else "end of input"
            raise ParseError(f"expected {what}, found {found}", tok.pos)
        return self.advance()

    # --- scalars ---------------------------------------------------------

    def _number(self, what: str = "a number") -> float:
        return float(self.expect("number", what).text)

    def _sqrt_call(self) -> float:
        # 'sqrt' has already been consumed
        self.expect("(", "'(' after sqrt")
        value = self._number()
        self.expect(")", "')' closing sqrt")
        return math.sqrt(value)

    def maybe_scalar(self) -> complex | None:
        tok = self.peek()
        if tok.kind == "number":
            value = float(self.advance().text)
            if self.accept("/"):
                nxt = self.peek()
                if nxt.kind == "number":
                    divisor = self._number()
                elif nxt.kind == "name" and nxt.text == "sqrt":
                    self.advance()
                    divisor = self._sqrt_call()
                else:
                    raise ParseError("expected a number or sqrt(...) after '/'", nxt.pos)
                if divisor == 0.0:
                    raise ParseError("division by zero in a scalar", nxt.pos)
                value /= divisor
            if self.peek().kind == "name" and self.peek().text == "i":
                self.advance()
                return value * 1j
            return complex(value)
        if tok.kind == "name" and tok.text == "i":
            self.advance()
            return 1j
        if tok.kind == "name" and tok.text == "sqrt":
            self.advance()
            value = self._sqrt_call()
            if self.peek().kind == "name" and self.peek().text == "i":
                self.advance()
                return value * 1j
            return complex(value)
        if tok.kind == "(":
            return self._maybe_paren_complex()
        return None

    def _maybe_paren_complex(self) -> complex | None:
        # '(' real ('+'|'-') real? 'i' ')'  -- backtrack if it is not one.
        saved = self.index
        self.advance()  # '('
        if self.peek().kind != "number":
            self.index = saved
            return None
        real_part = float(self.advance().text)
        sign_tok = self.peek()
        if sign_tok.kind not in ("+", "-"):
            self.index = saved
            return None
        self.advance()
        sign = 1.0 if sign_tok.kind == "+" else -1.0
        imag_part = 1.0
        if self.peek().kind == "number":
            imag_part = float(self.advance().text)
        if not (self.peek().kind == "name" and self.peek().text == "i"):
            self.index = saved
            return None
        self.advance()
        if self.peek().kind != ")":
            self.index = saved
            return None
        self.advance()
        return complex(real_part, sign * imag_part)

    # --- kets and factors ------------------------------------------------

    def parse_ket(self) -> tuple[str, int]:
        tok = self.expect("|", "'|' opening a ket")
        label = self.expect("name", "a ket label").text
        self.expect(">", "'>' closing the ket")
        return label, tok.pos

    def parse_sterm(self, negate: bool) -> tuple[complex, str, int]:
        coef = self.maybe_scalar()
        if coef is not None:
            self.accept("*")
        else:
            coef = 1 + 0j
        label, pos = self.parse_ket()
        return (-coef if negate else coef), label, pos

    def parse_linear(self) -> list[tuple[complex, str, int]]:
        items = [self.parse_sterm(negate=self.accept("-") is not None)]
        while self.peek().kind in ("+", "-"):
            sign = self.advance().kind
            items.append(self.parse_sterm(negate=sign == "-"))
        return items

    def parse_factor(self) -> list[tuple[complex, str, int]]:
        tok = self.peek()
        if tok.kind == "|":
            label, pos = self.parse_ket()
            return [(1 + 0j, label, pos)]
        if tok.kind == "(":
            self.advance()
            items = self.parse_linear()
            self.expect(")", "')' closing the combination")
            return items
        found = repr(tok.text) if tok.kind != "end" else "end of input"
        raise ParseError(f"expected a ket or '(', found {found}", tok.pos)

    def accept_tensor(self) -> bool:
        tok = self.peek()
        if tok.kind == "⊗":
            self.advance()
            return True
        if tok.kind == "name" and tok.text == "x":
            self.advance()
            return True
        if (
            tok.kind == "("
            and self.peek(1).kind == "name"
            and self.peek(1).text == "x"
            and self.peek(2).kind == ")"
        ):
            self.index += 3
            return True
        return False

    # --- terms and the whole state ----------------------------------------

    def parse_term(self, negate: bool) -> KetTerm:
        coef = self.maybe_scalar()
        if coef is not None:
            self.accept("*")
        else:
            coef = 1 + 0j
        latin = self.parse_factor()
        if not self.accept_tensor():
            tok = self.peek()
            found = repr(tok.text) if tok.kind != "end" else "end of input"
            raise ParseError(f"expected a tensor operator '(x)', found {found}", tok.pos)
        greek = self.parse_factor()
        for _, label, pos in latin:
            if label in self.greek_seen:
                raise ParseError(
                    f"label {label!r} appears on both sides of the tensor product", pos
                )
            self.latin_seen.add(label)
        for _, label, pos in greek:
            if label in self.latin_seen:
                raise ParseError(
                    f"label {label!r} appears on both sides of the tensor product", pos
                )
            self.greek_seen.add(label)
        return KetTerm(
            coefficient=-coef if negate else coef,
            latin=tuple((c, l) for c, l, _ in latin),
            greek=tuple((c, l) for c, l, _ in greek),
        )

    def parse_state_expr(self) -> KetExpression:
        terms = [self.parse_term(negate=self.accept("-") is not None)]
        while self.peek().kind in ("+", "-"):
            sign = self.advance().kind
            terms.append(self.parse_term(negate=sign == "-"))
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected trailing input {tok.text!r}", tok.pos)
        return KetExpression(tuple(terms))


def parse_expression(text: str) -> KetExpression:
    """Parse ket-v1 text into its syntax tree without building the state."""
    if not text.strip():
        raise ParseError("empty expression", 1)
    return _Parser(text).parse_state_expr()


def parse_state(text: str, strict_norm: bool = False) -> BipartitePureState:
    """Parse ket-v1 text into a BipartitePureState.

    The amplitude matrix is assembled by distributing every tensor product;
    bases are ordered by first appearance. The overall scale of the
    expression is recorded as the state's ``norm``, not discarded.
    """
    return parse_expression(text).to_state(strict_norm)


# --- formatting -----------------------------------------------------------


def _format_real(value: float) -> str:
    # 15 significant digits: coarse enough to collapse 1-ulp noise back to
    # clean integers, fine enough to keep format -> parse drift below 1e-12.
    return f"{value:.15g}"


def _coefficient_text(coef: complex) -> tuple[bool, str]:
    """Split a coefficient into (negative?, printable magnitude part).

    The text omits a bare factor of 1, so callers can glue it straight onto
    a ket: "" -> |a>, "2" -> 2|a>, "i" -> i|a>, "(2+3i)" -> (2+3i)|a>.
    """
    re_part, im_part = coef.real, coef.imag
    if im_part == 0.0:
        negative = re_part < 0.0
        magnitude = abs(re_part)
        return negative, "" if magnitude == 1.0 else _format_real(magnitude)
    if re_part == 0.0:
        negative = im_part < 0.0
        magnitude = abs(im_part)
        return negative, "i" if magnitude == 1.0 else _format_real(magnitude) + "i"
    negative = re_part < 0.0
    if negative:
        coef = -coef
    imag_text = "i" if abs(coef.imag) == 1.0 else _format_real(abs(coef.imag)) + "i"
    sign = "+" if coef.imag > 0.0 else "-"
    return negative, f"({_format_real(coef.real)}{sign}{imag_text})"


def _join_signed(pieces: list[tuple[bool, str]]) -> str:
    out = []
    for index, (negative, text) in enumerate(pieces):
        if index == 0:
            out.append(("-" if negative else "") + text)
        else:
            out.append((" - " if negative else " + ") + text)
    return "".join(out)


def format_state(state: BipartitePureState) -> str:
    """Render a state as canonical ket-v1 text.

    Coefficients are printed at the state's original scale
    (``amplitudes * norm``). The first Greek group lists every Latin ket,
    zeros included, so that parsing the result restores the exact basis
    order; later groups skip zero entries.
    """
    amps = np.asarray(state.amplitudes, dtype=complex) * state.norm
    groups: list[tuple[bool, str]] = []
    for j, greek_label in enumerate(state.greek_labels):
        pieces: list[tuple[bool, str]] = []
        for i, latin_label in enumerate(state.latin_labels):
            coef = complex(amps[i, j])
            if j > 0 and coef == 0:
                continue
            negative, text = _coefficient_text(coef)
            pieces.append((negative, f"{text}|{latin_label}>"))
        if not pieces:  # an all-zero column still has to name its Greek ket
            pieces = [(False, f"0|{state.latin_labels[0]}>")]
        if len(pieces) == 1:
            negative, text = pieces[0]
            groups.append((negative, f"{text}(x)|{greek_label}>"))
        else:
            groups.append((False, f"({_join_signed(pieces)})(x)|{greek_label}>"))
    return _join_signed(groups)
