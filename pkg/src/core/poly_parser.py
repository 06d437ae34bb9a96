"""Text parser for polynomial input.

Grammar (whitespace ignored):

    expression := term (('+' | '-') term)*
    term       := unary (('*' | '/') unary)*
    unary      := ('+' | '-') unary | power
    power      := atom ('^' INTEGER)?
    atom       := INTEGER | NAME | '(' expression ')'

Division is only allowed by a nonzero constant, which is how ``a/b``
rational literals are read. Exponents are non-negative integer literals.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from .poly import DEFAULT_VARIABLES, Polynomial
from ..utils.logger import get_logger

logger = get_logger(__name__)

NUMBER = "number"
NAME = "name"
OPERATOR = "operator"
LPAREN = "("
RPAREN = ")"
END = "end"

_OPERATORS = set("+-*/^")
_DIGITS = set("0123456789")


class PolynomialSyntaxError(ValueError):
    """Raised when polynomial text cannot be parsed.

    Attributes:
        position: 0-based character offset of the offending token
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownVariableError(PolynomialSyntaxError):
    """Raised for an identifier that is not a declared variable."""


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    """Split polynomial text into tokens.

    Raises:
        PolynomialSyntaxError: On a character outside the grammar
    """
    tokens: List[Token] = []
    i = 0
    while i < len(text):
        char = text[i]
        if char.isspace():
            i += 1
        elif char in _DIGITS:
            start = i
            while i < len(text) and text[i] in _DIGITS:
                i += 1
            tokens.append(Token(NUMBER, text[start:i], start))
        elif char.isalpha() or char == "_":
            start = i
            while i < len(text) and (text[i].isalnum() or text[i] == "_"):
                i += 1
            tokens.append(Token(NAME, text[start:i], start))
        elif char in _OPERATORS:
            tokens.append(Token(OPERATOR, char, i))
            i += 1
        elif char in "()":
            tokens.append(Token(char, char, i))
            i += 1
        else:
            raise PolynomialSyntaxError(f"Unexpected character {char!r}", i)
    tokens.append(Token(END, "", len(text)))
    return tokens


class _Parser:
    """Recursive descent over a token list."""

    def __init__(self, tokens: List[Token], variables: Sequence[str]):
        self.tokens = tokens
        self.index = 0
        self.variables = tuple(variables)
        self.nvars = len(self.variables)

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def accept(self, kind: str, text: Optional[str] = None) -> Optional[Token]:
        token = self.current
        if token.kind == kind and (text is None or token.text == text):
            return self.advance()
        return None

    def parse(self) -> Polynomial:
        result = self.expression()
        if self.current.kind != END:
            raise PolynomialSyntaxError(f"Unexpected token {self.current.text!r}", self.current.position)
        return result

    def expression(self) -> Polynomial:
        result = self.term()
        while True:
            if self.accept(OPERATOR, "+"):
                result = result + self.term()
            elif self.accept(OPERATOR, "-"):
                result = result - self.term()
            else:
                return result

    def term(self) -> Polynomial:
        result = self.unary()
        while True:
            if self.accept(OPERATOR, "*"):
                result = result * self.unary()
            elif self.current.kind == OPERATOR and self.current.text == "/":
                slash = self.advance()
                divisor = self.unary()
                if not divisor.is_constant():
                    raise PolynomialSyntaxError("Division by a non-constant", slash.position)
                if divisor.is_zero():
                    raise PolynomialSyntaxError("Division by zero", slash.position)
                result = result / divisor.constant_term()
            else:
                return result

    def unary(self) -> Polynomial:
        if self.accept(OPERATOR, "-"):
            return -self.unary()
        if self.accept(OPERATOR, "+"):
            return self.unary()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if not self.accept(OPERATOR, "^"):
            return base
        token = self.current
        if token.kind == OPERATOR and token.text == "-":
            raise PolynomialSyntaxError("Negative exponent", token.position)
        if token.kind != NUMBER:
            raise PolynomialSyntaxError("Exponent must be a non-negative integer literal", token.position)
        self.advance()
        return base ** int(token.text)

    def atom(self) -> Polynomial:
        token = self.current
        if token.kind == NUMBER:
            self.advance()
            return Polynomial.constant(Fraction(int(token.text)), self.nvars)
        if token.kind == NAME:
            self.advance()
            if token.text not in self.variables:
                raise UnknownVariableError(f"Unknown variable {token.text!r}", token.position)
            return Polynomial.variable(self.variables.index(token.text), self.nvars)
        if token.kind == LPAREN:
            self.advance()
            inner = self.expression()
            if not self.accept(RPAREN):
                raise PolynomialSyntaxError("Expected ')'", self.current.position)
            return inner
        if token.kind == END:
            raise PolynomialSyntaxError("Unexpected end of input", token.position)
        raise PolynomialSyntaxError(f"Unexpected token {token.text!r}", token.position)


def parse_polynomial(text: str, variables: Optional[Sequence[str]] = None) -> Polynomial:
    """Parse polynomial text into its canonical sparse form.

    Args:
        text: Polynomial expression, e.g. ``"x*y + 1/2*z^2"``
        variables: Ordered variable names (default x, y, z)

    Returns:
        Parsed polynomial in ``len(variables)`` variables

    Raises:
        PolynomialSyntaxError: On malformed input (carries the position)
        UnknownVariableError: On an undeclared variable name

    Example:
        >>> str(parse_polynomial("(x+y)^2 - x^2 - y^2 - 2*x*y", ("x", "y")))
        '0'
    """
    names = tuple(variables or DEFAULT_VARIABLES[3])
    if len(names) not in DEFAULT_VARIABLES:
        raise ValueError(f"Expected 2 or 3 variables, got {len(names)}")
    if len(set(names)) != len(names):
        raise ValueError(f"Duplicate variable names: {names}")
    poly = _Parser(tokenize(text), names).parse()
    logger.debug(f"Parsed {text!r} -> {poly.to_string(names)}")
    return poly
