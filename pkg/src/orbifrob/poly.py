"""Sparse multivariate polynomials over Q, plus the text grammar for input.

Grammar (whitespace insensitive):

    expr     := term (("+" | "-") term)*
    term     := factor ("*" factor)*
    factor   := rational | variable ("^" uint)?
    rational := ["-"] uint ("/" uint)?

Variables must come from the declared list.  Errors carry the character
position where parsing failed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

Monomial = tuple[int, ...]


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class Polynomial:
    """Polynomial as {exponent tuple: coefficient} over a fixed variable list."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables: Iterable[str], terms: Mapping[Monomial, Fraction] | None = None):
        vs = tuple(variables)
        if len(set(vs)) != len(vs):
            raise ValueError("duplicate variable names")
        tm = {}
        if terms:
            for mono, c in terms.items():
                c = Fraction(c)
                if c == 0:
                    continue
                mono = tuple(int(e) for e in mono)
                if len(mono) != len(vs) or any(e < 0 for e in mono):
                    raise ValueError(f"bad exponent tuple {mono}")
                tm[mono] = tm.get(mono, Fraction(0)) + c
        object.__setattr__(self, "vars", vs)
        object.__setattr__(self, "terms", {m: c for m, c in tm.items() if c != 0})

    def __setattr__(self, *a):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def zero(cls, variables) -> "Polynomial":
        return cls(variables)

    @classmethod
    def constant(cls, variables, c) -> "Polynomial":
        vs = tuple(variables)
        return cls(vs, {(0,) * len(vs): Fraction(c)})

    @classmethod
    def monomial(cls, variables, mono: Monomial, c=1) -> "Polynomial":
        return cls(variables, {tuple(mono): Fraction(c)})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "Polynomial"):
        if self.vars != other.vars:
            raise ValueError("mixed variable lists")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return Polynomial(self.vars, out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) - c
        return Polynomial(self.vars, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.vars, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            out: dict[Monomial, Fraction] = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = tuple(a + b for a, b in zip(m1, m2))
                    out[m] = out.get(m, Fraction(0)) + c1 * c2
            return Polynomial(self.vars, out)
        c = Fraction(other)
        return Polynomial(self.vars, {m: c * v for m, v in self.terms.items()})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power")
        out = Polynomial.constant(self.vars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def diff(self, i: int) -> "Polynomial":
        out: dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            if m[i] == 0:
                continue
            m2 = list(m)
            m2[i] -= 1
            out[tuple(m2)] = out.get(tuple(m2), Fraction(0)) + c * m[i]
        return Polynomial(self.vars, out)

    def kill_vars(self, dead: Iterable[int]) -> "Polynomial":
        """Set the listed variables to zero (drop terms that touch them)."""
        dead = set(dead)
        out = {m: c for m, c in self.terms.items() if all(m[i] == 0 for i in dead)}
        return Polynomial(self.vars, out)

    def project_vars(self, keep: list[int]) -> "Polynomial":
        """Image in the subring on the kept variables; other vars must not occur."""
        keepset = set(keep)
        out = {}
        for m, c in self.terms.items():
            if any(e != 0 and i not in keepset for i, e in enumerate(m)):
                raise ValueError("polynomial involves a dropped variable")
            out[tuple(m[i] for i in keep)] = c
        return Polynomial([self.vars[i] for i in keep], out)

    def monomials(self) -> list[Monomial]:
        return sorted(self.terms)

    def coeff(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def weighted_degree(self, weights) -> Fraction | None:
        """Common weighted degree of all terms, or None if not homogeneous."""
        degs = {sum(w * e for w, e in zip(weights, m)) for m in self.terms}
        if len(degs) != 1:
            return None
        return degs.pop()

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.vars == other.vars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for m in sorted(self.terms, key=lambda m: (sum(m), m), reverse=True):
            c = self.terms[m]
            factors = []
            for name, e in zip(self.vars, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            body = "*".join(factors)
            if not body:
                bits.append(str(c))
            elif c == 1:
                bits.append(body)
            elif c == -1:
                bits.append(f"-{body}")
            else:
                bits.append(f"{c}*{body}")
        s = " + ".join(bits)
        return s.replace("+ -", "- ")

    __repr__ = __str__


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str | None:
        self._skip_ws()
        if self.pos >= len(self.text):
            return None
        return self.text[self.pos]

    def take_symbol(self, symbols: str) -> str | None:
        c = self.peek()
        if c is not None and c in symbols:
            self.pos += 1
            return c
        return None

    def take_uint(self) -> int | None:
        self._skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            return None
        return int(self.text[start : self.pos])

    def take_name(self) -> str | None:
        self._skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] == "_"
        ):
            if self.pos == start and self.text[self.pos].isdigit():
                break
            self.pos += 1
        if self.pos == start:
            return None
        return self.text[start : self.pos]


def parse_polynomial(text: str, variables: Iterable[str]) -> Polynomial:
    """Parse the expression grammar into a Polynomial over the given variables."""
    vs = tuple(variables)
    index = {name: i for i, name in enumerate(vs)}
    tk = _Tokens(text)

    def parse_factor() -> Polynomial:
        c = tk.peek()
        pos0 = tk.pos
        if c is None:
            raise ParseError("expected a factor", tk.pos)
        if c.isdigit() or c == "-":
            sign = 1
            if tk.take_symbol("-"):
                sign = -1
            n = tk.take_uint()
            if n is None:
                if sign == -1:
                    return -parse_factor()
                raise ParseError("expected a number", tk.pos)
            if tk.take_symbol("/"):
                d = tk.take_uint()
                if d is None:
                    raise ParseError("expected a denominator", tk.pos)
                if d == 0:
                    raise ParseError("zero denominator", pos0)
                return Polynomial.constant(vs, Fraction(sign * n, d))
            return Polynomial.constant(vs, sign * n)
        name = tk.take_name()
        if name is None:
            raise ParseError(f"unexpected character {c!r}", tk.pos)
        if name not in index:
            raise ParseError(f"unknown variable {name!r}", pos0)
        e = 1
        if tk.take_symbol("^"):
            e = tk.take_uint()
            if e is None:
                raise ParseError("expected an exponent", tk.pos)
        mono = [0] * len(vs)
        mono[index[name]] = e
        return Polynomial.monomial(vs, tuple(mono))

    def parse_term() -> Polynomial:
        p = parse_factor()
        while tk.take_symbol("*"):
            p = p * parse_factor()
        return p

    p = parse_term()
    while True:
        op = tk.take_symbol("+-")
        if op is None:
            break
        q = parse_term()
        p = p + q if op == "+" else p - q
    if tk.peek() is not None:
        raise ParseError(f"unexpected character {tk.peek()!r}", tk.pos)
    return p
