"""Words in the generating cobordisms of HCobord(1, K(G,2)) and their values
under the functor determined by a G-Frobenius algebra.

Concrete syntax::

    expr   := term (";" term)*          composition, diagrammatic order
    term   := factor ("*" factor)*      disjoint union (tensor)
    factor := generator | "(" expr ")"

Generators and their types (``+`` is the positively oriented circle, ``-``
its dual)::

    pants    ++ -> +      copants  + -> ++     unit    -> +
    counit   +  ->        form     ++ ->       coform  -> ++
    eta         -> +-     eps      -+ ->       flip    + -> -
    unflip   -  -> +      twist([r, ...])  + -> +
    swap(a, b)   ab -> ba               id(a...)  a... -> a...

Evaluation sends ``+`` to A and ``-`` to its dual space, both of dimension
d, so a word of type ``m -> n`` becomes a ``d**n x d**m`` matrix acting on
column vectors with the first strand most significant.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .errors import (
    CobordSyntaxError,
    GroupMismatch,
    NegativeGenus,
    TypeMismatch,
    UnknownGenerator,
)
from .frobenius import Algebra, GAction, trivial_action
from .group import GroupElement

Signature = str  # a string over {"+", "-"}; "" is the empty manifold


@dataclass(frozen=True)
class Gen:
    name: str
    args: tuple = ()

    def __str__(self):
        if self.name == "twist":
            return f"twist([{','.join(str(r) for r in self.args)}])"
        if self.name == "swap":
            return f"swap({self.args[0]},{self.args[1]})"
        if self.name == "id":
            return f"id({''.join(self.args)})"
        return self.name


@dataclass(frozen=True)
class Compose:
    parts: tuple

    def __str__(self):
        return " ; ".join(f"({p})" if isinstance(p, Compose) else str(p) for p in self.parts)


@dataclass(frozen=True)
class Tensor:
    parts: tuple

    def __str__(self):
        return " * ".join(f"({p})" if isinstance(p, (Compose, Tensor)) else str(p) for p in self.parts)


CobordWord = Union[Gen, Compose, Tensor]


# Parsing

_ORIENT = {"+": "+", "-": "-", "−": "-"}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message):
        raise CobordSyntaxError(message, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            got = self.peek() or "end of input"
            self.error(f"expected {ch!r}, found {got!r}")
        self.pos += 1

    def parse(self) -> CobordWord:
        word = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return word

    def expr(self) -> CobordWord:
        parts = [self.term()]
        while self.peek() == ";":
            self.pos += 1
            parts.append(self.term())
        return parts[0] if len(parts) == 1 else Compose(tuple(parts))

    def term(self) -> CobordWord:
        parts = [self.factor()]
        while self.peek() == "*":
            self.pos += 1
            parts.append(self.factor())
        return parts[0] if len(parts) == 1 else Tensor(tuple(parts))

    def factor(self) -> CobordWord:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            self.expect(")")
            return inner
        if ch.isalpha():
            return self.generator()
        self.error(f"expected a generator or '(', found {ch or 'end of input'!r}")

    def name(self) -> str:
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        return self.text[start:self.pos]

    def orientation(self) -> str:
        ch = self.peek()
        if ch not in _ORIENT:
            self.error(f"expected an orientation '+' or '-', found {ch or 'end of input'!r}")
        self.pos += 1
        return _ORIENT[ch]

    def integer(self) -> int:
        self.skip()
        start = self.pos
        if self.peek() == "-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        token = self.text[start:self.pos]
        if token in ("", "-"):
            self.pos = start
            self.error("expected an integer")
        return int(token)

    def generator(self) -> Gen:
        start = self.pos
        name = self.name()
        if name not in GENERATORS:
            raise UnknownGenerator(f"unknown generator {name!r} at position {start}")
        if name == "twist":
            self.expect("(")
            self.expect("[")
            residues = []
            if self.peek() != "]":
                residues.append(self.integer())
                while self.peek() == ",":
                    self.pos += 1
                    residues.append(self.integer())
            self.expect("]")
            self.expect(")")
            return Gen("twist", tuple(residues))
        if name == "swap":
            self.expect("(")
            a = self.orientation()
            self.expect(",")
            b = self.orientation()
            self.expect(")")
            return Gen("swap", (a, b))
        if name == "id":
            self.expect("(")
            strands = []
            while self.peek() in _ORIENT:
                strands.append(self.orientation())
                if self.peek() == ",":
                    self.pos += 1
            self.expect(")")
            return Gen("id", tuple(strands))
        return Gen(name)


def parse(text: str) -> CobordWord:
    return _Parser(text).parse()


# Generators: type and value


def _swap_matrix(d: int) -> np.ndarray:
    P = np.zeros((d * d, d * d))
    for i in range(d):
        for j in range(d):
            P[j * d + i, i * d + j] = 1.0
    return P


def _copants(alg: Algebra) -> np.ndarray:
    """a -> sum_i a e_i (x) e^i, i.e. (pants * id) after (id * coform).

    Adjoint of the product for the nested pairing g(x1, y2) g(x2, y1); the
    parallel pairing would give e_i (x) a e^i, which breaks the Frobenius
    relation once A is noncommutative.
    """
    d = alg.dim
    return np.einsum("aik,il->kla", alg.structure, alg.inv_metric).reshape(d * d, d)


@dataclass(frozen=True)
class GeneratorSpec:
    signature: Callable[[tuple], tuple[Signature, Signature]]
    value: Callable[[Gen, Algebra, GAction], np.ndarray]


def _fixed(dom: str, cod: str):
    return lambda args: (dom, cod)


def _twist_value(gen: Gen, alg: Algebra, action: GAction) -> np.ndarray:
    if len(gen.args) != action.group.rank:
        raise GroupMismatch(
            f"twist residues {list(gen.args)} do not fit group {list(action.group.orders)}"
        )
    return alg.left(action.image(action.group.element(gen.args)))


GENERATORS: dict[str, GeneratorSpec] = {
    "pants": GeneratorSpec(_fixed("++", "+"),
                           lambda g, a, _: a.structure.reshape(a.dim**2, a.dim).T),
    "copants": GeneratorSpec(_fixed("+", "++"), lambda g, a, _: _copants(a)),
    "unit": GeneratorSpec(_fixed("", "+"), lambda g, a, _: a.unit.reshape(-1, 1)),
    "counit": GeneratorSpec(_fixed("+", ""), lambda g, a, _: (a.metric @ a.unit).reshape(1, -1)),
    "form": GeneratorSpec(_fixed("++", ""), lambda g, a, _: a.metric.reshape(1, -1)),
    "coform": GeneratorSpec(_fixed("", "++"), lambda g, a, _: a.inv_metric.reshape(-1, 1)),
    "eta": GeneratorSpec(_fixed("", "+-"), lambda g, a, _: np.eye(a.dim).reshape(-1, 1)),
    "eps": GeneratorSpec(_fixed("-+", ""), lambda g, a, _: np.eye(a.dim).reshape(1, -1)),
    "flip": GeneratorSpec(_fixed("+", "-"), lambda g, a, _: np.array(a.metric)),
    "unflip": GeneratorSpec(_fixed("-", "+"), lambda g, a, _: np.array(a.inv_metric)),
    "twist": GeneratorSpec(_fixed("+", "+"), _twist_value),
    "swap": GeneratorSpec(lambda args: (args[0] + args[1], args[1] + args[0]),
                          lambda g, a, _: _swap_matrix(a.dim)),
    "id": GeneratorSpec(lambda args: ("".join(args), "".join(args)),
                        lambda g, a, _: np.eye(a.dim ** len(g.args))),
}


# Typing and evaluation


def typecheck(word: CobordWord) -> tuple[Signature, Signature]:
    """Return (domain, codomain) or raise TypeMismatch."""
    if isinstance(word, Gen):
        return GENERATORS[word.name].signature(word.args)
    if isinstance(word, Tensor):
        sigs = [typecheck(p) for p in word.parts]
        return "".join(s[0] for s in sigs), "".join(s[1] for s in sigs)
    dom, cod = typecheck(word.parts[0])
    prev = word.parts[0]
    for part in word.parts[1:]:
        pdom, pcod = typecheck(part)
        if pdom != cod:
            raise TypeMismatch(
                f"cannot compose '{prev}' : {_show(dom)} -> {_show(cod)} "
                f"with '{part}' : {_show(pdom)} -> {_show(pcod)}"
            )
        cod = pcod
        prev = part
    return dom, cod


def _show(sig: Signature) -> str:
    return sig or "()"


def evaluate_word(word: CobordWord | str, alg: Algebra, action: GAction | None = None) -> np.ndarray:
    if isinstance(word, str):
        word = parse(word)
    typecheck(word)
    action = action or trivial_action(alg)
    return _value(word, alg, action)


def _value(word: CobordWord, alg: Algebra, action: GAction) -> np.ndarray:
    if isinstance(word, Gen):
        return np.asarray(GENERATORS[word.name].value(word, alg, action), dtype=complex)
    values = [_value(p, alg, action) for p in word.parts]
    out = values[0]
    for v in values[1:]:
        out = np.kron(out, v) if isinstance(word, Tensor) else v @ out
    return out


def closed_genus_word(h: int, g: GroupElement | None = None) -> CobordWord:
    """unit ; (copants ; pants)^h ; twist(g) ; counit"""
    if h < 0:
        raise NegativeGenus(f"genus {h} < 0")
    residues = tuple(g.residues) if g is not None else ()
    parts = [Gen("unit")]
    for _ in range(h):
        parts += [Gen("copants"), Gen("pants")]
    parts += [Gen("twist", residues), Gen("counit")]
    return Compose(tuple(parts))
