# src/presentation.py
"""
A small text format for finitely presented groups with involutory generators,
plus builders for string Coxeter presentations, Petrie quotients {m,n}_k and
facet / vertex-figure amalgams.

    presentation := "gens" INT ";" relator ("," relator)*
    relator      := term+
    term         := atom ("^" "-"? INT)?
    atom         := "r" INT | "(" term+ ")"

Negative exponents are accepted only for generators that the same text
declares involutory with a relator r_i^2; the inverse of such a generator is
the generator itself.
"""
import re
from dataclasses import dataclass
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from src.errors import PresentationError

Word = Tuple[int, ...]

TOKENS = [
    ("GENS", r"gens\b"),
    ("GEN", r"r\d+"),
    ("INT", r"\d+"),
    ("CARET", r"\^"),
    ("MINUS", r"-"),
    ("LPAREN", r"\("),
    ("RPAREN", r"\)"),
    ("SEMI", r";"),
    ("COMMA", r","),
    ("NEWLINE", r"\n"),
    ("SPACE", r"[ \t\r]+"),
    ("MISMATCH", r"."),
]
TOKEN_RE = re.compile("|".join(f"(?P<{name}>{pattern})" for name, pattern in TOKENS))


@dataclass(frozen=True)
class Presentation:
    ngens: int
    relators: Tuple[Word, ...]

    def involutory(self) -> frozenset:
        return frozenset(w[0] for w in self.relators if len(w) == 2 and w[0] == w[1])

    def is_involutory(self) -> bool:
        return self.involutory() == frozenset(range(self.ngens))

    def __str__(self):
        return render(self)


# --- Scanner ---

class Token(NamedTuple):
    kind: str
    text: str
    line: int
    column: int


class Scanner:
    def __init__(self, text: str):
        self.tokens = list(self._lex(text))
        self.pos = 0

    @staticmethod
    def _lex(text: str):
        line, line_start = 1, 0
        for match in TOKEN_RE.finditer(text):
            kind, value = match.lastgroup, match.group()
            column = match.start() - line_start + 1
            if kind == "NEWLINE":
                line, line_start = line + 1, match.end()
                continue
            if kind == "SPACE":
                continue
            if kind == "MISMATCH":
                raise PresentationError(f"unexpected character {value!r}", line, column)
            yield Token(kind, value, line, column)
        yield Token("EOF", "", line, len(text) - line_start + 1)

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def accept(self, kind: str) -> Optional[Token]:
        tok = self.peek()
        if tok.kind == kind:
            self.pos += 1
            return tok
        return None

    def expect(self, kind: str, what: str) -> Token:
        tok = self.accept(kind)
        if tok is None:
            got = self.peek()
            shown = got.text or "end of input"
            raise PresentationError(f"expected {what}, found {shown!r}", got.line, got.column)
        return tok


# --- Parser ---

class _Term(NamedTuple):
    atom: object            # int generator index, or list of _Term
    exponent: int
    token: Token


class Parser:
    """Recursive descent over the token stream; relators are resolved after parsing."""

    def __init__(self, text: str):
        self.scanner = Scanner(text)
        self.ngens = 0

    def parse(self) -> Presentation:
        self.scanner.expect("GENS", "'gens'")
        self.ngens = int(self.scanner.expect("INT", "generator count").text)
        if self.ngens < 1:
            raise PresentationError("a presentation needs at least one generator")
        self.scanner.expect("SEMI", "';'")
        trees = self._relator_list()
        self.scanner.expect("EOF", "',' or end of input")
        return Presentation(self.ngens, tuple(resolve(trees, self._declared(trees))))

    def parse_words(self, ngens: int) -> List[List[_Term]]:
        self.ngens = ngens
        trees = self._relator_list() if self.scanner.peek().kind != "EOF" else []
        self.scanner.expect("EOF", "',' or end of input")
        return trees

    def _relator_list(self) -> List[List[_Term]]:
        trees = [self._terms()]
        while self.scanner.accept("COMMA"):
            trees.append(self._terms())
        return trees

    def _terms(self) -> List[_Term]:
        terms = [self._term()]
        while self.scanner.peek().kind in ("GEN", "LPAREN"):
            terms.append(self._term())
        return terms

    def _term(self) -> _Term:
        start = self.scanner.peek()
        atom = self._atom()
        exponent = 1
        if self.scanner.accept("CARET"):
            negative = self.scanner.accept("MINUS") is not None
            tok = self.scanner.expect("INT", "exponent")
            exponent = -int(tok.text) if negative else int(tok.text)
            if exponent == 0:
                raise PresentationError("exponent must be nonzero", tok.line, tok.column)
        return _Term(atom, exponent, start)

    def _atom(self):
        tok = self.scanner.peek()
        if self.scanner.accept("GEN"):
            index = int(tok.text[1:])
            if index >= self.ngens:
                raise PresentationError(
                    f"generator {tok.text} out of range for {self.ngens} generators", tok.line, tok.column)
            return index
        if self.scanner.accept("LPAREN"):
            inner = self._terms()
            self.scanner.expect("RPAREN", "')'")
            return inner
        shown = tok.text or "end of input"
        raise PresentationError(f"expected a generator or '(', found {shown!r}", tok.line, tok.column)

    @staticmethod
    def _declared(trees: List[List[_Term]]) -> frozenset:
        """Generators with an r_i^2 relator written without inverses."""
        declared = set()
        for terms in trees:
            if _has_inverse(terms):
                continue
            word = _expand(terms, frozenset())
            if len(word) == 2 and word[0] == word[1]:
                declared.add(word[0])
        return frozenset(declared)


def _has_inverse(terms: List[_Term]) -> bool:
    for term in terms:
        if term.exponent < 0:
            return True
        if isinstance(term.atom, list) and _has_inverse(term.atom):
            return True
    return False


def _expand(terms: List[_Term], involutory: frozenset) -> List[int]:
    word: List[int] = []
    for term in terms:
        base = [term.atom] if isinstance(term.atom, int) else _expand(term.atom, involutory)
        if term.exponent < 0:
            missing = sorted(set(base) - involutory)
            if missing:
                raise PresentationError(
                    f"inverse of r{missing[0]} needs a declared r{missing[0]}^2 relator",
                    term.token.line, term.token.column)
            base = base[::-1]
        word.extend(base * abs(term.exponent))
    return word


def resolve(trees: List[List[_Term]], involutory: frozenset) -> List[Word]:
    return [tuple(_expand(terms, involutory)) for terms in trees]


def parse(text: str) -> Presentation:
    return Parser(text).parse()


def parse_words(text: str, pres: Presentation) -> List[Word]:
    """Comma-separated words over the generators of pres, e.g. subgroup generators."""
    parser = Parser(text)
    return resolve(parser.parse_words(pres.ngens), pres.involutory())


# --- Rendering ---

def _primitive_root(word: Word) -> Tuple[Word, int]:
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and word == word[:d] * (n // d):
            return word[:d], n // d
    return word, 1


def render_word(word: Word) -> str:
    base, k = _primitive_root(tuple(word))
    letters = " ".join(f"r{i}" for i in base)
    if k == 1:
        return letters
    return f"{letters}^{k}" if len(base) == 1 else f"({letters})^{k}"


def render(pres: Presentation) -> str:
    return f"gens {pres.ngens}; " + ", ".join(render_word(w) for w in pres.relators)


# --- Builders ---

def _power(word: Sequence[int], k: int) -> Word:
    return tuple(word) * k


def string_coxeter(orders: Sequence[int]) -> Presentation:
    """r_i^2, (r_i r_{i+1})^orders[i], and (r_i r_j)^2 for |i - j| >= 2."""
    if any(m < 2 for m in orders):
        raise PresentationError(f"Coxeter orders must be >= 2, got {tuple(orders)}")
    n = len(orders) + 1
    relators = [(i, i) for i in range(n)]
    relators += [_power((i, i + 1), m) for i, m in enumerate(orders)]
    relators += [_power((i, j), 2) for i in range(n) for j in range(i + 2, n)]
    return Presentation(n, tuple(relators))


def with_petrie(pres: Presentation, facet_k: Optional[int] = None, vf_k: Optional[int] = None) -> Presentation:
    """Appends (r0 r1 r2)^facet_k and / or (r1 r2 r3)^vf_k."""
    if pres.ngens < 3:
        raise PresentationError("Petrie relations need at least 3 generators")
    relators = list(pres.relators)
    if facet_k is not None:
        relators.append(_power((0, 1, 2), facet_k))
    if vf_k is not None:
        if pres.ngens != 4:
            raise PresentationError("a vertex-figure Petrie relation needs 4 generators")
        relators.append(_power((1, 2, 3), vf_k))
    return Presentation(pres.ngens, tuple(relators))


def amalgam(facet: Tuple[int, int, Optional[int]], vertex_figure: Tuple[int, int, Optional[int]]) -> Presentation:
    """
    Universal group for facets {m,n}_k and vertex-figures {n,m'}_k'.
    A Petrie entry of None leaves that map unquotiented.
    """
    m, n, k = facet
    n2, m2, k2 = vertex_figure
    if n != n2:
        raise PresentationError(f"facet {{{m},{n}}} does not fit vertex-figure {{{n2},{m2}}}")
    return with_petrie(string_coxeter((m, n, m2)), k, k2)


def relabel(pres: Presentation, mapping: Sequence[int]) -> Presentation:
    return Presentation(pres.ngens, tuple(tuple(mapping[i] for i in w) for w in pres.relators))


def reverse_generators(pres: Presentation) -> Presentation:
    return relabel(pres, list(range(pres.ngens - 1, -1, -1)))


def _cyclic_form(word: Word) -> Word:
    """Least rotation of the word or its reversal (the inverse, for involutory generators)."""
    forms = []
    for w in (word, word[::-1]):
        forms.extend(w[i:] + w[:i] for i in range(len(w)))
    return min(forms)


def relator_classes(pres: Presentation) -> frozenset:
    return frozenset(_cyclic_form(w) for w in pres.relators)


def is_string_coxeter_shape(pres: Presentation) -> bool:
    """Involutory generators and every other relator of even length."""
    if not pres.is_involutory():
        return False
    return all(len(w) % 2 == 0 for w in pres.relators)


def map_text(m: int, n: int, k: Optional[int]) -> str:
    return f"{{{m},{n}}}" + ("" if k is None else f"_{k}")


# --- Known presentations ---

class Table1Row(NamedTuple):
    facet: Tuple[int, int, int]
    vertex_figure: Tuple[int, int, int]
    order: int
    structure: Optional[str]

    @property
    def label(self) -> str:
        return f"{map_text(*self.facet)} / {map_text(*self.vertex_figure)}"

    def presentation(self) -> Presentation:
        return amalgam(self.facet, self.vertex_figure)


TABLE1 = (
    Table1Row((5, 5, 3), (5, 5, 3), 1, None),
    Table1Row((5, 5, 3), (5, 3, 5), 1, None),
    Table1Row((5, 3, 5), (3, 5, 5), 3420, "L2(19)"),
    Table1Row((5, 3, 5), (3, 4, 3), 60, "A5"),
    Table1Row((5, 3, 5), (3, 3, 4), 1, None),
    Table1Row((4, 3, 3), (3, 4, 3), 96, "2^4:S3"),
    Table1Row((4, 3, 3), (3, 3, 4), 24, "S4"),
    Table1Row((3, 5, 5), (5, 3, 5), 660, "L2(11)"),
    Table1Row((3, 4, 3), (4, 3, 3), 1, None),
    Table1Row((3, 3, 4), (3, 3, 4), 120, "S5"),
)


def table1_rows() -> List[Table1Row]:
    return list(TABLE1)


NAMED: Dict[str, Tuple[Tuple[int, int, int], Optional[int], Optional[int]]] = {
    "11cell": ((3, 5, 3), 5, 5),
    "57cell": ((5, 3, 5), 5, 5),
    "dropped-{3,5,3}": ((3, 5, 3), None, 5),
    "dropped-{5,3,5}": ((5, 3, 5), None, 5),
}

# Enumeration outcome each builtin is expected to reach; None means the coset limit.
NAMED_ORDERS: Dict[str, Optional[int]] = {
    "11cell": 660,
    "57cell": 3420,
    "dropped-{3,5,3}": 660,
    "dropped-{5,3,5}": None,
}


def named(name: str) -> Presentation:
    try:
        orders, facet_k, vf_k = NAMED[name]
    except KeyError:
        raise PresentationError(f"unknown presentation {name!r}; choose from {sorted(NAMED)}")
    return with_petrie(string_coxeter(orders), facet_k, vf_k)
