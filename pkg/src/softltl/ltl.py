"""LTL abstract syntax, parser, negation normal form, and lasso-word semantics.

The evaluator in this module works directly on ultimately periodic words
(finite prefix + repeated cycle) and is the independent oracle used to verify
everything the automata-based pipeline produces.
"""

from __future__ import annotations

from dataclasses import dataclass


class LtlSyntaxError(ValueError):
    """Raised on malformed formula text; `position` is a 0-based text offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownAtomError(ValueError):
    """Raised when a formula mentions an atom outside the declared AP set."""

    def __init__(self, name: str, position: int):
        super().__init__(f"unknown atomic proposition '{name}' (at position {position})")
        self.name = name
        self.position = position


@dataclass(frozen=True)
class LtlFormula:
    pass


@dataclass(frozen=True)
class TrueF(LtlFormula):
    pass


@dataclass(frozen=True)
class FalseF(LtlFormula):
    pass


@dataclass(frozen=True)
class Atom(LtlFormula):
    name: str


@dataclass(frozen=True)
class Not(LtlFormula):
    sub: LtlFormula


@dataclass(frozen=True)
class And(LtlFormula):
    left: LtlFormula
    right: LtlFormula


@dataclass(frozen=True)
class Or(LtlFormula):
    left: LtlFormula
    right: LtlFormula


@dataclass(frozen=True)
class Implies(LtlFormula):
    left: LtlFormula
    right: LtlFormula


@dataclass(frozen=True)
class Next(LtlFormula):
    sub: LtlFormula


@dataclass(frozen=True)
class Until(LtlFormula):
    left: LtlFormula
    right: LtlFormula


@dataclass(frozen=True)
class Release(LtlFormula):
    """Dual of Until.  Internal only: produced by `to_nnf`, not parseable."""

    left: LtlFormula
    right: LtlFormula


@dataclass(frozen=True)
class Eventually(LtlFormula):
    sub: LtlFormula


@dataclass(frozen=True)
class Globally(LtlFormula):
    sub: LtlFormula


def formula_atoms(f: LtlFormula) -> frozenset[str]:
    """Set of atomic proposition names occurring in `f`."""
    if isinstance(f, Atom):
        return frozenset([f.name])
    if isinstance(f, (TrueF, FalseF)):
        return frozenset()
    if isinstance(f, (Not, Next, Eventually, Globally)):
        return formula_atoms(f.sub)
    return formula_atoms(f.left) | formula_atoms(f.right)


# --- concrete syntax -------------------------------------------------------
#
# phi ::= true | false | ident | !phi | phi & phi | phi "|" phi | phi -> phi
#       | X phi | F phi | G phi | phi U phi | (phi)
#
# Precedence, tightest first: unary {!, X, F, G}; U (right-assoc); &; |;
# -> (right-assoc).  X, F, G, U, true, false are reserved words.

_RESERVED = {"true", "false", "X", "F", "G", "U"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if text.startswith("->", i):
            tokens.append(("->", "->", i))
            i += 2
            continue
        if ch in "!&|()":
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            kind = word if word in _RESERVED else "ident"
            tokens.append((kind, word, i))
            i = j
            continue
        raise LtlSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, tokens, ap):
        self.tokens = tokens
        self.pos = 0
        self.ap = ap

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.take()
        if tok[0] != kind:
            raise LtlSyntaxError(f"expected {kind!r}, found {tok[1] or 'end of input'!r}", tok[2])
        return tok

    def parse_formula(self) -> LtlFormula:
        left = self.parse_or()
        if self.peek()[0] == "->":
            self.take()
            return Implies(left, self.parse_formula())
        return left

    def parse_or(self) -> LtlFormula:
        left = self.parse_and()
        while self.peek()[0] == "|":
            self.take()
            left = Or(left, self.parse_and())
        return left

    def parse_and(self) -> LtlFormula:
        left = self.parse_until()
        while self.peek()[0] == "&":
            self.take()
            left = And(left, self.parse_until())
        return left

    def parse_until(self) -> LtlFormula:
        left = self.parse_unary()
        if self.peek()[0] == "U":
            self.take()
            return Until(left, self.parse_until())
        return left

    def parse_unary(self) -> LtlFormula:
        kind, _, pos = self.peek()
        if kind == "!":
            self.take()
            return Not(self.parse_unary())
        if kind == "X":
            self.take()
            return Next(self.parse_unary())
        if kind == "F":
            self.take()
            return Eventually(self.parse_unary())
        if kind == "G":
            self.take()
            return Globally(self.parse_unary())
        return self.parse_atomic()

    def parse_atomic(self) -> LtlFormula:
        kind, word, pos = self.take()
        if kind == "true":
            return TrueF()
        if kind == "false":
            return FalseF()
        if kind == "ident":
            if word not in self.ap:
                raise UnknownAtomError(word, pos)
            return Atom(word)
        if kind == "(":
            inner = self.parse_formula()
            self.expect(")")
            return inner
        raise LtlSyntaxError(f"expected a formula, found {word or 'end of input'!r}", pos)


def parse_ltl(text: str, ap) -> LtlFormula:
    """Parse formula text over the declared atomic propositions `ap`."""
    if not text.strip():
        raise LtlSyntaxError("empty formula", 0)
    parser = _Parser(_tokenize(text), frozenset(ap))
    formula = parser.parse_formula()
    kind, word, pos = parser.peek()
    if kind != "end":
        raise LtlSyntaxError(f"unexpected trailing input {word!r}", pos)
    return formula


_PREC_IMPLIES, _PREC_OR, _PREC_AND, _PREC_UNTIL, _PREC_UNARY = 1, 2, 3, 4, 5


def _prec(f: LtlFormula) -> int:
    if isinstance(f, Implies):
        return _PREC_IMPLIES
    if isinstance(f, Or):
        return _PREC_OR
    if isinstance(f, And):
        return _PREC_AND
    if isinstance(f, (Until, Release)):
        return _PREC_UNTIL
    if isinstance(f, (Not, Next, Eventually, Globally)):
        return _PREC_UNARY
    return 6


def format_ltl(f: LtlFormula) -> str:
    """Render `f` with minimal parentheses; `parse_ltl` inverts it.

    `Release` renders with an `R` infix for diagnostics even though the
    user-facing grammar cannot read it back.
    """

    def wrap(sub: LtlFormula, need_paren: bool) -> str:
        text = format_ltl(sub)
        return f"({text})" if need_paren else text

    if isinstance(f, TrueF):
        return "true"
    if isinstance(f, FalseF):
        return "false"
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Not):
        return "!" + wrap(f.sub, _prec(f.sub) < _PREC_UNARY)
    if isinstance(f, Next):
        return "X " + wrap(f.sub, _prec(f.sub) < _PREC_UNARY)
    if isinstance(f, Eventually):
        return "F " + wrap(f.sub, _prec(f.sub) < _PREC_UNARY)
    if isinstance(f, Globally):
        return "G " + wrap(f.sub, _prec(f.sub) < _PREC_UNARY)
    if isinstance(f, (Until, Release)):
        op = "U" if isinstance(f, Until) else "R"
        # right-associative: parenthesize a left child of equal precedence
        left = wrap(f.left, _prec(f.left) <= _PREC_UNTIL)
        right = wrap(f.right, _prec(f.right) < _PREC_UNTIL)
        return f"{left} {op} {right}"
    if isinstance(f, And):
        left = wrap(f.left, _prec(f.left) < _PREC_AND)
        right = wrap(f.right, _prec(f.right) <= _PREC_AND)
        return f"{left} & {right}"
    if isinstance(f, Or):
        left = wrap(f.left, _prec(f.left) < _PREC_OR)
        right = wrap(f.right, _prec(f.right) <= _PREC_OR)
        return f"{left} | {right}"
    if isinstance(f, Implies):
        left = wrap(f.left, _prec(f.left) <= _PREC_IMPLIES)
        right = wrap(f.right, _prec(f.right) < _PREC_IMPLIES)
        return f"{left} -> {right}"
    raise TypeError(f"not an LTL formula: {f!r}")


# --- negation normal form --------------------------------------------------


def to_nnf(f: LtlFormula) -> LtlFormula:
    """Push negations to the atoms; rewrite ->, F, G away.

    F phi becomes true U phi, G phi becomes false R phi, and negated temporal
    operators flip to their duals.  The result is language-equivalent and uses
    only true/false/atoms/negated atoms/And/Or/Next/Until/Release.
    """
    if isinstance(f, (TrueF, FalseF, Atom)):
        return f
    if isinstance(f, And):
        return And(to_nnf(f.left), to_nnf(f.right))
    if isinstance(f, Or):
        return Or(to_nnf(f.left), to_nnf(f.right))
    if isinstance(f, Implies):
        return Or(to_nnf(Not(f.left)), to_nnf(f.right))
    if isinstance(f, Next):
        return Next(to_nnf(f.sub))
    if isinstance(f, Until):
        return Until(to_nnf(f.left), to_nnf(f.right))
    if isinstance(f, Release):
        return Release(to_nnf(f.left), to_nnf(f.right))
    if isinstance(f, Eventually):
        return Until(TrueF(), to_nnf(f.sub))
    if isinstance(f, Globally):
        return Release(FalseF(), to_nnf(f.sub))
    if isinstance(f, Not):
        g = f.sub
        if isinstance(g, TrueF):
            return FalseF()
        if isinstance(g, FalseF):
            return TrueF()
        if isinstance(g, Atom):
            return f
        if isinstance(g, Not):
            return to_nnf(g.sub)
        if isinstance(g, And):
            return Or(to_nnf(Not(g.left)), to_nnf(Not(g.right)))
        if isinstance(g, Or):
            return And(to_nnf(Not(g.left)), to_nnf(Not(g.right)))
        if isinstance(g, Implies):
            return And(to_nnf(g.left), to_nnf(Not(g.right)))
        if isinstance(g, Next):
            return Next(to_nnf(Not(g.sub)))
        if isinstance(g, Until):
            return Release(to_nnf(Not(g.left)), to_nnf(Not(g.right)))
        if isinstance(g, Release):
            return Until(to_nnf(Not(g.left)), to_nnf(Not(g.right)))
        if isinstance(g, Eventually):
            return Release(FalseF(), to_nnf(Not(g.sub)))
        if isinstance(g, Globally):
            return Until(TrueF(), to_nnf(Not(g.sub)))
    raise TypeError(f"not an LTL formula: {f!r}")


def is_nnf(f: LtlFormula) -> bool:
    """True when negations sit directly above atoms and ->, F, G are absent."""
    if isinstance(f, (TrueF, FalseF, Atom)):
        return True
    if isinstance(f, Not):
        return isinstance(f.sub, Atom)
    if isinstance(f, Next):
        return is_nnf(f.sub)
    if isinstance(f, (And, Or, Until, Release)):
        return is_nnf(f.left) and is_nnf(f.right)
    return False


# --- semantics over ultimately periodic words ------------------------------


@dataclass(frozen=True)
class LassoWord:
    """Infinite word prefix . cycle^omega over label-sets (subsets of AP)."""

    prefix: tuple[frozenset[str], ...]
    cycle: tuple[frozenset[str], ...]

    def __post_init__(self):
        if not self.cycle:
            raise ValueError("lasso cycle must be nonempty")

    @staticmethod
    def make(prefix, cycle) -> "LassoWord":
        return LassoWord(
            tuple(frozenset(a) for a in prefix),
            tuple(frozenset(a) for a in cycle),
        )

    def letters(self) -> tuple[frozenset[str], ...]:
        return self.prefix + self.cycle

    def atoms(self) -> frozenset[str]:
        out: frozenset[str] = frozenset()
        for a in self.letters():
            out |= a
        return out


def _eval_positions(f: LtlFormula, letters, succ) -> list[bool]:
    """Truth value of `f` at every unrolled position of the folded lasso.

    Until/Eventually are least fixpoints and Release/Globally greatest
    fixpoints over the folded successor chain, which is exact for ultimately
    periodic words.
    """
    n = len(letters)
    if isinstance(f, TrueF):
        return [True] * n
    if isinstance(f, FalseF):
        return [False] * n
    if isinstance(f, Atom):
        return [f.name in letters[i] for i in range(n)]
    if isinstance(f, Not):
        return [not v for v in _eval_positions(f.sub, letters, succ)]
    if isinstance(f, And):
        lv = _eval_positions(f.left, letters, succ)
        rv = _eval_positions(f.right, letters, succ)
        return [a and b for a, b in zip(lv, rv)]
    if isinstance(f, Or):
        lv = _eval_positions(f.left, letters, succ)
        rv = _eval_positions(f.right, letters, succ)
        return [a or b for a, b in zip(lv, rv)]
    if isinstance(f, Implies):
        lv = _eval_positions(f.left, letters, succ)
        rv = _eval_positions(f.right, letters, succ)
        return [(not a) or b for a, b in zip(lv, rv)]
    if isinstance(f, Next):
        sv = _eval_positions(f.sub, letters, succ)
        return [sv[succ[i]] for i in range(n)]
    if isinstance(f, (Until, Eventually)):
        if isinstance(f, Until):
            lv = _eval_positions(f.left, letters, succ)
            rv = _eval_positions(f.right, letters, succ)
        else:
            lv = [True] * n
            rv = _eval_positions(f.sub, letters, succ)
        val = rv[:]
        for _ in range(n):
            changed = False
            for i in range(n):
                new = rv[i] or (lv[i] and val[succ[i]])
                if new != val[i]:
                    val[i] = new
                    changed = True
            if not changed:
                break
        return val
    if isinstance(f, (Release, Globally)):
        if isinstance(f, Release):
            lv = _eval_positions(f.left, letters, succ)
            rv = _eval_positions(f.right, letters, succ)
        else:
            lv = [False] * n
            rv = _eval_positions(f.sub, letters, succ)
        val = rv[:]
        for _ in range(n):
            changed = False
            for i in range(n):
                new = rv[i] and (lv[i] or val[succ[i]])
                if new != val[i]:
                    val[i] = new
                    changed = True
            if not changed:
                break
        return val
    raise TypeError(f"not an LTL formula: {f!r}")


def eval_lasso(f: LtlFormula, w: LassoWord) -> bool:
    """Whether the infinite word prefix . cycle^omega satisfies `f`."""
    letters = w.letters()
    n = len(letters)
    wrap_to = len(w.prefix)
    succ = [i + 1 if i + 1 < n else wrap_to for i in range(n)]
    return _eval_positions(f, letters, succ)[0]


def satisfied_set(w: LassoWord, softs) -> tuple[bool, ...]:
    """Per-constraint satisfaction vector of `w` against a soft-formula list."""
    return tuple(eval_lasso(f, w) for f in softs)
