"""Prenex-CNF quantified Boolean formulas: QDIMACS I/O, normalization, brute force."""

from dataclasses import dataclass
from enum import Enum

from .errors import ParseError, TooLarge, UnquantifiedVariable


class Quantifier(str, Enum):
    EXISTS = "e"
    FORALL = "a"

    @property
    def dual(self):
        return Quantifier.FORALL if self is Quantifier.EXISTS else Quantifier.EXISTS


E, A = Quantifier.EXISTS, Quantifier.FORALL


@dataclass(frozen=True)
class QbfFormula:
    """``prefix[i]`` quantifies variable ``i + 1``; clauses hold signed literals."""

    num_vars: int
    prefix: tuple
    clauses: tuple

    def __init__(self, num_vars, prefix, clauses):
        prefix = tuple(Quantifier(q) for q in prefix)
        if len(prefix) != num_vars:
            raise ValueError(f"prefix has {len(prefix)} quantifiers for {num_vars} variables")
        cls = []
        for clause in clauses:
            lits = tuple(sorted(set(int(x) for x in clause), key=lambda x: (abs(x), x)))
            if not lits:
                raise ValueError("empty clause")
            for x in lits:
                if x == 0 or abs(x) > num_vars:
                    raise ValueError(f"literal {x} out of range 1..{num_vars}")
                if -x in lits:
                    raise ValueError(f"clause {list(lits)} contains a variable and its negation")
            cls.append(lits)
        object.__setattr__(self, "num_vars", int(num_vars))
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "clauses", tuple(cls))

    @property
    def num_clauses(self):
        return len(self.clauses)

    def is_normalized(self):
        """Strictly alternating ``∃∀...∃`` prefix of odd length."""
        n = self.num_vars
        return n % 2 == 1 and all(q is (E if i % 2 == 0 else A) for i, q in enumerate(self.prefix))

    def satisfied_by(self, assignment):
        """``assignment[i]`` is the value of variable ``i + 1``."""
        return all(any(assignment[abs(x) - 1] == (x > 0) for x in c) for c in self.clauses)

    def __str__(self):
        quant = " ".join(f"{'∃' if q is E else '∀'}x{i + 1}" for i, q in enumerate(self.prefix))
        matrix = " ∧ ".join(
            "(" + " ∨ ".join(f"{'¬' if x < 0 else ''}x{abs(x)}" for x in c) + ")" for c in self.clauses
        )
        return f"{quant}: {matrix or 'true'}"


def parse_qdimacs(text):
    """Parse the QDIMACS subset: ``p cnf n k``, ``e``/``a`` blocks, ``k`` clauses.

    Variables are renumbered in quantifier order so that ``prefix[i]`` binds
    variable ``i + 1``. Tautological clauses are dropped.
    """
    header = None
    order = []
    quant = {}
    clauses = []
    pending = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tokens = line.split()
        if tokens[0] == "p":
            if header is not None:
                raise ParseError("duplicate problem line", lineno)
            if len(tokens) != 4 or tokens[1] != "cnf":
                raise ParseError("expected 'p cnf <vars> <clauses>'", lineno)
            try:
                header = (int(tokens[2]), int(tokens[3]))
            except ValueError:
                raise ParseError("non-integer in problem line", lineno) from None
            continue
        if header is None:
            raise ParseError("content before problem line", lineno)
        n = header[0]
        if tokens[0] in ("e", "a"):
            if clauses or pending:
                raise ParseError("quantifier block after clauses", lineno)
            if tokens[-1] != "0":
                raise ParseError("quantifier block must end with 0", lineno)
            for tok in tokens[1:-1]:
                v = _int(tok, lineno)
                if not 1 <= v <= n:
                    raise ParseError(f"variable {v} out of range 1..{n}", lineno)
                if v in quant:
                    raise ParseError(f"variable {v} quantified twice", lineno)
                quant[v] = Quantifier(tokens[0])
                order.append(v)
            continue
        for tok in tokens:
            x = _int(tok, lineno)
            if x == 0:
                clauses.append((lineno, pending))
                pending = []
            elif abs(x) > n:
                raise ParseError(f"literal {x} references variable beyond {n}", lineno)
            else:
                pending.append(x)
    if header is None:
        raise ParseError("missing problem line")
    if pending:
        raise ParseError("unterminated clause")
    n, k = header
    if len(clauses) != k:
        raise ParseError(f"expected {k} clauses, found {len(clauses)}")
    missing = [v for v in range(1, n + 1) if v not in quant]
    if missing:
        raise UnquantifiedVariable(f"variables without quantifier: {missing}")
    rename = {v: i + 1 for i, v in enumerate(order)}
    out = []
    for lineno, lits in clauses:
        if not lits:
            raise ParseError("empty clause", lineno)
        lits = {rename[abs(x)] * (1 if x > 0 else -1) for x in lits}
        if any(-x in lits for x in lits):
            continue
        out.append(lits)
    return QbfFormula(n, [quant[v] for v in order], out)


def _int(tok, lineno):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", lineno) from None


def to_qdimacs(phi):
    lines = [f"p cnf {phi.num_vars} {phi.num_clauses}"]
    i = 0
    while i < phi.num_vars:
        j = i
        while j < phi.num_vars and phi.prefix[j] is phi.prefix[i]:
            j += 1
        lines.append(" ".join([phi.prefix[i].value, *map(str, range(i + 1, j + 1)), "0"]))
        i = j
    lines.extend(" ".join([*map(str, c), "0"]) for c in phi.clauses)
    return "\n".join(lines) + "\n"


def normalize_qbf(phi):
    """Insert clause-free dummies until the prefix alternates ``∃∀...∃``."""
    prefix = []
    rename = {}
    expect = E
    for i, q in enumerate(phi.prefix):
        if q is not expect:
            prefix.append(expect)
            expect = expect.dual
        prefix.append(q)
        rename[i + 1] = len(prefix)
        expect = expect.dual
    if expect is E:
        # empty prefix, or the last quantifier is universal
        prefix.append(E)
    clauses = [[rename[abs(x)] * (1 if x > 0 else -1) for x in c] for c in phi.clauses]
    return QbfFormula(len(prefix), prefix, clauses)


MAX_BRUTE_FORCE_VARS = 20


def qbf_brute_force(phi):
    """Evaluate by exhaustive expansion of the quantifier tree."""
    if phi.num_vars > MAX_BRUTE_FORCE_VARS:
        raise TooLarge(f"{phi.num_vars} variables exceed brute-force limit {MAX_BRUTE_FORCE_VARS}")
    n = phi.num_vars
    values = [False] * n

    def value(i):
        if i == n:
            return phi.satisfied_by(values)
        branches = []
        for b in (False, True):
            values[i] = b
            branches.append(value(i + 1))
            if phi.prefix[i] is E and branches[-1]:
                return True
            if phi.prefix[i] is A and not branches[-1]:
                return False
        return phi.prefix[i] is A

    return value(0)


@dataclass(frozen=True)
class BitSectorLayout:
    """Bit positions of the four-bit sector of each variable (``i`` is 1-based)."""

    n: int

    def alpha(self, i):
        return (4 * self.n - 1) - (4 * i - 4)

    def beta(self, i):
        return (4 * self.n - 1) - (4 * i - 3)

    def gamma(self, i):
        return (4 * self.n - 1) - (4 * i - 2)

    def delta(self, i):
        return (4 * self.n - 1) - (4 * i - 1)

    @property
    def width(self):
        return 4 * self.n

    def all_bits(self):
        return [f(i) for i in range(1, self.n + 1) for f in (self.alpha, self.beta, self.gamma, self.delta)]
