"""Boolean expression AST and exact two-level minimization.

Expressions are trees of Var/Not/And/Or/Const nodes; And and Or are n-ary
and kept flattened.  Minimization is exact: Quine-McCluskey prime implicant
generation followed by a branch-and-bound minimum-cover search, with a
deterministic tie-break so equal inputs always print identically.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Mapping, Optional, Sequence

from .errors import ExpressionSyntaxError, TooManyVariables, UnboundVariable

if TYPE_CHECKING:
    from .truthtable import Minterms

MAX_EQUIV_VARS = 16

# cost-tied covers are enumerated for the deterministic tie-break up to
# this many search nodes; past it, ties resolve by the search order
_TIE_SEARCH_BUDGET = 100_000

# cyclic cores larger than this many clauses go to the integer-program
# solver instead of branch and bound
_ILP_CORE_THRESHOLD = 24


# --- AST -------------------------------------------------------------------

class Expression:
    """Base class; concrete nodes are Var, Not, And, Or, and Const."""

    __slots__ = ()


@dataclass(frozen=True)
class Var(Expression):
    name: str


@dataclass(frozen=True)
class Not(Expression):
    child: Expression


@dataclass(frozen=True)
class And(Expression):
    children: tuple[Expression, ...]

    def __post_init__(self):
        if len(self.children) < 2:
            raise ValueError("And needs at least two children")


@dataclass(frozen=True)
class Or(Expression):
    children: tuple[Expression, ...]

    def __post_init__(self):
        if len(self.children) < 2:
            raise ValueError("Or needs at least two children")


@dataclass(frozen=True)
class Const(Expression):
    value: bool


def and_(items: Iterable[Expression]) -> Expression:
    """N-ary conjunction; flattens nested Ands, unwraps a single operand."""
    flat: list[Expression] = []
    for item in items:
        if isinstance(item, And):
            flat.extend(item.children)
        else:
            flat.append(item)
    if not flat:
        return Const(True)
    if len(flat) == 1:
        return flat[0]
    return And(tuple(flat))


def or_(items: Iterable[Expression]) -> Expression:
    """N-ary disjunction; flattens nested Ors, unwraps a single operand."""
    flat: list[Expression] = []
    for item in items:
        if isinstance(item, Or):
            flat.extend(item.children)
        else:
            flat.append(item)
    if not flat:
        return Const(False)
    if len(flat) == 1:
        return flat[0]
    return Or(tuple(flat))


def variables(e: Expression) -> set[str]:
    """All variable names occurring in the expression."""
    if isinstance(e, Var):
        return {e.name}
    if isinstance(e, Not):
        return variables(e.child)
    if isinstance(e, (And, Or)):
        names: set[str] = set()
        for child in e.children:
            names |= variables(child)
        return names
    return set()


# --- parsing ---------------------------------------------------------------

_IDENT_START = set("ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz")
_IDENT_CONT = _IDENT_START | set("0123456789_")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    """Yield (kind, value, offset) tokens; kinds: ident, const, op, end."""
    tokens = []
    i = 0
    while i < len(text):
        c = text[i]
        if c in " \t\r\n":
            i += 1
            continue
        if c in "~&|()=":
            tokens.append(("op", c, i))
            i += 1
            continue
        if c in "01":
            tokens.append(("const", c, i))
            i += 1
            continue
        if c in _IDENT_START:
            j = i + 1
            while j < len(text) and text[j] in _IDENT_CONT:
                j += 1
            tokens.append(("ident", text[i:j], i))
            i = j
            continue
        raise ExpressionSyntaxError(f"unexpected character {c!r}", i)
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, tokens: list[tuple[str, str, int]]):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str):
        kind, value, offset = self.peek()
        if kind != "op" or value != op:
            raise ExpressionSyntaxError(f"expected {op!r}", offset)
        return self.take()

    def parse_or(self) -> Expression:
        terms = [self.parse_and()]
        while self.peek()[:2] == ("op", "|"):
            self.take()
            terms.append(self.parse_and())
        return or_(terms)

    def parse_and(self) -> Expression:
        factors = [self.parse_not()]
        while self.peek()[:2] == ("op", "&"):
            self.take()
            factors.append(self.parse_not())
        return and_(factors)

    def parse_not(self) -> Expression:
        if self.peek()[:2] == ("op", "~"):
            self.take()
            return Not(self.parse_not())
        return self.parse_atom()

    def parse_atom(self) -> Expression:
        kind, value, offset = self.take()
        if kind == "ident":
            return Var(value)
        if kind == "const":
            return Const(value == "1")
        if kind == "op" and value == "(":
            inner = self.parse_or()
            self.expect_op(")")
            return inner
        raise ExpressionSyntaxError("expected a variable, constant, or '('", offset)


def parse_expression(text: str) -> Expression:
    """Parse ``~ & |`` syntax with parentheses; ``~`` binds tightest.

    A leading ``name =`` prefix (as in ``Q = A & B``) is ignored.
    """
    tokens = _tokenize(text)
    if (
        len(tokens) >= 2
        and tokens[0][0] == "ident"
        and tokens[1][:2] == ("op", "=")
    ):
        tokens = tokens[2:]
    parser = _Parser(tokens)
    expr = parser.parse_or()
    kind, _, offset = parser.peek()
    if kind != "end":
        raise ExpressionSyntaxError("unexpected trailing input", offset)
    return expr


# --- printing --------------------------------------------------------------

def _print_child(e: Expression) -> str:
    if isinstance(e, (And, Or)):
        return f"({print_expression(e)})"
    return print_expression(e)


def print_expression(e: Expression) -> str:
    """Deterministic rendering; And/Or children print inside parentheses."""
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Const):
        return "1" if e.value else "0"
    if isinstance(e, Not):
        return "~" + _print_child(e.child)
    if isinstance(e, And):
        return " & ".join(_print_child(c) for c in e.children)
    if isinstance(e, Or):
        return " | ".join(_print_child(c) for c in e.children)
    raise TypeError(f"not an expression: {e!r}")


# --- evaluation ------------------------------------------------------------

def evaluate(e: Expression, assignment: Mapping[str, int]) -> int:
    """Evaluate under a complete variable assignment; returns 0 or 1."""
    if isinstance(e, Var):
        try:
            return 1 if assignment[e.name] else 0
        except KeyError:
            raise UnboundVariable(f"no value bound for {e.name!r}") from None
    if isinstance(e, Const):
        return 1 if e.value else 0
    if isinstance(e, Not):
        return 1 - evaluate(e.child, assignment)
    if isinstance(e, And):
        for child in e.children:
            if not evaluate(child, assignment):
                return 0
        return 1
    if isinstance(e, Or):
        for child in e.children:
            if evaluate(child, assignment):
                return 1
        return 0
    raise TypeError(f"not an expression: {e!r}")


# --- implicants ------------------------------------------------------------

@dataclass(frozen=True)
class Implicant:
    """A product cube over n variables.

    ``care_mask`` marks fixed variables; ``value_mask`` holds their values
    (zero outside the care mask).  Variable i (left-to-right) lives at bit
    ``n - 1 - i``.
    """

    n: int
    value_mask: int
    care_mask: int

    def __post_init__(self):
        if self.value_mask & ~self.care_mask:
            raise ValueError("value bits outside the care mask")

    def covers(self, minterm: int) -> bool:
        return (minterm & self.care_mask) == self.value_mask

    def coverage(self) -> frozenset[int]:
        free = [b for b in range(self.n) if not (self.care_mask >> b) & 1]
        terms = set()
        for combo in itertools.product((0, 1), repeat=len(free)):
            m = self.value_mask
            for bit, val in zip(free, combo):
                m |= val << bit
            terms.add(m)
        return frozenset(terms)

    def literal_count(self) -> int:
        return bin(self.care_mask).count("1")

    def key(self) -> tuple[int, int]:
        return (self.value_mask, self.care_mask)

    def to_expression(self, input_names: Sequence[str]) -> Expression:
        if self.care_mask == 0:
            return Const(True)
        literals: list[Expression] = []
        n = self.n
        for pos, name in enumerate(input_names):
            bit = n - 1 - pos
            if (self.care_mask >> bit) & 1:
                var = Var(name)
                literals.append(var if (self.value_mask >> bit) & 1 else Not(var))
        return and_(literals)


def prime_implicants(m: "Minterms") -> list[Implicant]:
    """All prime implicants of (on_set, dc_set) that cover an on-set row.

    Classic Quine-McCluskey merging: combine cubes differing in one cared
    bit until no merge applies; unmerged cubes are prime.
    """
    care_all = (1 << m.n) - 1
    level = {(value, care_all) for value in m.on_set | m.dc_set}
    primes: set[tuple[int, int]] = set()
    while level:
        merged: set[tuple[int, int]] = set()
        next_level: set[tuple[int, int]] = set()
        cubes = sorted(level)
        by_care: dict[int, list[tuple[int, int]]] = {}
        for cube in cubes:
            by_care.setdefault(cube[1], []).append(cube)
        for care, group in by_care.items():
            for (v1, _), (v2, _) in itertools.combinations(group, 2):
                diff = v1 ^ v2
                if bin(diff).count("1") == 1:
                    next_level.add((v1 & ~diff, care & ~diff))
                    merged.add((v1, care))
                    merged.add((v2, care))
        primes |= level - merged
        level = next_level

    result = [
        Implicant(m.n, value, care)
        for value, care in sorted(primes)
        if any((mt & care) == value for mt in m.on_set)
    ]
    return result


# --- exact minimum cover ------------------------------------------------------

def best_cover(primes: list[Implicant], on_set: frozenset[int]) -> frozenset[int]:
    """Exact minimum cover of the on-set, as indices into ``primes``.

    Classic covering-table solve over prime/clause bitmasks.  At every
    node the reduction loop takes forced primes (sole cover of some
    minterm), drops redundant superset clauses, and removes dominated
    primes (coverage contained in a cheaper-or-equal prime's);
    independent sub-tables split off and solve separately.  Small cyclic
    remainders go to branch-and-bound with independent-clause lower
    bounds; large ones (dense 7-8 input tables) go to a two-phase integer
    program.  The objective is lexicographic (product count, literal
    count, sorted (value_mask, care_mask) sequence); both engines are
    exact on the two counts and deterministic throughout, with the
    sequence tie-break enumerated exhaustively on the branch-and-bound
    path within a fixed node budget.
    """
    lit = [p.literal_count() for p in primes]
    keys = [p.key() for p in primes]

    initial = sorted(
        {
            sum(1 << i for i, p in enumerate(primes) if p.covers(mt))
            for mt in on_set
        },
        key=lambda c: (c.bit_count(), c),
    )

    def bits(mask: int):
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def propagate(clauses: list[int], taken: int) -> tuple[list[int], int]:
        while True:
            forced = 0
            for c in clauses:
                if c.bit_count() == 1:
                    forced |= c
            if not forced:
                return clauses, taken
            taken |= forced
            clauses = [c for c in clauses if not (c & taken)]

    def absorb(clauses: list[int]) -> list[int]:
        # a clause that is a superset of another adds no constraint
        ordered = sorted(set(clauses), key=lambda c: (c.bit_count(), c))
        kept: list[int] = []
        for c in ordered:
            if not any(k & c == k for k in kept):
                kept.append(c)
        return kept

    def drop_dominated(clauses: list[int]) -> list[int]:
        # prime a is dominated by b when b covers everything a covers at
        # no extra literal cost; the (key, index) order breaks exact ties
        coverage: dict[int, int] = {}
        for pos, c in enumerate(clauses):
            for i in bits(c):
                coverage[i] = coverage.get(i, 0) | (1 << pos)
        candidates = sorted(coverage)
        dominated = 0
        for a in candidates:
            cov_a = coverage[a]
            lit_a = lit[a]
            for b in candidates:
                if a == b or lit[b] > lit_a:
                    continue
                cov_b = coverage[b]
                if cov_a & ~cov_b:
                    continue
                if cov_a != cov_b or lit[b] < lit_a or (keys[b], b) < (keys[a], a):
                    dominated |= 1 << a
                    break
        if not dominated:
            return clauses
        return [c & ~dominated for c in clauses]

    def full_reduce(clauses: list[int], taken: int) -> tuple[list[int], int]:
        # two reduction cycles per node; children catch any leftovers
        clauses, taken = propagate(clauses, taken)
        for _ in range(2):
            before = clauses
            clauses = absorb(clauses)
            clauses = drop_dominated(clauses)
            clauses, taken = propagate(clauses, taken)
            if clauses == before:
                break
        return clauses, taken

    def split_components(clauses: list[int]) -> list[list[int]]:
        # clauses sharing a prime must be solved together; others separate
        comp_primes: list[int] = []
        comp_clauses: list[list[int]] = []
        for c in clauses:
            hits = [k for k, ps in enumerate(comp_primes) if ps & c]
            if not hits:
                comp_primes.append(c)
                comp_clauses.append([c])
                continue
            base = hits[0]
            for k in reversed(hits[1:]):
                comp_primes[base] |= comp_primes[k]
                comp_clauses[base].extend(comp_clauses[k])
                del comp_primes[k]
                del comp_clauses[k]
            comp_primes[base] |= c
            comp_clauses[base].append(c)
        return comp_clauses

    def objective(cover: int):
        chosen = list(bits(cover))
        return (
            len(chosen),
            sum(lit[i] for i in chosen),
            sorted(keys[i] for i in chosen),
        )

    def greedy_cover(clauses: list[int]) -> int:
        taken = 0
        remaining, taken = propagate(list(clauses), taken)
        while remaining:
            counts: dict[int, int] = {}
            for c in remaining:
                for i in bits(c):
                    counts[i] = counts.get(i, 0) + 1
            pick = min(counts, key=lambda i: (-counts[i], keys[i], i))
            taken |= 1 << pick
            remaining = [c for c in remaining if not (c >> pick) & 1]
            remaining, taken = propagate(remaining, taken)
        return taken

    def minimalize(cover: int, clauses: list[int]) -> int:
        # drop redundant picks, costliest literals first
        for i in sorted(bits(cover), key=lambda i: (-lit[i], keys[i], i)):
            trial = cover & ~(1 << i)
            if all(c & trial for c in clauses):
                cover = trial
        return cover

    min_lit_cache: dict[int, int] = {}

    def clause_min_lit(c: int) -> int:
        cached = min_lit_cache.get(c)
        if cached is None:
            cached = min(lit[i] for i in bits(c))
            min_lit_cache[c] = cached
        return cached

    def lower_bound(clauses: list[int]) -> tuple[int, int]:
        terms = 0
        literals = 0
        union = 0
        for c in clauses:
            if not (c & union):
                union |= c
                terms += 1
                literals += clause_min_lit(c)
        return terms, literals

    def strong_bound(clauses: list[int]) -> tuple[int, int]:
        # larger independent set via min-conflict-degree selection
        count = len(clauses)
        adjacency = []
        for k, c in enumerate(clauses):
            mask = 0
            for j, d in enumerate(clauses):
                if j != k and (c & d):
                    mask |= 1 << j
            adjacency.append(mask)
        alive = (1 << count) - 1
        terms = 0
        literals = 0
        while alive:
            pick = -1
            pick_degree = count + 1
            rest = alive
            while rest:
                low = rest & -rest
                k = low.bit_length() - 1
                rest ^= low
                degree = (adjacency[k] & alive).bit_count()
                if degree < pick_degree:
                    pick_degree = degree
                    pick = k
            terms += 1
            literals += clause_min_lit(clauses[pick])
            alive &= ~adjacency[pick]
            alive &= ~(1 << pick)
        return terms, literals

    def solve_ilp(clauses: list[int]) -> int:
        """Lexicographic (terms, literals) optimum via two integer programs."""
        import numpy as np
        from scipy import optimize

        union = 0
        for c in clauses:
            union |= c
        columns = list(bits(union))
        index = {i: k for k, i in enumerate(columns)}
        matrix = np.zeros((len(clauses), len(columns)))
        for row, c in enumerate(clauses):
            for i in bits(c):
                matrix[row, index[i]] = 1.0
        cover_all = optimize.LinearConstraint(matrix, lb=np.ones(len(clauses)))
        bounds = optimize.Bounds(0, 1)
        integrality = np.ones(len(columns))

        fewest = optimize.milp(
            c=np.ones(len(columns)),
            constraints=cover_all,
            integrality=integrality,
            bounds=bounds,
        )
        if fewest.status != 0:
            raise RuntimeError(f"cover solve failed: {fewest.message}")
        terms = int(round(fewest.fun))
        exact_terms = optimize.LinearConstraint(
            np.ones((1, len(columns))), lb=[terms], ub=[terms]
        )
        cheapest = optimize.milp(
            c=np.array([lit[i] for i in columns], dtype=float),
            constraints=[cover_all, exact_terms],
            integrality=integrality,
            bounds=bounds,
        )
        if cheapest.status != 0:
            raise RuntimeError(f"cover solve failed: {cheapest.message}")
        cover = 0
        for k, x in enumerate(cheapest.x):
            if x > 0.5:
                cover |= 1 << columns[k]
        return cover

    nodes = 0

    def solve(clauses: list[int]) -> int:
        """Exact optimum cover of one reduced, connected sub-table."""
        nonlocal nodes
        if len(clauses) > _ILP_CORE_THRESHOLD:
            return solve_ilp(clauses)
        best = minimalize(greedy_cover(clauses), clauses)
        best_obj = objective(best)

        def search(remaining: list[int], taken: int):
            nonlocal best, best_obj, nodes
            nodes += 1
            remaining, taken = full_reduce(remaining, taken)
            if not remaining:
                obj = objective(taken)
                if obj < best_obj:
                    best, best_obj = taken, obj
                return
            parts = split_components(remaining)
            if len(parts) > 1:
                combined = taken
                for part in parts:
                    combined |= solve(part)
                obj = objective(combined)
                if obj < best_obj:
                    best, best_obj = combined, obj
                return
            taken_terms = taken.bit_count()
            taken_lits = sum(lit[i] for i in bits(taken))

            def prunes(bound: tuple[int, int]) -> bool:
                pair = (bound[0] + taken_terms, bound[1] + taken_lits)
                if pair > (best_obj[0], best_obj[1]):
                    return True
                return pair == (best_obj[0], best_obj[1]) and (
                    nodes > _TIE_SEARCH_BUDGET
                )

            if prunes(lower_bound(remaining)) or prunes(strong_bound(remaining)):
                return
            branch = min(remaining, key=lambda c: (c.bit_count(), c))
            for i in sorted(bits(branch), key=lambda i: (keys[i], i)):
                search(
                    [c for c in remaining if not (c >> i) & 1],
                    taken | (1 << i),
                )

        search(list(clauses), 0)
        return best

    chosen = 0
    clauses, chosen = full_reduce(initial, chosen)
    for component in split_components(clauses):
        chosen |= solve(component)
    return frozenset(bits(chosen))


def minimize(m: "Minterms", input_names: Sequence[str]) -> Expression:
    """Exact minimal SOP for the given minterms.

    Cost order: fewest products, then fewest literals, then a
    deterministic tie-break over (value_mask, care_mask) key sequences
    (see :func:`best_cover`).  The result's products are rendered in
    ascending (value_mask, care_mask) order.
    """
    if len(input_names) != m.n:
        raise ValueError(f"expected {m.n} input names, got {len(input_names)}")
    if not m.on_set:
        return Const(False)
    if len(m.on_set | m.dc_set) == 2 ** m.n:
        return Const(True)

    primes = prime_implicants(m)
    cover = best_cover(primes, m.on_set)
    products = sorted((primes[i] for i in cover), key=Implicant.key)
    return or_(p.to_expression(input_names) for p in products)


# --- equivalence oracle ------------------------------------------------------

def equivalent(
    e1: Expression, e2: Expression
) -> tuple[bool, Optional[dict[str, int]]]:
    """Brute-force equivalence over the union of both variable sets.

    Returns ``(True, None)`` or ``(False, assignment)`` with the
    lexicographically smallest differing assignment (variables sorted by
    name, 0 before 1).
    """
    names = sorted(variables(e1) | variables(e2))
    if len(names) > MAX_EQUIV_VARS:
        raise TooManyVariables(
            f"{len(names)} combined variables exceeds the limit of {MAX_EQUIV_VARS}"
        )
    for bits in itertools.product((0, 1), repeat=len(names)):
        assignment = dict(zip(names, bits))
        if evaluate(e1, assignment) != evaluate(e2, assignment):
            return False, assignment
    return True, None
