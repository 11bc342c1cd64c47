import itertools
import random

import pytest

from softc.boolmin import (
    And,
    Const,
    Implicant,
    Not,
    Or,
    Var,
    and_,
    equivalent,
    evaluate,
    minimize,
    or_,
    parse_expression,
    print_expression,
    prime_implicants,
)
from softc.errors import ExpressionSyntaxError, TooManyVariables, UnboundVariable
from softc.truthtable import Minterms, extract_sop, to_minterms

from conftest import make_table, random_table
from oracles import brute_min_cover_cost, brute_prime_implicants, cube_minterms


# --- parser / printer -------------------------------------------------------

def test_parse_two_product_expression():
    e = parse_expression("(A & C) | (~B & C)")
    assert e == Or((And((Var("A"), Var("C"))), And((Not(Var("B")), Var("C")))))


def test_parse_single_variable():
    assert parse_expression("A") == Var("A")


def test_parse_constants():
    assert parse_expression("0") == Const(False)
    assert parse_expression("1 | A") == Or((Const(True), Var("A")))


def test_parse_output_prefix_ignored():
    assert parse_expression("Q = (A & C) | (~B & C)") == parse_expression(
        "(A & C) | (~B & C)"
    )


def test_parse_dangling_operator_offset():
    with pytest.raises(ExpressionSyntaxError) as exc:
        parse_expression("A &")
    assert exc.value.offset == 3


def test_parse_bad_character_offset():
    with pytest.raises(ExpressionSyntaxError) as exc:
        parse_expression("A + B")
    assert exc.value.offset == 2


def test_parse_unbalanced_paren():
    with pytest.raises(ExpressionSyntaxError):
        parse_expression("(A | B")
    with pytest.raises(ExpressionSyntaxError):
        parse_expression("A | B)")


def test_parse_flattens_nary():
    e = parse_expression("A & B & C")
    assert e == And((Var("A"), Var("B"), Var("C")))
    e = parse_expression("(A & B) & C")
    assert e == And((Var("A"), Var("B"), Var("C")))


def test_print_examples():
    e = Or((And((Var("A"), Var("C"))), And((Not(Var("B")), Var("C")))))
    assert print_expression(e) == "(A & C) | (~B & C)"
    assert print_expression(Var("A")) == "A"
    assert print_expression(Const(False)) == "0"
    assert print_expression(Not(Or((Var("A"), Var("B"))))) == "~(A | B)"


def _random_expr(rng, names, depth):
    if depth == 0 or rng.random() < 0.3:
        choice = rng.random()
        if choice < 0.1:
            return Const(rng.random() < 0.5)
        return Var(rng.choice(names))
    kind = rng.choice(["not", "and", "or"])
    if kind == "not":
        return Not(_random_expr(rng, names, depth - 1))
    ctor = and_ if kind == "and" else or_
    k = rng.randint(2, 3)
    return ctor(_random_expr(rng, names, depth - 1) for _ in range(k))


def test_print_parse_roundtrip_random():
    rng = random.Random(23)
    for _ in range(200):
        e = _random_expr(rng, ["A", "B", "C", "D"], 4)
        assert parse_expression(print_expression(e)) == e


# --- evaluation ---------------------------------------------------------------

def test_evaluate_two_product_rows():
    e = parse_expression("(A & C) | (~B & C)")
    assert evaluate(e, {"A": 0, "B": 0, "C": 1}) == 1
    assert evaluate(e, {"A": 1, "B": 1, "C": 0}) == 0


def test_evaluate_constant_under_empty_assignment():
    assert evaluate(Const(True), {}) == 1


def test_evaluate_unbound():
    with pytest.raises(UnboundVariable):
        evaluate(parse_expression("A & B"), {"A": 1})


# --- minimize -------------------------------------------------------------------

def _product_set(e):
    products = e.children if isinstance(e, Or) else (e,)
    return {print_expression(p) for p in products}


def test_minimize_complex_mapping():
    m = Minterms(3, frozenset({1, 5, 7}), frozenset())
    e = minimize(m, ("A", "B", "C"))
    assert _product_set(e) == {"A & C", "~B & C"}


def test_minimize_single_minterm():
    m = Minterms(4, frozenset({0b1100}), frozenset())
    e = minimize(m, ("A", "B", "C", "D"))
    assert print_expression(e) == "A & B & ~C & ~D"


def test_minimize_constants():
    assert minimize(Minterms(2, frozenset(), frozenset()), ("A", "B")) == Const(False)
    assert minimize(
        Minterms(2, frozenset(range(4)), frozenset()), ("A", "B")
    ) == Const(True)
    # don't-cares filling the remainder also collapse to a constant
    assert minimize(
        Minterms(2, frozenset({1}), frozenset({0, 2, 3})), ("A", "B")
    ) == Const(True)


def test_minimize_uses_dont_cares():
    # on {3}, dc {1}: B alone won't do (covers 0-row 1? no: rows 1 and 3 are B=1)
    m = Minterms(2, frozenset({3}), frozenset({1}))
    e = minimize(m, ("A", "B"))
    assert print_expression(e) == "B"


def test_minimize_equivalent_to_sop_random():
    rng = random.Random(5)
    for _ in range(120):
        n = rng.randint(1, 4)
        t = random_table(rng, n)
        m = to_minterms(t, 0)
        sop = extract_sop(m, t.input_names)
        opt = minimize(m, t.input_names)
        ok, cex = equivalent(sop, opt)
        assert ok, (n, cex)


def test_minimize_respects_dont_cares_random():
    rng = random.Random(17)
    for _ in range(80):
        n = rng.randint(1, 4)
        t = random_table(rng, n, dont_cares=True)
        m = to_minterms(t, 0)
        opt = minimize(m, t.input_names)
        for i, row in enumerate(t.rows):
            symbol = row.outputs[0]
            if symbol == "X":
                continue
            assignment = dict(zip(t.input_names, row.inputs))
            assert evaluate(opt, assignment) == int(symbol), (n, i)


def test_minimize_products_are_prime():
    rng = random.Random(29)
    names = ("A", "B", "C", "D")
    for _ in range(60):
        n = rng.randint(1, 4)
        t = random_table(rng, n)
        m = to_minterms(t, 0)
        e = minimize(m, t.input_names)
        if isinstance(e, Const):
            continue
        off = set(range(2 ** n)) - set(m.on_set) - set(m.dc_set)
        for product in (e.children if isinstance(e, Or) else (e,)):
            literals = product.children if isinstance(product, And) else (product,)
            cube = ["-"] * n
            for lit in literals:
                name = lit.child.name if isinstance(lit, Not) else lit.name
                pos = t.input_names.index(name)
                cube[pos] = "0" if isinstance(lit, Not) else "1"
            # dropping any one literal must reach an off-row
            for i, c in enumerate(cube):
                if c == "-":
                    continue
                widened = cube[:i] + ["-"] + cube[i + 1:]
                assert any(
                    mt in off for mt in cube_minterms("".join(widened))
                ), (n, cube, i)


def test_minimize_matches_brute_force_cost_n3():
    for bits in range(2 ** 8):
        outputs = format(bits, "08b")
        on = frozenset(i for i, s in enumerate(outputs) if s == "1")
        m = Minterms(3, on, frozenset())
        e = minimize(m, ("A", "B", "C"))
        expected = brute_min_cover_cost(3, set(on), set())
        if isinstance(e, Const):
            got = (0, 0)
        else:
            products = e.children if isinstance(e, Or) else (e,)
            got = (
                len(products),
                sum(
                    len(p.children) if isinstance(p, And) else 1 for p in products
                ),
            )
        assert got == expected, outputs


def test_minimize_dense_eight_input_table():
    # large cyclic core: exercises the integer-program cover path
    rng = random.Random(77)
    t = make_table(8, "".join("1" if rng.random() < 0.8 else "0" for _ in range(256)))
    m = to_minterms(t, 0)
    e = minimize(m, t.input_names)
    for row in t.rows:
        assignment = dict(zip(t.input_names, row.inputs))
        assert evaluate(e, assignment) == int(row.outputs[0])


def _cover_cost(e):
    if isinstance(e, Const):
        return (0, 0)
    products = e.children if isinstance(e, Or) else (e,)
    return (
        len(products),
        sum(len(p.children) if isinstance(p, And) else 1 for p in products),
    )


def test_cover_engines_agree_on_cost(monkeypatch):
    # the branch-and-bound and integer-program paths find equal optima
    import softc.boolmin as bm

    rng = random.Random(79)
    for _ in range(15):
        t = random_table(rng, 4)
        m = to_minterms(t, 0)
        default = minimize(m, t.input_names)
        with monkeypatch.context() as patch:
            patch.setattr(bm, "_ILP_CORE_THRESHOLD", 0)
            forced = minimize(m, t.input_names)
        assert _cover_cost(forced) == _cover_cost(default)
        ok, cex = equivalent(forced, default)
        assert ok, cex


def test_minimize_deterministic():
    rng = random.Random(41)
    for _ in range(30):
        n = rng.randint(1, 4)
        t = random_table(rng, n, dont_cares=True)
        m = to_minterms(t, 0)
        first = print_expression(minimize(m, t.input_names))
        second = print_expression(minimize(m, t.input_names))
        assert first == second


def test_minimize_idempotent():
    rng = random.Random(43)
    for _ in range(40):
        n = rng.randint(1, 4)
        t = random_table(rng, n)
        m = to_minterms(t, 0)
        e = minimize(m, t.input_names)
        if isinstance(e, Const):
            continue
        # rebuild minterms of the minimized expression, minimize again
        on = set()
        for i in range(2 ** n):
            assignment = {
                name: (i >> (n - 1 - k)) & 1
                for k, name in enumerate(t.input_names)
            }
            if evaluate(e, assignment):
                on.add(i)
        again = minimize(Minterms(n, frozenset(on), frozenset()), t.input_names)
        assert _product_set(again) == _product_set(e)


def test_prime_implicants_match_brute_force():
    rng = random.Random(59)
    for _ in range(40):
        n = rng.randint(1, 4)
        outputs = "".join(rng.choice("01X") for _ in range(2 ** n))
        on = {i for i, s in enumerate(outputs) if s == "1"}
        dc = {i for i, s in enumerate(outputs) if s == "X"}
        got = prime_implicants(Minterms(n, frozenset(on), frozenset(dc)))
        expected = set(brute_prime_implicants(n, on, dc))
        as_cubes = set()
        for imp in got:
            cube = "".join(
                (
                    "-"
                    if not (imp.care_mask >> (n - 1 - i)) & 1
                    else str((imp.value_mask >> (n - 1 - i)) & 1)
                )
                for i in range(n)
            )
            as_cubes.add(cube)
        assert as_cubes == expected, (n, outputs)


def test_implicant_coverage():
    imp = Implicant(3, 0b001, 0b011)  # ~B & C over A,B,C
    assert imp.coverage() == frozenset({0b001, 0b101})
    assert imp.literal_count() == 2
    with pytest.raises(ValueError):
        Implicant(3, 0b100, 0b001)


# --- equivalence oracle -----------------------------------------------------------

def test_equivalent_minimized_forms():
    sop = parse_expression("(~A & ~B & C) | (A & ~B & C) | (A & B & C)")
    opt = parse_expression("(A & C) | (~B & C)")
    assert equivalent(sop, opt) == (True, None)


def test_equivalent_contradiction():
    assert equivalent(parse_expression("A & ~A"), Const(False)) == (True, None)


def test_equivalent_counterexample_is_smallest():
    ok, cex = equivalent(parse_expression("A | B"), parse_expression("A & B"))
    assert not ok
    assert cex == {"A": 0, "B": 1}


def test_equivalent_disjoint_variables():
    ok, cex = equivalent(parse_expression("A"), parse_expression("B"))
    assert not ok
    assert cex == {"A": 0, "B": 1}


def test_equivalent_too_many_variables():
    left = or_(Var(f"v{i:02d}") for i in range(17))
    with pytest.raises(TooManyVariables):
        equivalent(left, Const(False))


def test_equivalent_brute_force_against_tables():
    # the oracle itself is checked against direct table evaluation
    rng = random.Random(61)
    for _ in range(40):
        n = rng.randint(1, 3)
        t1 = random_table(rng, n)
        t2 = random_table(rng, n)
        e1 = extract_sop(to_minterms(t1, 0), t1.input_names)
        e2 = extract_sop(to_minterms(t2, 0), t2.input_names)
        same = all(
            r1.outputs[0] == r2.outputs[0] for r1, r2 in zip(t1.rows, t2.rows)
        )
        ok, _ = equivalent(e1, e2)
        assert ok == same
