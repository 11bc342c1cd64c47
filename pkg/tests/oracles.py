"""Brute-force reference implementations used to check the real ones.

Everything here works from first principles (cube enumeration, subset
search) and shares no code with the production minimizer.
"""

import itertools


def cube_minterms(cube: str) -> list[int]:
    """Minterms covered by a cube string over '0', '1', '-' (MSB first)."""
    slots = [("01" if c == "-" else c) for c in cube]
    return [int("".join(bits), 2) for bits in itertools.product(*slots)]


def is_implicant(cube: str, allowed: set[int]) -> bool:
    return all(m in allowed for m in cube_minterms(cube))


def brute_prime_implicants(n: int, on: set[int], dc: set[int]) -> list[str]:
    """Primes by definition: implicants whose every one-literal widening
    covers an off-row; restricted to cubes covering at least one on-row."""
    allowed = on | dc
    primes = []
    for cube in itertools.product("01-", repeat=n):
        cube = "".join(cube)
        if not is_implicant(cube, allowed):
            continue
        if not any(m in on for m in cube_minterms(cube)):
            continue
        widenings = [
            cube[:i] + "-" + cube[i + 1:]
            for i, c in enumerate(cube)
            if c != "-"
        ]
        if all(not is_implicant(w, allowed) for w in widenings):
            primes.append(cube)
    return primes


def literal_count(cube: str) -> int:
    return sum(1 for c in cube if c != "-")


def brute_min_cover_cost(n: int, on: set[int], dc: set[int]):
    """(term count, literal count) of the best prime-implicant cover,
    found by exhaustive subset search in increasing size."""
    if not on:
        return (0, 0)
    if on | dc == set(range(2 ** n)):
        return (0, 0)  # tautology: constant, no products needed
    primes = brute_prime_implicants(n, on, dc)
    for size in range(1, len(primes) + 1):
        best_literals = None
        for subset in itertools.combinations(primes, size):
            covered = set()
            for cube in subset:
                covered.update(cube_minterms(cube))
            if on <= covered:
                literals = sum(literal_count(c) for c in subset)
                if best_literals is None or literals < best_literals:
                    best_literals = literals
        if best_literals is not None:
            return (size, best_literals)
    raise AssertionError("no cover found")


def table_function(outputs: str):
    """Interpret a 2^n symbol string as (on_set, dc_set)."""
    on = {i for i, s in enumerate(outputs) if s == "1"}
    dc = {i for i, s in enumerate(outputs) if s == "X"}
    return on, dc
