"""Independent oracles for the test suite.

Everything here recomputes library results by a different route: box
enumeration for anti-nef closures and fundamental cycles, and exact
Fourier-Motzkin feasibility for Newton-polyhedron membership. Nothing
imports the algorithms under test beyond basic data types.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from subadd.surface import Cycle


def brute_anti_nef_closure(model, z: Cycle, extra: int = 3) -> Cycle:
    """Minimal anti-nef cycle above z by exhaustive box search.

    Exceptional coefficients range from max(z, 0) upward; marked
    coefficients pass through. The box grows until the componentwise
    minimum of the anti-nef cycles found sits strictly inside it, which
    certifies completeness.
    """
    exc = model.exceptional
    lows = [max(int(z.coeff(e)), 0) for e in exc]
    marked_part = {m: z.coeff(m) for m in model.marked if z.coeff(m)}
    while extra <= 24:
        found = []
        for combo in itertools.product(*[range(lo, lo + extra + 1) for lo in lows]):
            w = Cycle({**dict(zip(exc, combo)), **marked_part})
            if model.is_anti_nef(w):
                found.append(combo)
        if found:
            best = tuple(min(c[i] for c in found) for i in range(len(exc)))
            if all(b < lo + extra for b, lo in zip(best, lows)):
                assert best in found, "componentwise minimum escaped the anti-nef set"
                return Cycle({**dict(zip(exc, best)), **marked_part})
        extra += 3
    raise AssertionError("oracle box exhausted")


def brute_fundamental_cycle(model, hi: int = 5) -> Cycle:
    """Minimal nonzero anti-nef cycle by exhaustive search."""
    exc = model.exceptional
    while hi <= 20:
        found = []
        for combo in itertools.product(range(hi + 1), repeat=len(exc)):
            if not any(combo):
                continue
            w = Cycle(dict(zip(exc, combo)))
            if model.is_anti_nef(w):
                found.append(combo)
        if found:
            best = tuple(min(c[i] for c in found) for i in range(len(exc)))
            if all(b < hi for b in best):
                assert best in found
                return Cycle(dict(zip(exc, best)))
        hi += 3
    raise AssertionError("oracle box exhausted")


def _fourier_motzkin_feasible(constraints: list[tuple[list[Fraction], Fraction, bool]]) -> bool:
    """Feasibility of a system (coeffs . x) {<= | <} rhs over the
    rationals; the boolean marks a strict constraint."""
    nvars = len(constraints[0][0]) if constraints else 0
    rows = [([Fraction(c) for c in coeffs], Fraction(rhs), strict) for coeffs, rhs, strict in constraints]
    for var in range(nvars):
        pos, neg, rest = [], [], []
        for coeffs, rhs, strict in rows:
            c = coeffs[var]
            if c > 0:
                pos.append((coeffs, rhs, strict))
            elif c < 0:
                neg.append((coeffs, rhs, strict))
            else:
                rest.append((coeffs, rhs, strict))
        new_rows = rest
        for pc, pr, ps in pos:
            for nc, nr, ns in neg:
                a, b = pc[var], -nc[var]
                coeffs = [b * pc[i] + a * nc[i] for i in range(nvars)]
                new_rows.append((coeffs, b * pr + a * nr, ps or ns))
        rows = new_rows
    for coeffs, rhs, strict in rows:
        if strict:
            if not rhs > 0:
                return False
        elif not rhs >= 0:
            return False
    return True


def in_polyhedron_fm(gens, v, c=Fraction(1), strict=False) -> bool:
    """Is v inside (or strictly inside) c * (conv(gens) + orthant)?

    Decided by exact Fourier-Motzkin on the lambda-space system:
    lambda >= 0, sum lambda = 1, and c * sum(lambda_i g_i) below v,
    strictly for the interior test. Uses no facet data at all.
    """
    gens = [tuple(g) for g in gens]
    m = len(gens)
    n = len(gens[0])
    v = [Fraction(x) for x in v]
    c = Fraction(c)
    # variables: lambda_0 .. lambda_{m-2}; lambda_{m-1} = 1 - sum(others)
    cons: list[tuple[list[Fraction], Fraction, bool]] = []
    last = gens[m - 1]
    for i in range(m - 1):
        row = [Fraction(0)] * (m - 1)
        row[i] = Fraction(-1)
        cons.append((row, Fraction(0), False))        # lambda_i >= 0
    cons.append(([Fraction(1)] * (m - 1), Fraction(1), False))  # sum <= 1
    for coord in range(n):
        row = [c * (gens[i][coord] - last[coord]) for i in range(m - 1)]
        rhs = v[coord] - c * last[coord]
        cons.append((row, rhs, strict))
    return _fourier_motzkin_feasible(cons)


def brute_multiplier_members(ring, gens, c, bound: int) -> set[tuple[int, ...]]:
    """All multiplier-ideal members in the box, via the interior test
    decided by Fourier-Motzkin."""
    out = set()
    for v in itertools.product(range(bound + 1), repeat=ring.rank):
        if not ring.semigroup_contains(v):
            continue
        shifted = tuple(x + 1 for x in v)
        if in_polyhedron_fm(gens, shifted, Fraction(c), strict=True):
            out.add(v)
    return out


def dominance_minimal(points) -> set[tuple[int, ...]]:
    pts = sorted(points, key=lambda p: (sum(p), p))
    kept: list[tuple[int, ...]] = []
    for p in pts:
        if not any(all(k <= x for k, x in zip(q, p)) for q in kept):
            kept.append(p)
    return set(kept)
