"""Built-in reproduction catalog.

Each case builds its inputs internally, computes every quantity with
the library, and compares against expected values frozen in this file.
The ids are opaque case labels used by the command line; the dictionary
below is the ground-truth contract of the package.

Cases:

* 2.6.1  - quadric cone (one -2 curve) blown up once: relative
  canonical divisor, two anti-nef closures, and a strict subadditivity
  certificate.
* 2.6.2  - the chain -3,-2,-1,-5 obtained by two blowups over a
  -2/-3 pair: fractional canonical divisor, one closure, and the
  failure of the integral-K closure formula's rounded analog.
* 2.3.2  - quadric cone with two marked curves through the node: the
  divisor-level subadditivity failure.
* 2.4.1  - a single -k curve blown up once: strong subadditivity
  failing at fractional exponents (irreducible exceptional locus).
* 2.4.2  - the Hirzebruch-Jung chain of 5/2: strong subadditivity
  failing via a cycle between the fundamental cycle and its double
  (reducible exceptional locus).
* 3.2    - the cyclic quotient 1/41(35,28,20) with a six-generator
  monomial ideal: the monomial subadditivity counterexample with
  witness exponent (10,3,7).
"""

from __future__ import annotations

from fractions import Fraction

from . import proximity as px
from . import surface as sf
from . import toric as tc
from .surface import Cycle


def _check(mismatches: list[str], label: str, got, expected) -> None:
    if got != expected:
        mismatches.append(f"{label}: got {got!r}, expected {expected!r}")


def _case_261(**_) -> tuple[dict, list[str]]:
    mismatches: list[str] = []
    model = sf.build_model(
        [("F", -2, sf.EXCEPTIONAL)], [], [("E1", ["F"])]
    )
    k = model.relative_canonical
    _check(mismatches, "relative canonical", k, Cycle({"E1": 1}))
    f_a = Cycle({"E1": 2, "F": 1})
    _check(mismatches, "F_a anti-nef", model.is_anti_nef(f_a), True)
    an1 = model.anti_nef_closure(f_a - k)
    an2 = model.anti_nef_closure(2 * f_a - k)
    _check(mismatches, "closure of F_a - K", an1, Cycle({"E1": 1, "F": 1}))
    _check(mismatches, "closure of 2F_a - K", an2, Cycle({"E1": 3, "F": 2}))
    cert = px.subadditivity_check_2d(model, f_a, f_a)
    _check(mismatches, "certificate verdict", cert.verdict, True)
    _check(mismatches, "strict containment at", cert.strict_at, ("E1",))
    results = {
        "relative_canonical": k.to_json_dict(),
        "closure_single": an1.to_json_dict(),
        "closure_double": an2.to_json_dict(),
        "certificate": cert.to_json_dict(),
    }
    return results, mismatches


def _case_262(**_) -> tuple[dict, list[str]]:
    mismatches: list[str] = []
    model = sf.build_model(
        [("F1", -2, sf.EXCEPTIONAL), ("F2", -3, sf.EXCEPTIONAL)],
        [("F1", "F2")],
        [("E1", ["F1", "F2"]), ("E2", ["E1", "F2"])],
    )
    weights = [model.inter[n][n] for n in ("F1", "E1", "E2", "F2")]
    _check(mismatches, "chain weights", weights, [-3, -2, -1, -5])
    k = model.relative_canonical
    _check(
        mismatches,
        "relative canonical",
        k,
        Cycle(
            {
                "F1": Fraction(-1, 5),
                "E1": Fraction(2, 5),
                "E2": 1,
                "F2": Fraction(-2, 5),
            }
        ),
    )
    z = Cycle({"F1": 1, "E1": 3, "E2": 5, "F2": 1})
    _check(mismatches, "Z anti-nef", model.is_anti_nef(z), True)
    oracle = model.anti_nef_closure(z - k.ceil())
    _check(
        mismatches,
        "closure of Z - ceil(K)",
        oracle,
        z - k.ceil() + Cycle({"E1": 1}),
    )
    naive = px.naive_ceil_closure_formula(model, z)
    _check(mismatches, "rounded formula disagrees with closure", naive != oracle, True)
    dc = px.d_coordinates(model, z)
    _check(mismatches, "stage-0 part", dc.base, Cycle({"F1": 1, "F2": 1}))
    _check(mismatches, "d-vector", dc.d, (Fraction(1), Fraction(1)))
    prox = px.proximity_data(model)
    _check(mismatches, "proximity matrix", prox.matrix, ((1, -1), (0, 1)))
    _check(mismatches, "lambda indices", px.lambda_set(model), (0,))
    results = {
        "relative_canonical": k.to_json_dict(),
        "closure": oracle.to_json_dict(),
        "rounded_formula": naive.to_json_dict(),
        "proximity_matrix": [list(row) for row in prox.matrix],
    }
    return results, mismatches


def _case_232(**_) -> tuple[dict, list[str]]:
    mismatches: list[str] = []
    model = sf.build_model(
        [
            ("E", -2, sf.EXCEPTIONAL),
            ("D1", 0, sf.MARKED),
            ("D2", 0, sf.MARKED),
        ],
        [("E", "D1"), ("E", "D2")],
        [],
    )
    t1 = model.total_transform_marked("D1")
    t2 = model.total_transform_marked("D2")
    _check(mismatches, "total transform of D1", t1, Cycle({"D1": 1, "E": Fraction(1, 2)}))
    _check(mismatches, "total transform of D2", t2, Cycle({"D2": 1, "E": Fraction(1, 2)}))
    j1 = model.multiplier_cycle(t1, 1)
    j2 = model.multiplier_cycle(t2, 1)
    j12 = model.multiplier_cycle(t1 + t2, 1)
    _check(mismatches, "cycle of J(D1)", j1, Cycle({"D1": 1, "E": 1}))
    _check(mismatches, "cycle of J(D2)", j2, Cycle({"D2": 1, "E": 1}))
    _check(
        mismatches,
        "cycle of J(D1 + D2)",
        j12,
        Cycle({"D1": 1, "D2": 1, "E": 1}),
    )
    _check(
        mismatches,
        "sum of cycles",
        j1 + j2,
        Cycle({"D1": 1, "D2": 1, "E": 2}),
    )
    _check(mismatches, "inclusion fails", j12 >= j1 + j2, False)
    _check(
        mismatches,
        "failure witnessed at",
        [n for n in model.names if j12.coeff(n) < (j1 + j2).coeff(n)],
        ["E"],
    )
    results = {
        "cycle_d1": j1.to_json_dict(),
        "cycle_d2": j2.to_json_dict(),
        "cycle_sum_divisor": j12.to_json_dict(),
    }
    return results, mismatches


def _case_241(k: int = 2, **_) -> tuple[dict, list[str]]:
    mismatches: list[str] = []
    report = px.strong_subadd_counterexample_irreducible(k)
    _check(
        mismatches,
        "canonical divisor",
        report.model.relative_canonical,
        Cycle({"E1": Fraction(2, k), "E2": -Fraction(k - 2, k)}),
    )
    _check(
        mismatches,
        "multiplier cycle at 1/(k+1)",
        report.cycle_single,
        Cycle({"E1": 1, "E2": 1}),
    )
    _check(
        mismatches,
        "multiplier cycle at 2/(k+1)",
        report.cycle_double,
        Cycle({"E1": 3, "E2": 1}),
    )
    _check(mismatches, "inclusion fails", report.inclusion_holds, False)
    _check(mismatches, "witness", report.witness, "E2")
    return report.to_json_dict(), mismatches


def _case_242(n: int = 2, **_) -> tuple[dict, list[str]]:
    mismatches: list[str] = []
    model = sf.hj_chain(5, 2)
    weights = [model.inter[name][name] for name in model.names]
    _check(mismatches, "chain weights", weights, [-3, -2])
    report = px.strong_subadd_counterexample_reducible(model, n)
    _check(
        mismatches,
        "fundamental cycle",
        report.fundamental,
        Cycle({"E1": 1, "E2": 1}),
    )
    _check(mismatches, "whole cycle is Z", report.cycle_whole, report.z)
    _check(mismatches, "fractional cycle is Z_f", report.cycle_fraction, report.fundamental)
    _check(mismatches, "inclusion fails", report.inclusion_holds, False)
    return report.to_json_dict(), mismatches


def _case_32(**_) -> tuple[dict, list[str]]:
    mismatches: list[str] = []
    ring = tc.cyclic_quotient_ring(41, (35, 28, 20))
    ideal = tc.MonomialIdeal(
        ring,
        [(410, 0, 0), (0, 410, 0), (0, 0, 410), (8, 1, 1), (4, 6, 1), (4, 1, 8)],
    )
    _check(mismatches, "(8,1,1) in the semigroup", ring.semigroup_contains((8, 1, 1)), True)
    _check(mismatches, "(1,0,0) not in the semigroup", ring.semigroup_contains((1, 0, 0)), False)
    poly = ideal.newton_polyhedron()
    _check(mismatches, "key facet present", ((35, 28, 20), 328) in poly.facets, True)
    tight = [
        g
        for g in ideal.generators
        if 35 * g[0] + 28 * g[1] + 20 * g[2] == 328
    ]
    _check(
        mismatches,
        "facet tight on three generators",
        sorted(tight),
        [(4, 1, 8), (4, 6, 1), (8, 1, 1)],
    )
    _check(mismatches, "(11,4,8) interior to 2P", tc.in_interior(poly, (11, 4, 8), 2), True)
    _check(mismatches, "(3,3,7) not interior to P", tc.in_interior(poly, (3, 3, 7), 1), False)
    lam1 = tc.barycentric_solve([(8, 1, 1), (4, 6, 1), (4, 1, 8)], (11, 4, 8))
    _check(
        mismatches,
        "combination for (11,4,8)",
        lam1,
        [Fraction(245, 328), Fraction(131, 328), Fraction(281, 328)],
    )
    _check(mismatches, "combination mass exceeds 2", sum(lam1) > 2, True)
    lam2 = tc.barycentric_solve([(8, 1, 1), (4, 6, 1), (4, 1, 8)], (3, 3, 7))
    _check(
        mismatches,
        "combination for (3,3,7)",
        lam2,
        [Fraction(-83, 328), Fraction(131, 328), Fraction(281, 328)],
    )
    _check(mismatches, "(2,2,6) in the semigroup", ring.semigroup_contains((2, 2, 6)), True)
    j1 = tc.multiplier_monomials(ideal, 1)
    _check(mismatches, "(2,2,6) not in J(I)", tc.ideal_membership(j1, (2, 2, 6)), False)
    _check(
        mismatches,
        "(10,3,7) not in J(I)^2",
        tc.ideal_membership(tc.ideal_product(j1, j1), (10, 3, 7)),
        False,
    )
    cert = tc.subadditivity_check_monomial(ideal, ideal)
    _check(mismatches, "certificate verdict", cert.verdict, False)
    _check(mismatches, "witness", cert.witness, (10, 3, 7))
    results = {
        "facets": [[list(a), b] for a, b in poly.facets],
        "certificate": cert.to_json_dict(),
    }
    return results, mismatches


_CASES = {
    "2.6.1": _case_261,
    "2.6.2": _case_262,
    "2.3.2": _case_232,
    "2.4.1": _case_241,
    "2.4.2": _case_242,
    "3.2": _case_32,
}


class UnknownExampleError(ValueError):
    """No reproduction case with that id."""


def case_ids() -> tuple[str, ...]:
    return tuple(_CASES)


def run_case(case_id: str, k: int = 2, n: int = 2) -> tuple[dict, list[str]]:
    """Run one catalog case; returns (results, mismatches). An empty
    mismatch list means every frozen expectation was met."""
    if case_id not in _CASES:
        raise UnknownExampleError(f"unknown case id {case_id!r}")
    return _CASES[case_id](k=k, n=n)
