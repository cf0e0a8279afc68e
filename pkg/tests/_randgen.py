"""Seeded random instances for property tests: catalog-based resolution
models with optional marked curves and blowups, plus random cycles."""

from __future__ import annotations

import random

from subadd.surface import EXCEPTIONAL, MARKED, Cycle, ade, build_model, hj_chain


_HJ_PARAMS = [(2, 1), (3, 1), (3, 2), (5, 2), (5, 3), (7, 3), (8, 5), (9, 4)]
_ADE_LABELS = ["A1", "A2", "A3", "A4", "D4", "D5", "E6"]


def random_model(
    rng: random.Random,
    allow_marked: bool = True,
    max_blowups: int = 3,
):
    """A random log terminal catalog base, possibly with one marked
    curve, extended by random valid blowups."""
    if rng.random() < 0.5:
        base_model = hj_chain(*rng.choice(_HJ_PARAMS))
    else:
        base_model = ade(rng.choice(_ADE_LABELS))
    curves = [(n, base_model.inter[n][n], EXCEPTIONAL) for n in base_model.names]
    edges = [
        (a, b)
        for i, a in enumerate(base_model.names)
        for b in base_model.names[i + 1 :]
        if base_model.inter[a][b]
    ]
    if allow_marked and rng.random() < 0.4:
        target = rng.choice(base_model.names)
        curves.append(("D", 0, MARKED))
        edges.append(("D", target))

    blowups: list[tuple[str, list[str]]] = []
    model = build_model(curves, edges, blowups)
    for i in range(rng.randint(0, max_blowups)):
        name = f"B{i + 1}"
        names = model.names
        if rng.random() < 0.5:
            center = [rng.choice(names)]
        else:
            meeting = [
                (a, b)
                for j, a in enumerate(names)
                for b in names[j + 1 :]
                if model.inter[a][b] >= 1
            ]
            if not meeting:
                center = [rng.choice(names)]
            else:
                center = list(rng.choice(meeting))
        blowups.append((name, center))
        model = build_model(curves, edges, blowups)
    return model


def random_integral_cycle(rng: random.Random, model, lo: int = -2, hi: int = 4) -> Cycle:
    return Cycle({n: rng.randint(lo, hi) for n in model.names})


def random_anti_nef_cycle(
    rng: random.Random, model, hi: int = 3, marked: bool = True
) -> Cycle:
    """Anti-nef by construction: the closure of a random effective
    integral cycle (marked coefficients kept small and nonnegative)."""
    coeffs = {}
    for n in model.names:
        if model.kind[n] == MARKED:
            if marked:
                coeffs[n] = rng.randint(0, 2)
        else:
            coeffs[n] = rng.randint(0, hi)
    return model.anti_nef_closure(Cycle(coeffs))
