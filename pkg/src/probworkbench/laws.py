"""Randomized law suites for the probability calculus.

Every law is a function ``(model, rng) -> deviation`` that draws one random
instance and returns the absolute violation (0 for an exact law).  ``run_law``
repeats it and reports the worst case.  Seeds are derived from the law name so
that adding a law never perturbs the others.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import linalg
from .composition import (
    CompositeModel,
    check_distributivity,
    composite_conditional,
    tensor_proposition,
)
from .models import Kind, Model
from .propositions import (
    Proposition,
    direct_sum,
    granularity,
    join,
    meet,
    partial_sum,
    relative_complement,
    sample_decomposition,
    sample_refinement,
)
from .states import check_supersession, condition, mix, probability, random_state
from .symmetry import random_group_element


def _random_vector(d: int, rng) -> tuple:
    """Random granularity vector of d."""
    cuts = sorted(rng.choice(np.arange(1, d), size=rng.integers(0, d), replace=False)) if d > 1 else []
    bounds = [0, *cuts, d]
    return tuple(int(b - a) for a, b in zip(bounds[:-1], bounds[1:]))


def _random_prop(model: Model, rng) -> Proposition:
    k = int(rng.integers(0, model.d + 1))
    if k == 0:
        return Proposition.empty(model)
    return sample_refinement(Proposition.top(model), k, rng)


def _three_parts(model: Model, rng):
    """Three mutually exclusive propositions (possibly empty) from one decomposition."""
    m = sample_decomposition(Proposition.top(model), _random_vector(model.d, rng), rng)
    slots = [[] for _ in range(4)]
    for p in m.parts:
        slots[int(rng.integers(0, 4))].append(p)
    return [direct_sum(s) if s else Proposition.empty(model) for s in slots[:3]]


def _dev(a, b) -> float:
    if isinstance(a, Proposition):
        return linalg.max_abs(a.projector - b.projector)
    return abs(float(a) - float(b))


# -- propositions --------------------------------------------------------------


def law_partial_sum_commutative(model, rng):
    x, y, _ = _three_parts(model, rng)
    return _dev(partial_sum(x, y), partial_sum(y, x))


def law_partial_sum_associative(model, rng):
    x, y, z = _three_parts(model, rng)
    return _dev(partial_sum(partial_sum(x, y), z), partial_sum(x, partial_sum(y, z)))


def law_neutral_element(model, rng):
    x = _random_prop(model, rng)
    return _dev(partial_sum(x, Proposition.empty(model)), x)


def law_complement_unique(model, rng):
    x, y, _ = _three_parts(model, rng)
    a = partial_sum(x, y)
    return _dev(relative_complement(a, x), y)


def law_granularity_additive(model, rng):
    m = sample_decomposition(Proposition.top(model), _random_vector(model.d, rng), rng)
    return float(abs(granularity(direct_sum(list(m.parts))) - sum(granularity(p) for p in m.parts)))


def _commuting_pair(model, rng):
    """Two jointly decidable propositions: unions of atoms of one random maximal decomposition."""
    m = sample_decomposition(Proposition.top(model), (1,) * model.d, rng)
    ix = rng.random(model.d) < 0.5
    iy = rng.random(model.d) < 0.5
    pick = lambda mask: direct_sum([p for p, keep in zip(m.parts, mask) if keep]) if mask.any() \
        else Proposition.empty(model)
    return m, ix, iy, pick(ix), pick(iy), pick


def law_meet_join_oracle(model, rng):
    """Meet/join of commuting pairs equal the set operations on their common atoms."""
    m, ix, iy, x, y, pick = _commuting_pair(model, rng)
    return max(_dev(meet(x, y), pick(ix & iy)), _dev(join(x, y), pick(ix | iy)))


def law_boolean_distributive(model, rng):
    """a ∩ (b1 ⊕ b2) = (a ∩ b1) ⊕ (a ∩ b2) for jointly decidable families."""
    m = sample_decomposition(Proposition.top(model), (1,) * model.d, rng)
    masks = rng.integers(0, 3, size=model.d)  # atom -> b1 / b2 / neither
    a_mask = rng.random(model.d) < 0.5
    pick = lambda mask: direct_sum([p for p, keep in zip(m.parts, mask) if keep]) if np.any(mask) \
        else Proposition.empty(model)
    a, b1, b2 = pick(a_mask), pick(masks == 0), pick(masks == 1)
    return _dev(meet(a, partial_sum(b1, b2)), partial_sum(meet(a, b1), meet(a, b2)))


# -- states ----------------------------------------------------------------------


def law_sum_rule(model, rng):
    rho = random_state(model, pure=bool(rng.random() < 0.3), seed=rng)
    m = sample_decomposition(Proposition.top(model), _random_vector(model.d, rng), rng)
    chosen = [p for p in m.parts if rng.random() < 0.6] or [m.parts[0]]
    return _dev(probability(rho, direct_sum(chosen)), sum(probability(rho, p) for p in chosen))


def law_product_rule(model, rng):
    rho = random_state(model, pure=False, seed=rng)
    x, y, _ = _three_parts(model, rng)
    xy = partial_sum(x, y)
    p_xy = probability(rho, xy)
    if p_xy <= 1e-12:
        return 0.0
    return _dev(probability(rho, x), probability(condition(rho, xy), x) * p_xy)


def law_group_invariance(model, rng):
    rho = random_state(model, pure=False, seed=rng)
    g = random_group_element(model, rng)
    x = _random_prop(model, rng)
    return _dev(probability(g.act_state(rho), g.act(x)), probability(rho, x))


def law_supersession(model, rng):
    e = sample_refinement(Proposition.top(model), 1, rng)
    priors = [random_state(model, pure=False, seed=rng) for _ in range(2)]
    probes = [_random_prop(model, rng) for _ in range(6)]
    return check_supersession(e, priors, probes, tol=np.inf).max_deviation


def law_bayes(model, rng):
    """prob(a ∩ b) = prob(a | b) prob(b) on jointly decidable pairs."""
    rho = random_state(model, pure=False, seed=rng)
    _, _, _, a, b, _ = _commuting_pair(model, rng)
    pb = probability(rho, b)
    if pb <= 1e-12:
        return 0.0
    return _dev(probability(rho, meet(a, b)), probability(condition(rho, b), a) * pb)


def law_convexity(model, rng):
    s1 = random_state(model, pure=False, seed=rng)
    s2 = random_state(model, pure=True, seed=rng)
    w = rng.dirichlet(np.ones(3))[:2]
    x = _random_prop(model, rng)
    m = mix([s1, s2], w)
    return _dev(probability(m, x), w[0] * probability(s1, x) + w[1] * probability(s2, x))


# -- composition -------------------------------------------------------------------


def _partner(model: Model) -> CompositeModel:
    return CompositeModel(model, Model(model.kind, 2))


def law_composite_distributivity(model, rng):
    cm = _partner(model)
    ma = sample_decomposition(Proposition.top(cm.A), _random_vector(cm.A.d, rng), rng)
    mb = sample_decomposition(Proposition.top(cm.B), _random_vector(cm.B.d, rng), rng)
    rho = random_state(cm.model, pure=False, seed=rng)
    v = check_distributivity(ma, mb, rho)
    return max(v.proposition_deviation, v.probability_deviation)


def law_composite_product_rule(model, rng):
    cm = _partner(model)
    rho = random_state(cm.model, pure=False, seed=rng)
    x, y = _random_prop(cm.A, rng), _random_prop(cm.B, rng)
    py = probability(rho, tensor_proposition(Proposition.top(cm.A), y))
    if py <= 1e-12:
        return 0.0
    return _dev(probability(rho, tensor_proposition(x, y)), composite_conditional(rho, cm, x, y) * py)


def law_granularity_multiplicative(model, rng):
    cm = _partner(model)
    x, y = _random_prop(cm.A, rng), _random_prop(cm.B, rng)
    return float(abs(tensor_proposition(x, y).granularity - x.granularity * y.granularity))


@dataclass(frozen=True)
class Law:
    name: str
    suite: str
    anchor: str
    fn: Callable
    kinds: tuple = (Kind.CLASSICAL, Kind.QUANTUM_REAL, Kind.QUANTUM_COMPLEX)


LAWS = [
    Law("partial_sum_commutative", "propositions", "commutativity of the partial sum", law_partial_sum_commutative),
    Law("partial_sum_associative", "propositions", "associativity of the partial sum", law_partial_sum_associative),
    Law("neutral_element", "propositions", "neutral element of the partial sum", law_neutral_element),
    Law("complement_unique", "propositions", "uniqueness of the relative complement", law_complement_unique),
    Law("granularity_additive", "propositions", "granularity additivity",
        law_granularity_additive),
    Law("meet_join_oracle", "propositions", "Boolean operations via a joint decomposition",
        law_meet_join_oracle),
    Law("boolean_distributive", "propositions", "Boolean distributivity",
        law_boolean_distributive),
    Law("sum_rule", "states", "sum rule", law_sum_rule),
    Law("product_rule", "states", "product rule", law_product_rule),
    Law("group_invariance", "states", "group invariance", law_group_invariance),
    Law("supersession", "states", "pure-state supersession", law_supersession),
    Law("bayes_rule", "states", "Bayes rule", law_bayes),
    Law("convexity", "states", "convexity of the state space", law_convexity),
    Law("composite_distributivity", "composition", "composite distributivity",
        law_composite_distributivity),
    Law("composite_product_rule", "composition", "composite product rule",
        law_composite_product_rule),
    Law("granularity_multiplicative", "composition", "granularity multiplicativity",
        law_granularity_multiplicative),
]

LAWS_BY_NAME = {law.name: law for law in LAWS}


def law_seed(seed: int, name: str) -> np.random.Generator:
    return np.random.default_rng([int(seed), zlib.crc32(name.encode())])


@dataclass
class LawResult:
    name: str
    suite: str
    anchor: str
    trials: int
    max_deviation: float
    failures: int


def run_law(name: str, model: Model, trials: int, seed: int, tol: float = 1e-9) -> LawResult:
    law = LAWS_BY_NAME[name]
    rng = law_seed(seed, f"{name}:{model.kind.value}:{model.d}")
    worst, failures = 0.0, 0
    for _ in range(trials):
        dev = law.fn(model, rng)
        worst = max(worst, dev)
        failures += dev > tol
    return LawResult(name, law.suite, law.anchor, trials, worst, failures)
