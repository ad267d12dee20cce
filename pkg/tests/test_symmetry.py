import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.linalg import expm

from probworkbench import linalg
from probworkbench.errors import GranularityMismatch, UnsupportedModel
from probworkbench.models import Kind, Model, classical, quantum
from probworkbench.propositions import Decomposition
from probworkbench.propositions import Proposition as P
from probworkbench.propositions import (
    are_orthogonal,
    compositions,
    partial_sum,
    relative_complement,
    sample_decomposition,
    sample_refinement,
)
from probworkbench.states import State, probability
from probworkbench.symmetry import (
    METRIC_C,
    GroupElement,
    dim_decomposition_manifold,
    dim_group,
    dim_group_variant,
    dim_most_accurate,
    dimension_table,
    element_near_identity,
    exp_generator,
    find_transporter,
    mu_prime_symmetric,
    random_group_element,
    stabilizer_check,
    state_parameter_count,
)

from conftest import CONSTRUCTIBLE, ket

ALL_KINDS = tuple(Kind)
Q2 = quantum(2)


# -- group elements -----------------------------------------------------------------


@pytest.mark.parametrize("kind", CONSTRUCTIBLE)
def test_random_element_deterministic(kind):
    m = Model(kind, 4)
    a, b = random_group_element(m, 3), random_group_element(m, 3)
    assert np.array_equal(a.matrix, b.matrix)


@pytest.mark.parametrize("real", [False, True])
def test_random_element_unitary(real):
    g = random_group_element(quantum(5, real), 0)
    u = g.matrix
    assert linalg.max_abs(u.conj().T @ u - np.eye(5)) < 1e-9


@pytest.mark.parametrize("d", [2, 3])
def test_haar_first_moment(d):
    # E|<0|g|0>|^2 = 1/d; variance of that entry for Haar U(d) is (d-1)/(d^2 (d+1)).
    rng = np.random.default_rng(17)
    n = 10_000
    vals = np.array([abs(random_group_element(quantum(d), rng).matrix[0, 0]) ** 2 for _ in range(n)])
    sigma = np.sqrt((d - 1) / (d * d * (d + 1)) / n)
    assert abs(vals.mean() - 1 / d) < 3 * sigma


def test_quaternionic_has_no_elements():
    with pytest.raises(UnsupportedModel):
        random_group_element(Model(Kind.QUATERNIONIC, 2), 0)


def test_compose_and_inverse():
    for m in (classical(5), quantum(3), quantum(3, real=True)):
        g, h = random_group_element(m, 1), random_group_element(m, 2)
        x = sample_refinement(P.top(m), 2, 3)
        assert g.compose(h).act(x) == g.act(h.act(x))
        assert g.inverse().act(g.act(x)) == x


def test_near_identity_radius_zero():
    g = element_near_identity(quantum(3), 0.0, 1)
    assert linalg.max_abs(g.matrix - np.eye(3)) < 1e-15


def test_near_identity_shrinks():
    dists = [linalg.max_abs(element_near_identity(quantum(3), r, 1).matrix - np.eye(3)) for r in (1, 0.1, 0.01)]
    assert dists[0] > dists[1] > dists[2]
    assert dists[2] < 0.011


@pytest.mark.parametrize("r", [0.05, 0.4, 1.3])
def test_near_identity_metric_norm(r):
    assert element_near_identity(quantum(3), r, 4).distance_from_identity() == pytest.approx(r, rel=1e-9)


@pytest.mark.parametrize("t", [0.0, 0.3, 1.0, 2.0])
def test_qubit_geodesic_survival(t):
    # Unit-norm generator rotating |0> towards |1>: survival cos^2(c t) with c = 1/sqrt(2).
    k = np.array([[0, -1], [1, 0]], dtype=complex) / np.sqrt(2)
    g = exp_generator(Q2, t * k)
    np.testing.assert_allclose(g.matrix, expm(t * k), atol=1e-14)
    e = P.basis_ray(Q2, 0)
    assert probability(State.pure(g.act(e)), e) == pytest.approx(np.cos(METRIC_C * t) ** 2, abs=1e-12)


# -- transporters and stabilizers ----------------------------------------------------------


def test_transporter_identity_case():
    m = sample_decomposition(P.top(quantum(3)), (1, 2), 5)
    g = find_transporter(m, m)
    assert all(g.act(x) == x for x in m.parts)


def test_transporter_classical():
    m = classical(3)
    s = lambda *i: P.from_indices(m, i)
    m1 = Decomposition(P.top(m), (s(0), s(1, 2)))
    m2 = Decomposition(P.top(m), (s(2), s(0, 1)))
    g = find_transporter(m1, m2)
    assert g.act(s(0)) == s(2) and g.act(s(1, 2)) == s(0, 1)


def test_transporter_qubit_bases():
    m1 = Decomposition(P.top(Q2), (P.basis_ray(Q2, 0), P.basis_ray(Q2, 1)))
    m2 = Decomposition(P.top(Q2), (P.ray(Q2, ket(1, 1)), P.ray(Q2, ket(1, -1))))
    g = find_transporter(m1, m2)
    for x, y in zip(m1.parts, m2.parts):
        assert linalg.max_abs(g.act(x).projector - y.projector) < 1e-9


def test_transporter_granularity_mismatch():
    m = quantum(3)
    with pytest.raises(GranularityMismatch):
        find_transporter(sample_decomposition(P.top(m), (1, 2), 0), sample_decomposition(P.top(m), (2, 1), 0))


@given(kind=st.sampled_from(CONSTRUCTIBLE), seed=st.integers(0, 2**32 - 1), data=st.data())
def test_transporter_property(kind, seed, data):
    d = data.draw(st.integers(1, 5))
    kvec = data.draw(st.sampled_from(list(compositions(d))))
    m = Model(kind, d)
    rng = np.random.default_rng(seed)
    m1 = sample_decomposition(P.top(m), kvec, rng)
    m2 = sample_decomposition(P.top(m), kvec, rng)
    g = find_transporter(m1, m2)
    if kind is not Kind.CLASSICAL:
        assert linalg.is_unitary(g.matrix)
    assert all(g.act(x) == y for x, y in zip(m1.parts, m2.parts))


def test_stabilizer_examples():
    m = quantum(4)
    a = partial_sum(P.basis_ray(m, 0), P.basis_ray(m, 1))
    rng = np.random.default_rng(6)
    rest = relative_complement(P.top(m), a)
    probes = [sample_refinement(rest, 1, rng) for _ in range(5)]
    assert stabilizer_check(GroupElement.identity(m), a, probes)
    block = np.zeros((4, 4), dtype=complex)
    block[:2, :2] = linalg.haar_unitary(rng, 2)
    block[2:, 2:] = np.eye(2)
    assert stabilizer_check(GroupElement(m, block), a, probes)
    assert not stabilizer_check(random_group_element(m, rng), a, probes)


@given(kind=st.sampled_from(CONSTRUCTIBLE), d=st.integers(2, 5), seed=st.integers(0, 2**32 - 1))
def test_action_preserves_structure(kind, d, seed):
    m = Model(kind, d)
    rng = np.random.default_rng(seed)
    g = random_group_element(m, rng)
    x, y = sample_decomposition(P.top(m), (1, d - 1), rng).parts
    gx, gy = g.act(x), g.act(y)
    assert are_orthogonal(gx, gy)
    assert gx.granularity == 1 and gy.granularity == d - 1
    assert g.act(partial_sum(x, y)) == partial_sum(gx, gy)


# -- dimension formulas ------------------------------------------------------------------------


def test_dim_group_examples():
    assert dim_group(Kind.QUANTUM_COMPLEX, 4) == 16
    assert dim_group(Kind.QUATERNIONIC, 2) == 10
    assert dim_group(Kind.QUATERNIONIC, 4) == 36
    assert all(dim_group(k, 0) == 0 for k in ALL_KINDS)
    assert dim_group_variant("U(d)", 4) == 16
    assert dim_group_variant("O(d)xO(d)", 4) == 12


def test_mu_prime():
    assert [mu_prime_symmetric(d) for d in (1, 2, 6)] == [0, 1, 5]


def test_dim_most_accurate_examples():
    assert dim_most_accurate(Kind.QUANTUM_COMPLEX, 2) == 2
    assert all(dim_most_accurate(k, 1) == 0 for k in ALL_KINDS)
    assert dim_most_accurate(Kind.CLASSICAL, 10) == 0
    assert dim_most_accurate(Kind.QUANTUM_REAL, 3) == 2


def test_dim_decomposition_examples():
    assert dim_decomposition_manifold(Kind.QUANTUM_COMPLEX, (1, 1)) == 2
    assert dim_decomposition_manifold(Kind.QUANTUM_COMPLEX, (1, 1, 2)) == 10
    assert dim_decomposition_manifold(Kind.CLASSICAL, (2, 3, 1)) == 0
    assert dim_decomposition_manifold(Kind.QUANTUM_REAL, (1, 1, 2)) == 5


def test_state_parameter_examples():
    assert state_parameter_count(Kind.QUANTUM_COMPLEX, 4) == 16
    assert state_parameter_count(Kind.QUANTUM_REAL, 4) == 10
    assert state_parameter_count(Kind.QUATERNIONIC, 2) == 6
    assert all(state_parameter_count(k, 0) == 0 and state_parameter_count(k, 1) == 1 for k in ALL_KINDS)


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_dimension_table_consistent(kind):
    assert dimension_table(kind, 8).inconsistencies() == []


def test_homogeneous_space_matches_numeric_rank():
    # Generators modulo the block-diagonal stabilizer: an anti-Hermitian matrix has
    # one real parameter per off-block position (complex), half that when real.
    for kvec in [(1, 1), (1, 2), (2, 2), (1, 1, 2)]:
        d = sum(kvec)
        blocks = np.zeros((d, d), dtype=bool)
        start = 0
        for k in kvec:
            blocks[start:start + k, start:start + k] = True
            start += k
        off = int((~blocks).sum())
        assert dim_decomposition_manifold(Kind.QUANTUM_COMPLEX, kvec) == off
        assert dim_decomposition_manifold(Kind.QUANTUM_REAL, kvec) == off // 2


def test_bloch_sphere_tangent_dimension():
    # Numerical rank of the orbit map at |0><0| for U(2): two real directions.
    e = P.basis_ray(Q2, 0).projector
    basis = []
    for i in range(2):
        for j in range(2):
            for c in (1, 1j):
                k = np.zeros((2, 2), dtype=complex)
                k[i, j] += c
                k[j, i] -= np.conj(c)
                if np.abs(k).max() == 0:
                    continue
                basis.append((k @ e - e @ k).ravel())
    mat = np.array(basis)
    rank = np.linalg.matrix_rank(np.concatenate([mat.real, mat.imag], axis=1), tol=1e-10)
    assert rank == dim_most_accurate(Kind.QUANTUM_COMPLEX, 2)
