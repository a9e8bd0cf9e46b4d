import itertools

import numpy as np
import pytest
import scipy.linalg
from numpy.testing import assert_allclose, assert_array_equal

from integrable import gaudin as gd
from integrable.linalg import commutator, embed_at_site


def spin_matrices(lam):
    """Textbook spin-lam/2 matrices (S+, S-, Sz) in the |m> basis, m descending."""
    s = lam / 2
    m = s - np.arange(lam + 1)
    sp = np.zeros((lam + 1, lam + 1))
    for k in range(1, lam + 1):
        sp[k - 1, k] = np.sqrt(s * (s + 1) - m[k] * (m[k] + 1))
    return sp, sp.T, np.diag(m)


def reference_S(z, lam, u):
    """S(u) = 1/2 sum_{i,j} Omega_ij / ((u - z_i)(u - z_j)) with Omega_ij = 2 S_i . S_j."""
    dims = [l + 1 for l in lam]
    ops = []
    for i, l in enumerate(lam):
        sp, sm, sz = spin_matrices(l)
        ops.append([embed_at_site(x, i, dims) for x in (sp, sm, sz)])
    S = 0
    for i, j in itertools.product(range(len(z)), repeat=2):
        pi, mi, zi = ops[i]
        pj, mj, zj = ops[j]
        # 2 S_i . S_j = S+_i S-_j + S-_i S+_j + 2 Sz_i Sz_j
        omega = pi @ mj + mi @ pj + 2 * zi @ zj
        S = S + 0.5 * omega / ((u - z[i]) * (u - z[j]))
    return S


MID = gd.GaudinSites([0, 1], [1, 1])


# -- sites ---------------------------------------------------------------------

def test_sites_validation():
    with pytest.raises(gd.DuplicatePointError, match="0 and 2"):
        gd.GaudinSites([0, 1, 0], [1, 1, 1])
    with pytest.raises(ValueError):
        gd.GaudinSites([0, 1], [1])
    with pytest.raises(ValueError):
        gd.GaudinSites([0], [-1])
    s = gd.GaudinSites([0, 1, 2], [1, 2, 0])
    assert s.dims == [2, 3, 1] and s.dim == 6 and s.is_real()


# -- classical -------------------------------------------------------------------

def test_classical_lax_examples():
    s = gd.GaudinSites([0], [1])
    pt = gd.ClassicalPoint([np.diag([1.0, -1.0])])
    assert_allclose(gd.classical_lax(s, pt, 2.0), np.diag([0.5, -0.5]))
    s3 = gd.GaudinSites([0, 1, 2j], [1, 1, 1])
    pt3 = gd.ClassicalPoint.random(3, np.random.default_rng(1))
    L = gd.classical_lax(s3, pt3, 1e8)
    assert np.linalg.norm(L) <= 1e-7 * max(np.linalg.norm(a) for a in pt3.residues)
    eps = 1e-7
    assert_allclose(eps * gd.classical_lax(s3, pt3, 1 + eps), pt3.residues[1], atol=1e-5)
    with pytest.raises(gd.PoleCollisionError):
        gd.classical_lax(s3, pt3, 1.0)


def test_classical_point_validation():
    with pytest.raises(ValueError):
        gd.ClassicalPoint([np.eye(2)])


def test_lie_poisson_tensor_is_a_lie_bracket():
    # the bracket {A_ab, A_cd} is linear in A, so Jacobi reduces to structure constants
    basis = [np.eye(2)[:, [i]] @ np.eye(2)[[j], :] for i in range(2) for j in range(2)]
    C = np.array([gd.lie_poisson_tensor(e) for e in basis])  # C[k, a, b, c, d]
    # {x_p, x_q} = sum_k C[k,p,q] x_k with p = (a,b)
    C = C.reshape(4, 4, 4)
    jac = np.einsum("kpq,lkr->pqrl", C, C)
    jac = jac + jac.transpose(1, 2, 0, 3) + jac.transpose(2, 0, 1, 3)
    assert_array_equal(jac, 0)
    assert_array_equal(C, -C.transpose(0, 2, 1))


def test_pbr_examples(rng):
    s = gd.GaudinSites([0, 1, -1j], [1, 1, 1])
    zero = gd.ClassicalPoint([np.zeros((2, 2))] * 3)
    assert gd.classical_pbr_residual(s, zero, 0.5, 2.0) == 0
    s1 = gd.GaudinSites([0.3], [1])
    assert gd.classical_pbr_residual(s1, gd.ClassicalPoint.random(1, rng), 1.1, -0.7j) <= 1e-13
    for _ in range(20):
        pt = gd.ClassicalPoint.random(3, rng)
        u, v = rng.normal(size=2) + 1j * rng.normal(size=2)
        assert gd.classical_pbr_residual(s, pt, u, v) <= 1e-12


def test_pbr_against_finite_differences(rng):
    s = gd.GaudinSites([0, 1], [1, 1])
    pt = gd.ClassicalPoint.random(2, rng)
    u, v = 0.3 + 0.2j, 2.0
    entry = lambda x, a, b: (lambda res: sum(r / (x - z) for r, z in zip(res, s.z))[a, b])
    lhs = np.zeros((4, 4), dtype=complex)
    for a, b, c, d in itertools.product(range(2), repeat=4):
        lhs[2 * a + c, 2 * b + d] = _kirillov_bracket_fd(s, pt, entry(u, a, b), entry(v, c, d))
    P = np.eye(4)[[0, 2, 1, 3]]
    X = np.kron(gd.classical_lax(s, pt, u), np.eye(2)) + np.kron(np.eye(2), gd.classical_lax(s, pt, v))
    r = P / (u - v)
    assert np.max(np.abs(lhs - (r @ X - X @ r))) <= 1e-7
    assert np.max(np.abs(lhs + (r @ X - X @ r))) > 1e-2
    assert gd.classical_pbr_residual(s, pt, u, v) <= 1e-12


def test_invariants(rng):
    s = gd.GaudinSites([0, 1.5], [1, 1])
    pt = gd.ClassicalPoint.random(2, rng)
    u = 0.4 - 0.9j
    det, s1, s2 = gd.classical_invariants(s, pt, u)
    L = gd.classical_lax(s, pt, u)
    assert abs(s1) <= 1e-13 and s2 == 1
    assert_allclose(det, -0.5 * np.trace(L @ L))
    s1site = gd.GaudinSites([0.2], [1])
    p1 = gd.ClassicalPoint.random(1, rng)
    assert_allclose(gd.classical_invariants(s1site, p1, u)[0], np.linalg.det(p1.residues[0]) / (u - 0.2) ** 2)


def _kirillov_bracket_fd(sites, pt, f, g, h=1e-6):
    """{f, g} = sum_i sum_{abcd} df/dA_ab {A_ab, A_cd} dg/dA_cd, gradients by central differences."""
    total = 0
    for i, a in enumerate(pt.residues):
        grads = []
        for fn in (f, g):
            gr = np.zeros((2, 2), dtype=complex)
            for p, q in itertools.product(range(2), repeat=2):
                e = np.zeros((2, 2))
                e[p, q] = h
                plus = list(pt.residues)
                minus = list(pt.residues)
                plus[i] = a + e
                minus[i] = a - e
                gr[p, q] = (fn(plus) - fn(minus)) / (2 * h)
            grads.append(gr)
        total += np.einsum("ab,abcd,cd->", grads[0], gd.lie_poisson_tensor(a), grads[1])
    return total


def _H(sites, u):
    # evaluation without the traceless check so the gradient can leave the slice
    return lambda res: 0.5 * np.trace(sum(a / (u - z) for a, z in zip(res, sites.z)) @ sum(a / (u - z) for a, z in zip(res, sites.z)))


def test_involution_against_finite_differences(rng):
    s = gd.GaudinSites([0, 1, 2.5], [1, 1, 1])
    pt = gd.ClassicalPoint.random(3, rng)
    u, v = 0.5 + 0.5j, -1.0
    fd = _kirillov_bracket_fd(s, pt, _H(s, u), _H(s, v))
    assert abs(fd) <= 1e-7
    assert gd.classical_involution_residual(s, pt, u, v) <= 1e-12
    # a non-commuting pair under the same bracket gives an O(1) value
    a01 = lambda res: res[0][0, 1]
    a10 = lambda res: res[0][1, 0]
    assert abs(_kirillov_bracket_fd(s, pt, a01, a10)) > 1e-3


def test_involution_examples(rng):
    s = gd.GaudinSites([0, 1], [1, 1])
    single = gd.ClassicalPoint([gd.ClassicalPoint.random(1, rng).residues[0], np.zeros((2, 2))])
    assert gd.classical_involution_residual(s, single, 0.5j, 3.0) <= 1e-14
    diag = gd.ClassicalPoint([np.diag([1.0, -1.0]), np.diag([-2.0, 2.0])])
    assert gd.classical_involution_residual(s, diag, 0.5j, 3.0) <= 1e-14
    pt = gd.ClassicalPoint.random(2, rng)
    assert gd.classical_involution_residual(s, pt, 10.0, -10.0) <= 1e-13


# -- quantum ---------------------------------------------------------------------

def test_quantum_lax_single_site():
    s = gd.GaudinSites([0.5], [1])
    P = np.eye(4)[[0, 2, 1, 3]]
    assert_allclose(gd.quantum_lax(s, 2.5), (P - 0.5 * np.eye(4)) / 2.0)
    assert np.linalg.norm(gd.quantum_lax(s, 1e9)) <= 1e-8


@pytest.mark.parametrize("lam", [0, 1, 2, 3, 4])
def test_generating_single_site(lam):
    s = gd.GaudinSites([0.3], [lam])
    u = 1.7
    assert_allclose(gd.gaudin_generating(s, u), lam * (lam + 2) / 4 / (u - 0.3) ** 2 * np.eye(lam + 1), atol=1e-14)


@pytest.mark.parametrize("z,lam", [((0, 1), (1, 1)), ((0, 1, 2.5), (1, 2, 1)), ((-1, 0.3, 1, 2), (2, 1, 2, 1))])
def test_generating_against_spin_reference(z, lam):
    s = gd.GaudinSites(z, lam)
    for u in (-0.4, 1.3 + 0.2j, 5.0):
        assert_allclose(gd.gaudin_generating(s, u, hermitian=True), reference_S(z, lam, u), atol=1e-12)


def test_generating_hermitian_for_real_data():
    s = gd.GaudinSites([0, 1, 2.5], [1, 2, 1])
    S = gd.gaudin_generating(s, 0.7, hermitian=True)
    assert np.linalg.norm(S - S.conj().T) <= 1e-12


def test_hamiltonians_examples():
    H = gd.gaudin_hamiltonians(MID)
    P = np.eye(4)[[0, 2, 1, 3]]
    assert_allclose(H[0], -(P - 0.5 * np.eye(4)))
    s = gd.GaudinSites([0.1, -0.7, 1.9], [1, 1, 2])
    H = gd.gaudin_hamiltonians(s)
    assert np.linalg.norm(sum(H)) <= 1e-12
    for i, j in itertools.combinations(range(3), 2):
        assert np.linalg.norm(commutator(H[i], H[j])) <= 1e-12


def test_hamiltonians_are_residues():
    s = gd.GaudinSites([0.1, -0.7, 1.9], [1, 1, 2])
    H = gd.gaudin_hamiltonians(s)
    eps = 1e-5
    # S(z_i + eps) = c_i / eps^2 + H_i / eps + O(1)
    for i, zi in enumerate(s.z):
        c = s.lam[i] * (s.lam[i] + 2) / 4
        approx = (gd.gaudin_generating(s, zi + eps) - c / eps**2 * np.eye(s.dim)) * eps
        approx2 = (gd.gaudin_generating(s, zi - eps) - c / eps**2 * np.eye(s.dim)) * -eps
        assert_allclose(0.5 * (approx + approx2), H[i], atol=1e-6)


def test_commutativity():
    assert gd.commutativity_residual(gd.GaudinSites([0], [2]), 1.0, 2.0) == 0
    rng = np.random.default_rng(5)
    s = gd.GaudinSites(rng.normal(size=3), [1, 1, 1])
    for _ in range(20):
        u, v = rng.normal(size=2) + 1j * rng.normal(size=2)
        assert gd.commutativity_residual(s, u, v) <= 1e-10


def test_comm_identity():
    rng = np.random.default_rng(6)
    for lam in [(1, 1), (2, 1, 2), (1, 1, 1)]:
        s = gd.GaudinSites(rng.normal(size=len(lam)) + 1j * rng.normal(size=len(lam)), lam)
        for _ in range(10):
            u, v = rng.normal(size=2) + 1j * rng.normal(size=2)
            assert gd.comm_identity_residual(s, u, v) <= 1e-12


def test_comm_identity_other_sign_fails():
    # the same identity with r(u, v) in place of r(v, u) is violated
    from integrable.gaudin.quantum import _aux_couplings
    from integrable.linalg import embed_two_sites
    from integrable.rmatrix import tensor_casimir

    s = gd.GaudinSites([0, 1], [1, 1])
    u, v = 0.4 + 0.3j, 2.1
    ops = _aux_couplings(s.lam, 2, False)
    L1 = sum(op / (u - z) for op, z in zip(ops[0], s.z))
    L2 = sum(op / (v - z) for op, z in zip(ops[1], s.z))
    r = embed_two_sites(tensor_casimir(2) / (u - v), 0, 1, [2, 2, s.dim])
    assert np.linalg.norm(commutator(L1, L2) - commutator(r, L1 + L2)) > 0.1
    assert gd.comm_identity_residual(s, u, v) <= 1e-12


def test_vacuum_and_creation():
    s = gd.GaudinSites([0, 1, 2.5], [1, 2, 1])
    vac = gd.vacuum(s)
    for i in range(3):
        assert not np.any(gd.site_operator(s, "E", i) @ vac)
        assert_allclose(gd.site_operator(s, "H", i) @ vac, s.lam[i] * vac)
    _, s0 = gd.chi_eigenvalue(s, [], 0.7)
    assert np.linalg.norm(gd.gaudin_generating(s, 0.7) @ vac - s0 * vac) <= 1e-12
    F1, F2 = gd.creation_op(s, 0.3j), gd.creation_op(s, -1.2)
    assert not np.any(commutator(F1, F2))
    assert_allclose(commutator(gd.total_weight(s), F1), -2 * F1, atol=1e-14)
    s1 = gd.GaudinSites([0.5], [1])
    assert_allclose(gd.creation_op(s1, 2.5) @ gd.vacuum(s1), [0, 0.5])


def test_bethe_vector_examples():
    assert_array_equal(gd.bethe_vector(MID, []), gd.vacuum(MID))
    with pytest.warns(RuntimeWarning):
        v = gd.bethe_vector(gd.GaudinSites([0], [1]), [0.5, 1.5])
    assert not np.any(v)
    # basis order v0 (x) v0, v0 (x) v1, v1 (x) v0, v1 (x) v1
    assert_allclose(gd.bethe_vector(MID, [0.5]), [0, -2, 2, 0])


def test_weight_grading():
    s = gd.GaudinSites([0, 1, 3], [1, 2, 1])
    v = gd.bethe_vector(s, [0.2 + 0.1j, 1.7])
    assert_allclose(gd.total_weight(s) @ v, (4 - 4) * v, atol=1e-13)


def test_residual_examples():
    assert abs(gd.bethe_residuals(MID, [0.5])[0]) == 0
    assert_allclose(gd.bethe_residuals(MID, [0.3])[0], 1 / 0.3 - 1 / 0.7)
    s = gd.GaudinSites([0, 1, 3], [1, 2, 1])
    f = gd.bethe_residuals(s, [0.2, 0.9])
    g = gd.bethe_residuals(s, [0.9, 0.2])
    assert_allclose(f, g[::-1])
    with pytest.raises(gd.PoleCollisionError):
        gd.bethe_residuals(s, [0.2, 0.2])


def test_jacobian_against_finite_differences():
    s = gd.GaudinSites([0, 1, 3], [1, 2, 1])
    w = np.array([0.2 + 0.1j, 1.7 - 0.3j])
    J = gd.bethe_jacobian(s, w)
    h = 1e-6
    for k in range(2):
        e = np.zeros(2, dtype=complex)
        e[k] = h
        fd = (gd.bethe_residuals(s, w + e) - gd.bethe_residuals(s, w - e)) / (2 * h)
        assert_allclose(J[:, k], fd, atol=1e-6)


def test_bethe_solve_midpoint():
    conf = gd.bethe_solve(MID, 1, [0.4])
    assert abs(conf.roots[0] - 0.5) <= 1e-12
    assert conf.iterations <= 8
    assert conf.max_residual <= 1e-12


def test_bethe_solve_no_solution():
    with pytest.raises(gd.BetheSolveError):
        gd.bethe_solve(gd.GaudinSites([0], [2]), 1, [1.0])


def test_bethe_solve_random_real():
    rng = np.random.default_rng(11)
    s = gd.GaudinSites(np.sort(rng.normal(size=3) * 2), [1, 1, 1])
    z = sorted(x.real for x in s.z)
    conf = gd.bethe_solve(s, 1, [0.5 * (z[0] + z[1]) + 0.01])
    assert gd.eigen_residual(s, conf.roots, 0.3 + 2j) <= 1e-9


def test_bethe_solve_canonical_order():
    s = gd.GaudinSites([0, 1, 3], [1, 2, 1])
    a = gd.bethe_solve(s, 2, [0.2, 1.7])
    b = gd.bethe_solve(s, 2, [1.7, 0.2])
    assert_allclose(a.roots, b.roots, atol=1e-12)
    assert a.roots[0].real < a.roots[1].real


def test_chi_examples():
    chi, s = gd.chi_eigenvalue(MID, [0.5], 2.0)
    assert_allclose(chi, 1 / 6, atol=1e-15)
    assert_allclose(s, 3 / 16, atol=1e-15)
    for lam in (1, 2, 5):
        site = gd.GaudinSites([0.4], [lam])
        _, s0 = gd.chi_eigenvalue(site, [], 1.9)
        assert_allclose(s0, lam * (lam + 2) / 4 / 1.5**2)
    site = gd.GaudinSites([0, 1], [3, 1])
    eps = 1e-7
    assert_allclose(eps * gd.chi_eigenvalue(site, [0.5j], eps)[0], 3, atol=1e-5)
    assert_allclose(eps * gd.chi_eigenvalue(site, [0.5j], 0.5j + eps)[0], -2, atol=1e-5)


def test_eigen_residual_examples():
    rng = np.random.default_rng(2)
    s = gd.GaudinSites([0, 1, 2.5], [2, 1, 1])
    assert gd.eigen_residual(s, [], 0.3 + 1j) <= 1e-12
    for u in rng.normal(size=10) + 1j * rng.normal(size=10):
        assert gd.eigen_residual(MID, [0.5], u) <= 1e-12
    assert gd.eigen_residual(MID, [0.3], 2.0) > 0.1


def test_offshell_identity():
    rng = np.random.default_rng(4)
    s = gd.GaudinSites([0, 1, 2.5 + 0.5j], [1, 2, 1])
    for m in (1, 2, 3):
        for _ in range(5):
            w = rng.normal(size=m) + 1j * rng.normal(size=m)
            u = rng.normal() + 1j * rng.normal()
            assert gd.offshell_residual(s, w, u) <= 1e-10


def test_exact_spectrum_examples():
    assert_allclose(gd.exact_spectrum(gd.GaudinSites([0], [1]), 2.0), [3 / 16, 3 / 16])
    levels = gd.exact_spectrum(MID, 2.0)
    for roots in ([], [0.5]):
        _, s = gd.chi_eigenvalue(MID, roots, 2.0)
        assert np.min(np.abs(levels - s)) <= 1e-10
    s = gd.GaudinSites([0, 1, 2.5], [1, 2, 1])
    shifted = gd.GaudinSites([0.7, 1.7, 3.2], [1, 2, 1])
    assert_allclose(gd.exact_spectrum(s, -0.5), gd.exact_spectrum(shifted, 0.2), atol=1e-12)
    with pytest.raises(ValueError):
        gd.exact_spectrum(gd.GaudinSites([0, 1j], [1, 1]), 2.0)


def test_exact_spectrum_against_scipy():
    z, lam = (0, 1, 2.5), (1, 2, 1)
    u = -0.6
    ref = scipy.linalg.eigvalsh(reference_S(z, lam, u))
    assert_allclose(gd.exact_spectrum(gd.GaudinSites(z, lam), u), ref, atol=1e-12)


@pytest.mark.parametrize(
    "z,lam,init",
    [
        ((0, 1), (1, 1), [0.4]),
        ((0, 1), (2, 2), [0.4]),
        ((0, 1), (2, 2), [0.5 + 0.3j, 0.5 - 0.3j]),
        ((0, 1, 3), (1, 2, 1), [0.3]),
        ((0, 1, 3), (1, 2, 1), [1.8]),
        ((0, 1, 3), (1, 2, 1), [0.2, 1.7]),
        ((0, 1, 2.5), (1, 1, 1), [0.6]),
    ],
)
def test_bethe_eigenvalues_in_spectrum(z, lam, init):
    s = gd.GaudinSites(z, lam)
    conf = gd.bethe_solve(s, len(init), init)
    for u in (-0.7, 4.2):
        _, sv = gd.chi_eigenvalue(s, conf.roots, u)
        assert abs(sv.imag) <= 1e-10
        assert np.min(np.abs(gd.exact_spectrum(s, u) - sv.real)) <= 1e-8


# -- generalized Bethe equations -------------------------------------------------

def test_generalized_reduces_to_sl2():
    s = gd.GaudinSites([0, 1, 3], [1, 2, 1])
    w = [0.2 + 0.1j, 1.7]
    g = gd.generalized_bethe_residual(np.array(s.lam)[:, None], [[2]], [0, 0], s.z, w)
    assert_array_equal(g, gd.bethe_residuals(s, w))


def test_generalized_zero_weights():
    g = gd.generalized_bethe_residual([[0, 0], [0, 0]], [[2, -1], [-1, 2]], [1], [0, 1], [0.3])
    assert_array_equal(g, [0])


def test_generalized_sl3():
    # fundamental weight omega_1: (omega_1, alpha_1) = 1, (omega_1, alpha_2) = 0
    cartan = [[2, -1], [-1, 2]]
    g = gd.generalized_bethe_residual([[1, 0]], cartan, [0], [0.0], [0.25])
    assert_allclose(g, [4.0])
    with pytest.raises(gd.BetheSolveError):
        gd.generalized_bethe_solve([[1, 0]], cartan, [0], [0.0], [0.25])


def test_generalized_sl3_two_points():
    # two fundamental sites and one alpha_1 root: w = midpoint solves it
    cartan = [[2, -1], [-1, 2]]
    conf = gd.generalized_bethe_solve([[1, 0], [1, 0]], cartan, [0], [0.0, 2.0], [0.7])
    assert_allclose(conf.roots, [1.0], atol=1e-12)
    # mixed root types interact through the off-diagonal Cartan entry
    w = [0.4, 1.3]
    g = gd.generalized_bethe_residual([[1, 0], [0, 1]], cartan, [0, 1], [0.0, 2.0], w)
    assert_allclose(g[0], 1 / 0.4 + 1 / (0.4 - 1.3))
    assert_allclose(g[1], 1 / (1.3 - 2.0) + 1 / (1.3 - 0.4))
    with pytest.raises(ValueError):
        gd.generalized_bethe_residual([[1, 0]], [[2, -1], [0, 2]], [0], [0.0], [0.3])
