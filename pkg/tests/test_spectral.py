import numpy as np
import pytest
from scipy.linalg import expm

from trotterlab.hamiltonian import build_ppp, shifted_potential
from trotterlab.lattice import build_lattice, bond_orientation_classes
from trotterlab.pauli import jordan_wigner
from trotterlab.sector import SectorOperator, enumerate_sector, lowest_eigenpairs
from trotterlab.spectral import (
    TrotterScheme,
    add_constant,
    compute_time_series,
    default_filter,
    effective_hamiltonian_dense,
    error_constants,
    extract_energy,
    filter_objective,
    gap_sweep,
    hopping_pauli_sum,
    pair_eigenstates,
    scheme_unitary_dense,
    sector_trace_difference,
    so_scheme,
    tile_scheme,
)


@pytest.fixture(scope="module")
def benzene():
    lat = build_lattice("acene", 1)
    fh = build_ppp(lat)
    kin, pot = jordan_wigner(fh)
    basis = enumerate_sector(6, 6, 0)
    return lat, kin, pot, basis


def _synthetic_series(energies, weights, t, n_steps):
    ks = np.arange(n_steps + 1)
    vals = np.zeros(n_steps + 1, dtype=complex)
    for e, w in zip(energies, weights):
        vals += w * np.exp(-1j * e * t * ks)
    from trotterlab.spectral import TimeSeries

    return TimeSeries(vals, t)


def test_scheme_validation(benzene):
    _, kin, pot, basis = benzene
    with pytest.raises(ValueError):
        TrotterScheme("SO", 0.1, ((pot, 0.05), (kin, 0.1)))  # not palindromic
    with pytest.raises(ValueError):
        TrotterScheme("SO", 0.1, ((pot, 0.04), (kin, 0.1), (pot, 0.04)))
    with pytest.raises(ValueError):
        TrotterScheme("bad", 0.1, ((kin, 0.1),))
    s = so_scheme(kin, pot, 0.1)
    assert s.kind == "SO" and len(s.factors) == 3


def test_hopping_pauli_sum_matches_jordan_wigner(benzene):
    lat, kin, _, basis = benzene
    rebuilt = hopping_pauli_sum(lat.n_sites, lat.bonds)
    a = SectorOperator(kin, basis).to_dense()
    b = SectorOperator(rebuilt, basis).to_dense()
    assert np.abs(a - b).max() < 1e-12


def test_scheme_unitary_dense_oracle(benzene):
    _, kin, pot, basis = benzene
    t = 0.07
    scheme = so_scheme(kin, pot, t)
    got = scheme_unitary_dense(scheme, basis)
    v_mat = SectorOperator(pot, basis).to_dense()
    t_mat = SectorOperator(kin, basis).to_dense()
    want = expm(-1j * t / 2 * v_mat) @ expm(-1j * t * t_mat) @ expm(-1j * t / 2 * v_mat)
    assert np.abs(got - want).max() < 1e-11


def test_effective_hamiltonian_second_order(benzene):
    _, kin, pot, basis = benzene
    h_mat = SectorOperator(kin + pot, basis).to_dense()
    errs = []
    for t in (0.01, 0.02):
        h_eff = effective_hamiltonian_dense(so_scheme(kin, pot, t), basis)
        errs.append(np.linalg.norm(h_eff - h_mat, 2))
    assert errs[1] / errs[0] == pytest.approx(4.0, rel=0.1)


def test_tile_scheme_unitary_oracle(benzene):
    lat, kin, pot, basis = benzene
    classes = sorted(bond_orientation_classes(lat).values(), key=len)
    sums = [hopping_pauli_sum(lat.n_sites, c) for c in classes]
    t = 0.05
    scheme = tile_scheme(sums, pot, t)
    got = scheme_unitary_dense(scheme, basis)
    mats = [SectorOperator(op, basis).to_dense() for op in sums]
    v_mat = SectorOperator(pot, basis).to_dense()
    want = expm(-1j * t / 2 * v_mat)
    for m in mats[:-1]:
        want = want @ expm(-1j * t / 2 * m)
    want = want @ expm(-1j * t * mats[-1])
    for m in mats[-2::-1]:
        want = want @ expm(-1j * t / 2 * m)
    want = want @ expm(-1j * t / 2 * v_mat)
    assert np.abs(got - want).max() < 1e-11
    # sections still sum to the full kinetic operator
    full = SectorOperator(kin, basis).to_dense()
    assert np.abs(sum(mats) - full).max() < 1e-12


def test_pair_eigenstates_recovers_permutation():
    rng = np.random.default_rng(0)
    dim = 12
    q, _ = np.linalg.qr(rng.normal(size=(dim, dim)))
    perm = rng.permutation(dim)
    mixed = q[:, perm] + 0.05 * rng.normal(size=(dim, dim))
    mixed, _ = np.linalg.qr(mixed)
    matches = pair_eigenstates(q, mixed)
    for m, n, ov, flagged in matches:
        assert perm[n] == m
        assert ov > 0.9
        assert not flagged


def test_extract_energy_single_pole():
    t = 0.05
    e = -3.7
    series = _synthetic_series([e], [1.0], t, 200)
    filt = default_filter()
    got = extract_energy(series, filt, prior_energy=e)
    assert abs(got - e) < 1e-7


def test_extract_energy_dominant_of_two():
    t = 0.05
    e1, e2 = 6.0, -40.0
    series = _synthetic_series([e1, e2], [0.85, 0.15], t, 200)
    got = extract_energy(series, default_filter(), prior_energy=e1)
    assert abs(got - e1) < 1e-6


def test_extract_energy_branch_selection():
    t = 0.05
    e = 2.0
    period = 2 * np.pi / t
    series = _synthetic_series([e], [1.0], t, 200)
    filt = default_filter()
    assert abs(extract_energy(series, filt, e) - e) < 1e-7
    wrapped = extract_energy(series, filt, e + period)
    assert abs(wrapped - (e + period)) < 1e-7


def test_extract_energy_flat_series_rejected():
    from trotterlab.spectral import TimeSeries

    t = 0.05
    vals = np.zeros(121, dtype=complex)
    vals[0] = 1.0
    series = TimeSeries(vals, t)
    grid, values = filter_objective(series, default_filter())
    assert values.max() - values.min() < 1e-9
    with pytest.raises(ValueError):
        extract_energy(series, default_filter())


def test_time_series_matches_dense_effective(benzene):
    _, kin, pot, basis = benzene
    h = kin + pot
    vals, vecs = lowest_eigenpairs(h, basis, k=1, tol=1e-12)
    t = 0.05
    scheme = so_scheme(kin, pot, t)
    h_eff = effective_hamiltonian_dense(scheme, basis)
    eff_vals, eff_vecs = np.linalg.eigh(h_eff)
    m = int(np.argmax(np.abs(eff_vecs.conj().T @ vecs[:, 0]) ** 2))
    filt = default_filter()
    series = compute_time_series(scheme, basis, vecs[:, 0], filt.order)
    got = extract_energy(series, filt, vals[0])
    assert abs(got - eff_vals[m]) < 1e-6


def test_sector_trace_identity(benzene):
    _, kin, pot, basis = benzene
    h = kin + pot
    scheme = so_scheme(kin, pot, 0.05)
    diff = sector_trace_difference(h, scheme, basis)
    h_norm = np.abs(np.linalg.eigvalsh(SectorOperator(h, basis).to_dense())).max()
    assert abs(diff) < 1e-8 * h_norm


def test_energy_error_shift_invariant(benzene):
    lat, kin, pot, basis = benzene
    v_shifted, offset, _, _ = shifted_potential(lat)
    t = 0.05
    h_eff = effective_hamiltonian_dense(so_scheme(kin, pot, t), basis)
    h_eff_s = effective_hamiltonian_dense(
        so_scheme(kin, add_constant(v_shifted, offset), t), basis
    )
    a = np.linalg.eigvalsh(h_eff)
    b = np.linalg.eigvalsh(h_eff_s)
    shifts = b - a
    assert np.ptp(shifts) < 1e-9  # pure constant shift: error constants unchanged


def test_error_constants_records():
    rep = error_constants([1.0, 3.0], [1.01, 3.002], 0.1, pairs=[(1, 0)],
                          labels=["S0", "T1"])
    assert rep.states[0].signed_constant == pytest.approx(1.0)
    assert rep.states[1].constant == pytest.approx(0.2)
    pair = rep.pairs[0]
    assert pair.exact_gap == pytest.approx(2.0)
    assert pair.constant == pytest.approx(abs(2.0 - 1.992) / 0.01)


def test_gap_sweep_budget_flags(benzene):
    _, kin, pot, basis = benzene
    h = kin + pot
    vals, vecs = lowest_eigenpairs(h, basis, k=2, tol=1e-12)
    states = {
        "S0": (basis, vals[0], vecs[:, 0]),
        "T1": (basis, vals[1], vecs[:, 1]),
    }
    rows = gap_sweep(states, lambda t: so_scheme(kin, pot, t), [0.01],
                     pairs=[("T1", "S0")])
    row = rows[0]
    assert not row["failures"]
    gap = row["gaps"][("T1", "S0")]
    assert gap["within_budget"]
    assert abs(gap["effective"] - gap["exact"]) < 1e-4
