import numpy as np
import pytest

from trotterlab.hamiltonian import (
    PppParams,
    ShiftParams,
    apply_shift,
    build_ppp,
    choose_shift,
    shifted_potential,
)
from trotterlab.lattice import build_lattice
from trotterlab.pauli import dense_matrix, jordan_wigner

TERM_COUNTS = {
    ("acene", 3): (406, 290),
    ("acene", 7): (1830, 1554),
    ("rhombene", 3): (1830, 1522),
    ("rhombene", 5): (9870, 8994),
    ("triangulene", 3): (990, 778),
    ("triangulene", 5): (4278, 3778),
}


def test_default_params():
    p = PppParams()
    assert p.tau == 2.4 and p.u == 11.13
    assert np.isclose(p.ohno(1.4), 11.13 / np.sqrt(1 + 0.6117 * 1.96))
    assert np.isclose(p.ohno(1.4), 7.506, atol=5e-4)
    with pytest.raises(ValueError):
        PppParams(tau=-1.0)


def test_build_ppp_structure():
    lat = build_lattice("acene", 3)
    fh = build_ppp(lat)
    hops = list(fh.hops())
    assert len(hops) == 2 * len(lat.bonds)
    assert all(c == -2.4 for _, _, c in hops)
    assert len(list(fh.on_site_terms())) == 14
    pairs = list(fh.pair_terms())
    assert len(pairs) == 14 * 13 // 2
    for (i, j), v in pairs:
        r = lat.distances[i, j]
        assert np.isclose(v, fh.params.ohno(r), rtol=1e-12)


def test_benzene_hopping_count():
    fh = build_ppp(build_lattice("acene", 1))
    assert len(list(fh.hops())) == 12


@pytest.mark.parametrize("key", sorted(TERM_COUNTS))
def test_term_counts_all_molecules(key):
    family, n = key
    v_expect, vp_expect = TERM_COUNTS[key]
    lat = build_lattice(family, n)
    vp, _, _, v = shifted_potential(lat)
    assert v.term_count() == v_expect
    assert vp.term_count() == vp_expect


def test_benzene_shift_tie_break():
    # benzene has a 6/6 frequency tie between bonded and meta pairs; the
    # larger-coefficient (shorter-distance) class is removed
    lat = build_lattice("acene", 1)
    vp, _, shift, v = shifted_potential(lat)
    assert v.term_count() == 78
    assert vp.term_count() == 42
    p = PppParams()
    assert np.isclose(shift.c2, -p.ohno(1.4) / 2.0, rtol=1e-9)


def test_zero_shift_is_identity():
    lat = build_lattice("acene", 1)
    _, v = jordan_wigner(build_ppp(lat))
    out, offset = apply_shift(v, ShiftParams(0.0, 0.0), 6)
    assert offset == pytest.approx(complex(v.coefficient(0, 0)).real)
    body, _ = v.split_identity()
    assert (out - body).pruned(1e-10).max_abs_coeff() < 1e-10


def test_shift_never_adds_terms():
    for family, n in [("acene", 1), ("acene", 3), ("triangulene", 2)]:
        lat = build_lattice(family, n)
        vp, _, _, v = shifted_potential(lat)
        assert vp.term_count() <= v.term_count()


def test_shift_removes_all_single_z():
    lat = build_lattice("acene", 3)
    vp, _, _, _ = shifted_potential(lat)
    assert all(z.bit_count() != 1 for (x, z) in vp.terms)


def test_spectral_equivalence_fixed_filling():
    """V' differs from V by a constant on each fixed-particle-number block."""
    lat = build_lattice("acene", 1)
    vp, offset, _, v = shifted_potential(lat)
    dv = np.diag(dense_matrix(v)).real
    dvp = np.diag(dense_matrix(vp)).real + offset
    for n_elec in (5, 6, 7):
        sel = [b for b in range(1 << 12) if bin(b).count("1") == n_elec]
        diff = dvp[sel] - dv[sel]
        assert diff.max() - diff.min() < 1e-10
