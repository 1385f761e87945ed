"""PPP Hamiltonian construction and the symmetry-shifted potential.

The model is H = T + V with nearest-neighbor hopping

    T = -tau sum_{<ij>,sigma} (a†_{i sigma} a_{j sigma} + h.c.)

and a density-density potential screened by the Ohno formula

    V = u sum_i n_{i up} n_{i down}
        + sum_{i<j} v_ij (n_i - 1)(n_j - 1),   v_ij = u / sqrt(1 + alpha r_ij²).

The shifted potential V' = V + c1 N̂ + c2 N̂² has the same fixed-filling
spectra up to a constant but far fewer Pauli terms: a suitable c2 removes
the most frequent pairwise-coefficient class entirely, after which all
single-Z coefficients coincide and c1 removes them too.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .lattice import Lattice
from .pauli import PauliSum, number_operator

COEFF_BIN_REL = 1e-9


@dataclass(frozen=True)
class PppParams:
    """Standard PPP parameters (energies in eV, alpha in 1/Å²)."""

    tau: float = 2.4
    u: float = 11.13
    alpha: float = 0.6117
    bond_length: float = 1.4

    def __post_init__(self):
        for name in ("tau", "u", "alpha", "bond_length"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    def ohno(self, r: float) -> float:
        return self.u / np.sqrt(1.0 + self.alpha * r * r)


@dataclass(frozen=True)
class ShiftParams:
    c1: float
    c2: float


class FermionHamiltonian:
    """Second-quantized PPP Hamiltonian on a lattice.

    Stores hopping coefficients per bond (spin-independent), on-site u per
    site, and the full pairwise Ohno matrix.
    """

    def __init__(self, lattice: Lattice, params: PppParams):
        self.lattice = lattice
        self.params = params
        self.site_count = lattice.n_sites
        self.bonds = list(lattice.bonds)
        self.hop_coeff = -params.tau
        self.on_site = np.full(self.site_count, params.u)
        d = lattice.distances
        self.v = params.ohno(d)
        np.fill_diagonal(self.v, 0.0)

    def hops(self):
        """Yield ((site_i, site_j), spin, coefficient) for every hopping term."""
        for i, j in self.bonds:
            for spin in (0, 1):
                yield (i, j), spin, self.hop_coeff

    def on_site_terms(self):
        for i in range(self.site_count):
            yield i, float(self.on_site[i])

    def pair_terms(self):
        for i in range(self.site_count):
            for j in range(i + 1, self.site_count):
                yield (i, j), float(self.v[i, j])


def build_ppp(lattice: Lattice, params: PppParams | None = None) -> FermionHamiltonian:
    return FermionHamiltonian(lattice, params or PppParams())


def _bin_coefficients(values: list[float]) -> list[tuple[float, int]]:
    """Group nearly-equal coefficients; returns (representative, count) pairs."""
    rounded = Counter()
    reps: dict[float, float] = {}
    scale = max((abs(v) for v in values), default=1.0)
    for v in values:
        for key in reps:
            if abs(v - key) <= COEFF_BIN_REL * scale:
                rounded[key] += 1
                break
        else:
            reps[v] = v
            rounded[v] += 1
    return list(rounded.items())


def choose_shift(jw_potential: PauliSum) -> ShiftParams:
    """Pick (c1, c2) that zero the modal ZZ class and all single-Z terms.

    The modal class is the most numerous set of equal-coefficient two-qubit
    ZZ terms; ties break toward the larger |coefficient|.  N̂² contributes
    c2/2 to every qubit-pair ZZ coefficient, so c2 = -2 · (modal ZZ
    coefficient).  With that fixed, every single-Z coefficient of
    V + c2 N̂² is the same value h, and c1 = 2h cancels them (N̂
    contributes -c1/2 per qubit).
    """
    nq = jw_potential.n_qubits
    zz_coeffs = [
        complex(c).real
        for (x, z), c in jw_potential.terms.items()
        if x == 0 and z.bit_count() == 2
    ]
    if not zz_coeffs:
        return ShiftParams(0.0, 0.0)
    classes = _bin_coefficients(zz_coeffs)
    w_freq, _ = max(classes, key=lambda kv: (kv[1], abs(kv[0])))
    c2 = -2.0 * w_freq

    n_elec_half = nq // 2  # N̂² single-Z coefficient is -c2 · N at half scale
    single_z = [
        complex(c).real
        for (x, z), c in jw_potential.terms.items()
        if x == 0 and z.bit_count() == 1
    ]
    h_vals = [v - c2 * n_elec_half / 1.0 for v in single_z]
    # all single-Z coefficients of V + c2 N̂² must coincide for the shift
    # to remove the whole class; assert homogeneity
    if h_vals:
        if max(h_vals) - min(h_vals) > COEFF_BIN_REL * max(1.0, max(abs(v) for v in h_vals)):
            raise ValueError("single-Z coefficients not homogeneous; shift invalid")
        h_freq = h_vals[0]
    else:
        h_freq = 0.0
    c1 = 2.0 * h_freq
    return ShiftParams(c1=c1, c2=c2)


def apply_shift(jw_potential: PauliSum, shift: ShiftParams, n_sites: int) -> tuple[PauliSum, float]:
    """Return (V' without identity, scalar offset) for V' = V + c1 N̂ + c2 N̂²."""
    nq = 2 * n_sites
    if jw_potential.n_qubits != nq:
        raise ValueError("qubit count mismatch")
    n_hat = number_operator(n_sites)
    shifted = jw_potential + shift.c1 * n_hat + shift.c2 * (n_hat @ n_hat)
    shifted = shifted.require_real("shifted potential").pruned()
    body, offset = shifted.split_identity()
    return body, float(complex(offset).real)


def shifted_potential(lattice: Lattice, params: PppParams | None = None):
    """Convenience: build V, choose the shift, and return (V', offset, shift, V)."""
    from .pauli import jordan_wigner

    fh = build_ppp(lattice, params)
    _, v_jw = jordan_wigner(fh)
    shift = choose_shift(v_jw)
    v_shifted, offset = apply_shift(v_jw, shift, lattice.n_sites)
    return v_shifted, offset, shift, v_jw
