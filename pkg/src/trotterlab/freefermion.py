"""Kinetic-operator splitting errors via the single-particle reduction.

The hopping operator T conserves spin, so everything here works on the
n x n single-particle matrix A per spin species (T = sum_ij A_ij a_i^+ a_j
with zero diagonal).  The second-order sectioned propagator

    U_T = prod_s exp(-i T_s t/2) prod_rev exp(-i T_s t/2)

differs from exp(-i T t) by exp(-i T_delta t); the effective matrix
A_delta = (i/t) log(exp(iAt) prod exp(-iA_s t/2) prod_rev exp(-iA_s t/2))
gives the exact splitting error on the Fock space, because the map from
matrices to quadratic operators preserves commutators and therefore the
whole BCH series.  The worst-case constant W_T follows from the largest
fixed-filling eigenvalue sum, the average-case constant A_T from a sampled
normalized trace.
"""

import json
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm, schur

from .hamiltonian import PppParams
from .norms import ErrorConstant

DEFAULT_T_GRID = (0.01, 0.03, 0.05)
_BRANCH_MARGIN = 1e-6


@dataclass(frozen=True)
class KineticSections:
    """Partition of the hopping matrix into section matrices A_s.

    The last section sits at the center of the symmetric product and is
    applied once per Trotter step; every other section is applied twice.
    Gate counts are per application of one spin species.
    """

    n_modes: int
    matrices: tuple
    names: tuple
    rotations: tuple
    t_gates: tuple

    def __post_init__(self):
        if len(self.matrices) == 0:
            raise ValueError("at least one section is required")
        for name, mat in zip(self.names, self.matrices):
            if mat.shape != (self.n_modes, self.n_modes):
                raise ValueError("section %r has wrong shape" % name)
            if np.abs(np.diag(mat)).max(initial=0.0) > 0:
                raise ValueError("section %r has nonzero diagonal" % name)
            if np.abs(mat - mat.T).max() > 1e-12:
                raise ValueError("section %r is not symmetric" % name)

    @property
    def n_sections(self):
        return len(self.matrices)

    @property
    def full_matrix(self):
        return sum(self.matrices)

    def gate_counts(self):
        """(rotations, T gates) per Trotter step of U_T, both spins."""
        n_rot = 0
        n_t = 0
        for s in range(self.n_sections):
            mult = 1 if s == self.n_sections - 1 else 2
            n_rot += mult * self.rotations[s]
            n_t += mult * self.t_gates[s]
        return 2 * n_rot, 2 * n_t


@dataclass(frozen=True)
class EffectiveKineticMatrix:
    matrix: np.ndarray
    time_step: float
    eigenmodes: np.ndarray = field(init=False, default=None)

    def __post_init__(self):
        herm = np.abs(self.matrix - self.matrix.conj().T).max()
        if herm > 1e-12:
            raise ValueError("effective kinetic matrix is not Hermitian")
        modes = np.sort(np.linalg.eigvalsh(self.matrix))[::-1]
        if np.abs(modes + modes[::-1]).max() > 1e-10:
            raise ValueError("eigenmode spectrum is not symmetric about zero")
        object.__setattr__(self, "eigenmodes", modes)

    def filled_norm(self, filling):
        """Spectral norm of T_delta at fixed per-spin fillings.

        filling is (n_up, n_down); hopping conserves spin, so the norm is
        the sum over spin species of the largest-filling eigenmode sums.
        """
        total = 0.0
        for n_occ in filling:
            if not 0 <= n_occ <= self.matrix.shape[0]:
                raise ValueError("filling out of range")
            total += float(self.eigenmodes[:n_occ].sum())
        return total


def default_filling(n_sites):
    """Per-spin electron counts at half filling (N electrons in N sites)."""
    n_up = (n_sites + 1) // 2
    return n_up, n_sites - n_up


def single_section(lattice, params=None):
    """The trivial S=1 sectioning: one section holding all of T."""
    params = params or PppParams()
    mat = np.zeros((lattice.n_sites, lattice.n_sites))
    for i, j in lattice.bonds:
        mat[i, j] = mat[j, i] = -params.tau
    n_bonds = len(lattice.bonds)
    return KineticSections(
        n_modes=lattice.n_sites,
        matrices=(mat,),
        names=("all",),
        rotations=(n_bonds,),
        t_gates=(2 * n_bonds,),
    )


def tiling_path(family, size_n):
    """Path to the shipped tiling file for a supported molecule."""
    from importlib.resources import files

    resource = files("trotterlab") / "tilings" / ("%s%d.json" % (family, size_n))
    if not resource.is_file():
        raise ValueError("no shipped tiling for %s-%d" % (family, size_n))
    return str(resource)


def load_tiling(path):
    with open(path) as fh:
        spec = json.load(fh)
    for key in ("family", "size_n", "sections"):
        if key not in spec:
            raise ValueError("tiling spec missing field %r" % key)
    return spec


def tile_sections(lattice, tiling_spec, params=None):
    """Build KineticSections from a tiling spec (dict or JSON path)."""
    if isinstance(tiling_spec, (str, bytes)) or hasattr(tiling_spec, "read"):
        tiling_spec = load_tiling(tiling_spec)
    params = params or PppParams()
    if tiling_spec["family"] != lattice.family or tiling_spec["size_n"] != lattice.size_n:
        raise ValueError(
            "tiling spec is for %s-%d, lattice is %s-%d"
            % (tiling_spec["family"], tiling_spec["size_n"], lattice.family, lattice.size_n)
        )
    bond_set = {tuple(sorted(b)) for b in lattice.bonds}
    seen = set()
    matrices, names, rotations, t_gates = [], [], [], []
    for section in tiling_spec["sections"]:
        mat = np.zeros((lattice.n_sites, lattice.n_sites))
        for raw in section["bonds"]:
            bond = tuple(sorted(raw))
            if bond not in bond_set:
                raise ValueError("tiling bond %s is not a lattice bond" % (bond,))
            if bond in seen:
                raise ValueError("tiling bond %s assigned twice" % (bond,))
            seen.add(bond)
            i, j = bond
            mat[i, j] = mat[j, i] = -params.tau
        matrices.append(mat)
        names.append(section["name"])
        rotations.append(int(section["rotations"]))
        t_gates.append(int(section["t_gates"]))
    missing = bond_set - seen
    if missing:
        raise ValueError("tiling leaves %d bonds uncovered" % len(missing))
    return KineticSections(
        n_modes=lattice.n_sites,
        matrices=tuple(matrices),
        names=tuple(names),
        rotations=tuple(rotations),
        t_gates=tuple(t_gates),
    )


def _principal_log_hermitian(unitary, t):
    """(i/t) log(unitary) via complex Schur, principal phases."""
    tri, vecs = schur(unitary, output="complex")
    off = tri - np.diag(np.diag(tri))
    if np.abs(off).max(initial=0.0) > 1e-10:
        raise ValueError("unitary product is not normal to tolerance")
    phases = np.angle(np.diag(tri))
    if np.abs(phases).max() >= np.pi - _BRANCH_MARGIN:
        raise ValueError("time step too large: log branch ambiguity")
    gen = (vecs * (-phases / t)) @ vecs.conj().T
    return (gen + gen.conj().T) / 2


def effective_kinetic(sections, t):
    """Effective splitting-error matrix A_delta at time step t."""
    if t <= 0:
        raise ValueError("time step must be positive")
    n = sections.n_modes
    if sections.n_sections == 1:
        return EffectiveKineticMatrix(matrix=np.zeros((n, n)), time_step=t)
    prod = expm(1j * t * sections.full_matrix)
    halves = [expm(-1j * (t / 2) * mat) for mat in sections.matrices]
    for half in halves:
        prod = prod @ half
    for half in reversed(halves):
        prod = prod @ half
    return EffectiveKineticMatrix(matrix=_principal_log_hermitian(prod, t), time_step=t)


@dataclass(frozen=True)
class KineticFit:
    """Cubic fit value = constant * t^3 over a time-step grid."""

    constant: ErrorConstant
    t_grid: tuple
    errors: tuple
    error_ses: tuple
    r_squared: float
    standard_error: float


def _cubic_fit(t_grid, errors, error_ses=None):
    t3 = np.asarray(t_grid, dtype=float) ** 3
    y = np.asarray(errors, dtype=float)
    denom = float(np.dot(t3, t3))
    coeff = float(np.dot(t3, y)) / denom
    resid = y - coeff * t3
    total = float(np.dot(y, y))
    r2 = 1.0 if total == 0.0 else 1.0 - float(np.dot(resid, resid)) / total
    se = 0.0
    if error_ses is not None:
        se = float(np.sqrt(np.dot(t3**2, np.asarray(error_ses) ** 2))) / denom
    return coeff, r2, se


def worst_case_kinetic(sections, t_grid=DEFAULT_T_GRID, filling=None):
    """W_T from |1 - exp(-i ||T_delta|| t)| fitted as W_T t^3."""
    filling = filling or default_filling(sections.n_modes)
    errors = []
    for t in t_grid:
        eff = effective_kinetic(sections, t)
        norm = eff.filled_norm(filling)
        errors.append(abs(1.0 - np.exp(-1j * norm * t)))
    coeff, r2, _ = _cubic_fit(t_grid, errors)
    return KineticFit(
        constant=ErrorConstant(kind="worst", scheme="kinetic", value=coeff,
                               provenance={"method": "eigenmode-sum norm, cubic fit"}),
        t_grid=tuple(t_grid),
        errors=tuple(errors),
        error_ses=tuple(0.0 for _ in t_grid),
        r_squared=r2,
        standard_error=0.0,
    )


def _sample_occupations(rng, n_modes, n_occ, samples):
    """Uniform fixed-weight occupation vectors as a (samples, n_modes) mask."""
    keys = rng.random((samples, n_modes))
    order = np.argsort(keys, axis=1)
    mask = np.zeros((samples, n_modes), dtype=bool)
    rows = np.arange(samples)[:, None]
    mask[rows, order[:, :n_occ]] = True
    return mask


def average_case_kinetic(sections, t_grid=DEFAULT_T_GRID, filling=None,
                         samples=10000, seed=0):
    """A_T from the sampled normalized trace of exp(i T_delta t)."""
    filling = filling or default_filling(sections.n_modes)
    rng = np.random.default_rng(seed)
    if sections.n_sections == 1:
        zeros = tuple(0.0 for _ in t_grid)
        return KineticFit(
            constant=ErrorConstant(kind="average", scheme="kinetic", value=0.0,
                                   provenance={"method": "single section, exact zero"}),
            t_grid=tuple(t_grid), errors=zeros, error_ses=zeros,
            r_squared=1.0, standard_error=0.0,
        )
    errors, ses = [], []
    for t in t_grid:
        eff = effective_kinetic(sections, t)
        modes = eff.eigenmodes
        energies = np.zeros(samples)
        for n_occ in filling:
            mask = _sample_occupations(rng, sections.n_modes, n_occ, samples)
            energies += mask @ modes
        phases = np.exp(1j * energies * t)
        re = float(phases.real.mean())
        se_re = float(phases.real.std(ddof=1)) / np.sqrt(samples)
        val = float(np.sqrt(max(2.0 - 2.0 * re, 0.0)))
        errors.append(val)
        ses.append(se_re / val if val > 0 else 0.0)
    coeff, r2, se = _cubic_fit(t_grid, errors, ses)
    return KineticFit(
        constant=ErrorConstant(kind="average", scheme="kinetic", value=coeff,
                               provenance={"method": "sampled trace", "samples": samples, "seed": seed}),
        t_grid=tuple(t_grid),
        errors=tuple(errors),
        error_ses=tuple(ses),
        r_squared=r2,
        standard_error=se,
    )
