"""Worst-case and average-case Trotter error constants.

Second-order split-operator constants come from the two nested commutators

    O_VTV = [[V, T], V],      O_VTT = [[V, T], T],

via W_SO = |O_VTV|/24 + |O_VTT|/12 with the spectral norm, and A_SO with
normalized sector Frobenius norms instead.

The spectral norm is upper-bounded by the largest eigenvalue of the
element-wise absolute matrix, computed matrix-free on the sector.  The
Frobenius norm over the sector (divided by sqrt(dim)) is estimated by
sampling uniform basis states i and averaging |O |i>|².

Because V is diagonal (matrix D) and T is a hopping operator, the
commutators have closed-form matrix elements,

    O_VTV[r, c] = -(D_r - D_c)² T[r, c],
    O_VTT[r, c] = sum_k T[r, k] T[k, c] (D_r - 2 D_k + D_c),

which the fast path exploits for molecules whose Pauli-level commutators
would be too large.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.sparse.linalg import LinearOperator, eigsh

from .pauli import PauliSum, commutator
from .sector import SectorBasis, SectorOperator, _amplitudes, _group_terms


@dataclass(frozen=True)
class NormEstimate:
    value: float
    standard_error: float
    kind: str  # spectral_bound | frobenius_sampled | frobenius_exact | dense_exact
    sample_count: int = 0
    rng_seed: int | None = None
    converged: bool = True

    def __post_init__(self):
        if self.standard_error < 0:
            raise ValueError("standard error must be nonnegative")


@dataclass(frozen=True)
class ErrorConstant:
    kind: str  # "worst" | "average"
    scheme: str  # "SO" | "tile" | "kinetic"
    value: float
    provenance: dict = field(default_factory=dict)


def nested_commutators(t_op: PauliSum, v_op: PauliSum) -> tuple[PauliSum, PauliSum]:
    """(O_VTV, O_VTT) as Hermitian Pauli sums."""
    if t_op.n_qubits != v_op.n_qubits:
        raise ValueError("qubit count mismatch")
    b = commutator(v_op, t_op)
    o_vtv = commutator(b, v_op).require_real("O_VTV")
    o_vtt = commutator(b, t_op).require_real("O_VTT")
    return o_vtv, o_vtt


# -- column machinery ---------------------------------------------------------


def column_norms_squared(op: PauliSum, basis: SectorBasis, states: np.ndarray) -> np.ndarray:
    """|O |b>|² for each packed state b, vectorized over states.

    Terms sharing an X-mask scatter to the same target, and different
    X-masks scatter to orthogonal targets, so the norm splits per group.
    """
    groups = _group_terms(op)
    out = np.zeros(len(states))
    for x, zs_cs in groups.items():
        amp = _amplitudes(states, zs_cs)
        out += np.abs(amp) ** 2
    return out


class _AbsOperator:
    """Element-wise absolute value of a PauliSum on a sector, matrix-free."""

    def __init__(self, op: PauliSum, basis: SectorBasis):
        self.basis = basis
        self.groups = _group_terms(op)
        self.dim = basis.dim

    def matvec(self, v: np.ndarray) -> np.ndarray:
        states = self.basis.states
        y = np.zeros(self.dim)
        for x, zs_cs in self.groups.items():
            amp = np.abs(_amplitudes(states, zs_cs))
            if x == 0:
                y += amp * v
                continue
            scale = amp.max()
            src = np.nonzero(amp > 1e-9 * scale)[0]
            tgt = self.basis.index(states[src] ^ np.int64(x))
            np.add.at(y, tgt, amp[src] * v[src])
        return y


def _largest_eigenvalue(matvec, dim: int, rtol: float = 1e-6, max_iter: int = 3000):
    """Largest eigenvalue of a symmetric nonnegative matrix (power method)."""
    rng = np.random.default_rng(12345)
    v = rng.random(dim) + 0.1
    v /= np.linalg.norm(v)
    lam_old = 0.0
    for it in range(max_iter):
        w = matvec(v)
        lam = float(np.dot(v, w))
        nrm = np.linalg.norm(w)
        if nrm == 0:
            return 0.0, True
        v = w / nrm
        if it > 2 and abs(lam - lam_old) <= rtol * abs(lam):
            return lam, True
        lam_old = lam
    return lam_old, False


def spectral_norm_bound(op, basis: SectorBasis, rtol: float = 1e-6) -> NormEstimate:
    """|O| <= |abs(O)| via the largest eigenvalue of the absolute matrix.

    ``op`` is a PauliSum or any object with an ``abs_matvec`` method.
    """
    if isinstance(op, PauliSum):
        action = _AbsOperator(op, basis).matvec
    else:
        action = op.abs_matvec
    if basis.dim <= 3000:
        # small sectors: dense absolute matrix, exact top eigenvalue
        mat = np.zeros((basis.dim, basis.dim))
        for j in range(basis.dim):
            e = np.zeros(basis.dim)
            e[j] = 1.0
            mat[:, j] = action(e)
        val = float(np.linalg.eigvalsh(mat)[-1])
        return NormEstimate(val, 0.0, "spectral_bound")
    val, ok = _largest_eigenvalue(action, basis.dim, rtol=rtol)
    return NormEstimate(float(val), 0.0, "spectral_bound", converged=ok)


def dense_spectral_norm(op: PauliSum, basis: SectorBasis) -> NormEstimate:
    mat = SectorOperator(op, basis).to_dense()
    val = float(np.abs(np.linalg.eigvalsh(mat)).max())
    return NormEstimate(val, 0.0, "dense_exact")


def frobenius_sampled(op, basis: SectorBasis, samples: int = 10_000,
                      seed: int = 0) -> NormEstimate:
    """|O|_F / sqrt(d) over the sector, by uniform basis-state sampling.

    ``op`` is a PauliSum or any object with ``column_norm_sq(states)``.
    """
    if samples < 2:
        raise ValueError("need at least two samples")
    rng = np.random.default_rng(seed)
    idx = rng.integers(0, basis.dim, size=samples)
    states = basis.states[idx]
    if isinstance(op, PauliSum):
        sq = column_norms_squared(op, basis, states)
    else:
        sq = op.column_norm_sq(states)
    mean = float(np.mean(sq))
    var = float(np.var(sq, ddof=1))
    se_mean = np.sqrt(var / samples)
    value = np.sqrt(mean)
    se = 0.0 if value == 0 else se_mean / (2.0 * value)  # delta method
    return NormEstimate(float(value), float(se), "frobenius_sampled",
                        sample_count=samples, rng_seed=seed)


def frobenius_exact(op, basis: SectorBasis) -> NormEstimate:
    """Exact |O|_F / sqrt(d) by full enumeration (small sectors)."""
    if isinstance(op, PauliSum):
        sq = column_norms_squared(op, basis, basis.states)
    else:
        sq = op.column_norm_sq(basis.states)
    return NormEstimate(float(np.sqrt(np.mean(sq))), 0.0, "frobenius_exact",
                        sample_count=basis.dim)


# -- error constants ----------------------------------------------------------


def worst_case_constant(norm_vtv: NormEstimate, norm_vtt: NormEstimate) -> ErrorConstant:
    value = norm_vtv.value / 24.0 + norm_vtt.value / 12.0
    return ErrorConstant("worst", "SO", value,
                         {"vtv": norm_vtv, "vtt": norm_vtt})


def average_case_constant(frob_vtv: NormEstimate, frob_vtt: NormEstimate) -> ErrorConstant:
    value = frob_vtv.value / 24.0 + frob_vtt.value / 12.0
    return ErrorConstant("average", "SO", value,
                         {"vtv": frob_vtv, "vtt": frob_vtt})


def tile_constant(so: ErrorConstant, kinetic: ErrorConstant) -> ErrorConstant:
    """Upper bound for the tile formula: SO constant plus the kinetic part."""
    if so.kind != kinetic.kind:
        raise ValueError(f"kind mismatch: {so.kind} vs {kinetic.kind}")
    return ErrorConstant(so.kind, "tile", so.value + kinetic.value,
                         {"so": so, "kinetic": kinetic})


# -- fast structured path -----------------------------------------------------


class HoppingCommutatorAction:
    """Matrix-free nested-commutator actions using the diagonal-V structure.

    Needs the kinetic Pauli sum (pure hopping) and any diagonal potential
    whose sector diagonal differs from V's by a constant (the shifted V'
    qualifies, since the commutators are shift-invariant).
    """

    def __init__(self, kinetic: PauliSum, potential: PauliSum, basis: SectorBasis):
        if not potential.is_diagonal():
            raise ValueError("potential must be diagonal")
        self.basis = basis
        self.dim = basis.dim
        self._pot_groups = _group_terms(potential)
        # hop groups: x-mask -> (z list, coeff list); amplitudes are real
        self.hops = [
            (x, zs_cs) for x, zs_cs in _group_terms(kinetic).items() if x != 0
        ]
        self._diag_cache = None

    def potential_diagonal(self, states: np.ndarray) -> np.ndarray:
        out = np.zeros(len(states))
        for x, zs_cs in self._pot_groups.items():
            if x != 0:
                raise ValueError("potential must be diagonal")
            out += np.real(_amplitudes(states, zs_cs))
        return out

    @property
    def diag(self) -> np.ndarray:
        if self._diag_cache is None:
            self._diag_cache = self.potential_diagonal(self.basis.states)
        return self._diag_cache

    # O_VTV = [[V,T],V]: elements -(D_r - D_c)^2 T_rc

    def vtv_matvec(self, v: np.ndarray) -> np.ndarray:
        states, D = self.basis.states, self.diag
        y = np.zeros(self.dim, dtype=v.dtype)
        for x, zs_cs in self.hops:
            amp = np.real(_amplitudes(states, zs_cs))
            src = np.nonzero(amp)[0]
            tgt = self.basis.index(states[src] ^ np.int64(x))
            w = -((D[tgt] - D[src]) ** 2) * amp[src]
            np.add.at(y, tgt, w * v[src])
        return y

    def vtv_abs_matvec(self, v: np.ndarray) -> np.ndarray:
        states, D = self.basis.states, self.diag
        y = np.zeros(self.dim)
        for x, zs_cs in self.hops:
            amp = np.real(_amplitudes(states, zs_cs))
            src = np.nonzero(amp)[0]
            tgt = self.basis.index(states[src] ^ np.int64(x))
            w = ((D[tgt] - D[src]) ** 2) * np.abs(amp[src])
            np.add.at(y, tgt, w * v[src])
        return y

    def vtv_column_norm_sq(self, states: np.ndarray) -> np.ndarray:
        """|O_VTV |b>|² per sampled state (targets orthogonal across hops)."""
        D_b = self.potential_diagonal(states)
        out = np.zeros(len(states))
        for x, zs_cs in self.hops:
            amp = np.real(_amplitudes(states, zs_cs))
            tgt_states = states ^ np.int64(x)
            live = amp != 0
            d_t = np.zeros(len(states))
            if np.any(live):
                d_t[live] = self.potential_diagonal(tgt_states[live])
            w = np.where(live, ((d_t - D_b) ** 2) * amp, 0.0)
            out += w**2
        return out

    # O_VTT = [[V,T],T]: elements sum_k T_rk T_kc (D_r - 2 D_k + D_c)

    def _pair_contributions(self, states: np.ndarray):
        """Yield (xor_mask, amplitude array) per ordered hop pair on states."""
        d_b = self.potential_diagonal(states)
        mids = {}
        for x2, zs_cs2 in self.hops:
            amp2 = np.real(_amplitudes(states, zs_cs2))
            mid = states ^ np.int64(x2)
            d_m = self.potential_diagonal(mid)
            mids[x2] = (amp2, mid, d_m)
        for x1, zs_cs1 in self.hops:
            for x2, (amp2, mid, d_m) in mids.items():
                amp1 = np.real(_amplitudes(mid, zs_cs1))
                xor = x1 ^ x2
                tgt = states ^ np.int64(xor)
                d_r = self.potential_diagonal(tgt)
                yield xor, amp1 * amp2 * (d_r - 2.0 * d_m + d_b)

    def vtt_column_norm_sq(self, states: np.ndarray) -> np.ndarray:
        acc: dict[int, np.ndarray] = {}
        for xor, amp in self._pair_contributions(states):
            if xor in acc:
                acc[xor] += amp
            else:
                acc[xor] = amp.copy()
        out = np.zeros(len(states))
        for amp in acc.values():
            out += amp**2
        return out

    def vtt_matvec(self, v: np.ndarray) -> np.ndarray:
        states = self.basis.states
        y = np.zeros(self.dim, dtype=v.dtype)
        for xor, amp in self._pair_contributions(states):
            src = np.nonzero(amp)[0]
            if len(src) == 0:
                continue
            tgt = self.basis.index(states[src] ^ np.int64(xor))
            np.add.at(y, tgt, amp[src] * v[src])
        return y

    def vtt_abs_matvec(self, v: np.ndarray) -> np.ndarray:
        states = self.basis.states
        acc: dict[int, np.ndarray] = {}
        for xor, amp in self._pair_contributions(states):
            if xor in acc:
                acc[xor] += amp
            else:
                acc[xor] = amp.copy()
        y = np.zeros(self.dim)
        for xor, amp in acc.items():
            amp = np.abs(amp)
            src = np.nonzero(amp)[0]
            if len(src) == 0:
                continue
            if xor == 0:
                y[src] += amp[src] * v[src]
                continue
            tgt = self.basis.index(states[src] ^ np.int64(xor))
            np.add.at(y, tgt, amp[src] * v[src])
        return y


class _BoundAdapter:
    """Exposes a matvec pair under the names spectral_norm_bound expects."""

    def __init__(self, abs_matvec, column_norm_sq=None):
        self.abs_matvec = abs_matvec
        self.column_norm_sq = column_norm_sq
