"""Symmetry-sector basis enumeration and sector-restricted linear algebra.

A sector fixes the electron count and 2·S_z.  Basis states are occupation
bitstrings packed into int64 (bit q = occupation of qubit q, interleaved
spin ordering), sorted ascending so membership lookup is a binary search.

Pauli sums act on a sector via x-mask grouping: all strings sharing an
X-mask scatter |b> to |b ^ x| with a state-dependent amplitude

    amp_x(b) = sum_z c_z i^{popcount(x & z)} (-1)^{popcount(z & b)},

which vectorizes over the whole basis with numpy bit tricks.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from math import comb
from itertools import combinations

import numpy as np
from scipy.linalg import eigh, expm
from scipy.sparse import csr_matrix
from scipy.sparse.linalg import LinearOperator, eigsh

from .pauli import PauliSum

# cache per-group permutations/amplitudes when dim * groups is below this
_CACHE_ENTRY_LIMIT = int(2e7)
DENSE_DIM_LIMIT = 5000


@dataclass(frozen=True)
class SectorBasis:
    n_sites: int
    electrons: int
    sz_twice: int
    states: np.ndarray = field(repr=False)  # sorted int64 occupation ints

    @property
    def dim(self) -> int:
        return len(self.states)

    @property
    def n_qubits(self) -> int:
        return 2 * self.n_sites

    def index(self, packed: np.ndarray) -> np.ndarray:
        idx = np.searchsorted(self.states, packed)
        if np.any(idx >= self.dim) or np.any(self.states[idx] != packed):
            raise ValueError("state outside sector")
        return idx

    def index_or_mask(self, packed: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """(indices, validity mask); invalid entries get index 0."""
        idx = np.searchsorted(self.states, packed)
        valid = idx < self.dim
        idx = np.where(valid, idx, 0)
        valid &= self.states[idx] == packed
        return idx, valid


def enumerate_sector(n_sites: int, electrons: int, sz_twice: int) -> SectorBasis:
    """All occupation states with fixed electron count and 2 S_z."""
    if not 0 <= electrons <= 2 * n_sites:
        raise ValueError("infeasible electron count")
    if (electrons + sz_twice) % 2 != 0:
        raise ValueError("electron count and 2 S_z must have equal parity")
    n_up = (electrons + sz_twice) // 2
    n_dn = electrons - n_up
    if not (0 <= n_up <= n_sites and 0 <= n_dn <= n_sites):
        raise ValueError("infeasible S_z for this electron count")

    ups = np.fromiter(
        (sum(1 << (2 * i) for i in c) for c in combinations(range(n_sites), n_up)),
        dtype=np.int64,
        count=comb(n_sites, n_up),
    )
    dns = np.fromiter(
        (sum(1 << (2 * i + 1) for i in c) for c in combinations(range(n_sites), n_dn)),
        dtype=np.int64,
        count=comb(n_sites, n_dn),
    )
    states = (ups[:, None] | dns[None, :]).ravel()
    states.sort()
    return SectorBasis(n_sites, electrons, sz_twice, states)


def half_filling_sector(n_sites: int) -> SectorBasis:
    """The sector used throughout: half filling, S_z = 0 (or 1/2 for odd N)."""
    sz = n_sites % 2
    return enumerate_sector(n_sites, n_sites, sz)


def _popcount(arr: np.ndarray) -> np.ndarray:
    return np.bitwise_count(arr.astype(np.uint64)).astype(np.int64)


def _group_terms(op: PauliSum):
    """Group (x, z, coeff) by x-mask; fold the canonical i-phase into coeff."""
    groups: dict[int, list[tuple[int, complex]]] = {}
    for (x, z), c in op.terms.items():
        phased = complex(c) * (1j ** ((x & z).bit_count() % 4))
        groups.setdefault(x, []).append((z, phased))
    return groups


def _amplitudes(states: np.ndarray, zs_cs: list[tuple[int, complex]]) -> np.ndarray:
    """Per-state amplitudes of one x-group; real array when phases allow."""
    real = all(abs(complex(c).imag) < 1e-15 for _, c in zs_cs)
    amp = np.zeros(len(states), dtype=float if real else complex)
    for z, c in zs_cs:
        signs = 1.0 - 2.0 * (_popcount(states & np.int64(z)) & 1)
        amp += (complex(c).real if real else complex(c)) * signs
    return amp


class SectorOperator:
    """A PauliSum restricted to a sector, ready for repeated matvecs.

    For small problems the per-group target permutation and amplitude
    vectors are cached; above the cache limit they are recomputed on each
    application (slow lane).
    """

    def __init__(self, op: PauliSum, basis: SectorBasis):
        if op.n_qubits != basis.n_qubits:
            raise ValueError("qubit count mismatch")
        self.basis = basis
        self.groups = _group_terms(op)
        self.dim = basis.dim
        self._diag = None
        self._cache = None
        self._is_real = None
        n_offdiag = sum(1 for x in self.groups if x != 0)
        if self.dim * max(1, n_offdiag) <= _CACHE_ENTRY_LIMIT:
            self._build_cache()

    def _group_action(self, x, zs_cs):
        """(source indices, target indices, amplitudes) for one x-group.

        Zero-amplitude entries are dropped first; they are exactly the
        states whose image under the bit flips leaves the sector.
        """
        states = self.basis.states
        amp = _amplitudes(states, zs_cs)
        src = np.nonzero(amp)[0]
        tgt, valid = self.basis.index_or_mask(states[src] ^ np.int64(x))
        if not valid.all():
            # out-of-sector scatter is legal only for amplitudes that are
            # pure float residue of exact cancellations
            bad = np.abs(amp[src][~valid])
            scale = np.abs(amp).max()
            if bad.max() > 1e-9 * scale:
                raise ValueError("operator does not preserve the sector")
            src, tgt = src[valid], tgt[valid]
            return src, tgt, amp[src]
        return src, tgt, amp[src]

    def _build_cache(self):
        cache = []
        for x, zs_cs in self.groups.items():
            if x == 0:
                continue
            cache.append(self._group_action(x, zs_cs))
        self._cache = cache

    @property
    def diagonal(self) -> np.ndarray:
        if self._diag is None:
            zs_cs = self.groups.get(0, [])
            self._diag = _amplitudes(self.basis.states, zs_cs)
        return self._diag

    @property
    def is_real(self) -> bool:
        if self._is_real is None:
            self._is_real = not np.iscomplexobj(self.diagonal) and all(
                all(abs(complex(c).imag) < 1e-15 for _, c in zs_cs)
                for x, zs_cs in self.groups.items()
                if x != 0
            )
        return self._is_real

    def matvec(self, v: np.ndarray) -> np.ndarray:
        y = self.diagonal * v
        if self._cache is not None:
            for src, tgt, amp in self._cache:
                np.add.at(y, tgt, amp * v[src])
        else:
            for x, zs_cs in self.groups.items():
                if x == 0:
                    continue
                src, tgt, amp = self._group_action(x, zs_cs)
                np.add.at(y, tgt, amp * v[src])
        return y

    def __call__(self, v):
        return self.matvec(v)

    def as_linear_operator(self) -> LinearOperator:
        return LinearOperator(
            (self.dim, self.dim),
            matvec=self.matvec,
            dtype=float if self.is_real else complex,
        )

    def to_sparse(self) -> csr_matrix:
        rows, cols, data = [], [], []
        d = self.diagonal
        nz = np.nonzero(d)[0]
        rows.append(nz)
        cols.append(nz)
        data.append(d[nz])
        for x, zs_cs in self.groups.items():
            if x == 0:
                continue
            src, tgt, amp = self._group_action(x, zs_cs)
            rows.append(tgt)
            cols.append(src)
            data.append(amp)
        return csr_matrix(
            (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
            shape=(self.dim, self.dim),
        )

    def to_dense(self) -> np.ndarray:
        if self.dim > DENSE_DIM_LIMIT:
            raise ValueError("sector too large for dense mode")
        return self.to_sparse().toarray()


def sector_matrix(op: PauliSum, basis: SectorBasis):
    """Dense matrix below DENSE_DIM_LIMIT, else a SectorOperator."""
    sop = SectorOperator(op, basis)
    if basis.dim <= DENSE_DIM_LIMIT:
        return sop.to_dense()
    return sop


def lowest_eigenpairs(op, basis: SectorBasis, k: int = 1, tol: float = 0.0,
                      ncv: int | None = None):
    """k lowest eigenpairs of a Hermitian operator on the sector.

    ``op`` may be a PauliSum, a SectorOperator, or a dense/sparse matrix.
    Dense diagonalization below DENSE_DIM_LIMIT, Lanczos (eigsh) above.
    """
    if isinstance(op, PauliSum):
        op = SectorOperator(op, basis)
    if isinstance(op, SectorOperator):
        if basis.dim <= DENSE_DIM_LIMIT:
            mat = op.to_dense()
            vals, vecs = eigh(mat)
            return vals[:k], vecs[:, :k]
        lo = op.as_linear_operator()
        vals, vecs = eigsh(lo, k=k, which="SA", tol=tol, maxiter=5000, ncv=ncv)
        order = np.argsort(vals)
        return vals[order], vecs[:, order]
    mat = np.asarray(op)
    vals, vecs = eigh(mat)
    return vals[:k], vecs[:, :k]


def extremal_eigenvalues(op, basis: SectorBasis) -> tuple[float, float]:
    """(E_min, E_max) via Lanczos at both spectrum ends."""
    if isinstance(op, PauliSum):
        op = SectorOperator(op, basis)
    if basis.dim <= DENSE_DIM_LIMIT:
        vals = np.linalg.eigvalsh(op.to_dense())
        return float(vals[0]), float(vals[-1])
    lo = op.as_linear_operator()
    lo_val = eigsh(lo, k=1, which="SA", return_eigenvectors=False, tol=1e-9)
    hi_val = eigsh(lo, k=1, which="LA", return_eigenvectors=False, tol=1e-9)
    return float(lo_val[0]), float(hi_val[0])


# -- time propagation ---------------------------------------------------------


def _expm_lanczos(matvec, v: np.ndarray, t: float, tol: float = 1e-13, m_max: int = 90):
    """e^{-i H t} v for Hermitian H given by matvec, via Lanczos Krylov.

    Splits the step recursively if the Krylov space saturates before the
    error estimate drops below tol.
    """
    beta0 = np.linalg.norm(v)
    if beta0 == 0:
        return v
    V = [v / beta0]
    alphas: list[float] = []
    betas: list[float] = []
    w = None
    for j in range(m_max):
        w = matvec(V[j])
        if j > 0:
            w = w - betas[j - 1] * V[j - 1]
        a = float(np.real(np.vdot(V[j], w)))
        alphas.append(a)
        w = w - a * V[j]
        # full reorthogonalization keeps the recurrence stable
        for u in V:
            w = w - np.vdot(u, w) * u
        b = float(np.linalg.norm(w))
        m = j + 1
        if m >= 2 or b < 1e-14:
            T = np.diag(alphas)
            for i, bi in enumerate(betas):
                T[i, i + 1] = bi
                T[i + 1, i] = bi
            small = expm(-1j * t * T)[:, 0]
            err = abs(b * t * small[-1])
            if err < tol * beta0 or b < 1e-14:
                out = np.zeros_like(v)
                for coef, u in zip(small, V):
                    out += coef * u
                return beta0 * out
        betas.append(b)
        V.append(w / b)
    # did not converge in m_max: halve the time step
    half = _expm_lanczos(matvec, v, t / 2.0, tol, m_max)
    return _expm_lanczos(matvec, half, t / 2.0, tol, m_max)


class Propagator:
    """Applies exp(-i G t) for one Hamiltonian piece G on a sector."""

    def __init__(self, op: PauliSum, basis: SectorBasis):
        self.sop = SectorOperator(op, basis)
        self.diagonal_only = all(x == 0 for x in self.sop.groups)
        self.basis = basis
        self._dense_cache: dict[float, np.ndarray] = {}
        self._use_dense = basis.dim <= 1200

    def apply(self, state: np.ndarray, t: float) -> np.ndarray:
        if self.diagonal_only:
            return np.exp(-1j * t * self.sop.diagonal.real) * state
        if self._use_dense:
            key = round(t, 15)
            if key not in self._dense_cache:
                self._dense_cache[key] = expm(-1j * t * self.sop.to_dense())
            return self._dense_cache[key] @ state
        return _expm_lanczos(self.sop.matvec, state, t)


def propagate(factors, basis: SectorBasis, state: np.ndarray) -> np.ndarray:
    """Apply a chain of (PauliSum | Propagator, duration) factors in order."""
    out = np.asarray(state, dtype=complex)
    for op, t in factors:
        prop = op if isinstance(op, Propagator) else Propagator(op, basis)
        out = prop.apply(out, t)
    return out


# -- spin labeling ------------------------------------------------------------


def apply_s_plus(state: np.ndarray, basis: SectorBasis):
    """S+ |psi>, landing in the sector with 2 S_z raised by 2.

    With interleaved ordering the JW parity factors of a†_{i up} a_{i down}
    cancel pairwise, so no sign bookkeeping survives.
    """
    target = enumerate_sector(basis.n_sites, basis.electrons, basis.sz_twice + 2)
    out = np.zeros(target.dim, dtype=complex)
    b = basis.states
    for i in range(basis.n_sites):
        up_bit = np.int64(1) << np.int64(2 * i)
        dn_bit = np.int64(1) << np.int64(2 * i + 1)
        mask = ((b & dn_bit) != 0) & ((b & up_bit) == 0)
        if not np.any(mask):
            continue
        moved = b[mask] ^ (up_bit | dn_bit)
        idx = target.index(moved)
        np.add.at(out, idx, state[mask])
    return out, target


def total_spin_expectation(state: np.ndarray, basis: SectorBasis) -> float:
    """<S²> = |S+ psi|² + s_z (s_z + 1)."""
    sz = basis.sz_twice / 2.0
    try:
        plus, _ = apply_s_plus(state, basis)
        s_plus_sq = float(np.vdot(plus, plus).real)
    except ValueError:
        s_plus_sq = 0.0  # raised sector infeasible, so S+ annihilates psi
    return s_plus_sq + sz * (sz + 1.0)


def spin_label(state: np.ndarray, basis: SectorBasis, tol: float = 0.1) -> int:
    """Round <S²> to the nearest s(s+1) and return integer 2s."""
    s2 = total_spin_expectation(state, basis)
    for two_s in range(0, 2 * basis.n_sites + 1):
        s = two_s / 2.0
        if abs(s2 - s * (s + 1.0)) < max(tol, 1e-6):
            return two_s
    raise ValueError(f"<S²> = {s2} is not near any s(s+1)")


# -- state snapshots ----------------------------------------------------------

_SNAP_MAGIC = b"TLSNAP01"


def save_state(path, state: np.ndarray, basis: SectorBasis) -> None:
    with open(path, "wb") as fh:
        fh.write(_SNAP_MAGIC)
        fh.write(struct.pack("<cIiii", b"<", basis.dim, basis.n_sites,
                             basis.electrons, basis.sz_twice))
        np.asarray(state, dtype="<c16").tofile(fh)


def load_state(path, basis: SectorBasis | None = None):
    with open(path, "rb") as fh:
        magic = fh.read(8)
        if magic != _SNAP_MAGIC:
            raise ValueError("not a state snapshot")
        endian, dim, n_sites, electrons, sz_twice = struct.unpack(
            "<cIiii", fh.read(struct.calcsize("<cIiii"))
        )
        state = np.fromfile(fh, dtype="<c16", count=dim).astype(complex)
    if basis is not None:
        if (n_sites, electrons, sz_twice) != (
            basis.n_sites, basis.electrons, basis.sz_twice
        ) or dim != basis.dim:
            raise ValueError("snapshot sector does not match basis")
    return state, (n_sites, electrons, sz_twice)
