"""Sparse Pauli-sum algebra and the Jordan-Wigner transformation.

A Pauli string on n qubits is stored as an (x, z) pair of bit masks in the
phase-canonical form

    S(x, z) = i^{popcount(x & z)} X^x Z^z,

which is Hermitian and equals the plain tensor product of I/X/Y/Z letters
(the i-phase unravels per qubit, turning each overlapping X Z into Y).
Products of canonical strings pick up an integer power of i that is folded
into the coefficient.

Spin orbitals are interleaved: qubit 2i is site i spin-up, qubit 2i+1 is
site i spin-down, so on-site density-density terms stay JW-local.
"""

from __future__ import annotations

import numpy as np

_LETTER = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}

PRUNE_REL = 1e-12


def string_letters(x: int, z: int, n_qubits: int) -> str:
    """Human-readable form like ``X0 Z3 Y7`` (empty string for identity)."""
    parts = []
    for q in range(n_qubits):
        letter = _LETTER[((x >> q) & 1, (z >> q) & 1)]
        if letter != "I":
            parts.append(f"{letter}{q}")
    return " ".join(parts)


def _product_phase(x1: int, z1: int, x2: int, z2: int) -> int:
    """Power k of i in S(x1,z1)·S(x2,z2) = i^k · S(x1^x2, z1^z2)."""
    x3, z3 = x1 ^ x2, z1 ^ z2
    k = (
        (x1 & z1).bit_count()
        + (x2 & z2).bit_count()
        - (x3 & z3).bit_count()
        + 2 * (z1 & x2).bit_count()
    )
    return k % 4


def strings_commute(x1: int, z1: int, x2: int, z2: int) -> bool:
    return ((x1 & z2).bit_count() + (z1 & x2).bit_count()) % 2 == 0


class PauliSum:
    """A sparse real/complex-linear combination of canonical Pauli strings.

    Terms live in a dict keyed by (x_mask, z_mask).  The identity component
    is kept like any other term; callers that want it separated use
    ``split_identity``.
    """

    tol = 1e-12

    def __init__(self, n_qubits: int, terms: dict[tuple[int, int], complex] | None = None):
        self.n_qubits = n_qubits
        self.terms: dict[tuple[int, int], complex] = dict(terms or {})

    # -- construction helpers -------------------------------------------------

    @classmethod
    def zero(cls, n_qubits: int) -> "PauliSum":
        return cls(n_qubits)

    @classmethod
    def identity(cls, n_qubits: int, coeff: complex = 1.0) -> "PauliSum":
        return cls(n_qubits, {(0, 0): coeff})

    def add_term(self, x: int, z: int, coeff: complex) -> None:
        key = (x, z)
        new = self.terms.get(key, 0.0) + coeff
        if new == 0:
            self.terms.pop(key, None)
        else:
            self.terms[key] = new

    def copy(self) -> "PauliSum":
        return PauliSum(self.n_qubits, self.terms)

    # -- basic queries --------------------------------------------------------

    def __len__(self) -> int:
        return len(self.terms)

    def term_count(self, include_identity: bool = False) -> int:
        n = len(self.terms)
        if not include_identity and (0, 0) in self.terms:
            n -= 1
        return n

    def coefficient(self, x: int, z: int) -> complex:
        return self.terms.get((x, z), 0.0)

    def is_diagonal(self) -> bool:
        return all(x == 0 for x, _ in self.terms)

    def max_abs_coeff(self) -> float:
        return max((abs(c) for c in self.terms.values()), default=0.0)

    def one_norm(self) -> float:
        """Sum of |coefficients| over non-identity terms."""
        return float(sum(abs(c) for (x, z), c in self.terms.items() if (x, z) != (0, 0)))

    def split_identity(self) -> tuple["PauliSum", complex]:
        rest = {k: v for k, v in self.terms.items() if k != (0, 0)}
        return PauliSum(self.n_qubits, rest), self.terms.get((0, 0), 0.0)

    # -- algebra --------------------------------------------------------------

    def __add__(self, other: "PauliSum") -> "PauliSum":
        if other.n_qubits != self.n_qubits:
            raise ValueError("qubit count mismatch")
        out = self.copy()
        for key, c in other.terms.items():
            out.add_term(*key, c)
        return out

    def __sub__(self, other: "PauliSum") -> "PauliSum":
        return self + (other * -1.0)

    def __mul__(self, scalar: complex) -> "PauliSum":
        return PauliSum(self.n_qubits, {k: scalar * v for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __matmul__(self, other: "PauliSum") -> "PauliSum":
        if other.n_qubits != self.n_qubits:
            raise ValueError("qubit count mismatch")
        out = PauliSum(self.n_qubits)
        for (x1, z1), c1 in self.terms.items():
            for (x2, z2), c2 in other.terms.items():
                k = _product_phase(x1, z1, x2, z2)
                out.add_term(x1 ^ x2, z1 ^ z2, c1 * c2 * (1j**k))
        return out.pruned()

    def pruned(self, rel_tol: float = PRUNE_REL) -> "PauliSum":
        cut = rel_tol * self.max_abs_coeff()
        kept = {k: v for k, v in self.terms.items() if abs(v) > cut}
        return PauliSum(self.n_qubits, kept)

    def require_real(self, context: str = "operator") -> "PauliSum":
        """Drop numerically-zero imaginary parts, error on genuine ones."""
        scale = self.max_abs_coeff() or 1.0
        out = {}
        for key, c in self.terms.items():
            if abs(c.imag if isinstance(c, complex) else 0.0) > 1e-9 * scale:
                raise ValueError(
                    f"{context}: non-real coefficient {c} on term {key}"
                )
            out[key] = complex(c).real
        return PauliSum(self.n_qubits, out)

    # -- state action ---------------------------------------------------------

    def apply_to_basis_state(self, bits: int) -> dict[int, complex]:
        """Action on a computational basis state given as an occupation int.

        Bit q of ``bits`` is the occupation of qubit q.  Returns the sparse
        output vector as {bits: amplitude}.
        """
        out: dict[int, complex] = {}
        for (x, z), c in self.terms.items():
            amp = c * (1j ** ((x & z).bit_count() % 4))
            if (z & bits).bit_count() % 2:
                amp = -amp
            target = bits ^ x
            out[target] = out.get(target, 0.0) + amp
        return {b: a for b, a in out.items() if a != 0}

    # -- serialization --------------------------------------------------------

    def to_text(self) -> str:
        lines = []
        for (x, z), c in sorted(self.terms.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            val = complex(c)
            if abs(val.imag) > 1e-12 * max(1.0, abs(val)):
                raise ValueError("text format only covers real coefficients")
            letters = string_letters(x, z, self.n_qubits)
            lines.append(f"{val.real:+.7e} {letters}".rstrip())
        return "\n".join(lines)

    @classmethod
    def from_text(cls, text: str, n_qubits: int) -> "PauliSum":
        out = cls(n_qubits)
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            fields = line.split()
            coeff = float(fields[0])
            x = z = 0
            for tok in fields[1:]:
                letter, q = tok[0], int(tok[1:])
                if letter in "XY":
                    x |= 1 << q
                if letter in "ZY":
                    z |= 1 << q
            out.add_term(x, z, coeff)
        return out


def commutator(a: PauliSum, b: PauliSum) -> PauliSum:
    """[a, b] = ab - ba, using term-pairwise cancellation.

    Commuting string pairs contribute nothing; anticommuting pairs
    contribute 2·(product).
    """
    if a.n_qubits != b.n_qubits:
        raise ValueError("qubit count mismatch")
    out = PauliSum(a.n_qubits)
    for (x1, z1), c1 in a.terms.items():
        for (x2, z2), c2 in b.terms.items():
            if strings_commute(x1, z1, x2, z2):
                continue
            k = _product_phase(x1, z1, x2, z2)
            out.add_term(x1 ^ x2, z1 ^ z2, 2.0 * c1 * c2 * (1j**k))
    return out.pruned()


# -- Jordan-Wigner ------------------------------------------------------------


def qubit_index(site: int, spin: int) -> int:
    """Interleaved spin-orbital ordering: (site, spin) -> qubit."""
    return 2 * site + spin


def blocked_qubit_index(n_sites: int):
    """All spin-up modes first, then all spin-down; used for ordering checks."""

    def index(site: int, spin: int) -> int:
        return site + spin * n_sites

    return index


def jordan_wigner(fermion_hamiltonian, index_fn=None) -> tuple[PauliSum, PauliSum]:
    """Map a fermionic PPP Hamiltonian to (kinetic, potential) Pauli sums.

    Kinetic: each hop c·(a†_p a_q + h.c.) becomes (c/2)(X Z..Z X + Y Z..Z Y).
    Potential: densities become I/Z polynomials; (n_i - 1)(n_j - 1) expands
    to pure ZZ terms, on-site u n↑n↓ adds single-Z and ZZ pieces.
    """
    n_sites = fermion_hamiltonian.site_count
    nq = 2 * n_sites
    idx = index_fn or qubit_index
    kinetic = PauliSum(nq)
    for (i, j), spin, coeff in fermion_hamiltonian.hops():
        p, q = sorted((idx(i, spin), idx(j, spin)))
        chain = 0
        for r in range(p + 1, q):
            chain |= 1 << r
        ends = (1 << p) | (1 << q)
        # both canonical strings carry coefficient c/2 (the Y-string's
        # i-phases cancel against the JW sign)
        kinetic.add_term(ends, chain, coeff / 2.0)
        kinetic.add_term(ends, chain | ends, coeff / 2.0)

    potential = PauliSum(nq)
    for i, u in fermion_hamiltonian.on_site_terms():
        a, b = idx(i, 0), idx(i, 1)
        potential.add_term(0, 0, u / 4.0)
        potential.add_term(0, 1 << a, -u / 4.0)
        potential.add_term(0, 1 << b, -u / 4.0)
        potential.add_term(0, (1 << a) | (1 << b), u / 4.0)
    for (i, j), v in fermion_hamiltonian.pair_terms():
        # (n_i - 1)(n_j - 1) = (1/4)(Z_i↑ + Z_i↓)(Z_j↑ + Z_j↓)
        for si in (0, 1):
            for sj in (0, 1):
                potential.add_term(
                    0,
                    (1 << idx(i, si)) | (1 << idx(j, sj)),
                    v / 4.0,
                )
    return kinetic.pruned(), potential.pruned()


def number_operator(n_sites: int) -> PauliSum:
    """Total electron number N̂ = Σ (1 - Z_q)/2 as a Pauli sum."""
    nq = 2 * n_sites
    out = PauliSum(nq, {(0, 0): float(nq) / 2.0})
    for q in range(nq):
        out.add_term(0, 1 << q, -0.5)
    return out


def sz_operator(n_sites: int) -> PauliSum:
    """Total S_z = (1/2) Σ_i (n_i↑ - n_i↓)."""
    out = PauliSum(2 * n_sites)
    for i in range(n_sites):
        out.add_term(0, 1 << qubit_index(i, 0), -0.25)
        out.add_term(0, 1 << qubit_index(i, 1), 0.25)
    return out


def dense_matrix(op: PauliSum) -> np.ndarray:
    """Dense matrix in the full 2^n computational basis (small n only)."""
    dim = 1 << op.n_qubits
    if op.n_qubits > 14:
        raise ValueError("dense matrix limited to 14 qubits")
    mat = np.zeros((dim, dim), dtype=complex)
    for b in range(dim):
        for tgt, amp in op.apply_to_basis_state(b).items():
            mat[tgt, b] += amp
    return mat
