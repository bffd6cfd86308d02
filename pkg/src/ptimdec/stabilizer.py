"""Quantum trajectories via a two-type stabilizer tableau, plus the
measurement-pattern survival check behind the full knowledge decoder.

Only X_i and Z_i Z_{i+1} ever get measured, starting from |0..0> whose
stabilizers are the single-site Z_i. Under these measurements a generator
stays purely X-type or purely Z-type forever: the update rule multiplies
anticommuting generators together, and X-type times X-type is X-type (Z
same). No Y component can appear, so one support bitmask and one sign bit
per generator is the whole state and every product is an XOR. Signs pick
the convention (-1)^sign * P_support.

The pattern survival check is classical. Put a node at (t, i) for levels
t = 0..T and sites i; join sites across an edge at level t when that
syndrome was measured at step t (levels 0 and T are always fully joined,
the state starts known and the last row is forced), and join (t-1, i) to
(t, i) when site i had no error measurement at step t. The record then
pins the final configuration exactly when level 0 connects to level T;
otherwise exactly one global flip is unresolved.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .lattice import Params, SyndromeRecord
from .sampler import RngStream, sample_error_pattern, sample_syndrome_pattern


def _reduce_into_basis(basis: dict, vec: int, sign: int):
    """Reduce (vec, sign) against pivot rows, inserting if independent."""
    v, s = vec, sign
    while v:
        b = v.bit_length() - 1
        if b in basis:
            bv, bs = basis[b]
            v ^= bv
            s ^= bs
        else:
            basis[b] = (v, s)
            return None
    return s


def _solve_subset_sign(supports, signs, target: int) -> int:
    """Sign parity of the generator subset whose supports XOR to target."""
    basis: dict = {}
    for vec, s in zip(supports, signs):
        _reduce_into_basis(basis, int(vec), int(s))
    v, s = target, 0
    while v:
        b = v.bit_length() - 1
        if b not in basis:
            raise ValueError("operator not in the stabilizer group")
        bv, bs = basis[b]
        v ^= bv
        s ^= bs
    return s


class ChainState:
    """Stabilizer state of the qubit chain, generators kept type-pure."""

    def __init__(self, L: int):
        self.L = L
        self.xtype = [False] * L
        self.supp = [1 << i for i in range(L)]
        self.sign = [0] * L

    def _anticommuting(self, xmeas: bool, mask: int):
        out = []
        for g in range(self.L):
            if self.xtype[g] != xmeas and (self.supp[g] & mask).bit_count() & 1:
                out.append(g)
        return out

    def _measure(self, xmeas: bool, mask: int, rng: RngStream) -> int:
        """Measure the operator with the given support; returns the sign bit
        (0 for outcome +1, 1 for -1)."""
        anti = self._anticommuting(xmeas, mask)
        if anti:
            g0 = anti[0]
            for g in anti[1:]:
                self.supp[g] ^= self.supp[g0]
                self.sign[g] ^= self.sign[g0]
            out = 1 if rng.coin() else 0
            self.xtype[g0] = xmeas
            self.supp[g0] = mask
            self.sign[g0] = out
            return out
        supports = [self.supp[g] for g in range(self.L) if self.xtype[g] == xmeas]
        signs = [self.sign[g] for g in range(self.L) if self.xtype[g] == xmeas]
        return _solve_subset_sign(supports, signs, mask)

    def measure_error(self, i: int, rng: RngStream) -> int:
        return self._measure(True, 1 << i, rng)

    def measure_pair(self, e: int, rng: RngStream) -> int:
        return self._measure(False, (1 << e) | (1 << (e + 1)), rng)

    def n_xtype(self) -> int:
        return sum(self.xtype)

    def overlap_sq(self, bits: np.ndarray) -> float:
        """|<bits|state>|^2. Zero if any Z-type constraint is violated,
        else 2**-(number of X-type generators)."""
        b = 0
        for i, v in enumerate(bits):
            if v:
                b |= 1 << i
        k = 0
        for g in range(self.L):
            if self.xtype[g]:
                k += 1
                continue
            if ((self.supp[g] & b).bit_count() & 1) != self.sign[g]:
                return 0.0
        return 0.5 ** k

    def basis_string(self) -> np.ndarray:
        """The configuration the state pins down; only valid when every
        generator is Z-type (a computational basis state)."""
        if self.n_xtype() != 0:
            raise ValueError("state is not a basis state")
        basis: dict = {}
        for g in range(self.L):
            _reduce_into_basis(basis, self.supp[g], self.sign[g])
        v = 0
        for b in sorted(basis):
            bv, bs = basis[b]
            rest = bv & ~(1 << b)
            if ((rest & v).bit_count() & 1) != bs:
                v |= 1 << b
        out = np.zeros(self.L, dtype=np.uint8)
        for i in range(self.L):
            out[i] = (v >> i) & 1
        return out


def run_quantum(params: Params, rng: RngStream):
    """One quantum trajectory; returns (state, record).

    Per step: error measurements on sites drawn at rate p, then syndrome
    measurements on edges drawn at rate 1-q, with the last row forced.
    Pattern draws are vectorised per row, outcome coins are consumed in
    site/edge order, all from the one stream.
    """
    L, T = params.L, params.T
    E = L - 1
    state = ChainState(L)
    values = np.zeros((T, E), dtype=np.int8)
    for t in range(1, T + 1):
        err = rng.random(L) < params.p
        for i in range(L):
            if err[i]:
                state.measure_error(i, rng)
        if t < T:
            meas = rng.random(E) < 1.0 - params.q
        else:
            meas = np.ones(E, dtype=bool)
        for e in range(E):
            if meas[e]:
                out = state.measure_pair(e, rng)
                values[t - 1, e] = 1 if out == 0 else -1
    return state, SyndromeRecord(values=values)


def evaluate_fqm(state: ChainState, decoded: np.ndarray) -> float:
    """Squared overlap of the decoder's guess with the post-record state.

    After the forced final row at most one X-type generator remains, so
    the value is 1 or 0 when the record pins the configuration and exactly
    1/2 when a global flip stays open (any guess consistent with the final
    syndrome row hits one branch of the cat state).
    """
    return state.overlap_sq(decoded)


@njit(cache=True)
def pattern_survives(errors, synd):
    """Whether the measurement pattern alone pins down m_T.

    errors: (T, L) bool, True where the error measurement happened.
    synd: (T, E) bool, True where the syndrome was measured (row T-1 is
    forced by the model; it is joined unconditionally here).
    """
    T, L = errors.shape
    n = (T + 1) * L
    parent = np.empty(n, np.int64)
    for i in range(n):
        parent[i] = i

    # find with path halving, then union by attaching roots
    for i in range(L - 1):
        # level 0 fully joined
        a = i
        b = i + 1
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        while parent[b] != b:
            parent[b] = parent[parent[b]]
            b = parent[b]
        if a != b:
            parent[a] = b
    for t in range(1, T + 1):
        base = t * L
        for i in range(L):
            if not errors[t - 1, i]:
                a = base - L + i
                b = base + i
                while parent[a] != a:
                    parent[a] = parent[parent[a]]
                    a = parent[a]
                while parent[b] != b:
                    parent[b] = parent[parent[b]]
                    b = parent[b]
                if a != b:
                    parent[a] = b
        for e in range(L - 1):
            if t == T or synd[t - 1, e]:
                a = base + e
                b = base + e + 1
                while parent[a] != a:
                    parent[a] = parent[parent[a]]
                    a = parent[a]
                while parent[b] != b:
                    parent[b] = parent[parent[b]]
                    b = parent[b]
                if a != b:
                    parent[a] = b

    a = 0
    while parent[a] != a:
        a = parent[a]
    b = T * L
    while parent[b] != b:
        b = parent[b]
    return a == b


def full_knowledge_success(params: Params, rng: RngStream) -> float:
    """Expected success of the decoder that sees everything: 1 when the
    pattern survives, 1/2 when one flip stays unresolved."""
    errors = sample_error_pattern(params, rng)
    synd = sample_syndrome_pattern(params, rng)
    return 1.0 if pattern_survives(errors, synd) else 0.5
