"""Exact maximum likelihood decoder via a forward pass over all 2^L configs.

The chain state after each step is a distribution over bit configurations.
One step applies an independent flip with probability p/2 per site, then
conditions on the observed syndrome row. The final forced row restricts
support to the two candidate strings C and Cbar, so a single forward pass
produces both class probabilities P(record, m_T = C) and P(record, m_T =
Cbar); the decoder returns the larger class.

Which edges happened to be measured contributes the same (1-q)/q factors
to both classes, so measurement density never changes the argmax. The
factors are tracked anyway (in log space, together with renormalisation
of the distribution vector) so class_weights returns honest joint
probabilities, which is what the brute force cross-checks compare.

Cost is O(T * L * 2^L) time and O(2^L) memory; fine up to L around 20.
Indexing is little endian: bit i of the vector index is site i.
"""

from __future__ import annotations

import numpy as np

from .lattice import SyndromeRecord, candidate_strings

_edge_masks_cache = {}


def _edge_masks(L: int) -> np.ndarray:
    """Boolean (L-1, 2^L) table: row e true where bits e and e+1 agree."""
    if L not in _edge_masks_cache:
        idx = np.arange(1 << L)
        masks = np.empty((L - 1, 1 << L), dtype=bool)
        for e in range(L - 1):
            masks[e] = ((idx >> e) & 1) == ((idx >> (e + 1)) & 1)
        _edge_masks_cache[L] = masks
    return _edge_masks_cache[L]


def _flip_mix(vec: np.ndarray, fp: float, L: int) -> np.ndarray:
    """Apply an independent flip channel with probability fp to each site."""
    for i in range(L):
        v = vec.reshape(1 << (L - 1 - i), 2, 1 << i)
        a = v[:, 0, :].copy()
        b = v[:, 1, :]
        v[:, 0, :] = (1.0 - fp) * a + fp * b
        v[:, 1, :] = fp * a + (1.0 - fp) * b
    return vec


def class_weights(record: SyndromeRecord, p: float, q: float):
    """Joint probabilities of the record with each final candidate class.

    Returns (w_c, w_cbar, log_scale): P(record and m_T = C) is
    w_c * exp(log_scale), and likewise for Cbar. The mantissas are kept
    in linear space and renormalised each step, so their ratio is exact
    to float precision even when the joint probabilities underflow.
    """
    values = record.values
    T, E = values.shape
    L = E + 1
    fp = 0.5 * p
    masks = _edge_masks(L)
    vec = np.zeros(1 << L)
    vec[0] = 1.0
    log_scale = 0.0
    for k in range(T):
        _flip_mix(vec, fp, L)
        row = values[k]
        keep = np.ones(1 << L, dtype=bool)
        n_meas = 0
        for e in range(E):
            v = row[e]
            if v == 1:
                keep &= masks[e]
                n_meas += 1
            elif v == -1:
                keep &= ~masks[e]
                n_meas += 1
        vec[~keep] = 0.0
        if k < T - 1:
            n_un = E - n_meas
            if n_meas:
                log_scale += n_meas * (np.log1p(-q) if q < 1.0 else -np.inf)
            if n_un:
                log_scale += n_un * (np.log(q) if q > 0.0 else -np.inf)
        m = vec.max()
        if m <= 0.0:
            raise ValueError("record has zero probability under this model")
        vec /= m
        log_scale += np.log(m)
    c, cbar = candidate_strings(values[T - 1])
    ic = int(np.dot(c, 1 << np.arange(L)))
    icbar = int(np.dot(cbar, 1 << np.arange(L)))
    return float(vec[ic]), float(vec[icbar]), float(log_scale)


def decode_mld(record: SyndromeRecord, p: float, q: float = 0.5, rng=None) -> np.ndarray:
    """Most likely final configuration given the record; ties take a coin.

    q is accepted for signature uniformity with class_weights but cannot
    change the decision.
    """
    w_c, w_cbar, _ = class_weights(record, p, q)
    c, cbar = candidate_strings(record.final_row())
    if w_c > w_cbar:
        return c
    if w_cbar > w_c:
        return cbar
    if rng is not None and rng.coin():
        return cbar
    return c
