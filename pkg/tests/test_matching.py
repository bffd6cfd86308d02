import numpy as np
from hypothesis import given, settings, strategies as st

from ptimdec.lattice import Params, SyndromeRecord, syndrome_of_config
from ptimdec.matching import (
    build_defect_graph,
    decode_mwpm,
    defect_distances,
    extract_defects,
    min_weight_perfect_matching,
)
from ptimdec.sampler import RngStream, run_classical

from helpers import min_flips_dp


def test_extract_defects_single_row():
    rec = SyndromeRecord(np.array([[-1, 1]], dtype=np.int8))
    d = extract_defects(rec)
    assert d.tolist() == [[0, 1]]


def test_extract_defects_pair():
    rec = SyndromeRecord(np.array([[-1, -1], [-1, -1]], dtype=np.int8))
    d = extract_defects(rec)
    assert d.tolist() == [[0, 1], [0, 2]]


def test_extract_defects_clean():
    rec = SyndromeRecord(np.ones((3, 4), dtype=np.int8))
    assert extract_defects(rec).shape == (0, 2)


def test_decode_single_defect():
    rec = SyndromeRecord(np.array([[-1, 1]], dtype=np.int8))
    for backend in ("fast", "reference"):
        dec, w = decode_mwpm(rec, backend=backend, return_weight=True)
        assert dec.tolist() == [1, 0, 0]
        assert w == 1


def test_decode_pair_beats_boundaries():
    rec = SyndromeRecord(np.array([[-1, -1], [-1, -1]], dtype=np.int8))
    for backend in ("fast", "reference"):
        dec, w = decode_mwpm(rec, backend=backend, return_weight=True)
        assert dec.tolist() == [0, 1, 0]
        assert w == 1


def test_decode_clean_record():
    rec = SyndromeRecord(np.ones((4, 2), dtype=np.int8))
    for backend in ("fast", "reference"):
        dec, w = decode_mwpm(rec, backend=backend, return_weight=True)
        assert dec.tolist() == [0, 0, 0]
        assert w == 0


def test_detour_example():
    # column 1 is blocked vertically by its own row-0 measurement, the
    # cheap route to the late defects runs down the unmeasured column 2
    vals = np.array([[-1, 0], [0, 0], [1, -1]], dtype=np.int8)
    rec = SyndromeRecord(vals)
    defects = extract_defects(rec)
    assert defects.tolist() == [[0, 1], [2, 1], [2, 2]]
    dist = defect_distances(rec, defects)
    assert dist[0, 1] == 2
    assert dist[0, 2] == 1
    assert dist[1, 2] == 1
    for backend in ("fast", "reference"):
        dec, w = decode_mwpm(rec, backend=backend, return_weight=True)
        assert dec.tolist() == [1, 1, 0]
        assert w == 2
    assert min_flips_dp(rec) == 2
    assert min_flips_dp(rec, final=np.array([1, 1, 0], dtype=np.uint8)) == 2
    assert min_flips_dp(rec, final=np.array([0, 0, 1], dtype=np.uint8)) == 3


def test_defect_graph_structure():
    rec = SyndromeRecord(np.array([[-1, -1], [-1, -1]], dtype=np.int8))
    G = build_defect_graph(rec)
    nodes = set(G.nodes)
    assert ("d", 0) in nodes and ("d", 1) in nodes
    assert ("b", 0) in nodes and ("b", 1) in nodes
    assert G[("d", 0)][("b", 0)]["weight"] == 1
    assert G[("d", 1)][("b", 1)]["weight"] == 1
    assert G[("b", 0)][("b", 1)]["weight"] == 0
    assert G[("d", 0)][("d", 1)]["weight"] == 1
    pairs, total = min_weight_perfect_matching(G)
    assert total == 1


def _random_records(n, seed, lmax=7, tmax=5, pspan=(0.1, 0.6)):
    rng = np.random.default_rng(seed)
    out = []
    for i in range(n):
        L = int(rng.choice(np.arange(3, lmax + 1, 2)))
        T = int(rng.integers(1, tmax + 1))
        p = float(rng.uniform(*pspan))
        q = float(rng.uniform(0.0, 0.85))
        params = Params(p=p, q=q, L=L, T=T)
        traj = run_classical(params, RngStream.from_seed(10_000 + i))
        out.append(traj.record)
    return out


def test_weight_matches_dp_oracle():
    for rec in _random_records(150, seed=5):
        dec, w = decode_mwpm(rec, backend="fast", return_weight=True)
        assert w == min_flips_dp(rec)
        # the decoded class itself admits a pattern of that weight
        assert min_flips_dp(rec, final=dec) == w


def test_fast_matches_reference():
    for rec in _random_records(120, seed=6, lmax=9, tmax=7):
        dec_f, w_f = decode_mwpm(rec, backend="fast", return_weight=True)
        dec_r, w_r = decode_mwpm(rec, backend="reference", return_weight=True)
        assert w_f == w_r
        final = rec.final_row()
        assert np.array_equal(syndrome_of_config(dec_f), final)
        assert np.array_equal(syndrome_of_config(dec_r), final)


def test_backend_determinism():
    for rec in _random_records(10, seed=7):
        for backend in ("fast", "reference"):
            a = decode_mwpm(rec, backend=backend)
            b = decode_mwpm(rec, backend=backend)
            assert np.array_equal(a, b)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_decoded_consistent_with_final_row(seed):
    rng = np.random.default_rng(seed)
    L = int(rng.choice([3, 5, 7, 9]))
    T = int(rng.integers(1, 8))
    params = Params(p=float(rng.uniform(0, 0.7)), q=float(rng.uniform(0, 0.9)), L=L, T=T)
    rec = run_classical(params, RngStream.from_seed(seed)).record
    dec = decode_mwpm(rec)
    assert dec[0] == 0 or dec[0] == 1
    assert np.array_equal(syndrome_of_config(dec), rec.final_row())
