"""Matching decoder on the space-time defect lattice.

Geometry. Between qubit columns i and i+1 (1-indexed sites) sits dual
column d = i, d = 1..L-1. Dual rows tau = 0..T-1 live between syndrome
rows; a flip at step t on qubit i is a unit-cost horizontal move at row
tau = t-1 crossing qubit column i. The vertical move from row tau-1 to tau
in column d is free when edge d was not measured at step tau, and blocked
when it was. A maximal run of rows joined by free vertical moves is an
*interval*; paths change rows for free inside an interval, so shortest
paths live on the graph of intervals of adjacent columns with overlapping
row ranges, one unit of cost per column change.

Defects. Scanning a column's measured values downward from a +1 baseline,
every sign change revealed at step t creates a defect at (tau = t-1, d).
The decoder pairs defects (or routes them to the nearer lattice boundary)
along minimum total cost, then flips every qubit column crossed an odd
number of times. Crossing parity only depends on path endpoints, so the
correction is read off the pairing directly: a defect pair at columns
d1 < d2 toggles qubits d1+1..d2, a left boundary exit from column d
toggles qubits 1..d, a right exit toggles d+1..L.

One exact reduction keeps the fast path small. Sending u and v to their
boundaries costs wb(u) + wb(v) (each defect's nearer side), so pairing
them up only ever helps when dist(u, v) < wb(u) + wb(v), a gain of
wb(u) + wb(v) - dist. The total equals sum(wb) minus the maximum gain
matching, taken over pair edges with positive gain only. Distances are
bounded by wb(u) + wb(v) <= L - 1, so the gain graph is found by
depth-bounded searches, splits into time-local components however long
the record is, and needs no perfect matching (unmatched means boundary).
"""

from __future__ import annotations

from collections import deque

import networkx as nx
import numpy as np
from numba import njit

from .lattice import SyndromeRecord
from ._blossom import max_weight_matching_arrays

_BIG = np.int64(1) << 40


def extract_defects(record: SyndromeRecord) -> np.ndarray:
    """Defect coordinates as an (n, 2) int array of (tau, d) pairs.

    d is the 1-indexed dual column (edge d-1 in array indexing). Scan order
    is column-major: by d, then by time.
    """
    values = record.values
    T, E = values.shape
    out = []
    for e in range(E):
        prev = 1
        col = values[:, e]
        for k in np.flatnonzero(col):
            v = int(col[k])
            if v != prev:
                out.append((int(k), e + 1))
            prev = v
    if not out:
        return np.empty((0, 2), dtype=np.int64)
    return np.array(out, dtype=np.int64)


def _column_intervals(values: np.ndarray) -> list[list[tuple[int, int]]]:
    """Per column, the free-row intervals as (lo, hi) inclusive row ranges."""
    T, E = values.shape
    cols = []
    for e in range(E):
        meas = np.flatnonzero(values[:, e] != 0)
        lo = 0
        ivals = []
        for k in meas:
            if k <= T - 2:
                ivals.append((lo, int(k)))
                lo = int(k) + 1
        ivals.append((lo, T - 1))
        cols.append(ivals)
    return cols


def _interval_graph(values: np.ndarray):
    """Supernode graph: interval index per (column, row) plus adjacency."""
    T, E = values.shape
    cols = _column_intervals(values)
    offsets = np.zeros(E + 1, dtype=np.int64)
    for e in range(E):
        offsets[e + 1] = offsets[e] + len(cols[e])
    adj: list[list[int]] = [[] for _ in range(int(offsets[E]))]
    for e in range(E - 1):
        a, b = cols[e], cols[e + 1]
        i = j = 0
        while i < len(a) and j < len(b):
            if a[i][0] <= b[j][1] and b[j][0] <= a[i][1]:
                u = int(offsets[e]) + i
                v = int(offsets[e + 1]) + j
                adj[u].append(v)
                adj[v].append(u)
            if a[i][1] < b[j][1]:
                i += 1
            else:
                j += 1
    return cols, offsets, adj


def _snode_of(cols, offsets, tau: int, d: int) -> int:
    ivals = cols[d - 1]
    for i, (lo, hi) in enumerate(ivals):
        if lo <= tau <= hi:
            return int(offsets[d - 1]) + i
    raise ValueError("defect row outside every interval")


def defect_distances(record: SyndromeRecord, defects: np.ndarray) -> np.ndarray:
    """All-pairs shortest path costs between defects on the dual lattice.

    Unreachable pairs get a large sentinel. Cost counts column changes;
    row moves inside free intervals are free.
    """
    n = defects.shape[0]
    dist = np.full((n, n), _BIG, dtype=np.int64)
    if n == 0:
        return dist
    cols, offsets, adj = _interval_graph(record.values)
    nsn = len(adj)
    snodes = [_snode_of(cols, offsets, int(t), int(d)) for t, d in defects]
    for i, s0 in enumerate(snodes):
        dvec = np.full(nsn, -1, dtype=np.int64)
        dvec[s0] = 0
        dq = deque([s0])
        while dq:
            u = dq.popleft()
            for v in adj[u]:
                if dvec[v] < 0:
                    dvec[v] = dvec[u] + 1
                    dq.append(v)
        for j, s1 in enumerate(snodes):
            if dvec[s1] >= 0:
                dist[i, j] = dvec[s1]
    return dist


def build_defect_graph(record: SyndromeRecord) -> nx.Graph:
    """Matching graph: defect nodes, one boundary partner node per defect.

    Nodes are ("d", i) and ("b", i). Defect-defect edges carry lattice
    distances (omitted when unreachable), each defect connects to its own
    boundary node at cost min(d, L - d), and boundary nodes interconnect at
    zero cost so unused partners pair off freely.
    """
    defects = extract_defects(record)
    n = defects.shape[0]
    L = record.n_edges + 1
    G = nx.Graph(defects=defects, L=L)
    dist = defect_distances(record, defects)
    for i in range(n):
        d = int(defects[i, 1])
        G.add_edge(("d", i), ("b", i), weight=min(d, L - d))
        for j in range(i + 1, n):
            if dist[i, j] < _BIG:
                G.add_edge(("d", i), ("d", j), weight=int(dist[i, j]))
        for j in range(i + 1, n):
            G.add_edge(("b", i), ("b", j), weight=0)
    return G


def min_weight_perfect_matching(G: nx.Graph):
    """Exact minimum weight perfect matching; returns (pairs, total weight)."""
    if G.number_of_nodes() == 0:
        return set(), 0
    pairs = nx.min_weight_matching(G)
    total = sum(G[u][v]["weight"] for u, v in pairs)
    return pairs, int(total)


def _parity_from_pairs(pairs, defects: np.ndarray, L: int) -> np.ndarray:
    parity = np.zeros(L, dtype=np.uint8)
    for u, v in pairs:
        if u[0] == "b" and v[0] == "b":
            continue
        if u[0] == "d" and v[0] == "d":
            d1 = int(defects[u[1], 1])
            d2 = int(defects[v[1], 1])
            lo, hi = min(d1, d2), max(d1, d2)
            parity[lo:hi] ^= 1
        else:
            i = u[1] if u[0] == "d" else v[1]
            d = int(defects[i, 1])
            if d < L - d:
                parity[:d] ^= 1
            else:
                parity[d:] ^= 1
    return parity


def decode_mwpm(record: SyndromeRecord, backend: str = "auto", return_weight: bool = False):
    """Matching decoder output: the bit string it believes is m_T.

    backend "auto" (or "fast") runs the jitted pipeline, "reference" goes
    through the explicit defect graph and the library matcher. Both return
    a minimum weight correction; tie choices may differ between backends.
    """
    if backend in ("auto", "fast"):
        L = record.n_edges + 1
        parity, weight = _fast_decode(record.values, L)
        decoded = parity
    elif backend == "reference":
        G = build_defect_graph(record)
        pairs, weight = min_weight_perfect_matching(G)
        decoded = _parity_from_pairs(pairs, G.graph["defects"], G.graph["L"])
    else:
        raise ValueError(f"unknown backend {backend!r}")
    if return_weight:
        return decoded, int(weight)
    return decoded


@njit(cache=True)
def _fast_decode(values, L):
    """Jitted end-to-end matching decode of one record.

    Returns (decoded uint8 (L,), total weight). Interval graph, then
    depth-bounded BFS per defect to collect positive-gain pair edges, then
    a max-gain matching per gain component; unmatched defects exit through
    their nearer boundary.
    """
    T, E = values.shape
    # intervals per column; iid(tau) = number of measured rows k < tau
    nint = np.zeros(E, np.int64)
    off = np.zeros(E + 1, np.int64)
    for e in range(E):
        c = 1
        for k in range(T - 1):
            if values[k, e] != 0:
                c += 1
        nint[e] = c
        off[e + 1] = off[e] + c
    V = off[E]
    ilo = np.empty(V, np.int64)
    ihi = np.empty(V, np.int64)
    for e in range(E):
        idx = off[e]
        lo = np.int64(0)
        for k in range(T - 1):
            if values[k, e] != 0:
                ilo[idx] = lo
                ihi[idx] = k
                idx += 1
                lo = k + 1
        ilo[idx] = lo
        ihi[idx] = T - 1

    # adjacency between intervals of adjacent columns (overlap = edge)
    deg = np.zeros(V + 1, np.int64)
    for e in range(E - 1):
        i = off[e]
        j = off[e + 1]
        while i < off[e + 1] and j < off[e + 2]:
            if ilo[i] <= ihi[j] and ilo[j] <= ihi[i]:
                deg[i + 1] += 1
                deg[j + 1] += 1
            if ihi[i] < ihi[j]:
                i += 1
            else:
                j += 1
    aptr = np.cumsum(deg)
    aval = np.empty(aptr[V], np.int64)
    fill = aptr[:V].copy()
    for e in range(E - 1):
        i = off[e]
        j = off[e + 1]
        while i < off[e + 1] and j < off[e + 2]:
            if ilo[i] <= ihi[j] and ilo[j] <= ihi[i]:
                aval[fill[i]] = j
                fill[i] += 1
                aval[fill[j]] = i
                fill[j] += 1
            if ihi[i] < ihi[j]:
                i += 1
            else:
                j += 1

    # defects: column-major scan, sign changes from a +1 baseline
    dcol = np.empty(T * E, np.int64)  # dual column d (1-indexed)
    dsn = np.empty(T * E, np.int64)  # supernode
    nd = 0
    for e in range(E):
        prev = np.int8(1)
        seen = np.int64(0)
        for k in range(T):
            v = values[k, e]
            if v != 0:
                if v != prev:
                    dcol[nd] = e + 1
                    dsn[nd] = off[e] + seen
                    nd += 1
                prev = v
                if k <= T - 2:
                    seen += 1

    parity = np.zeros(L, np.uint8)
    weight = np.int64(0)
    if nd == 0:
        return parity, weight

    wb = np.empty(nd, np.int64)
    for i in range(nd):
        d = dcol[i]
        wb[i] = d if d < L - d else L - d
        weight += wb[i]
    wbmax = (L - 1) // 2

    # defects indexed by supernode
    scount = np.zeros(V + 1, np.int64)
    for i in range(nd):
        scount[dsn[i] + 1] += 1
    sptr = np.cumsum(scount)
    sval = np.empty(nd, np.int64)
    sfill = sptr[:V].copy()
    for i in range(nd):
        s = dsn[i]
        sval[sfill[s]] = i
        sfill[s] += 1

    # depth-bounded BFS from each defect: a pair is only worth an edge when
    # its distance beats both boundary exits, and that caps the distance at
    # wb[i] + wbmax - 1, so each search stays inside a local window no
    # matter how long the record is
    bfsq = np.empty(V, np.int64)
    ea = np.empty(256, np.int64)
    eb = np.empty(256, np.int64)
    eg = np.empty(256, np.int64)
    ne = 0
    dvec = np.full(V, -1, np.int64)
    for i in range(nd):
        depth_cap = wb[i] + wbmax - 1
        s0 = dsn[i]
        dvec[s0] = 0
        qh = 0
        qt = 0
        bfsq[qt] = s0
        qt += 1
        while qh < qt:
            u = bfsq[qh]
            qh += 1
            du = dvec[u]
            for si in range(sptr[u], sptr[u + 1]):
                j = sval[si]
                if j > i and du < wb[i] + wb[j]:
                    if ne == ea.shape[0]:
                        grown = ea.shape[0] * 2
                        ea2 = np.empty(grown, np.int64)
                        ea2[:ne] = ea[:ne]
                        ea = ea2
                        eb2 = np.empty(grown, np.int64)
                        eb2[:ne] = eb[:ne]
                        eb = eb2
                        eg2 = np.empty(grown, np.int64)
                        eg2[:ne] = eg[:ne]
                        eg = eg2
                    ea[ne] = i
                    eb[ne] = j
                    eg[ne] = wb[i] + wb[j] - du
                    ne += 1
            if du < depth_cap:
                for ai in range(aptr[u], aptr[u + 1]):
                    w = aval[ai]
                    if dvec[w] < 0:
                        dvec[w] = du + 1
                        bfsq[qt] = w
                        qt += 1
        for s in range(qt):
            dvec[bfsq[s]] = -1

    # components of the gain graph via union find
    par = np.empty(nd, np.int64)
    for i in range(nd):
        par[i] = i
    for e in range(ne):
        a = ea[e]
        b = eb[e]
        while par[a] != a:
            par[a] = par[par[a]]
            a = par[a]
        while par[b] != b:
            par[b] = par[par[b]]
            b = par[b]
        if a != b:
            par[a] = b
    ncomp = 0
    dcmp = np.full(nd, -1, np.int64)
    for i in range(nd):
        r = i
        while par[r] != r:
            r = par[r]
        c = i
        while par[c] != r:
            nxt = par[c]
            par[c] = r
            c = nxt
        if dcmp[r] < 0:
            dcmp[r] = ncomp
            ncomp += 1
    for i in range(nd):
        dcmp[i] = dcmp[par[i]] if par[i] != i else dcmp[i]

    # bucket defects and edges by component
    ccount = np.zeros(ncomp + 1, np.int64)
    for i in range(nd):
        ccount[dcmp[i] + 1] += 1
    cptr = np.cumsum(ccount)
    dorder = np.empty(nd, np.int64)
    loc = np.empty(nd, np.int64)
    cfill = cptr[:ncomp].copy()
    for i in range(nd):
        c = dcmp[i]
        dorder[cfill[c]] = i
        loc[i] = cfill[c] - cptr[c]
        cfill[c] += 1
    ecount = np.zeros(ncomp + 1, np.int64)
    for e in range(ne):
        ecount[dcmp[ea[e]] + 1] += 1
    eptr = np.cumsum(ecount)
    eorder = np.empty(ne, np.int64)
    efill = eptr[:ncomp].copy()
    for e in range(ne):
        c = dcmp[ea[e]]
        eorder[efill[c]] = e
        efill[c] += 1

    # per component: max-gain matching decides which defects pair up; the
    # rest exit through their nearer boundary
    for c in range(ncomp):
        k = cptr[c + 1] - cptr[c]
        me = eptr[c + 1] - eptr[c]
        matched = np.full(k, -1, np.int64)
        if me > 0:
            lea = np.empty(me, np.int64)
            leb = np.empty(me, np.int64)
            lew = np.empty(me, np.int64)
            for x in range(me):
                e = eorder[eptr[c] + x]
                lea[x] = loc[ea[e]]
                leb[x] = loc[eb[e]]
                lew[x] = eg[e]
            matched = max_weight_matching_arrays(k, lea, leb, lew, False)
            for x in range(me):
                if matched[lea[x]] == leb[x]:
                    weight -= lew[x]
        for a in range(k):
            i = dorder[cptr[c] + a]
            b = matched[a]
            if b > a:
                j = dorder[cptr[c] + b]
                d1 = dcol[i]
                d2 = dcol[j]
                lo = d1 if d1 < d2 else d2
                hi = d1 + d2 - lo
                for qq in range(lo, hi):
                    parity[qq] ^= 1
            elif b < 0:
                dd = dcol[i]
                if dd < L - dd:
                    for qq in range(dd):
                        parity[qq] ^= 1
                else:
                    for qq in range(dd, L):
                        parity[qq] ^= 1
    return parity, weight
