"""Compiled inner loops (numba).

Each kernel works on flat numpy arrays and mirrors a readable routine
elsewhere in the package; the test-suite checks that both agree.
"""
from __future__ import annotations


import numpy as np
from numba import njit

# ---------------------------------------------------------------------------
# SplitMix64 and the ear-gluing generator

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


@njit(cache=True)
def _sm_next(state):
    state[0] += _GOLDEN
    z = state[0]
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


@njit(cache=True)
def _bit_length(x):
    b = 0
    while x > 0:
        x >>= 1
        b += 1
    return b


@njit(cache=True)
def _below(state, bound):
    if bound == 1:
        return 0
    shift = np.uint64(64 - _bit_length(bound - 1))
    ub = np.uint64(bound)
    while True:
        r = _sm_next(state) >> shift
        if r < ub:
            return np.int64(r)


@njit(cache=True)
def splitmix_draws(seed, count):
    state = np.empty(1, dtype=np.uint64)
    state[0] = np.uint64(seed)
    out = np.empty(count, dtype=np.uint64)
    for i in range(count):
        out[i] = _sm_next(state)
    return out


@njit(cache=True)
def splitmix_below(seed, bound, count):
    state = np.empty(1, dtype=np.uint64)
    state[0] = np.uint64(seed)
    out = np.empty(count, dtype=np.int64)
    for i in range(count):
        out[i] = _below(state, bound)
    return out


@njit(cache=True)
def generate_kernel(seed, target_n, ear_min, ear_max, bias, max_polygons):
    """bias: 0 uniform, 1 recent, 2 external.  max_polygons <= 0 means unbounded."""
    state = np.empty(1, dtype=np.uint64)
    state[0] = np.uint64(seed)
    cap_n = target_n + ear_max + 2
    cap_m = 2 * cap_n + 2
    tail = np.empty(cap_m, dtype=np.int64)
    head = np.empty(cap_m, dtype=np.int64)
    vflat = np.empty(2 * cap_m + 2, dtype=np.int64)
    voff = np.empty(cap_m + 2, dtype=np.int64)
    eoff = np.empty(cap_m + 2, dtype=np.int64)
    closing = np.empty(cap_m + 1, dtype=np.int64)
    pool = np.empty(cap_m, dtype=np.int64)
    ppos = np.full(cap_m, -1, dtype=np.int64)
    npool = 0
    track = bias == 2

    # base edge (0, 1)
    tail[0] = 0
    head[0] = 1
    if track:
        pool[0] = 0
        ppos[0] = 0
        npool = 1
    m = 1
    voff[0] = 0
    eoff[0] = 0
    vflat[0] = 0
    vflat[1] = 1
    closing[0] = -1
    nv = 2
    k = 1
    voff[1] = 2
    eoff[1] = 1

    length = ear_min if ear_min == ear_max else ear_min + _below(state, ear_max - ear_min + 1)
    host = 0
    u = 0
    v = 1
    n = 2
    polygons = 0
    while True:
        # glue a path of `length` edges from u to v, fresh internal vertices
        prev = u
        vflat[nv] = u
        nv += 1
        for j in range(length):
            if j == length - 1:
                w = v
            else:
                w = n
                n += 1
            tail[m] = prev
            head[m] = w
            if track:
                pool[npool] = m
                ppos[m] = npool
                npool += 1
            m += 1
            vflat[nv] = w
            nv += 1
            prev = w
        closing[k] = host
        k += 1
        voff[k] = nv
        eoff[k] = m
        polygons += 1

        if n >= target_n or (max_polygons > 0 and polygons >= max_polygons):
            break
        if bias == 0:
            host = _below(state, m)
        elif bias == 1:
            if _below(state, 2) == 0:
                first = eoff[k - 1]
                host = first + _below(state, m - first)
            else:
                host = _below(state, m)
        else:
            host = pool[_below(state, npool)]
            i = ppos[host]
            moved = pool[npool - 1]
            pool[i] = moved
            ppos[moved] = i
            npool -= 1
            ppos[host] = -1
        u = tail[host]
        v = head[host]
        length = ear_min if ear_min == ear_max else ear_min + _below(state, ear_max - ear_min + 1)

    return (
        n,
        tail[:m].copy(),
        head[:m].copy(),
        vflat[:nv].copy(),
        voff[: k + 1].copy(),
        eoff[: k + 1].copy(),
        closing[:k].copy(),
    )


# ---------------------------------------------------------------------------
# Reverse ear peeling


@njit(cache=True)
def _lookup(keys, key_ids, n, x, y):
    if x > y:
        x, y = y, x
    key = x * n + y
    i = np.searchsorted(keys, key)
    if i < len(keys) and keys[i] == key:
        return key_ids[i]
    return -1


@njit(cache=True)
def _edge_keys(n, tail, head):
    lo = np.minimum(tail, head)
    hi = np.maximum(tail, head)
    keys = lo * n + hi
    order = np.argsort(keys)  # keys are distinct
    return keys[order], order.astype(np.int64)


@njit(cache=True)
def _short_scan(offsets, incident, tail, head, x, y):
    """Edge {x, y} found by scanning the shorter incidence list, -1 if absent,
    -2 if both lists are long."""
    if offsets[y + 1] - offsets[y] < offsets[x + 1] - offsets[x]:
        x, y = y, x
    if offsets[x + 1] - offsets[x] > 16:
        return -2
    for i in range(offsets[x], offsets[x + 1]):
        e = incident[i]
        if tail[e] == y or head[e] == y:
            return e
    return -1


@njit(cache=True)
def _set_pair(v, offsets, incident, alive, pa, pb):
    a = -1
    for i in range(offsets[v], offsets[v + 1]):
        e = incident[i]
        if alive[e]:
            if a == -1:
                a = e
            else:
                pa[v] = a
                pb[v] = e
                return


@njit(cache=True)
def _vpush(heap, size, v):
    i = size
    while i > 0:
        p = (i - 1) >> 1
        if heap[p] <= v:
            break
        heap[i] = heap[p]
        i = p
    heap[i] = v
    return size + 1


@njit(cache=True)
def _vpop(heap, size):
    top = heap[0]
    size -= 1
    x = heap[size]
    i = 0
    while True:
        c = 2 * i + 1
        if c >= size:
            break
        if c + 1 < size and heap[c + 1] < heap[c]:
            c += 1
        if heap[c] >= x:
            break
        heap[i] = heap[c]
        i = c
    if size > 0:
        heap[i] = x
    return top, size


@njit(cache=True)
def peel_kernel(n, tail, head, offsets, incident):
    """Strip removable degree-2 chains until one cycle is left.

    Returns ``(ok, vflat, voff, eflat, eoff, closing, residual_n, residual_m)``
    with the ears in construction order when ``ok``.
    """
    m = len(tail)
    deg = offsets[1:] - offsets[:-1]
    # sorted edge keys, built on the first lookup between two busy vertices
    keys = np.empty(0, dtype=np.int64)
    key_ids = np.empty(0, dtype=np.int64)
    alive = np.ones(m, dtype=np.uint8)
    gone = np.zeros(n, dtype=np.uint8)
    examined = np.zeros(n, dtype=np.uint8)
    pa = np.full(n, -1, dtype=np.int64)
    pb = np.full(n, -1, dtype=np.int64)

    # worklist of vertex ids as an array min-heap; a vertex re-enters each
    # time its degree drops to 2, so n + 2m slots suffice
    heap = np.empty(n + 2 * m + 1, dtype=np.int64)
    hsize = 0
    for v in range(n):
        if deg[v] == 2:
            _set_pair(v, offsets, incident, alive, pa, pb)
            heap[hsize] = v  # ascending order is already a heap
            hsize += 1

    # peeled ears, in removal order
    p_v = np.empty(2 * m + 2, dtype=np.int64)
    p_voff = np.zeros(m + 2, dtype=np.int64)
    p_e = np.empty(m + 1, dtype=np.int64)
    p_eoff = np.zeros(m + 2, dtype=np.int64)
    p_close = np.empty(m + 1, dtype=np.int64)
    npeeled = 0

    lv = np.empty(n + 1, dtype=np.int64)
    le = np.empty(n + 1, dtype=np.int64)
    rv = np.empty(n + 1, dtype=np.int64)
    re = np.empty(n + 1, dtype=np.int64)
    edges_left = m
    vertices_left = n
    cyc_len = -1

    while hsize > 0:
        v, hsize = _vpop(heap, hsize)
        if deg[v] != 2 or gone[v] or examined[v]:
            continue
        # walk left from v
        nl = 0
        nle = 0
        cur = v
        e = pa[v]
        closed = False
        while True:
            le[nle] = e
            nle += 1
            nxt = tail[e] if head[e] == cur else head[e]
            if nxt == v:
                closed = True
                break
            lv[nl] = nxt
            nl += 1
            if deg[nxt] != 2:
                break
            e = pb[nxt] if pa[nxt] == e else pa[nxt]
            cur = nxt
        if closed:
            cyc_len = nle
            break
        nr = 0
        cur = v
        e = pb[v]
        while True:
            re[nr] = e
            nxt = tail[e] if head[e] == cur else head[e]
            rv[nr] = nxt
            nr += 1
            if deg[nxt] != 2:
                break
            e = pb[nxt] if pa[nxt] == e else pa[nxt]
            cur = nxt
        x = lv[nl - 1]
        y = rv[nr - 1]
        close = -1
        if x != y:
            close = _short_scan(offsets, incident, tail, head, x, y)
            if close == -2:
                if len(keys) != m:
                    keys, key_ids = _edge_keys(n, tail, head)
                close = _lookup(keys, key_ids, n, x, y)
        if close == -1 or not alive[close]:
            for i in range(nl - 1):
                examined[lv[i]] = 1
            examined[v] = 1
            for i in range(nr - 1):
                examined[rv[i]] = 1
            continue
        # record the chain oriented from the smaller end vertex
        base_v = p_voff[npeeled]
        base_e = p_eoff[npeeled]
        cnt_v = nl + 1 + nr
        cnt_e = nle + nr
        j = 0
        for i in range(nl - 1, -1, -1):
            p_v[base_v + j] = lv[i]
            j += 1
        p_v[base_v + j] = v
        j += 1
        for i in range(nr):
            p_v[base_v + j] = rv[i]
            j += 1
        j = 0
        for i in range(nle - 1, -1, -1):
            p_e[base_e + j] = le[i]
            j += 1
        for i in range(nr):
            p_e[base_e + j] = re[i]
            j += 1
        if x > y:
            p_v[base_v:base_v + cnt_v] = p_v[base_v:base_v + cnt_v][::-1].copy()
            p_e[base_e:base_e + cnt_e] = p_e[base_e:base_e + cnt_e][::-1].copy()
        p_close[npeeled] = close
        npeeled += 1
        p_voff[npeeled] = base_v + cnt_v
        p_eoff[npeeled] = base_e + cnt_e
        for i in range(base_v + 1, base_v + cnt_v - 1):
            gone[p_v[i]] = 1
        for i in range(base_e, base_e + cnt_e):
            alive[p_e[i]] = 0
        vertices_left -= cnt_v - 2
        edges_left -= cnt_e
        for w in (x, y):
            deg[w] -= 1
            if deg[w] == 2:
                _set_pair(w, offsets, incident, alive, pa, pb)
                examined[w] = 0
                hsize = _vpush(heap, hsize, w)

    if cyc_len == -1 or cyc_len != edges_left or edges_left != vertices_left:
        empty = np.empty(0, dtype=np.int64)
        return False, empty, empty, empty, empty, empty, vertices_left, edges_left

    # the closed walk: vertices v, lv[0..], edges le[0..]; le[i] joins cyc_v[i], cyc_v[i+1]
    L = cyc_len
    cyc_v = np.empty(L, dtype=np.int64)
    cyc_v[0] = v
    for i in range(L - 1):
        cyc_v[i + 1] = lv[i]
    kmin = 0
    for i in range(1, L):
        if le[i] < le[kmin]:
            kmin = i
    base = le[kmin]
    rest_v = np.empty(L, dtype=np.int64)
    rest_e = np.empty(L - 1, dtype=np.int64)
    for i in range(L):
        rest_v[i] = cyc_v[(kmin + 1 + i) % L]
    for i in range(L - 1):
        rest_e[i] = le[(kmin + 1 + i) % L]
    if rest_v[0] > rest_v[L - 1]:
        rest_v = rest_v[::-1].copy()
        rest_e = rest_e[::-1].copy()

    k = npeeled + 2
    total_v = 2 + L + p_voff[npeeled]
    total_e = 1 + (L - 1) + p_eoff[npeeled]
    vflat = np.empty(total_v, dtype=np.int64)
    eflat = np.empty(total_e, dtype=np.int64)
    voff = np.empty(k + 1, dtype=np.int64)
    eoff = np.empty(k + 1, dtype=np.int64)
    closing = np.empty(k, dtype=np.int64)
    vflat[0] = rest_v[0]
    vflat[1] = rest_v[L - 1]
    eflat[0] = base
    voff[0] = 0
    voff[1] = 2
    eoff[0] = 0
    eoff[1] = 1
    closing[0] = -1
    vflat[2:2 + L] = rest_v
    eflat[1:L] = rest_e
    voff[2] = 2 + L
    eoff[2] = L
    closing[1] = base
    pv = 2 + L
    pe = L
    idx = 2
    for t in range(npeeled - 1, -1, -1):
        a, b = p_voff[t], p_voff[t + 1]
        vflat[pv:pv + b - a] = p_v[a:b]
        pv += b - a
        a, b = p_eoff[t], p_eoff[t + 1]
        eflat[pe:pe + b - a] = p_e[a:b]
        pe += b - a
        closing[idx] = p_close[t]
        idx += 1
        voff[idx] = pv
        eoff[idx] = pe
    return True, vflat, voff, eflat, eoff, closing, vertices_left, edges_left


# ---------------------------------------------------------------------------
# Cheapest-boundary-edge removal loop with an indexed binary heap


# Heap slots hold packed keys ``cost << 32 | edge``: one comparison orders
# by (cost, edge id) without touching the cost array.
_ID_MASK = (1 << 32) - 1
_NEG_INF = -(1 << 62)


@njit(cache=True)
def _sift_up(heap, pos, i):
    x = heap[i]
    while i > 0:
        p = (i - 1) >> 1
        y = heap[p]
        if x < y:
            heap[i] = y
            pos[y & _ID_MASK] = i
            i = p
        else:
            break
    heap[i] = x
    pos[x & _ID_MASK] = i


@njit(cache=True)
def _sift_down(heap, pos, i, size):
    x = heap[i]
    while True:
        c = 2 * i + 1
        if c >= size:
            break
        if c + 1 < size and heap[c + 1] < heap[c]:
            c += 1
        y = heap[c]
        if y < x:
            heap[i] = y
            pos[y & _ID_MASK] = i
            i = c
        else:
            break
    heap[i] = x
    pos[x & _ID_MASK] = i


@njit(cache=True)
def _extract_min(heap, pos, size):
    top = heap[0] & _ID_MASK
    pos[top] = -1
    size -= 1
    if size > 0:
        heap[0] = heap[size]
        _sift_down(heap, pos, 0, size)
    return top, size


@njit(cache=True)
def mast_kernel(m, cyc_off, cyc_edges, inc_off, inc_cyc):
    """Returns ``(removal_order, cost, stats)``; stats = inserts, extracts,
    deletes, cycle edge visits, incidence visits.  Needs ``m < 2**31`` so a
    cost (at most the number of removed edges) and an id share one word."""
    k = len(cyc_off) - 1
    unp = inc_off[1:] - inc_off[:-1]
    cost = np.zeros(m, dtype=np.int64)
    processed = np.zeros(k, dtype=np.uint8)
    heap = np.empty(m, dtype=np.int64)
    pos = np.full(m, -1, dtype=np.int64)
    size = 0
    for e in range(m):
        if unp[e] == 1:
            heap[size] = e
            pos[e] = size
            size += 1
    inserts = size
    extracts = 0
    deletes = 0
    scans = 0
    inc_scans = 0
    order = np.empty(k, dtype=np.int64)
    nrem = 0
    while size > 0:
        e, size = _extract_min(heap, pos, size)
        extracts += 1
        order[nrem] = e
        nrem += 1
        ci = -1
        for i in range(inc_off[e], inc_off[e + 1]):
            inc_scans += 1
            if not processed[inc_cyc[i]]:
                ci = inc_cyc[i]
                break
        processed[ci] = 1
        charge = cost[e] + 1
        for i in range(cyc_off[ci], cyc_off[ci + 1]):
            scans += 1
            f = cyc_edges[i]
            if f == e:
                continue
            cost[f] += charge
            unp[f] -= 1
            if unp[f] == 1:
                heap[size] = (cost[f] << 32) | f
                size += 1
                _sift_up(heap, pos, size - 1)
                inserts += 1
            elif unp[f] == 0:
                # delete = decrease-key to minus infinity, then extract-min
                heap[pos[f]] = _NEG_INF | f
                _sift_up(heap, pos, pos[f])
                _, size = _extract_min(heap, pos, size)
                deletes += 1
    stats = np.array([inserts, extracts, deletes, scans, inc_scans], dtype=np.int64)
    return order[:nrem].copy(), cost, stats


# ---------------------------------------------------------------------------
# Spanning-tree rooting and stretch


@njit(cache=True)
def root_tree_kernel(n, tail, head, offsets, incident, mask):
    parent = np.full(n, -1, dtype=np.int64)
    pedge = np.full(n, -1, dtype=np.int64)
    depth = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    if n == 0:
        return parent, pedge, depth, 0
    depth[0] = 0
    queue[0] = 0
    qh = 0
    qt = 1
    while qh < qt:
        v = queue[qh]
        qh += 1
        for i in range(offsets[v], offsets[v + 1]):
            e = incident[i]
            if not mask[e]:
                continue
            w = tail[e] if head[e] == v else head[e]
            if depth[w] == -1:
                depth[w] = depth[v] + 1
                parent[w] = v
                pedge[w] = e
                queue[qt] = w
                qt += 1
    return parent, pedge, depth, qt


@njit(cache=True)
def stretch_kernel(parent, depth, tail, head):
    """Tree distance between the endpoints of every edge (binary lifting)."""
    n = len(parent)
    m = len(tail)
    maxd = 0
    for v in range(n):
        if depth[v] > maxd:
            maxd = depth[v]
    levels = max(1, _bit_length(maxd))
    up = np.empty((levels, n), dtype=np.int32)
    for v in range(n):
        up[0, v] = parent[v] if parent[v] >= 0 else v
    for j in range(1, levels):
        for v in range(n):
            up[j, v] = up[j - 1, up[j - 1, v]]
    out = np.empty(m, dtype=np.int64)
    for e in range(m):
        a = tail[e]
        b = head[e]
        if depth[a] < depth[b]:
            a, b = b, a
        diff = depth[a] - depth[b]
        j = 0
        while diff > 0:
            if diff & 1:
                a = up[j, a]
            diff >>= 1
            j += 1
        if a != b:
            for j in range(levels - 1, -1, -1):
                if up[j, a] != up[j, b]:
                    a = up[j, a]
                    b = up[j, b]
            a = up[0, a]
        out[e] = depth[tail[e]] + depth[head[e]] - 2 * depth[a]
    return out
