"""Compiled B3/S23 stepping over a sparse cell list.

Cells are passed as three parallel arrays (x, y, state). Each step scatters
every live cell into an open-addressing hash table keyed by packed
coordinates, accumulating per-colour neighbour counts, then sweeps the
occupied slots to emit survivors and births.

Two exact shortcuts are available to `advance`:

* recurrence: when the live set repeats with period p <= MAX_PERIOD, the
  run jumps to the last step;
* glider banking: an isolated single-colour glider that is at least
  BANK_GAP cells clear of everything else along one of its directions of
  motion is taken out of the simulation and moved analytically. If the
  simulated cells ever come within INTERACT_GAP of a banked glider's box,
  the glider is put back before the next step.
"""

import numpy as np
from numba import njit

LIFE = 0
IMMIGRATION = 1
MANAGEMENT = 2

OK = 0
EXTENT_EXCEEDED = 1

MAX_PERIOD = 30
BANK_EVERY = 32
BANK_GAP = 4
INTERACT_GAP = 3

_OFFSET = np.int64(1 << 30)
MAX_EXTENT = (1 << 30) - 16
_MIX = np.uint64(0x9E3779B97F4A7C15)
_BIG = np.int64(1 << 40)


@njit(cache=True, inline="always")
def _pack(x, y):
    return ((x + _OFFSET) << 31) | (y + _OFFSET)


@njit(cache=True, inline="always")
def _slot(key, mask):
    h = np.uint64(key) * _MIX
    return np.int64(h >> np.uint64(40)) & mask


@njit(cache=True)
def _birth(c1, c2, c3, c4, ruleset):
    if ruleset == LIFE:
        return 1
    if ruleset == IMMIGRATION:
        return 1 if c1 + c3 >= 2 else 2
    if c1 == 3:
        return 1
    if c2 == 3:
        return 2
    if c1 + c3 >= 2:
        return 3
    return 4


@njit(cache=True)
def _fingerprint(xs, ys, st, n):
    acc = np.uint64(0)
    for i in range(n):
        k = np.uint64(_pack(xs[i], ys[i]))
        v = (k ^ (np.uint64(st[i]) << np.uint64(61))) * _MIX
        v ^= v >> np.uint64(29)
        acc += v * np.uint64(0xBF58476D1CE4E5B9)
    return acc


@njit(cache=True)
def _same_cells(xa, ya, sa, na, xb, yb, sb, nb):
    if na != nb:
        return False
    ka = np.empty(na, np.int64)
    kb = np.empty(nb, np.int64)
    for i in range(na):
        ka[i] = _pack(xa[i], ya[i])
        kb[i] = _pack(xb[i], yb[i])
    oa = np.argsort(ka)
    ob = np.argsort(kb)
    for i in range(na):
        if ka[oa[i]] != kb[ob[i]] or sa[oa[i]] != sb[ob[i]]:
            return False
    return True


@njit(cache=True)
def _bbox(xs, ys, n):
    if n == 0:
        return _BIG, _BIG, -_BIG, -_BIG
    x0 = xs[0]
    x1 = xs[0]
    y0 = ys[0]
    y1 = ys[0]
    for i in range(1, n):
        x = xs[i]
        y = ys[i]
        if x < x0:
            x0 = x
        elif x > x1:
            x1 = x
        if y < y0:
            y0 = y
        elif y > y1:
            y1 = y
    return x0, y0, x1, y1


@njit(cache=True)
def _step_into(xs, ys, st, n, ruleset, extent,
               keys, counts, own, used, ox, oy, os):
    """One step from (xs, ys, st)[:n] into (ox, oy, os). Returns (m, status)."""
    mask = keys.shape[0] - 1
    nused = 0
    for i in range(n):
        x = xs[i]
        y = ys[i]
        s = st[i]
        for dx in range(-1, 2):
            for dy in range(-1, 2):
                key = _pack(x + dx, y + dy)
                j = _slot(key, mask)
                while keys[j] != key and keys[j] != -1:
                    j = (j + 1) & mask
                if keys[j] == -1:
                    keys[j] = key
                    used[nused] = j
                    nused += 1
                if dx == 0 and dy == 0:
                    own[j] = s
                else:
                    counts[j, s] += 1
    m = 0
    status = OK
    for u in range(nused):
        j = used[u]
        c1 = counts[j, 1]
        c2 = counts[j, 2]
        c3 = counts[j, 3]
        c4 = counts[j, 4]
        total = c1 + c2 + c3 + c4
        s = own[j]
        new = 0
        if s != 0:
            if total == 2 or total == 3:
                new = s
        elif total == 3:
            new = _birth(c1, c2, c3, c4, ruleset)
        if new != 0:
            key = keys[j]
            x = (key >> 31) - _OFFSET
            y = (key & 0x7FFFFFFF) - _OFFSET
            if x > extent or x < -extent or y > extent or y < -extent:
                status = EXTENT_EXCEEDED
            ox[m] = x
            oy[m] = y
            os[m] = new
            m += 1
        keys[j] = -1
        own[j] = 0
        counts[j, 1] = 0
        counts[j, 2] = 0
        counts[j, 3] = 0
        counts[j, 4] = 0
    return m, status


@njit(cache=True)
def _table_size(n):
    need = 18 * n + 64
    size = 64
    while size < need:
        size <<= 1
    return size


@njit(cache=True)
def _evolve_small(xs, ys, st, nsteps, ruleset):
    """Plain simulation of a handful of cells, for glider phases."""
    n = xs.shape[0]
    size = _table_size(n * 9)
    keys = np.full(size, -1, np.int64)
    counts = np.zeros((size, 5), np.int32)
    own = np.zeros(size, np.int8)
    used = np.empty(size, np.int64)
    cx = xs.copy()
    cy = ys.copy()
    cs = st.copy()
    for _ in range(nsteps):
        ox = np.empty(9 * n + 1, np.int64)
        oy = np.empty(9 * n + 1, np.int64)
        os = np.empty(9 * n + 1, np.int8)
        m, _ = _step_into(cx, cy, cs, n, ruleset, _BIG, keys, counts, own, used, ox, oy, os)
        cx = ox[:m].copy()
        cy = oy[:m].copy()
        cs = os[:m].copy()
        n = m
    return cx, cy, cs


# -- glider recognition -------------------------------------------------------

@njit(cache=True)
def _components(xs, ys, n):
    """Union-find labels joining live cells within Chebyshev distance 2."""
    size = _table_size(n)
    mask = size - 1
    keys = np.full(size, -1, np.int64)
    idx = np.empty(size, np.int64)
    for i in range(n):
        key = _pack(xs[i], ys[i])
        j = _slot(key, mask)
        while keys[j] != -1:
            j = (j + 1) & mask
        keys[j] = key
        idx[j] = i
    parent = np.arange(n)
    for i in range(n):
        for dx in range(-2, 3):
            for dy in range(-2, 3):
                if dx == 0 and dy == 0:
                    continue
                key = _pack(xs[i] + dx, ys[i] + dy)
                j = _slot(key, mask)
                while keys[j] != -1 and keys[j] != key:
                    j = (j + 1) & mask
                if keys[j] == key:
                    a = i
                    while parent[a] != a:
                        parent[a] = parent[parent[a]]
                        a = parent[a]
                    b = idx[j]
                    while parent[b] != b:
                        parent[b] = parent[parent[b]]
                        b = parent[b]
                    if a != b:
                        if a < b:
                            parent[b] = a
                        else:
                            parent[a] = b
    for i in range(n):
        a = i
        while parent[a] != a:
            a = parent[a]
        parent[i] = a
    return parent


@njit(cache=True)
def _glider_box(bx, by, bt, bdx, bdy, g, t):
    """Conservative bounding box of banked glider g at time t."""
    k = (t - bt[g]) // 4
    x0 = bx[g, 0]
    y0 = by[g, 0]
    for c in range(1, 5):
        if bx[g, c] < x0:
            x0 = bx[g, c]
        if by[g, c] < y0:
            y0 = by[g, c]
    x0 += k * bdx[g]
    y0 += k * bdy[g]
    return x0 - 1, y0 - 1, x0 + 3, y0 + 3


@njit(cache=True)
def _gap(ax0, ay0, ax1, ay1, bx0, by0, bx1, by1):
    """Chebyshev gap between two boxes (<= 0 when they touch or overlap)."""
    gx = max(bx0 - ax1, ax0 - bx1)
    gy = max(by0 - ay1, ay0 - by1)
    return max(gx, gy)


@njit(cache=True)
def _moves_clear(gx0, gy0, gx1, gy1, dx, dy, ox0, oy0, ox1, oy1):
    """True if a glider box moving (dx, dy) leads the other box by BANK_GAP."""
    if dx > 0 and gx0 - ox1 >= BANK_GAP:
        return True
    if dx < 0 and ox0 - gx1 >= BANK_GAP:
        return True
    if dy > 0 and gy0 - oy1 >= BANK_GAP:
        return True
    if dy < 0 and oy0 - gy1 >= BANK_GAP:
        return True
    return False


@njit(cache=True)
def _place_glider(bx, by, bs, bt, bdx, bdy, g, t, ruleset):
    """Actual cells of banked glider g at time t."""
    el = t - bt[g]
    k = el // 4
    gx, gy, gs = _evolve_small(bx[g].copy(), by[g].copy(),
                               np.full(5, bs[g], np.int8), el % 4, ruleset)
    return gx + k * bdx[g], gy + k * bdy[g], gs


@njit(cache=True)
def advance(xs, ys, st, steps, ruleset, extent, skip, glider_table):
    """Advance live cells by `steps` generations.

    Dead states (0 and 5) must already be stripped from the input.
    `glider_table` maps a 9-bit 3x3 mask to a direction code (-1 if not a
    glider phase): 0 -> (+1, +1), 1 -> (-1, +1), 2 -> (+1, -1), 3 -> (-1, -1).

    Returns (xs, ys, st, status).
    """
    ring = MAX_PERIOD + 1
    n = xs.shape[0]
    cap = max(16, 2 * n)
    bufs_x = np.empty((ring, cap), np.int64)
    bufs_y = np.empty((ring, cap), np.int64)
    bufs_s = np.empty((ring, cap), np.int8)
    sizes = np.zeros(ring, np.int64)
    prints = np.zeros(ring, np.uint64)
    bufs_x[0, :n] = xs
    bufs_y[0, :n] = ys
    bufs_s[0, :n] = st
    sizes[0] = n
    prints[0] = _fingerprint(xs, ys, st, n)
    history = 1

    gcap = 8
    bank_x = np.empty((gcap, 5), np.int64)
    bank_y = np.empty((gcap, 5), np.int64)
    bank_s = np.empty(gcap, np.int8)
    bank_t = np.empty(gcap, np.int64)
    bank_dx = np.empty(gcap, np.int64)
    bank_dy = np.empty(gcap, np.int64)
    nbank = 0

    tsize = _table_size(n)
    keys = np.full(tsize, -1, np.int64)
    counts = np.zeros((tsize, 5), np.int32)
    own = np.zeros(tsize, np.int8)
    used = np.empty(tsize, np.int64)

    cur = 0
    t = 0
    status = OK
    while t < steps:
        n = sizes[cur]
        if n == 0:
            # nothing is left for banked gliders to collide with
            t = steps
            break
        if 9 * n + 6 * nbank + 1 > cap:
            cap = 2 * (9 * n + 6 * nbank + 1)
            nbx = np.empty((ring, cap), np.int64)
            nby = np.empty((ring, cap), np.int64)
            nbs = np.empty((ring, cap), np.int8)
            for b in range(ring):
                nbx[b, :sizes[b]] = bufs_x[b, :sizes[b]]
                nby[b, :sizes[b]] = bufs_y[b, :sizes[b]]
                nbs[b, :sizes[b]] = bufs_s[b, :sizes[b]]
            bufs_x = nbx
            bufs_y = nby
            bufs_s = nbs
        need = _table_size(n)
        if need > tsize:
            tsize = need
            keys = np.full(tsize, -1, np.int64)
            counts = np.zeros((tsize, 5), np.int32)
            own = np.zeros(tsize, np.int8)
            used = np.empty(tsize, np.int64)
        nxt = (cur + 1) % ring
        m, status = _step_into(bufs_x[cur], bufs_y[cur], bufs_s[cur], n,
                               ruleset, extent, keys, counts, own, used,
                               bufs_x[nxt], bufs_y[nxt], bufs_s[nxt])
        sizes[nxt] = m
        t += 1
        cur = nxt
        if status != OK or not skip:
            if status != OK:
                break
            continue

        changed = False
        cx = bufs_x[cur]
        cy = bufs_y[cur]
        cs = bufs_s[cur]

        # put back banked gliders that the live region is about to reach
        if nbank > 0:
            rx0, ry0, rx1, ry1 = _bbox(cx, cy, m)
            g = 0
            while g < nbank:
                gx0, gy0, gx1, gy1 = _glider_box(bank_x, bank_y, bank_t, bank_dx, bank_dy, g, t)
                if m > 0 and _gap(gx0, gy0, gx1, gy1, rx0, ry0, rx1, ry1) < INTERACT_GAP:
                    px, py, ps = _place_glider(bank_x, bank_y, bank_s, bank_t,
                                               bank_dx, bank_dy, g, t, ruleset)
                    for c in range(px.shape[0]):
                        cx[m] = px[c]
                        cy[m] = py[c]
                        cs[m] = ps[c]
                        m += 1
                    nbank -= 1
                    bank_x[g] = bank_x[nbank]
                    bank_y[g] = bank_y[nbank]
                    bank_s[g] = bank_s[nbank]
                    bank_t[g] = bank_t[nbank]
                    bank_dx[g] = bank_dx[nbank]
                    bank_dy[g] = bank_dy[nbank]
                    changed = True
                    rx0, ry0, rx1, ry1 = _bbox(cx, cy, m)
                    g = 0
                else:
                    g += 1
            sizes[cur] = m

        # take out escaping gliders
        if t % BANK_EVERY == 0 and m > 5:
            comp = _components(cx, cy, m)
            csize = np.zeros(m, np.int64)
            for i in range(m):
                csize[comp[i]] += 1
            remove = np.zeros(m, np.bool_)
            for root in range(m):
                if csize[root] != 5:
                    continue
                members = np.empty(5, np.int64)
                k = 0
                for i in range(m):
                    if comp[i] == root:
                        members[k] = i
                        k += 1
                colour = cs[members[0]]
                mono = True
                for c in range(1, 5):
                    if cs[members[c]] != colour:
                        mono = False
                if not mono or (ruleset == LIFE and colour != 1):
                    continue
                gx0 = cx[members[0]]
                gy0 = cy[members[0]]
                gx1 = gx0
                gy1 = gy0
                for c in range(1, 5):
                    gx0 = min(gx0, cx[members[c]])
                    gx1 = max(gx1, cx[members[c]])
                    gy0 = min(gy0, cy[members[c]])
                    gy1 = max(gy1, cy[members[c]])
                if gx1 - gx0 != 2 or gy1 - gy0 != 2:
                    continue
                bits = 0
                for c in range(5):
                    bits |= 1 << ((cy[members[c]] - gy0) * 3 + (cx[members[c]] - gx0))
                code = glider_table[bits]
                if code < 0:
                    continue
                dx = 1 if code == 0 or code == 2 else -1
                dy = 1 if code == 0 or code == 1 else -1
                # everything still simulated, other than this glider
                ox0 = _BIG
                oy0 = _BIG
                ox1 = -_BIG
                oy1 = -_BIG
                for i in range(m):
                    if comp[i] == root or remove[i]:
                        continue
                    ox0 = min(ox0, cx[i])
                    ox1 = max(ox1, cx[i])
                    oy0 = min(oy0, cy[i])
                    oy1 = max(oy1, cy[i])
                if ox0 != _BIG and not _moves_clear(gx0 - 1, gy0 - 1, gx1 + 1, gy1 + 1,
                                                    dx, dy, ox0, oy0, ox1, oy1):
                    continue
                clear = True
                for h in range(nbank):
                    hx0, hy0, hx1, hy1 = _glider_box(bank_x, bank_y, bank_t, bank_dx,
                                                     bank_dy, h, t)
                    if not _moves_clear(gx0 - 1, gy0 - 1, gx1 + 1, gy1 + 1,
                                        dx, dy, hx0, hy0, hx1, hy1):
                        clear = False
                        break
                if not clear:
                    continue
                if nbank == gcap:
                    gcap *= 2
                    nx = np.empty((gcap, 5), np.int64)
                    ny = np.empty((gcap, 5), np.int64)
                    ns = np.empty(gcap, np.int8)
                    nt = np.empty(gcap, np.int64)
                    ndx = np.empty(gcap, np.int64)
                    ndy = np.empty(gcap, np.int64)
                    nx[:nbank] = bank_x[:nbank]
                    ny[:nbank] = bank_y[:nbank]
                    ns[:nbank] = bank_s[:nbank]
                    nt[:nbank] = bank_t[:nbank]
                    ndx[:nbank] = bank_dx[:nbank]
                    ndy[:nbank] = bank_dy[:nbank]
                    bank_x = nx
                    bank_y = ny
                    bank_s = ns
                    bank_t = nt
                    bank_dx = ndx
                    bank_dy = ndy
                for c in range(5):
                    bank_x[nbank, c] = cx[members[c]]
                    bank_y[nbank, c] = cy[members[c]]
                    remove[members[c]] = True
                bank_s[nbank] = colour
                bank_t[nbank] = t
                bank_dx[nbank] = dx
                bank_dy[nbank] = dy
                nbank += 1
                changed = True
            k = 0
            for i in range(m):
                if not remove[i]:
                    cx[k] = cx[i]
                    cy[k] = cy[i]
                    cs[k] = cs[i]
                    k += 1
            m = k
            sizes[cur] = m

        fp = _fingerprint(cx, cy, cs, m)
        prints[cur] = fp
        if changed:
            history = 1
            continue
        if history < ring:
            history += 1
        for p in range(1, history):
            back = (cur - p) % ring
            if prints[back] != fp:
                continue
            if not _same_cells(cx, cy, cs, m, bufs_x[back], bufs_y[back],
                               bufs_s[back], sizes[back]):
                continue
            # live region repeats with period p; check the banked gliders
            # never come back within reach of it
            ux0 = _BIG
            uy0 = _BIG
            ux1 = -_BIG
            uy1 = -_BIG
            for q in range(p):
                b = (cur - q) % ring
                bx0, by0, bx1, by1 = _bbox(bufs_x[b], bufs_y[b], sizes[b])
                ux0 = min(ux0, bx0)
                uy0 = min(uy0, by0)
                ux1 = max(ux1, bx1)
                uy1 = max(uy1, by1)
            safe = True
            if ux0 != _BIG:
                for g in range(nbank):
                    tt = t
                    while tt <= steps + 4:
                        gx0, gy0, gx1, gy1 = _glider_box(bank_x, bank_y, bank_t,
                                                         bank_dx, bank_dy, g, tt)
                        if _gap(gx0, gy0, gx1, gy1, ux0, uy0, ux1, uy1) < INTERACT_GAP:
                            safe = False
                            break
                        tt += 4
                    if not safe:
                        break
            if safe:
                cur = (cur - p + (steps - t) % p) % ring
                t = steps
            break

    if status != OK:
        n = sizes[cur]
        return bufs_x[cur, :n].copy(), bufs_y[cur, :n].copy(), bufs_s[cur, :n].copy(), status

    n = sizes[cur]
    total = n + 5 * nbank
    out_x = np.empty(total, np.int64)
    out_y = np.empty(total, np.int64)
    out_s = np.empty(total, np.int8)
    out_x[:n] = bufs_x[cur, :n]
    out_y[:n] = bufs_y[cur, :n]
    out_s[:n] = bufs_s[cur, :n]
    k = n
    for g in range(nbank):
        px, py, ps = _place_glider(bank_x, bank_y, bank_s, bank_t, bank_dx, bank_dy,
                                   g, steps, ruleset)
        for c in range(px.shape[0]):
            if px[c] > extent or px[c] < -extent or py[c] > extent or py[c] < -extent:
                status = EXTENT_EXCEEDED
            out_x[k] = px[c]
            out_y[k] = py[c]
            out_s[k] = ps[c]
            k += 1
    return out_x[:k], out_y[:k], out_s[:k], status
