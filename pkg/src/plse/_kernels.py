"""JIT-compiled hot paths for the incremental solution state and searches.

All kernels operate on the flat arrays owned by SolutionState:

  perm     int32[|V|]   node permutation: [solution | free | non-free]
  pos      int32[n^3]   inverse of perm (-1 for non-nodes)
  tau      int32[n^3]   tightness of non-solution nodes (0..3)
  nbrs     int32[3*n^3] solution-neighbor slots; slots 0..tau-1 are valid
  mu       int32[3*n^3] per solution node and direction: 1-tight neighbors
                        on that grid line
  lastout  int64[n^3]   step at which a node last left the solution
  meta     int64[3]     (solution count, free count, global step)
  member   uint8[n^3]   node-set membership

Node ids are dense: id = row*n^2 + col*n + sym with 0-based coordinates;
direction 0/1/2 varies row/col/sym (stride n^2 / n / 1).  The randomness
used by kernels is a caller-owned xorshift64 state (uint64[1]) so every
search is reproducible from a seed.
"""

import numpy as np
from numba import njit


@njit(cache=True, inline="always")
def _rng_next(rs):
    x = rs[0]
    x ^= x << np.uint64(13)
    x ^= x >> np.uint64(7)
    x ^= x << np.uint64(17)
    rs[0] = x
    return x


@njit(cache=True, inline="always")
def _rng_below(rs, bound):
    return np.int64(_rng_next(rs) % np.uint64(bound))


@njit(cache=True, inline="always")
def _dir3(v, w, n, n2):
    """Direction (0/1/2) of the grid line through two adjacent nodes."""
    if v // n2 != w // n2:
        return 0
    if (v // n) % n != (w // n) % n:
        return 1
    return 2


@njit(cache=True, inline="always")
def _coord(v, ax, n, n2):
    if ax == 0:
        return v // n2
    if ax == 1:
        return (v // n) % n
    return v % n


@njit(cache=True, inline="always")
def _line_base(v, ax, n, n2):
    """(first id, stride) of the grid line through v along axis ax."""
    if ax == 0:
        return v % n2, n2
    if ax == 1:
        return v - ((v // n) % n) * n, n
    return v - v % n, 1


@njit(cache=True)
def insert_node(perm, pos, tau, nbrs, mu, lastout, meta, member, n, x):
    """Insert the free node x into the solution; O(n)."""
    n2 = n * n
    p = pos[x]
    q = meta[0]
    y = perm[q]
    perm[q] = x
    perm[p] = y
    pos[x] = np.int32(q)
    pos[y] = p
    meta[0] += 1
    meta[1] -= 1
    meta[2] += 1
    b3 = 3 * x
    mu[b3] = 0
    mu[b3 + 1] = 0
    mu[b3 + 2] = 0
    for d in range(3):
        base, stride = _line_base(x, d, n, n2)
        w = base
        for _ in range(n):
            if w != x and member[w]:
                t = tau[w]
                if t == 0:
                    # w leaves the free section via its tail
                    tail = meta[0] + meta[1] - 1
                    pw = pos[w]
                    z = perm[tail]
                    perm[tail] = np.int32(w)
                    perm[pw] = z
                    pos[w] = np.int32(tail)
                    pos[z] = np.int32(pw)
                    meta[1] -= 1
                    tau[w] = 1
                    nbrs[3 * w] = np.int32(x)
                    mu[b3 + d] += 1
                elif t == 1:
                    yy = nbrs[3 * w]
                    mu[3 * yy + _dir3(w, yy, n, n2)] -= 1
                    tau[w] = 2
                    nbrs[3 * w + 1] = np.int32(x)
                else:  # t == 2; a 3-tight node can never gain a fourth neighbor
                    tau[w] = 3
                    nbrs[3 * w + 2] = np.int32(x)
            w += stride


@njit(cache=True)
def remove_node(perm, pos, tau, nbrs, mu, lastout, meta, member, n, x):
    """Remove the solution node x; it becomes free.  O(n)."""
    n2 = n * n
    p = pos[x]
    q = meta[0] - 1
    y = perm[q]
    perm[q] = np.int32(x)
    perm[p] = y
    pos[x] = np.int32(q)
    pos[y] = p
    meta[0] -= 1
    meta[1] += 1
    meta[2] += 1
    lastout[x] = meta[2]
    b3 = 3 * x
    mu[b3] = 0
    mu[b3 + 1] = 0
    mu[b3 + 2] = 0
    tau[x] = 0
    for d in range(3):
        base, stride = _line_base(x, d, n, n2)
        w = base
        for _ in range(n):
            if w != x and member[w]:
                t = tau[w]
                # drop x from w's neighbor slots (compact toward the front)
                if nbrs[3 * w] == x:
                    nbrs[3 * w] = nbrs[3 * w + t - 1]
                elif t >= 2 and nbrs[3 * w + 1] == x:
                    nbrs[3 * w + 1] = nbrs[3 * w + t - 1]
                t -= 1
                tau[w] = t
                if t == 0:
                    # w becomes free: swap with the head of the non-free section
                    head = meta[0] + meta[1]
                    pw = pos[w]
                    z = perm[head]
                    perm[head] = np.int32(w)
                    perm[pw] = z
                    pos[w] = np.int32(head)
                    pos[z] = np.int32(pw)
                    meta[1] += 1
                elif t == 1:
                    yy = nbrs[3 * w]
                    mu[3 * yy + _dir3(w, yy, n, n2)] += 1
            w += stride


@njit(cache=True)
def maximalize(perm, pos, tau, nbrs, mu, lastout, meta, member, n, rs):
    """Insert uniformly random free nodes until the solution is maximal."""
    count = 0
    while meta[1] > 0:
        i = _rng_below(rs, meta[1])
        x = perm[meta[0] + i]
        insert_node(perm, pos, tau, nbrs, mu, lastout, meta, member, n, x)
        count += 1
    return count


@njit(cache=True, inline="always")
def _collect_one_tights(ins, k, x, skip_dir, tau, mu, n, n2):
    """Append, per direction != skip_dir with mu > 0, the first 1-tight node
    on that grid line of x."""
    for d in range(3):
        if d == skip_dir or mu[3 * x + d] <= 0:
            continue
        base, stride = _line_base(x, d, n, n2)
        w = base
        for _ in range(n):
            if w != x and tau[w] == 1:
                ins[k] = np.int32(w)
                k += 1
                break
            w += stride
    return k


@njit(cache=True)
def swap1_move(perm, pos, tau, nbrs, mu, lastout, meta, member, n):
    """First solution node with 1-tight neighbors in >= 2 directions.

    Returns (x, count, buf): the node to remove and `count` nodes of buf to
    insert; x == -1 when the solution is 1-maximal.
    """
    n2 = n * n
    ins = np.empty(3, np.int32)
    for idx in range(meta[0]):
        x = perm[idx]
        b3 = 3 * x
        cnt = 0
        if mu[b3] > 0:
            cnt += 1
        if mu[b3 + 1] > 0:
            cnt += 1
        if mu[b3 + 2] > 0:
            cnt += 1
        if cnt >= 2:
            k = _collect_one_tights(ins, 0, x, -1, tau, mu, n, n2)
            return np.int64(x), np.int64(k), ins
    return np.int64(-1), np.int64(0), ins


@njit(cache=True)
def swap2_move(perm, pos, tau, nbrs, mu, lastout, meta, member, n):
    """First 2-tight trigger whose removal pair admits >= 2 insertions.

    Scans non-solution nodes u with neighbors {x, y}; counts candidate
    lines through x and y (plus the corner node x + y - u when both of its
    host lines are empty) and returns ({x, y}, {u, ...}) on success.
    """
    n2 = n * n
    rem = np.empty(2, np.int32)
    ins = np.empty(6, np.int32)
    total = perm.shape[0]
    for idx in range(meta[0] + meta[1], total):
        u = perm[idx]
        if tau[u] != 2:
            continue
        x = nbrs[3 * u]
        y = nbrs[3 * u + 1]
        du = _dir3(u, x, n, n2)
        dy = _dir3(u, y, n, n2)
        cnt = 0
        for d in range(3):
            if d != du and mu[3 * x + d] > 0:
                cnt += 1
            if d != dy and mu[3 * y + d] > 0:
                cnt += 1
        corner = x + y - u
        use_corner = False
        if (
            member[corner]
            and tau[corner] == 2
            and mu[3 * x + dy] == 0
            and mu[3 * y + du] == 0
        ):
            use_corner = True
            cnt += 1
        if cnt < 2:
            continue
        rem[0] = np.int32(x)
        rem[1] = np.int32(y)
        ins[0] = np.int32(u)
        k = _collect_one_tights(ins, 1, x, du, tau, mu, n, n2)
        k = _collect_one_tights(ins, k, y, dy, tau, mu, n, n2)
        if use_corner:
            ins[k] = np.int32(corner)
            k += 1
        return np.int64(1), rem, ins, np.int64(k)
    return np.int64(0), rem, ins, np.int64(0)


@njit(cache=True)
def trellis_move(perm, pos, tau, nbrs, mu, lastout, meta, member, n):
    """Facet-matching search over all 3n two-dimensional facets.

    Per facet: R = solution nodes on the facet; nodes whose perpendicular
    line carries a 1-tight neighbor form R'' (each contributes one clique
    pick); the rest (R') plus on-facet 1-tight and 2-tight candidates become
    edges of a bipartite graph over the facet's 2n grid lines.  A maximum
    matching larger than |R'| yields an improving exchange.
    """
    n2 = n * n
    sol = meta[0]
    total = perm.shape[0]

    rem = np.empty(max(n, 1), np.int32)
    ins = np.empty(max(2 * n, 1), np.int32)

    # bucket solution nodes by facet coordinate for each direction
    counts = np.zeros((3, n), np.int64)
    for idx in range(sol):
        x = perm[idx]
        counts[0, x // n2] += 1
        counts[1, (x // n) % n] += 1
        counts[2, x % n] += 1
    offs = np.zeros((3, n + 1), np.int64)
    for d in range(3):
        for k in range(n):
            offs[d, k + 1] = offs[d, k] + counts[d, k]
    fill = np.zeros((3, n), np.int64)
    bucket = np.empty((3, max(sol, 1)), np.int32)
    for idx in range(sol):
        x = perm[idx]
        for d in range(3):
            c = _coord(x, d, n, n2)
            bucket[d, offs[d, c] + fill[d, c]] = x
            fill[d, c] += 1

    cap = 2 * n2 + 2 * n + 4
    e_left = np.empty(cap, np.int32)
    e_right = np.empty(cap, np.int32)
    e_pay = np.empty(cap, np.int32)
    adj_cnt = np.zeros(n, np.int64)
    adj_off = np.zeros(n + 1, np.int64)
    adj_e = np.empty(cap, np.int64)
    match_l = np.empty(n, np.int32)
    match_r = np.empty(n, np.int32)
    match_re = np.empty(n, np.int64)
    stamp_r = np.zeros(n, np.int64)
    stack_left = np.empty(n + 1, np.int32)
    stack_ei = np.empty(n + 1, np.int64)
    chosen_r = np.empty(n + 1, np.int32)
    chosen_e = np.empty(n + 1, np.int64)
    rpp = np.empty(max(n, 1), np.int32)
    stamp = 0

    for d in range(3):
        if d == 0:
            a_ax, b_ax = 1, 2
        elif d == 1:
            a_ax, b_ax = 0, 2
        else:
            a_ax, b_ax = 0, 1
        for k in range(n):
            lo = offs[d, k]
            hi = offs[d, k + 1]
            rcount = hi - lo
            if rcount == 0:
                continue
            has1t = False
            for bi in range(lo, hi):
                x = bucket[d, bi]
                if mu[3 * x] > 0 or mu[3 * x + 1] > 0 or mu[3 * x + 2] > 0:
                    has1t = True
                    break
            if not has1t:
                # no 1-tight neighbor anywhere in R: the matching can never
                # exceed |R'|, so the facet cannot improve
                continue

            ec = 0
            rpp_count = 0
            for bi in range(lo, hi):
                x = bucket[d, bi]
                if mu[3 * x + d] > 0:
                    rpp[rpp_count] = x
                    rpp_count += 1
                else:
                    e_left[ec] = np.int32(_coord(x, a_ax, n, n2))
                    e_right[ec] = np.int32(_coord(x, b_ax, n, n2))
                    e_pay[ec] = x
                    ec += 1
                for which in range(2):
                    ax = a_ax if which == 0 else b_ax
                    base, stride = _line_base(x, ax, n, n2)
                    w = base
                    for _ in range(n):
                        if w != x:
                            t = tau[w]
                            if t == 1:
                                e_left[ec] = np.int32(_coord(w, a_ax, n, n2))
                                e_right[ec] = np.int32(_coord(w, b_ax, n, n2))
                                e_pay[ec] = np.int32(w)
                                ec += 1
                            elif t == 2:
                                o = nbrs[3 * w]
                                if o == x:
                                    o = nbrs[3 * w + 1]
                                if x < o and _coord(o, d, n, n2) == k:
                                    e_left[ec] = np.int32(_coord(w, a_ax, n, n2))
                                    e_right[ec] = np.int32(_coord(w, b_ax, n, n2))
                                    e_pay[ec] = np.int32(w)
                                    ec += 1
                        w += stride
            rp_count = rcount - rpp_count
            if ec <= rp_count:
                continue

            # maximum bipartite matching (deterministic augmenting paths)
            for i in range(n):
                adj_cnt[i] = 0
            for e in range(ec):
                adj_cnt[e_left[e]] += 1
            adj_off[0] = 0
            for i in range(n):
                adj_off[i + 1] = adj_off[i] + adj_cnt[i]
            for i in range(n):
                adj_cnt[i] = 0
            for e in range(ec):
                l = e_left[e]
                adj_e[adj_off[l] + adj_cnt[l]] = e
                adj_cnt[l] += 1
            for i in range(n):
                match_l[i] = -1
                match_r[i] = -1
            msize = 0
            for s in range(n):
                if adj_cnt[s] == 0 or match_l[s] >= 0:
                    continue
                stamp += 1
                sp = 1
                stack_left[0] = np.int32(s)
                stack_ei[0] = 0
                augmented = False
                while sp > 0:
                    l = stack_left[sp - 1]
                    i = stack_ei[sp - 1]
                    advanced = False
                    while i < adj_cnt[l]:
                        e = adj_e[adj_off[l] + i]
                        i += 1
                        rv = e_right[e]
                        if stamp_r[rv] == stamp:
                            continue
                        stamp_r[rv] = stamp
                        stack_ei[sp - 1] = i
                        chosen_r[sp - 1] = rv
                        chosen_e[sp - 1] = e
                        if match_r[rv] < 0:
                            for j in range(sp - 1, -1, -1):
                                rr = chosen_r[j]
                                ll = stack_left[j]
                                match_r[rr] = ll
                                match_re[rr] = chosen_e[j]
                                match_l[ll] = rr
                            augmented = True
                            sp = 0
                        else:
                            stack_left[sp] = match_r[rv]
                            stack_ei[sp] = 0
                            sp += 1
                        advanced = True
                        break
                    if not advanced:
                        sp -= 1
                if augmented:
                    msize += 1

            if msize > rp_count:
                for i in range(rcount):
                    rem[i] = bucket[d, lo + i]
                ic = 0
                for rv in range(n):
                    if match_r[rv] >= 0:
                        ins[ic] = e_pay[match_re[rv]]
                        ic += 1
                for i in range(rpp_count):
                    x = rpp[i]
                    base, stride = _line_base(x, d, n, n2)
                    w = base
                    for _ in range(n):
                        if w != x and tau[w] == 1:
                            ins[ic] = np.int32(w)
                            ic += 1
                            break
                        w += stride
                return np.int64(1), rem, np.int64(rcount), ins, np.int64(ic)
    return np.int64(0), rem, np.int64(0), ins, np.int64(0)


@njit(cache=True)
def kick_first_candidate(perm, pos, tau, nbrs, mu, lastout, meta, member, n, rs):
    """Soft-tabu pick for the first forced kick node.

    Candidates are neighbors of solution nodes that own a 1-tight neighbor;
    when no such owner exists, all non-solution nodes qualify.  Returns the
    candidate with minimum last-left-solution step, ties broken uniformly;
    -1 when there is no candidate at all.
    """
    n2 = n * n
    best = np.int64(-1)
    best_val = np.int64(0x7FFFFFFFFFFFFFFF)
    ties = np.int64(0)
    any_owner = False
    seen = np.zeros(member.shape[0], np.uint8)
    for idx in range(meta[0]):
        x = perm[idx]
        if mu[3 * x] > 0 or mu[3 * x + 1] > 0 or mu[3 * x + 2] > 0:
            any_owner = True
            for d in range(3):
                base, stride = _line_base(x, d, n, n2)
                w = base
                for _ in range(n):
                    if w != x and member[w] and seen[w] == 0:
                        seen[w] = 1
                        v = lastout[w]
                        if v < best_val:
                            best_val = v
                            best = np.int64(w)
                            ties = 1
                        elif v == best_val:
                            ties += 1
                            if _rng_below(rs, ties) == 0:
                                best = np.int64(w)
                    w += stride
    if not any_owner:
        total = perm.shape[0]
        for idx in range(meta[0] + meta[1], total):
            w = perm[idx]
            v = lastout[w]
            if v < best_val:
                best_val = v
                best = np.int64(w)
                ties = 1
            elif v == best_val:
                ties += 1
                if _rng_below(rs, ties) == 0:
                    best = np.int64(w)
    return best
