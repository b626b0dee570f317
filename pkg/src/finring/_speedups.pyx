# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled build of the sweep kernels.

_speedups_py is the reference implementation: same functions, same flat
tables, same failure codes, identical results.
"""

cdef int MAX_SIDE = 3


cdef inline int _det(int side, const int* e, int s, const int[:] add,
                     const int[:] sub, const int[:] mul) noexcept nogil:
    cdef int m1, m2, m3, t
    if side == 1:
        return e[0]
    if side == 2:
        return sub[mul[e[0] * s + e[3]] * s + mul[e[1] * s + e[2]]]
    m1 = sub[mul[e[4] * s + e[8]] * s + mul[e[5] * s + e[7]]]
    m2 = sub[mul[e[3] * s + e[8]] * s + mul[e[5] * s + e[6]]]
    m3 = sub[mul[e[3] * s + e[7]] * s + mul[e[4] * s + e[6]]]
    t = sub[mul[e[0] * s + m1] * s + mul[e[1] * s + m2]]
    return add[t * s + mul[e[2] * s + m3]]


cdef int _run_one(int s, int m, int n, int zero, int one, const int[:] add,
                  const int[:] sub, const int[:] mul, const int[:] lq,
                  const int[:] vlen, const int[:] canon, const int[:] cscale,
                  const int[:] is_unit, const int* digits, int* a, int* p,
                  int* q, int* work) noexcept nogil:
    cdef int kmax = m if m < n else n
    cdef int i, j, k, t, v, x, c, u, piv, best, bi, bj, acc, tmp
    cdef int running, g, d, i1, i2, j1, j2

    for i in range(m * n):
        a[i] = digits[i]
    for i in range(m * m):
        p[i] = zero
    for i in range(m):
        p[i * m + i] = one
    for i in range(n * n):
        q[i] = zero
    for i in range(n):
        q[i * n + i] = one

    for k in range(kmax):
        best = -1
        bi = k
        bj = k
        for i in range(k, m):
            for j in range(k, n):
                v = vlen[a[i * n + j]]
                if v > best:
                    best = v
                    bi = i
                    bj = j
        if a[bi * n + bj] == zero:
            break
        if bi != k:
            for j in range(n):
                tmp = a[k * n + j]
                a[k * n + j] = a[bi * n + j]
                a[bi * n + j] = tmp
            for j in range(m):
                tmp = p[k * m + j]
                p[k * m + j] = p[bi * m + j]
                p[bi * m + j] = tmp
        if bj != k:
            for i in range(m):
                tmp = a[i * n + k]
                a[i * n + k] = a[i * n + bj]
                a[i * n + bj] = tmp
            for i in range(n):
                tmp = q[i * n + k]
                q[i * n + k] = q[i * n + bj]
                q[i * n + bj] = tmp
        piv = a[k * n + k]
        for i in range(k + 1, m):
            x = a[i * n + k]
            if x == zero:
                continue
            c = lq[piv * s + x]
            for j in range(k, n):
                a[i * n + j] = sub[a[i * n + j] * s + mul[c * s + a[k * n + j]]]
            for j in range(m):
                p[i * m + j] = sub[p[i * m + j] * s + mul[c * s + p[k * m + j]]]
        for j in range(k + 1, n):
            x = a[k * n + j]
            if x == zero:
                continue
            c = lq[piv * s + x]
            for i in range(m):
                a[i * n + j] = sub[a[i * n + j] * s + mul[c * s + a[i * n + k]]]
            for i in range(n):
                q[i * n + j] = sub[q[i * n + j] * s + mul[c * s + q[i * n + k]]]

    for k in range(kmax):
        x = a[k * n + k]
        if canon[x] != x:
            u = cscale[x]
            a[k * n + k] = mul[x * s + u]
            for j in range(m):
                p[k * m + j] = mul[u * s + p[k * m + j]]

    for i in range(m):
        for j in range(n):
            acc = zero
            for t in range(m):
                acc = add[acc * s + mul[p[i * m + t] * s + digits[t * n + j]]]
            work[i * n + j] = acc
    for i in range(m):
        for j in range(n):
            acc = zero
            for t in range(n):
                acc = add[acc * s + mul[work[i * n + t] * s + q[t * n + j]]]
            if acc != a[i * n + j]:
                return 1
    for i in range(m):
        for j in range(n):
            if i != j and a[i * n + j] != zero:
                return 2
    for k in range(kmax - 1):
        if lq[a[k * n + k] * s + a[(k + 1) * n + k + 1]] < 0:
            return 3
    if not is_unit[_det(m, p, s, add, sub, mul)]:
        return 4
    if not is_unit[_det(n, q, s, add, sub, mul)]:
        return 5

    running = one
    for k in range(1, kmax + 1):
        best = -1
        g = zero
        if k == 1:
            for i in range(m * n):
                v = vlen[digits[i]]
                if v > best:
                    best = v
                    g = digits[i]
        elif k == 2:
            for i1 in range(m):
                for i2 in range(i1 + 1, m):
                    for j1 in range(n):
                        for j2 in range(j1 + 1, n):
                            d = sub[
                                mul[digits[i1 * n + j1] * s + digits[i2 * n + j2]] * s
                                + mul[digits[i1 * n + j2] * s + digits[i2 * n + j1]]
                            ]
                            v = vlen[d]
                            if v > best:
                                best = v
                                g = d
        else:
            g = _det(3, digits, s, add, sub, mul)
        running = mul[running * s + a[(k - 1) * n + k - 1]]
        if canon[g] != canon[running]:
            return 6
    return 0


def snf_one(int s, int m, int n, int zero, int one, const int[:] add,
            const int[:] sub, const int[:] mul, const int[:] lq,
            const int[:] vlen, const int[:] canon, const int[:] cscale,
            const int[:] is_unit, const int[:] digits):
    """Run one matrix; returns (failcode, diagonal list)."""
    cdef int a[9]
    cdef int p[9]
    cdef int q[9]
    cdef int work[9]
    cdef int code, k
    if m > MAX_SIDE or n > MAX_SIDE:
        raise ValueError("kernel supports sides up to 3")
    code = _run_one(s, m, n, zero, one, add, sub, mul, lq, vlen, canon,
                    cscale, is_unit, &digits[0], a, p, q, work)
    cdef int kmax = m if m < n else n
    return code, [a[k * n + k] for k in range(kmax)]


def snf_sweep(int s, int m, int n, int zero, int one, const int[:] add,
              const int[:] sub, const int[:] mul, const int[:] lq,
              const int[:] vlen, const int[:] canon, const int[:] cscale,
              const int[:] is_unit, const int[:] reps, bint orbit):
    """Sweep all m x n matrices; see the reference twin for the contract."""
    cdef int digits[9]
    cdef int a[9]
    cdef int p[9]
    cdef int q[9]
    cdef int work[9]
    cdef int mn = m * n
    cdef int i, code, lead, ri, pos, c
    cdef int nreps = reps.shape[0]
    cdef unsigned long long checked = 0
    cdef unsigned long long total, step
    if m > MAX_SIDE or n > MAX_SIDE:
        raise ValueError("kernel supports sides up to 3")

    for i in range(mn):
        digits[i] = zero
    code = _run_one(s, m, n, zero, one, add, sub, mul, lq, vlen, canon,
                    cscale, is_unit, digits, a, p, q, work)
    checked += 1
    if code:
        return checked, code, [digits[i] for i in range(mn)]

    if orbit:
        with nogil:
            for lead in range(mn):
                for ri in range(nreps):
                    c = reps[ri]
                    for i in range(mn):
                        digits[i] = zero
                    digits[lead] = c
                    while True:
                        code = _run_one(s, m, n, zero, one, add, sub, mul,
                                        lq, vlen, canon, cscale, is_unit,
                                        digits, a, p, q, work)
                        checked += 1
                        if code:
                            break
                        pos = mn - 1
                        while pos > lead:
                            digits[pos] += 1
                            if digits[pos] < s:
                                break
                            digits[pos] = 0
                            pos -= 1
                        if pos == lead:
                            code = 0
                            break
                    if code:
                        break
                if code:
                    break
        if code:
            return checked, code, [digits[i] for i in range(mn)]
    else:
        total = 1
        for i in range(mn):
            total *= <unsigned long long> s
        for i in range(mn):
            digits[i] = zero
        with nogil:
            for step in range(total - 1):
                pos = mn - 1
                while True:
                    digits[pos] += 1
                    if digits[pos] < s:
                        break
                    digits[pos] = 0
                    pos -= 1
                code = _run_one(s, m, n, zero, one, add, sub, mul, lq, vlen,
                                canon, cscale, is_unit, digits, a, p, q, work)
                checked += 1
                if code:
                    break
        if code:
            return checked, code, [digits[i] for i in range(mn)]
    return checked, 0, None
