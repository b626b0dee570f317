"""Pure Python build of the sweep kernels.

The compiled module exposes the same functions over the same flat tables and
must produce identical results; the selection happens in kernels.py.  All
tables are flat row-major arrays over element indices: binary tables are
indexed [x * size + y], unary tables [x].

Failure codes: 0 ok, 1 product mismatch, 2 off-diagonal entry, 3 broken
divisibility chain, 4 P not invertible, 5 Q not invertible, 6 Fitting
mismatch.
"""

MAX_SIDE = 3


def _det(side, e, s, add, sub, mul):
    if side == 1:
        return e[0]
    if side == 2:
        return sub[mul[e[0] * s + e[3]] * s + mul[e[1] * s + e[2]]]
    m1 = sub[mul[e[4] * s + e[8]] * s + mul[e[5] * s + e[7]]]
    m2 = sub[mul[e[3] * s + e[8]] * s + mul[e[5] * s + e[6]]]
    m3 = sub[mul[e[3] * s + e[7]] * s + mul[e[4] * s + e[6]]]
    t = sub[mul[e[0] * s + m1] * s + mul[e[1] * s + m2]]
    return add[t * s + mul[e[2] * s + m3]]


def _run_one(s, m, n, zero, one, add, sub, mul, lq, vlen, canon, cscale,
             is_unit, digits, a, p, q, work):
    kmax = m if m < n else n
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
        bi = bj = k
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
                a[k * n + j], a[bi * n + j] = a[bi * n + j], a[k * n + j]
            for j in range(m):
                p[k * m + j], p[bi * m + j] = p[bi * m + j], p[k * m + j]
        if bj != k:
            for i in range(m):
                a[i * n + k], a[i * n + bj] = a[i * n + bj], a[i * n + k]
            for i in range(n):
                q[i * n + k], q[i * n + bj] = q[i * n + bj], q[i * n + k]
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

    # verification against the untouched input
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

    # Fitting oracle: in a chain ring the ideal the k-minors generate is the
    # principal ideal of any minor of minimal valuation
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
            d = _det(3, digits, s, add, sub, mul)
            g = d
        running = mul[running * s + a[(k - 1) * n + k - 1]]
        if canon[g] != canon[running]:
            return 6
    return 0


def snf_one(s, m, n, zero, one, add, sub, mul, lq, vlen, canon, cscale,
            is_unit, digits):
    """Run one matrix; returns (failcode, diagonal list)."""
    if m > MAX_SIDE or n > MAX_SIDE:
        raise ValueError("kernel supports sides up to 3")
    a = [0] * (m * n)
    p = [0] * (m * m)
    q = [0] * (n * n)
    work = [0] * (m * n)
    code = _run_one(s, m, n, zero, one, add, sub, mul, lq, vlen, canon,
                    cscale, is_unit, digits, a, p, q, work)
    kmax = m if m < n else n
    return code, [a[k * n + k] for k in range(kmax)]


def snf_sweep(s, m, n, zero, one, add, sub, mul, lq, vlen, canon, cscale,
              is_unit, reps, orbit):
    """Sweep all m x n matrices (orbit: only those whose first nonzero entry
    is a nonzero canonical generator, which covers everything up to left unit
    scaling).  Returns (checked, failcode, failing digits or None)."""
    if m > MAX_SIDE or n > MAX_SIDE:
        raise ValueError("kernel supports sides up to 3")
    mn = m * n
    digits = [zero] * mn
    a = [0] * mn
    p = [0] * (m * m)
    q = [0] * (n * n)
    work = [0] * mn
    checked = 0

    def run():
        return _run_one(s, m, n, zero, one, add, sub, mul, lq, vlen, canon,
                        cscale, is_unit, digits, a, p, q, work)

    code = run()
    checked += 1
    if code:
        return checked, code, list(digits)

    if orbit:
        for lead in range(mn):
            for c in reps:
                for i in range(mn):
                    digits[i] = zero
                digits[lead] = c
                while True:
                    code = run()
                    checked += 1
                    if code:
                        return checked, code, list(digits)
                    pos = mn - 1
                    while pos > lead:
                        digits[pos] += 1
                        if digits[pos] < s:
                            break
                        digits[pos] = 0
                        pos -= 1
                    if pos == lead:
                        break
    else:
        total = s ** mn
        for i in range(mn):
            digits[i] = zero
        for _ in range(total - 1):
            pos = mn - 1
            while True:
                digits[pos] += 1
                if digits[pos] < s:
                    break
                digits[pos] = 0
                pos -= 1
            code = run()
            checked += 1
            if code:
                return checked, code, list(digits)
    return checked, 0, None
