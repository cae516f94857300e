# cython: language_level=3
"""Compiled kernels: heuristic engines, Tarjan SCC, the density ODE.

Mirror of ``_pykernels``; see there for the contracts. Any change here must
be made there too (``tests/test_backends.py`` checks they agree).
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, NAN

cnp.import_array()

cdef enum:
    MODE_UC = 0
    MODE_BUC = 1
    MODE_SC = 2
    MODE_BSC = 3

cdef enum:
    STATUS_SUCCESS = 0
    STATUS_CONTRADICTION = 1
    STATUS_INCOMPLETE = 2

cdef double TWO_CLAUSE_EPS = 1e-9
cdef double CLAMP_EPS = 1e-9


cdef inline Py_ssize_t _pick(double u, Py_ssize_t count) noexcept nogil:
    cdef Py_ssize_t i = <Py_ssize_t>(u * count)
    if i >= count:
        i = count - 1
    return i


cdef inline void _push(int[::1] b, int[::1] pos, Py_ssize_t *nb, int c) noexcept nogil:
    pos[c] = <int>nb[0]
    b[nb[0]] = c
    nb[0] += 1


cdef inline void _drop(int[::1] b, int[::1] pos, Py_ssize_t *nb, int c) noexcept nogil:
    cdef int i = pos[c]
    cdef int last
    nb[0] -= 1
    last = b[nb[0]]
    if last != c:
        b[i] = last
        pos[last] = i
    pos[c] = -1


cdef void _census_row(long[:, ::1] census, int width, long[::1] row) noexcept nogil:
    cdef int i, j, x = 0
    for i in range(1, width + 1):
        for j in range(i + 1):
            row[x] = census[i, j]
            x += 1


def run_heuristic(int n, const int[::1] lits, const long[::1] offsets, int mode,
                  const double[::1] uniforms, long trace_every, long max_steps):
    cdef Py_ssize_t m = offsets.shape[0] - 1
    cdef Py_ssize_t c, p, x
    cdef int width = 0, L, P, lit, var, val, la, lb, tslot, fslot, last, i
    cdef long T, limit
    cdef double u1, u2
    cdef int status

    for c in range(m):
        if offsets[c + 1] - offsets[c] > width:
            width = <int>(offsets[c + 1] - offsets[c])
    cdef int ncells = width * (width + 3) // 2

    # occurrence lists, CSR over literal slots 2v (positive) / 2v+1 (negative)
    cdef long[::1] occ_ptr = np.zeros(2 * n + 3, dtype=np.int64)
    cdef int[::1] occ = np.empty(max(1, offsets[m]), dtype=np.int32)
    cdef long[::1] fill
    for p in range(offsets[m]):
        lit = lits[p]
        occ_ptr[(2 * lit if lit > 0 else -2 * lit + 1) + 1] += 1
    for x in range(2 * n + 2):
        occ_ptr[x + 1] += occ_ptr[x]
    fill = np.array(occ_ptr[:2 * n + 2], dtype=np.int64)
    for c in range(m):
        for p in range(offsets[c], offsets[c + 1]):
            lit = lits[p]
            x = 2 * lit if lit > 0 else -2 * lit + 1
            occ[fill[x]] = <int>c
            fill[x] += 1

    cdef int[::1] clen = np.zeros(max(1, m), dtype=np.int32)
    cdef int[::1] cpos = np.zeros(max(1, m), dtype=np.int32)
    cdef signed char[::1] sat = np.zeros(max(1, m), dtype=np.int8)
    cdef long[:, ::1] census = np.zeros((width + 1, width + 1), dtype=np.int64)
    cdef int[::1] b1 = np.empty(max(1, m), dtype=np.int32)
    cdef int[::1] p1 = np.full(max(1, m), -1, dtype=np.int32)
    cdef int[::1] b2 = np.empty(max(1, m), dtype=np.int32)
    cdef int[::1] p2 = np.full(max(1, m), -1, dtype=np.int32)
    cdef Py_ssize_t nb1 = 0, nb2 = 0

    for c in range(m):
        L = <int>(offsets[c + 1] - offsets[c])
        P = 0
        for p in range(offsets[c], offsets[c + 1]):
            if lits[p] > 0:
                P += 1
        clen[c] = L
        cpos[c] = P
        census[L, P] += 1
        if L == 1:
            _push(b1, p1, &nb1, <int>c)
        elif L == 2:
            _push(b2, p2, &nb2, <int>c)

    values_arr = np.full(n + 1, -1, dtype=np.int8)
    cdef signed char[::1] value = values_arr
    cdef int[::1] unset = np.arange(1, n + 1, dtype=np.int32) if n > 0 else np.zeros(1, dtype=np.int32)
    cdef int[::1] upos = np.concatenate(([0], np.arange(n))).astype(np.int32)
    cdef Py_ssize_t nunset = n

    cdef long nsamples = 0
    if trace_every > 0:
        nsamples = 1 + n // trace_every
    trace_T_arr = np.zeros(nsamples, dtype=np.int64)
    trace_S_arr = np.zeros((nsamples, ncells), dtype=np.int64)
    cdef long[::1] trace_T = trace_T_arr
    cdef long[:, ::1] trace_S = trace_S_arr
    cdef long ns = 0
    if trace_every > 0:
        trace_T[0] = 0
        _census_row(census, width, trace_S[0])
        ns = 1

    limit = n if (max_steps < 0 or max_steps > n) else max_steps
    T = 0
    status = -1
    with nogil:
        while T < limit:
            T += 1
            u1 = uniforms[2 * T - 2]
            u2 = uniforms[2 * T - 1]
            if nb1 > 0:
                c = b1[_pick(u1, nb1)]
                lit = 0
                for p in range(offsets[c], offsets[c + 1]):
                    lit = lits[p]
                    if value[lit if lit > 0 else -lit] < 0:
                        break
                var = lit if lit > 0 else -lit
                val = 1 if lit > 0 else 0
            elif mode == MODE_BUC or mode == MODE_UC or nb2 == 0:
                var = unset[_pick(u1, nunset)]
                if mode == MODE_BUC:
                    val = 1
                else:
                    val = 1 if u2 < 0.5 else 0
            else:
                c = b2[_pick(u1, nb2)]
                la = 0
                lb = 0
                for p in range(offsets[c], offsets[c + 1]):
                    lit = lits[p]
                    if value[lit if lit > 0 else -lit] < 0:
                        if la == 0:
                            la = lit
                        else:
                            lb = lit
                if mode == MODE_BSC and (la > 0) != (lb > 0):
                    lit = la if la > 0 else lb
                else:
                    lit = la if u2 < 0.5 else lb
                var = lit if lit > 0 else -lit
                val = 1 if lit > 0 else 0

            value[var] = <signed char>val
            i = upos[var]
            nunset -= 1
            last = unset[nunset]
            if last != var:
                unset[i] = last
                upos[last] = i

            if val:
                tslot = 2 * var
                fslot = 2 * var + 1
            else:
                tslot = 2 * var + 1
                fslot = 2 * var
            for x in range(occ_ptr[tslot], occ_ptr[tslot + 1]):
                c = occ[x]
                if not sat[c]:
                    sat[c] = 1
                    L = clen[c]
                    census[L, cpos[c]] -= 1
                    if L == 1:
                        _drop(b1, p1, &nb1, <int>c)
                    elif L == 2:
                        _drop(b2, p2, &nb2, <int>c)
            for x in range(occ_ptr[fslot], occ_ptr[fslot + 1]):
                c = occ[x]
                if sat[c]:
                    continue
                L = clen[c]
                census[L, cpos[c]] -= 1
                if L == 1:
                    _drop(b1, p1, &nb1, <int>c)
                elif L == 2:
                    _drop(b2, p2, &nb2, <int>c)
                L -= 1
                clen[c] = L
                if not val:
                    cpos[c] -= 1
                if L == 0:
                    status = STATUS_CONTRADICTION
                    break
                census[L, cpos[c]] += 1
                if L == 1:
                    _push(b1, p1, &nb1, <int>c)
                elif L == 2:
                    _push(b2, p2, &nb2, <int>c)
            if status == STATUS_CONTRADICTION:
                break

            if trace_every > 0 and T % trace_every == 0:
                trace_T[ns] = T
                _census_row(census, width, trace_S[ns])
                ns += 1

    if status != STATUS_CONTRADICTION:
        status = STATUS_SUCCESS if T == n else STATUS_INCOMPLETE
    return status, T, values_arr, trace_T_arr[:ns].copy(), trace_S_arr[:ns].copy()


def tarjan_scc(long num_nodes, const long[::1] indptr, const long[::1] indices):
    cdef long[::1] index = np.full(max(1, num_nodes), -1, dtype=np.int64)
    cdef long[::1] low = np.zeros(max(1, num_nodes), dtype=np.int64)
    cdef signed char[::1] onstack = np.zeros(max(1, num_nodes), dtype=np.int8)
    comp_arr = np.full(num_nodes, -1, dtype=np.int64)
    cdef long[::1] comp = comp_arr if num_nodes > 0 else np.zeros(1, dtype=np.int64)
    cdef long[::1] stack = np.empty(max(1, num_nodes), dtype=np.int64)
    cdef long[::1] work_v = np.empty(max(1, num_nodes), dtype=np.int64)
    cdef long[::1] work_e = np.empty(max(1, num_nodes), dtype=np.int64)
    cdef long sp = 0, wp = 0, counter = 0, ncomp = 0
    cdef long root, v, e, w, u
    with nogil:
        for root in range(num_nodes):
            if index[root] >= 0:
                continue
            index[root] = counter
            low[root] = counter
            counter += 1
            stack[sp] = root
            sp += 1
            onstack[root] = 1
            work_v[wp] = root
            work_e[wp] = indptr[root]
            wp += 1
            while wp > 0:
                v = work_v[wp - 1]
                e = work_e[wp - 1]
                if e < indptr[v + 1]:
                    work_e[wp - 1] = e + 1
                    w = indices[e]
                    if index[w] < 0:
                        index[w] = counter
                        low[w] = counter
                        counter += 1
                        stack[sp] = w
                        sp += 1
                        onstack[w] = 1
                        work_v[wp] = w
                        work_e[wp] = indptr[w]
                        wp += 1
                    elif onstack[w] and index[w] < low[v]:
                        low[v] = index[w]
                    continue
                wp -= 1
                if low[v] == index[v]:
                    while True:
                        sp -= 1
                        w = stack[sp]
                        onstack[w] = 0
                        comp[w] = ncomp
                        if w == v:
                            break
                    ncomp += 1
                if wp > 0:
                    u = work_v[wp - 1]
                    if low[v] < low[u]:
                        low[u] = low[v]
    return comp_arr, ncomp


cdef bint _rhs(int w, bint bsc, const long[::1] base, double t, double[::1] s,
               double[::1] ds, double *aux) noexcept nogil:
    cdef double d = 1.0 - t
    cdef double s20 = s[0] if s[0] > 0.0 else 0.0
    cdef double s21 = s[1] if s[1] > 0.0 else 0.0
    cdef double s22 = s[2] if s[2] > 0.0 else 0.0
    cdef double a = s21 / d
    cdef double b = 2.0 * s20 / d
    cdef double c = 2.0 * s22 / d
    cdef double lam = a + sqrt(b * c)
    cdef double tot, seed0, seed1, det, b0, b1, q0, q1, pf, inflow, f
    cdef int i, j
    cdef long lo, up, top
    aux[0] = lam
    if lam >= 1.0:
        return False
    tot = s20 + s21 + s22
    if bsc and tot > TWO_CLAUSE_EPS:
        seed0 = s20 / tot
        seed1 = (s21 + s22) / tot
    else:
        seed0 = 0.0
        seed1 = 1.0
    det = (1.0 - a) * (1.0 - a) - b * c
    b0 = ((1.0 - a) * seed0 + b * seed1) / det
    b1 = (c * seed0 + (1.0 - a) * seed1) / det
    q0 = b0 / (b0 + b1)
    q1 = b1 / (b0 + b1)
    pf = 1.0 / (b0 + b1)
    aux[1] = q0
    aux[2] = q1
    aux[3] = pf
    top = base[w]
    for j in range(w + 1):
        ds[top + j] = -w * s[top + j] / d
    for i in range(w - 1, 1, -1):
        lo = base[i]
        up = base[i + 1]
        for j in range(i + 1):
            ds[lo + j] = ((i + 1 - j) * q1 * s[up + j] + (j + 1) * q0 * s[up + j + 1] - i * s[lo + j]) / d
    if bsc:
        if tot > TWO_CLAUSE_EPS:
            for j in range(3):
                ds[j] -= pf * s[j] / tot
        else:
            inflow = ds[0] + ds[1] + ds[2]
            if inflow > 0.0:
                f = (pf if pf < inflow else inflow) / inflow
                for j in range(3):
                    ds[j] -= f * ds[j]
    return True


def integrate_ode(int w, bint bsc, s0, double h, long nsteps, long record_every):
    cdef long i
    cdef long size = 0
    base_arr = np.zeros(w + 1, dtype=np.int64)
    for i in range(2, w + 1):
        base_arr[i] = size
        size += i + 1
    cdef const long[::1] base = base_arr
    cdef double[::1] s = np.array(s0, dtype=np.float64)
    cdef double[::1] k1 = np.zeros(size)
    cdef double[::1] k2 = np.zeros(size)
    cdef double[::1] k3 = np.zeros(size)
    cdef double[::1] k4 = np.zeros(size)
    cdef double[::1] tmp = np.zeros(size)
    cdef double aux[4]
    cdef double saux[4]
    cdef long nrec_max = 0
    if record_every > 0:
        nrec_max = nsteps // record_every + 3
    rec_t_arr = np.zeros(nrec_max)
    rec_s_arr = np.zeros((nrec_max, size))
    rec_aux_arr = np.zeros((nrec_max, 4))
    cdef double[::1] rec_t = rec_t_arr
    cdef double[:, ::1] rec_s = rec_s_arr
    cdef double[:, ::1] rec_aux = rec_aux_arr
    cdef long nrec = 0
    cdef double max_lam = 0.0, t, v
    cdef int critical = 0
    cdef long step = 0, x
    cdef bint ok, last
    cdef double bad_v = 0.0
    cdef long bad_x = -1
    with nogil:
        while True:
            t = step * h
            ok = _rhs(w, bsc, base, t, s, k1, aux)
            if aux[0] > max_lam:
                max_lam = aux[0]
            if not ok:
                critical = 1
            last = step == nsteps or critical
            if record_every > 0 and (step % record_every == 0 or last):
                rec_t[nrec] = t
                for x in range(size):
                    rec_s[nrec, x] = s[x]
                rec_aux[nrec, 0] = aux[0]
                if ok:
                    rec_aux[nrec, 1] = aux[1]
                    rec_aux[nrec, 2] = aux[2]
                    rec_aux[nrec, 3] = aux[3]
                else:
                    rec_aux[nrec, 1] = NAN
                    rec_aux[nrec, 2] = NAN
                    rec_aux[nrec, 3] = NAN
                nrec += 1
            if last:
                break
            for x in range(size):
                tmp[x] = s[x] + 0.5 * h * k1[x]
            ok = _rhs(w, bsc, base, t + 0.5 * h, tmp, k2, saux)
            if ok:
                for x in range(size):
                    tmp[x] = s[x] + 0.5 * h * k2[x]
                ok = _rhs(w, bsc, base, t + 0.5 * h, tmp, k3, saux)
            if ok:
                for x in range(size):
                    tmp[x] = s[x] + h * k3[x]
                ok = _rhs(w, bsc, base, t + h, tmp, k4, saux)
            if not ok:
                critical = 1
                if saux[0] > max_lam:
                    max_lam = saux[0]
                if record_every > 0 and step % record_every != 0:
                    rec_t[nrec] = t
                    for x in range(size):
                        rec_s[nrec, x] = s[x]
                    rec_aux[nrec, 0] = aux[0]
                    rec_aux[nrec, 1] = aux[1]
                    rec_aux[nrec, 2] = aux[2]
                    rec_aux[nrec, 3] = aux[3]
                    nrec += 1
                break
            for x in range(size):
                v = s[x] + h / 6.0 * (k1[x] + 2.0 * k2[x] + 2.0 * k3[x] + k4[x])
                if v < 0.0:
                    if bsc and x < 3:
                        v = 0.0
                    elif v >= -CLAMP_EPS:
                        v = 0.0
                    else:
                        bad_x = x
                        bad_v = v
                s[x] = v
            if bad_x >= 0:
                break
            step += 1
    if bad_x >= 0:
        raise ValueError(f"density {bad_x} fell to {bad_v!r} at t={(step + 1) * h!r}")
    return (step, critical, max_lam, rec_t_arr[:nrec].copy(), rec_s_arr[:nrec].copy(),
            rec_aux_arr[:nrec].copy())


cdef enum:
    DPLL_SAT = 0
    DPLL_UNSAT = 1
    DPLL_BUDGET = 2


cdef struct _Dpll:
    int n
    const int* lits
    const long* offsets
    const long* occ_ptr
    const int* occ
    const int* size
    int* nsat
    int* nfalse
    long* active
    signed char* value
    int* trail
    Py_ssize_t ntrail
    Py_ssize_t unsat_left


cdef inline int _slot(int lit) noexcept nogil:
    return 2 * lit if lit > 0 else -2 * lit + 1


cdef bint _dpll_assign(_Dpll* s, int lit) noexcept nogil:
    cdef Py_ssize_t e, p
    cdef int c
    cdef int x = _slot(lit), y = _slot(-lit)
    cdef bint ok = True
    s.value[lit if lit > 0 else -lit] = 1 if lit > 0 else 0
    s.trail[s.ntrail] = lit
    s.ntrail += 1
    for e in range(s.occ_ptr[x], s.occ_ptr[x + 1]):
        c = s.occ[e]
        s.nsat[c] += 1
        if s.nsat[c] == 1:
            s.unsat_left -= 1
            for p in range(s.offsets[c], s.offsets[c + 1]):
                s.active[_slot(s.lits[p])] -= 1
    for e in range(s.occ_ptr[y], s.occ_ptr[y + 1]):
        c = s.occ[e]
        s.nfalse[c] += 1
        if s.nsat[c] == 0 and s.nfalse[c] == s.size[c]:
            ok = False
    return ok


cdef void _dpll_undo_to(_Dpll* s, Py_ssize_t mark) noexcept nogil:
    cdef Py_ssize_t e, p
    cdef int c, lit, x, y
    while s.ntrail > mark:
        s.ntrail -= 1
        lit = s.trail[s.ntrail]
        s.value[lit if lit > 0 else -lit] = -1
        x = _slot(lit)
        y = _slot(-lit)
        for e in range(s.occ_ptr[x], s.occ_ptr[x + 1]):
            c = s.occ[e]
            s.nsat[c] -= 1
            if s.nsat[c] == 0:
                s.unsat_left += 1
                for p in range(s.offsets[c], s.offsets[c + 1]):
                    s.active[_slot(s.lits[p])] += 1
        for e in range(s.occ_ptr[y], s.occ_ptr[y + 1]):
            s.nfalse[s.occ[e]] -= 1


cdef bint _dpll_propagate(_Dpll* s, Py_ssize_t qi) noexcept nogil:
    cdef Py_ssize_t e, p
    cdef int c, lit, x, y, free
    while qi < s.ntrail:
        lit = s.trail[qi]
        qi += 1
        y = _slot(-lit)
        for e in range(s.occ_ptr[y], s.occ_ptr[y + 1]):
            c = s.occ[e]
            if s.nsat[c]:
                continue
            free = s.size[c] - s.nfalse[c]
            if free == 0:
                return False
            if free == 1:
                for p in range(s.offsets[c], s.offsets[c + 1]):
                    x = s.lits[p]
                    if s.value[x if x > 0 else -x] < 0:
                        if not _dpll_assign(s, x):
                            return False
                        break
    return True


cdef void _dpll_pure_literals(_Dpll* s) noexcept nogil:
    cdef bint changed = True
    cdef int v
    cdef long pos, neg
    while changed:
        changed = False
        for v in range(1, s.n + 1):
            if s.value[v] >= 0:
                continue
            pos = s.active[2 * v]
            neg = s.active[2 * v + 1]
            if pos and not neg:
                _dpll_assign(s, v)
                changed = True
            elif neg and not pos:
                _dpll_assign(s, -v)
                changed = True


def dpll(int n, const int[::1] lits, const long[::1] offsets, long max_nodes):
    cdef Py_ssize_t m = offsets.shape[0] - 1
    cdef Py_ssize_t c, p, x
    cdef int lit, v, best, status = -1
    cdef long score, best_score, nodes = 0
    cdef Py_ssize_t mark, depth = 0
    cdef bint ok = True
    cdef _Dpll s

    cdef long[::1] occ_ptr = np.zeros(2 * n + 3, dtype=np.int64)
    cdef int[::1] occ = np.empty(max(1, offsets[m]), dtype=np.int32)
    cdef long[::1] fill
    for p in range(offsets[m]):
        lit = lits[p]
        occ_ptr[_slot(lit) + 1] += 1
    for x in range(2 * n + 2):
        occ_ptr[x + 1] += occ_ptr[x]
    fill = np.array(occ_ptr[:2 * n + 2], dtype=np.int64)
    for c in range(m):
        for p in range(offsets[c], offsets[c + 1]):
            x = _slot(lits[p])
            occ[fill[x]] = <int>c
            fill[x] += 1

    cdef int[::1] size = np.zeros(max(1, m), dtype=np.int32)
    cdef int[::1] nsat = np.zeros(max(1, m), dtype=np.int32)
    cdef int[::1] nfalse = np.zeros(max(1, m), dtype=np.int32)
    cdef long[::1] active = np.empty(2 * n + 2, dtype=np.int64)
    cdef signed char[::1] value = np.full(n + 1, -1, dtype=np.int8)
    cdef int[::1] trail = np.zeros(n + 1, dtype=np.int32)
    cdef long[::1] dmark = np.zeros(n + 1, dtype=np.int64)
    cdef int[::1] dvar = np.zeros(n + 1, dtype=np.int32)
    cdef signed char[::1] dfirst = np.zeros(n + 1, dtype=np.int8)
    # an empty lits buffer still needs a valid pointer
    cdef const int[::1] lits_buf = lits if lits.shape[0] else np.zeros(1, dtype=np.int32)

    for c in range(m):
        size[c] = <int>(offsets[c + 1] - offsets[c])
    for x in range(2 * n + 2):
        active[x] = occ_ptr[x + 1] - occ_ptr[x]

    s.n = n
    s.lits = &lits_buf[0]
    s.offsets = &offsets[0]
    s.occ_ptr = &occ_ptr[0]
    s.occ = &occ[0]
    s.size = &size[0]
    s.nsat = &nsat[0]
    s.nfalse = &nfalse[0]
    s.active = &active[0]
    s.value = &value[0]
    s.trail = &trail[0]
    s.ntrail = 0
    s.unsat_left = m

    with nogil:
        for c in range(m):
            if s.size[c] == 0:
                status = DPLL_UNSAT
                break
        if status < 0:
            for c in range(m):
                if s.size[c] == 1 and s.nsat[c] == 0:
                    lit = s.lits[s.offsets[c]]
                    v = s.value[lit if lit > 0 else -lit]
                    if v >= 0:
                        if v != (1 if lit > 0 else 0):
                            ok = False
                            break
                    elif not _dpll_assign(&s, lit):
                        ok = False
                        break
            if not (ok and _dpll_propagate(&s, 0)):
                status = DPLL_UNSAT
        while status < 0:
            _dpll_pure_literals(&s)
            if s.unsat_left == 0:
                status = DPLL_SAT
                break
            if 0 <= max_nodes <= nodes:
                status = DPLL_BUDGET
                break
            best = 0
            best_score = -1
            for v in range(1, n + 1):
                if s.value[v] < 0:
                    score = s.active[2 * v] + s.active[2 * v + 1]
                    if score > best_score:
                        best = v
                        best_score = score
            nodes += 1
            mark = s.ntrail
            dmark[depth] = mark
            dvar[depth] = best
            dfirst[depth] = 1
            depth += 1
            ok = _dpll_assign(&s, best) and _dpll_propagate(&s, mark)
            while not ok:
                while depth > 0 and not dfirst[depth - 1]:
                    depth -= 1
                if depth == 0:
                    status = DPLL_UNSAT
                    break
                mark = dmark[depth - 1]
                v = dvar[depth - 1]
                dfirst[depth - 1] = 0
                _dpll_undo_to(&s, mark)
                ok = _dpll_assign(&s, -v) and _dpll_propagate(&s, mark)

    values = np.asarray(value).copy()
    if status == DPLL_SAT:
        values[values < 0] = 0
    values[0] = -1
    return status, nodes, values


def csr_from_edges(long num_nodes, const long[::1] src, const long[::1] dst):
    cdef Py_ssize_t e, E = src.shape[0]
    cdef long u
    cdef long[::1] indptr = np.zeros(num_nodes + 1, dtype=np.int64)
    cdef long[::1] indices = np.empty(E, dtype=np.int64)
    cdef long[::1] fill
    with nogil:
        for e in range(E):
            indptr[src[e] + 1] += 1
        for u in range(num_nodes):
            indptr[u + 1] += indptr[u]
    fill = np.array(indptr[:num_nodes], dtype=np.int64)
    with nogil:
        for e in range(E):
            u = src[e]
            indices[fill[u]] = dst[e]
            fill[u] += 1
    return np.asarray(indptr), np.asarray(indices)
