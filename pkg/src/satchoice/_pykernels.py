"""Pure-Python kernels.

Same signatures and results as the compiled ``_kernels`` extension; used
when the extension is not built or ``SATCHOICE_PURE_PYTHON`` is set. The
two must stay in lock step: same loop order, same consumption of the
pre-drawn uniforms, same floating-point operation order.
"""

import math

import numpy as np

MODE_UC = 0
MODE_BUC = 1
MODE_SC = 2
MODE_BSC = 3

STATUS_SUCCESS = 0
STATUS_CONTRADICTION = 1
STATUS_INCOMPLETE = 2

TWO_CLAUSE_EPS = 1e-9
CLAMP_EPS = 1e-9


def _pick(u, count):
    i = int(u * count)
    return count - 1 if i >= count else i


def _census_row(census, width):
    return [census[i][j] for i in range(1, width + 1) for j in range(i + 1)]


def run_heuristic(n, lits, offsets, mode, uniforms, trace_every, max_steps):
    """Run one of UC/BUC/SC/BSC.

    Returns ``(status, step, values, trace_T, trace_S)``. ``values`` has
    length ``n + 1`` (1/0/-1); ``step`` is the step at which an empty clause
    appeared (contradiction) or the number of steps taken.
    """
    lits = lits.tolist()
    offsets = offsets.tolist()
    U = uniforms.tolist()
    m = len(offsets) - 1
    width = max((offsets[c + 1] - offsets[c] for c in range(m)), default=0)

    occ = [[] for _ in range(2 * n + 2)]
    for c in range(m):
        for p in range(offsets[c], offsets[c + 1]):
            lit = lits[p]
            occ[2 * lit if lit > 0 else -2 * lit + 1].append(c)

    clen = [0] * m
    cpos = [0] * m
    sat = [False] * m
    census = [[0] * (width + 1) for _ in range(width + 1)]
    b1, p1 = [], [-1] * m
    b2, p2 = [], [-1] * m

    def push(b, pos, c):
        pos[c] = len(b)
        b.append(c)

    def drop(b, pos, c):
        i = pos[c]
        last = b.pop()
        if last != c:
            b[i] = last
            pos[last] = i
        pos[c] = -1

    for c in range(m):
        L = offsets[c + 1] - offsets[c]
        P = 0
        for p in range(offsets[c], offsets[c + 1]):
            if lits[p] > 0:
                P += 1
        clen[c] = L
        cpos[c] = P
        census[L][P] += 1
        if L == 1:
            push(b1, p1, c)
        elif L == 2:
            push(b2, p2, c)

    value = [-1] * (n + 1)
    unset = list(range(1, n + 1))
    upos = [0] + list(range(n))

    trace_T, trace_S = [], []
    if trace_every > 0:
        trace_T.append(0)
        trace_S.append(_census_row(census, width))

    limit = n if max_steps < 0 or max_steps > n else max_steps
    T = 0
    while T < limit:
        T += 1
        u1 = U[2 * T - 2]
        u2 = U[2 * T - 1]
        if b1:
            c = b1[_pick(u1, len(b1))]
            for p in range(offsets[c], offsets[c + 1]):
                lit = lits[p]
                if value[abs(lit)] < 0:
                    break
            var = abs(lit)
            val = 1 if lit > 0 else 0
        elif mode == MODE_BUC or mode == MODE_UC or not b2:
            var = unset[_pick(u1, len(unset))]
            if mode == MODE_BUC:
                val = 1
            else:
                val = 1 if u2 < 0.5 else 0
        else:
            c = b2[_pick(u1, len(b2))]
            la = lb = 0
            for p in range(offsets[c], offsets[c + 1]):
                lit = lits[p]
                if value[abs(lit)] < 0:
                    if la == 0:
                        la = lit
                    else:
                        lb = lit
            if mode == MODE_BSC and (la > 0) != (lb > 0):
                lit = la if la > 0 else lb
            else:
                lit = la if u2 < 0.5 else lb
            var = abs(lit)
            val = 1 if lit > 0 else 0

        value[var] = val
        i = upos[var]
        last = unset.pop()
        if last != var:
            unset[i] = last
            upos[last] = i

        if val:
            tslot, fslot = 2 * var, 2 * var + 1
        else:
            tslot, fslot = 2 * var + 1, 2 * var
        for c in occ[tslot]:
            if not sat[c]:
                sat[c] = True
                L = clen[c]
                census[L][cpos[c]] -= 1
                if L == 1:
                    drop(b1, p1, c)
                elif L == 2:
                    drop(b2, p2, c)
        for c in occ[fslot]:
            if sat[c]:
                continue
            L = clen[c]
            census[L][cpos[c]] -= 1
            if L == 1:
                drop(b1, p1, c)
            elif L == 2:
                drop(b2, p2, c)
            L -= 1
            clen[c] = L
            if not val:
                cpos[c] -= 1
            if L == 0:
                return STATUS_CONTRADICTION, T, np.array(value, dtype=np.int8), \
                    np.array(trace_T, dtype=np.int64), _trace_array(trace_S, width)
            census[L][cpos[c]] += 1
            if L == 1:
                push(b1, p1, c)
            elif L == 2:
                push(b2, p2, c)

        if trace_every > 0 and T % trace_every == 0:
            trace_T.append(T)
            trace_S.append(_census_row(census, width))

    status = STATUS_SUCCESS if T == n else STATUS_INCOMPLETE
    return status, T, np.array(value, dtype=np.int8), np.array(trace_T, dtype=np.int64), _trace_array(trace_S, width)


def _trace_array(rows, width):
    ncells = width * (width + 3) // 2
    return np.array(rows, dtype=np.int64).reshape(len(rows), ncells)


def tarjan_scc(num_nodes, indptr, indices):
    """Strongly connected components, numbered in reverse topological order.

    Iterative Tarjan; roots are visited in increasing node order and
    successors in adjacency order. Returns ``(comp, ncomp)``.
    """
    indptr = indptr.tolist()
    indices = indices.tolist()
    index = [-1] * num_nodes
    low = [0] * num_nodes
    onstack = [False] * num_nodes
    comp = [-1] * num_nodes
    stack = []
    work = []  # (node, next edge position)
    counter = 0
    ncomp = 0
    for root in range(num_nodes):
        if index[root] >= 0:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        onstack[root] = True
        work.append([root, indptr[root]])
        while work:
            frame = work[-1]
            v = frame[0]
            e = frame[1]
            if e < indptr[v + 1]:
                frame[1] = e + 1
                w = indices[e]
                if index[w] < 0:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    onstack[w] = True
                    work.append([w, indptr[w]])
                elif onstack[w] and index[w] < low[v]:
                    low[v] = index[w]
                continue
            work.pop()
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    onstack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
    return np.array(comp, dtype=np.int64), ncomp


def _cell(w):
    """Flat index of (i, j) for 2 <= i <= w, 0 <= j <= i."""
    base = {}
    off = 0
    for i in range(2, w + 1):
        base[i] = off
        off += i + 1
    return base, off


def _rhs(w, bsc, base, t, s, ds, aux):
    d = 1.0 - t
    s20 = s[0] if s[0] > 0.0 else 0.0
    s21 = s[1] if s[1] > 0.0 else 0.0
    s22 = s[2] if s[2] > 0.0 else 0.0
    a = s21 / d
    b = 2.0 * s20 / d
    c = 2.0 * s22 / d
    lam = a + math.sqrt(b * c)
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
            # depleted: free steps absorb incoming 2-clauses up to rate pf
            inflow = ds[0] + ds[1] + ds[2]
            if inflow > 0.0:
                f = (pf if pf < inflow else inflow) / inflow
                for j in range(3):
                    ds[j] -= f * ds[j]
    return True


def integrate_ode(w, bsc, s0, h, nsteps, record_every):
    """Fixed-step RK4 for the BUC/BSC density system.

    ``s0`` is the flat initial state (layers 2..w). Records every
    ``record_every`` grid points (0 disables) and always the last one.
    Returns ``(steps_done, critical, max_lam, rec_t, rec_s, rec_aux)``;
    ``critical`` is 1 when lambda >= 1 was met at a grid point or stage.
    ``rec_aux`` columns are lambda, q0, q1, p_free. Raises ``ValueError``
    on a density below ``-CLAMP_EPS``.
    """
    base, size = _cell(w)
    s = [float(x) for x in s0]
    k1 = [0.0] * size
    k2 = [0.0] * size
    k3 = [0.0] * size
    k4 = [0.0] * size
    tmp = [0.0] * size
    aux = [0.0] * 4
    saux = [0.0] * 4
    rec_t, rec_s, rec_aux = [], [], []
    max_lam = 0.0
    critical = 0
    step = 0
    while True:
        t = step * h
        ok = _rhs(w, bsc, base, t, s, k1, aux)
        if aux[0] > max_lam:
            max_lam = aux[0]
        if not ok:
            critical = 1
        # past lambda >= 1 rounds are undefined, so integration ends there
        last = step == nsteps or critical
        if record_every > 0 and (step % record_every == 0 or last):
            rec_t.append(t)
            rec_s.append(list(s))
            rec_aux.append([aux[0], aux[1], aux[2], aux[3]] if ok else [aux[0], math.nan, math.nan, math.nan])
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
                rec_t.append(t)
                rec_s.append(list(s))
                rec_aux.append([aux[0], aux[1], aux[2], aux[3]])
            break
        for x in range(size):
            v = s[x] + h / 6.0 * (k1[x] + 2.0 * k2[x] + 2.0 * k3[x] + k4[x])
            if v < 0.0:
                if bsc and x < 3:
                    v = 0.0
                elif v >= -CLAMP_EPS:
                    v = 0.0
                else:
                    raise ValueError(f"density {x} fell to {v!r} at t={t + h!r}")
            s[x] = v
        step += 1
    return (step, critical, max_lam, np.array(rec_t), np.array(rec_s).reshape(len(rec_t), size),
            np.array(rec_aux).reshape(len(rec_t), 4))


DPLL_SAT = 0
DPLL_UNSAT = 1
DPLL_BUDGET = 2


def dpll(n, lits, offsets, max_nodes):
    """Chronological-backtracking DPLL.

    Unit propagation and pure-literal elimination at every node, then a
    branch on the unset variable with the most occurrences in unsatisfied
    clauses (lowest index on ties), true first. ``max_nodes < 0`` means no
    budget. Returns ``(status, nodes, values)``; unset variables in a model
    are reported false.
    """
    lits = lits.tolist()
    offsets = offsets.tolist()
    m = len(offsets) - 1

    def slot(lit):
        return 2 * lit if lit > 0 else -2 * lit + 1

    occ = [[] for _ in range(2 * n + 2)]
    for c in range(m):
        for p in range(offsets[c], offsets[c + 1]):
            occ[slot(lits[p])].append(c)
    size = [offsets[c + 1] - offsets[c] for c in range(m)]
    nsat = [0] * m
    nfalse = [0] * m
    # occurrences of each literal slot in clauses not yet satisfied
    active = [len(o) for o in occ]
    value = [-1] * (n + 1)
    trail = []
    unsat_left = m

    def assign(lit):
        nonlocal unsat_left
        value[lit if lit > 0 else -lit] = 1 if lit > 0 else 0
        trail.append(lit)
        for c in occ[slot(lit)]:
            nsat[c] += 1
            if nsat[c] == 1:
                unsat_left -= 1
                for p in range(offsets[c], offsets[c + 1]):
                    active[slot(lits[p])] -= 1
        ok = True
        for c in occ[slot(-lit)]:
            nfalse[c] += 1
            if nsat[c] == 0 and nfalse[c] == size[c]:
                ok = False
        return ok

    def undo_to(mark):
        nonlocal unsat_left
        while len(trail) > mark:
            lit = trail.pop()
            value[lit if lit > 0 else -lit] = -1
            for c in occ[slot(lit)]:
                nsat[c] -= 1
                if nsat[c] == 0:
                    unsat_left += 1
                    for p in range(offsets[c], offsets[c + 1]):
                        active[slot(lits[p])] += 1
            for c in occ[slot(-lit)]:
                nfalse[c] -= 1

    def propagate(qi):
        while qi < len(trail):
            lit = trail[qi]
            qi += 1
            for c in occ[slot(-lit)]:
                if nsat[c]:
                    continue
                free = size[c] - nfalse[c]
                if free == 0:
                    return False
                if free == 1:
                    for p in range(offsets[c], offsets[c + 1]):
                        x = lits[p]
                        if value[x if x > 0 else -x] < 0:
                            if not assign(x):
                                return False
                            break
        return True

    def pure_literals():
        changed = True
        while changed:
            changed = False
            for v in range(1, n + 1):
                if value[v] >= 0:
                    continue
                pos, neg = active[2 * v], active[2 * v + 1]
                if pos and not neg:
                    assign(v)
                    changed = True
                elif neg and not pos:
                    assign(-v)
                    changed = True

    def result(status, nodes):
        values = np.array(value, dtype=np.int8)
        if status == DPLL_SAT:
            values[values < 0] = 0
        values[0] = -1
        return status, nodes, values

    for c in range(m):
        if size[c] == 0:
            return result(DPLL_UNSAT, 0)
    ok = True
    for c in range(m):
        if size[c] == 1 and nsat[c] == 0:
            lit = lits[offsets[c]]
            v = value[lit if lit > 0 else -lit]
            if v >= 0:
                if v != (1 if lit > 0 else 0):
                    ok = False
                    break
            elif not assign(lit):
                ok = False
                break
    if not (ok and propagate(0)):
        return result(DPLL_UNSAT, 0)

    decisions = []  # (trail mark, variable, on first branch)
    nodes = 0
    while True:
        pure_literals()
        if unsat_left == 0:
            return result(DPLL_SAT, nodes)
        if 0 <= max_nodes <= nodes:
            return result(DPLL_BUDGET, nodes)
        best, best_score = 0, -1
        for v in range(1, n + 1):
            if value[v] < 0 and active[2 * v] + active[2 * v + 1] > best_score:
                best, best_score = v, active[2 * v] + active[2 * v + 1]
        nodes += 1
        mark = len(trail)
        decisions.append((mark, best, True))
        ok = assign(best) and propagate(mark)
        while not ok:
            while decisions and not decisions[-1][2]:
                decisions.pop()
            if not decisions:
                return result(DPLL_UNSAT, nodes)
            mark, v, _ = decisions.pop()
            undo_to(mark)
            decisions.append((mark, v, False))
            ok = assign(-v) and propagate(mark)


def csr_from_edges(num_nodes, src, dst):
    """Adjacency in CSR form; edges keep their input order within a row."""
    order = np.argsort(src, kind="stable")
    indptr = np.zeros(num_nodes + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=num_nodes), out=indptr[1:])
    return indptr, np.ascontiguousarray(dst[order], dtype=np.int64)
