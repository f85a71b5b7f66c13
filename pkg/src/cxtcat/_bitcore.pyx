# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled bitmask kernels; same contract as ``_bitcore_py``.

Masks are limited to 64 bits here; the dispatcher in ``cxtcat.kernels``
falls back to the pure twin for wider universes.
"""

from libc.stdlib cimport free, malloc

IS_COMPILED = True

ctypedef unsigned long long u64


cdef u64* _as_array(list xs) except NULL:
    cdef Py_ssize_t n = len(xs)
    cdef u64* arr = <u64*> malloc(n * sizeof(u64) if n else sizeof(u64))
    if arr == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        arr[i] = xs[i]
    return arr


def closure_mask(list rows, full, y):
    cdef u64 c = full
    cdef u64 ym = y
    cdef u64 r
    for r_obj in rows:
        r = r_obj
        if r & ym == ym:
            c &= r
    return c


cdef u64 _closure(u64* rs, Py_ssize_t n_rows, u64 full, u64 ym) noexcept:
    cdef u64 cc = full
    cdef Py_ssize_t ii
    for ii in range(n_rows):
        if rs[ii] & ym == ym:
            cc &= rs[ii]
    return cc


def closed_masks_powerset(list rows, int n_attrs):
    cdef u64 full = ((<u64> 1) << n_attrs) - 1
    cdef u64* rs = _as_array(rows)
    cdef Py_ssize_t n_rows = len(rows)
    cdef set seen = set()
    cdef u64 y
    try:
        y = 0
        while True:
            seen.add(_closure(rs, n_rows, full, y))
            if y == full:
                break
            y += 1
    finally:
        free(rs)
    return sorted(seen)


def closed_masks_saturate(list rows, int n_attrs):
    cdef u64 full = ((<u64> 1) << n_attrs) - 1
    cdef u64* rs = _as_array(rows)
    cdef Py_ssize_t n_rows = len(rows)
    cdef set seen = set()
    cdef list frontier, fresh
    cdef u64 a, b, c
    cdef int k
    try:
        seen.add(_closure(rs, n_rows, full, 0))
        for k in range(n_attrs):
            seen.add(_closure(rs, n_rows, full, (<u64> 1) << k))
        frontier = list(seen)
        while frontier:
            fresh = []
            for a_obj in frontier:
                a = a_obj
                for b_obj in list(seen):
                    b = b_obj
                    c = _closure(rs, n_rows, full, a | b)
                    if c not in seen:
                        seen.add(c)
                        fresh.append(c)
            frontier = fresh
    finally:
        free(rs)
    return sorted(seen)


cdef bint _is_directed(u64 d, u64* up, int n) noexcept:
    cdef int a, b
    for a in range(n):
        if not d >> a & 1:
            continue
        for b in range(a, n):
            if not d >> b & 1:
                continue
            if not up[a] & up[b] & d:
                return False
    return True


def directed_masks(list up):
    cdef int n = len(up)
    cdef u64* u = _as_array(up)
    cdef list out = []
    cdef u64 d, top = (<u64> 1) << n
    try:
        d = 1
        while d < top:
            if _is_directed(d, u, n):
                out.append(d)
            d += 1
    finally:
        free(u)
    return out


def ideal_masks(list down, list up):
    cdef int n = len(down)
    cdef u64* dn = _as_array(down)
    cdef u64* u = _as_array(up)
    cdef list out = []
    cdef u64 d, top = (<u64> 1) << n
    cdef int i
    cdef bint ok
    try:
        d = 1
        while d < top:
            ok = True
            for i in range(n):
                if d >> i & 1 and dn[i] & ~d:
                    ok = False
                    break
            if ok and _is_directed(d, u, n):
                out.append(d)
            d += 1
    finally:
        free(dn)
        free(u)
    return out


def compact_mask(list up, list down, list join):
    cdef int n = len(up)
    cdef u64* u = _as_array(up)
    cdef u64* dn = _as_array(down)
    cdef u64* jn = _as_array(join)
    cdef u64 compact = ((<u64> 1) << n) - 1
    cdef u64 d, covered, top = (<u64> 1) << n
    cdef int i, sup
    try:
        d = 1
        while d < top:
            if _is_directed(d, u, n):
                sup = -1
                covered = 0
                for i in range(n):
                    if d >> i & 1:
                        covered |= dn[i]
                        sup = i if sup < 0 else <int> jn[sup * n + i]
                compact &= ~(dn[sup] & ~covered)
            d += 1
    finally:
        free(u)
        free(dn)
        free(jn)
    return compact


def scott_open_masks(list up, list down, list join):
    cdef int n = len(up)
    cdef u64* u = _as_array(up)
    cdef u64* jn = _as_array(join)
    cdef u64 d, top = (<u64> 1) << n
    cdef list dm = []
    cdef list ds = []
    cdef int i, sup
    cdef u64* dmask = NULL
    cdef int* dsup = NULL
    cdef Py_ssize_t n_dir, k
    cdef u64 uu
    cdef bint ok
    cdef list out = []
    try:
        d = 1
        while d < top:
            if _is_directed(d, u, n):
                sup = -1
                for i in range(n):
                    if d >> i & 1:
                        sup = i if sup < 0 else <int> jn[sup * n + i]
                dm.append(d)
                ds.append(sup)
            d += 1
        n_dir = len(dm)
        dmask = <u64*> malloc((n_dir if n_dir else 1) * sizeof(u64))
        dsup = <int*> malloc((n_dir if n_dir else 1) * sizeof(int))
        if dmask == NULL or dsup == NULL:
            raise MemoryError()
        for k in range(n_dir):
            dmask[k] = dm[k]
            dsup[k] = ds[k]
        uu = 0
        while True:
            ok = True
            for i in range(n):
                if uu >> i & 1 and u[i] & ~uu:
                    ok = False
                    break
            if ok:
                for k in range(n_dir):
                    if uu >> dsup[k] & 1 and not dmask[k] & uu:
                        ok = False
                        break
            if ok:
                out.append(uu)
            if uu == top - 1:
                break
            uu += 1
    finally:
        free(u)
        free(jn)
        if dmask != NULL:
            free(dmask)
        if dsup != NULL:
            free(dsup)
    return out


def monotone_maps(int n_src, list preds, list tgt_up):
    cdef int n_tgt = len(tgt_up)
    cdef u64* tu = _as_array(tgt_up)
    cdef int* pick = <int*> malloc((n_src if n_src else 1) * sizeof(int))
    cdef list out = []
    cdef int i, t, j
    cdef bint ok
    if pick == NULL:
        free(tu)
        raise MemoryError()
    if n_src == 0:
        free(tu)
        free(pick)
        return [()]

    # flatten predecessor lists
    cdef list flat = []
    cdef list offs = [0]
    for ps in preds:
        flat.extend(ps)
        offs.append(len(flat))
    cdef int* pf = <int*> malloc((len(flat) if flat else 1) * sizeof(int))
    cdef int* po = <int*> malloc((n_src + 1) * sizeof(int))
    if pf == NULL or po == NULL:
        free(tu)
        free(pick)
        if pf != NULL:
            free(pf)
        raise MemoryError()
    for i in range(len(flat)):
        pf[i] = flat[i]
    for i in range(n_src + 1):
        po[i] = offs[i]

    # iterative backtracking, targets tried in ascending order
    cdef int pos = 0
    cdef int* nxt = <int*> malloc(n_src * sizeof(int))
    if nxt == NULL:
        free(tu)
        free(pick)
        free(pf)
        free(po)
        raise MemoryError()
    nxt[0] = 0
    try:
        while pos >= 0:
            if nxt[pos] >= n_tgt:
                pos -= 1
                if pos >= 0:
                    nxt[pos] += 1
                continue
            t = nxt[pos]
            ok = True
            for j in range(po[pos], po[pos + 1]):
                if not tu[pick[pf[j]]] >> t & 1:
                    ok = False
                    break
            if not ok:
                nxt[pos] += 1
                continue
            pick[pos] = t
            if pos == n_src - 1:
                out.append(tuple([pick[i] for i in range(n_src)]))
                nxt[pos] += 1
            else:
                pos += 1
                nxt[pos] = 0
    finally:
        free(tu)
        free(pick)
        free(pf)
        free(po)
        free(nxt)
    return out
