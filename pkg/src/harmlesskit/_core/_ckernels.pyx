# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels.

Mirrors ``_pykernels`` function for function: identical arguments, identical
deterministic tie-breaking, identical results.  Only the inner loops differ
(plain C arrays and recursion instead of Python objects).
"""

from libc.stdlib cimport free, malloc

BACKEND = "compiled"

cdef extern from *:
    int __builtin_popcountll(unsigned long long x)


cdef int* _copy_ints(seq) except NULL:
    cdef Py_ssize_t n = len(seq)
    cdef int* out = <int*> malloc((n if n else 1) * sizeof(int))
    if out == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        out[i] = seq[i]
    return out


cdef long long* _copy_longs(seq) except NULL:
    cdef Py_ssize_t n = len(seq)
    cdef long long* out = <long long*> malloc((n if n else 1) * sizeof(long long))
    if out == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        out[i] = seq[i]
    return out


cdef unsigned long long* _copy_masks(seq) except NULL:
    cdef Py_ssize_t n = len(seq)
    cdef unsigned long long* out = <unsigned long long*> malloc(
        (n if n else 1) * sizeof(unsigned long long))
    if out == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        out[i] = seq[i]
    return out


# ---------------------------------------------------------------------------
# branch-and-bound maximum harmless set
# ---------------------------------------------------------------------------

cdef struct BB:
    int ncand
    int* cand
    int* indptr
    int* indices
    int* budget
    int best
    int* best_set
    int* cur
    int cur_len


cdef void _bb_dfs(BB* st, int i) noexcept:
    cdef int j, u, p
    cdef bint ok
    if st.cur_len > st.best:
        st.best = st.cur_len
        for j in range(st.cur_len):
            st.best_set[j] = st.cur[j]
    if i == st.ncand or st.cur_len + (st.ncand - i) <= st.best:
        return
    u = st.cand[i]
    ok = True
    for p in range(st.indptr[u], st.indptr[u + 1]):
        if st.budget[st.indices[p]] < 1:
            ok = False
            break
    if ok:
        for p in range(st.indptr[u], st.indptr[u + 1]):
            st.budget[st.indices[p]] -= 1
        st.cur[st.cur_len] = u
        st.cur_len += 1
        _bb_dfs(st, i + 1)
        st.cur_len -= 1
        for p in range(st.indptr[u], st.indptr[u + 1]):
            st.budget[st.indices[p]] += 1
    _bb_dfs(st, i + 1)


def max_harmless(indptr, indices, thresholds, candidates):
    """Branch-and-bound maximum harmless set; see _pykernels.max_harmless."""
    cdef BB st
    cdef Py_ssize_t n = len(thresholds)
    cdef int v
    st.ncand = len(candidates)
    st.cand = _copy_ints(candidates)
    st.indptr = _copy_ints(indptr)
    st.indices = _copy_ints(indices)
    st.budget = <int*> malloc((n if n else 1) * sizeof(int))
    st.best_set = <int*> malloc((st.ncand if st.ncand else 1) * sizeof(int))
    st.cur = <int*> malloc((st.ncand if st.ncand else 1) * sizeof(int))
    if st.budget == NULL or st.best_set == NULL or st.cur == NULL:
        raise MemoryError()
    for v in range(n):
        st.budget[v] = thresholds[v] - 1
    st.best = -1
    st.cur_len = 0
    try:
        _bb_dfs(&st, 0)
        return st.best, sorted(st.best_set[j] for j in range(st.best))
    finally:
        free(st.cand)
        free(st.indptr)
        free(st.indices)
        free(st.budget)
        free(st.best_set)
        free(st.cur)


# ---------------------------------------------------------------------------
# vertex-cover guess scan with per-guess packing program
# ---------------------------------------------------------------------------

cdef struct ILP:
    int nclasses
    long long* class_size
    int* cm_indptr
    int* cm_idx
    long long* caps
    long long best


cdef long long _ilp_upper(ILP* st, int i) noexcept:
    cdef long long s = 0, lim, c
    cdef int j, p
    for j in range(i, st.nclasses):
        lim = st.class_size[j]
        for p in range(st.cm_indptr[j], st.cm_indptr[j + 1]):
            c = st.caps[st.cm_idx[p]]
            if c < lim:
                lim = c
        s += lim
    return s


cdef void _ilp_dfs(ILP* st, int i, long long acc) noexcept:
    cdef long long lim, c, x
    cdef int p
    if acc > st.best:
        st.best = acc
    if i == st.nclasses or acc + _ilp_upper(st, i) <= st.best:
        return
    lim = st.class_size[i]
    for p in range(st.cm_indptr[i], st.cm_indptr[i + 1]):
        c = st.caps[st.cm_idx[p]]
        if c < lim:
            lim = c
    x = lim
    while x >= 0:
        if x:
            for p in range(st.cm_indptr[i], st.cm_indptr[i + 1]):
                st.caps[st.cm_idx[p]] -= x
        _ilp_dfs(st, i + 1, acc + x)
        if x:
            for p in range(st.cm_indptr[i], st.cm_indptr[i + 1]):
                st.caps[st.cm_idx[p]] += x
        x -= 1


def vc_scan(xnbr_mask, x_thresh, class_mask, class_size, class_min_t,
            cm_indptr, cm_idx, mask_lo, mask_hi, best_total=-1, best_mask=0):
    """Scan cover guesses; see _pykernels.vc_scan."""
    cdef int nx = len(xnbr_mask)
    cdef ILP st
    st.nclasses = len(class_mask)
    cdef unsigned long long* xm = _copy_masks(xnbr_mask)
    cdef long long* xt = _copy_longs(x_thresh)
    cdef unsigned long long* cm = _copy_masks(class_mask)
    st.class_size = _copy_longs(class_size)
    cdef long long* cmin = _copy_longs(class_min_t)
    st.cm_indptr = _copy_ints(cm_indptr)
    st.cm_idx = _copy_ints(cm_idx)
    st.caps = <long long*> malloc((nx if nx else 1) * sizeof(long long))
    if st.caps == NULL:
        raise MemoryError()

    cdef unsigned long long lo = mask_lo, hi = mask_hi, mask
    cdef long long best = best_total, used, base, ub, lim, c, total
    cdef unsigned long long bmask = best_mask
    cdef int i, j, p
    cdef bint ok
    try:
        mask = lo
        while mask < hi:
            ok = True
            for i in range(nx):
                used = __builtin_popcountll(xm[i] & mask)
                if used >= xt[i]:
                    ok = False
                    break
                st.caps[i] = xt[i] - 1 - used
            if ok:
                for j in range(st.nclasses):
                    if __builtin_popcountll(cm[j] & mask) >= cmin[j]:
                        ok = False
                        break
            if ok:
                base = __builtin_popcountll(mask)
                ub = base
                for j in range(st.nclasses):
                    lim = st.class_size[j]
                    for p in range(st.cm_indptr[j], st.cm_indptr[j + 1]):
                        c = st.caps[st.cm_idx[p]]
                        if c < lim:
                            lim = c
                    ub += lim
                if ub > best:
                    st.best = 0
                    _ilp_dfs(&st, 0, 0)
                    total = base + st.best
                    if total > best:
                        best = total
                        bmask = mask
            mask += 1
        return best, bmask
    finally:
        free(xm)
        free(xt)
        free(cm)
        free(st.class_size)
        free(cmin)
        free(st.cm_indptr)
        free(st.cm_idx)
        free(st.caps)
