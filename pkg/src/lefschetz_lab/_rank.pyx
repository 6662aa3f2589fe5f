# cython: boundscheck=False, wraparound=False, cdivision=True
"""Fraction-free (Bareiss) rank of an int64 matrix with overflow detection."""

cdef extern from *:
    """
    static int lab_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static int lab_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int lab_mul_ovf(long long a, long long b, long long *r) nogil
    int lab_sub_ovf(long long a, long long b, long long *r) nogil


def rank_int64(long long[:, ::1] a):
    """Rank over Q of ``a``, destroying ``a``.

    Raises OverflowError when an intermediate minor leaves the int64 range;
    the caller is expected to retry with arbitrary precision.
    """
    cdef Py_ssize_t m = a.shape[0]
    cdef Py_ssize_t n = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, p
    cdef long long prev = 1, piv, lead, x, y, t
    cdef bint overflow = False

    with nogil:
        for c in range(n):
            if r == m:
                break
            p = -1
            for i in range(r, m):
                if a[i, c] != 0:
                    p = i
                    break
            if p < 0:
                continue
            if p != r:
                for j in range(c, n):
                    t = a[p, j]
                    a[p, j] = a[r, j]
                    a[r, j] = t
            piv = a[r, c]
            for i in range(r + 1, m):
                lead = a[i, c]
                for j in range(c + 1, n):
                    if lab_mul_ovf(piv, a[i, j], &x) or lab_mul_ovf(lead, a[r, j], &y) \
                            or lab_sub_ovf(x, y, &t):
                        overflow = True
                        break
                    a[i, j] = t // prev
                if overflow:
                    break
                a[i, c] = 0
            if overflow:
                break
            prev = piv
            r += 1

    if overflow:
        raise OverflowError("int64 overflow in fraction-free elimination")
    return r
