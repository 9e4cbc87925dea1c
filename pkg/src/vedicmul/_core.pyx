# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels over little-endian uint32 limb arrays.

Same algorithms and same entry points as ``_pycore`` (minus metering).  Limb
buffers are always sized for their worst case up front; helpers return the
normalized word count (no zero words at the top).  Negative returns signal
failure: ERR_ALGO for a broken invariant, ERR_NOMEM for allocation failure.

Operands below 2**31 switch to a uint64 path so squares of sums never overflow.
"""
from libc.stdint cimport uint32_t, uint64_t, int64_t, uint8_t
from libc.stdlib cimport calloc, malloc, free
from libc.string cimport memcpy, memset
from cpython.bytes cimport PyBytes_FromStringAndSize, PyBytes_AS_STRING

from .errors import AlgorithmError

cdef extern from *:
    int __builtin_clz(unsigned int) nogil
    int __builtin_ctz(unsigned int) nogil
    int __builtin_clzll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil

ctypedef Py_ssize_t idx

cdef enum:
    ERR_ALGO = -1
    ERR_NOMEM = -2
    NATIVE_BITS = 31


# ---------------------------------------------------------------- limb helpers

cdef inline idx norm(const uint32_t* a, idx n) noexcept nogil:
    while n > 0 and a[n - 1] == 0:
        n -= 1
    return n


cdef inline idx bitlen(const uint32_t* a, idx n) noexcept nogil:
    if n == 0:
        return 0
    return (n - 1) * 32 + 32 - __builtin_clz(a[n - 1])


cdef inline idx tzbits(const uint32_t* a, idx n) noexcept nogil:
    cdef idx i = 0
    while i < n and a[i] == 0:
        i += 1
    if i == n:
        return 0
    return i * 32 + __builtin_ctz(a[i])


cdef inline int cmp_n(const uint32_t* a, idx an, const uint32_t* b, idx bn) noexcept nogil:
    if an != bn:
        return 1 if an > bn else -1
    cdef idx i = an
    while i > 0:
        i -= 1
        if a[i] != b[i]:
            return 1 if a[i] > b[i] else -1
    return 0


cdef idx add_n(uint32_t* out, const uint32_t* a, idx an, const uint32_t* b, idx bn) noexcept nogil:
    """out = a + b; out needs max(an, bn) + 1 words and may alias a or b."""
    cdef const uint32_t* t
    cdef idx i, tn
    cdef uint64_t c = 0
    if an < bn:
        t = a; a = b; b = t
        tn = an; an = bn; bn = tn
    for i in range(bn):
        c += <uint64_t>a[i] + b[i]
        out[i] = <uint32_t>c
        c >>= 32
    for i in range(bn, an):
        c += a[i]
        out[i] = <uint32_t>c
        c >>= 32
    out[an] = <uint32_t>c
    return an + 1 if c else an


cdef idx sub_n(uint32_t* out, const uint32_t* a, idx an, const uint32_t* b, idx bn) noexcept nogil:
    """out = a - b for a >= b; out needs an words and may alias a or b."""
    cdef idx i
    cdef int64_t t
    cdef uint32_t borrow = 0
    for i in range(bn):
        t = <int64_t>a[i] - b[i] - borrow
        out[i] = <uint32_t>t
        borrow = t < 0
    for i in range(bn, an):
        t = <int64_t>a[i] - borrow
        out[i] = <uint32_t>t
        borrow = t < 0
    return norm(out, an)


cdef idx shl_n(uint32_t* out, const uint32_t* a, idx an, idx s) noexcept nogil:
    """out = a << s; out needs an + s/32 + 1 words and may alias a."""
    cdef idx ws = s >> 5, i
    cdef int bs = s & 31
    if an == 0:
        return 0
    if bs == 0:
        i = an
        while i > 0:
            i -= 1
            out[i + ws] = a[i]
        memset(out, 0, ws * sizeof(uint32_t))
        return an + ws
    out[an + ws] = a[an - 1] >> (32 - bs)
    i = an - 1
    while i > 0:
        out[i + ws] = (a[i] << bs) | (a[i - 1] >> (32 - bs))
        i -= 1
    out[ws] = a[0] << bs
    memset(out, 0, ws * sizeof(uint32_t))
    return norm(out, an + ws + 1)


cdef idx shr_n(uint32_t* out, const uint32_t* a, idx an, idx s) noexcept nogil:
    """out = a >> s; out needs an - s/32 words and may alias a."""
    cdef idx ws = s >> 5, i, m
    cdef int bs = s & 31
    if ws >= an:
        return 0
    m = an - ws
    for i in range(m):
        if bs == 0:
            out[i] = a[i + ws]
        elif i + ws + 1 < an:
            out[i] = (a[i + ws] >> bs) | (a[i + ws + 1] << (32 - bs))
        else:
            out[i] = a[i + ws] >> bs
    return norm(out, m)


cdef idx low_bits(uint32_t* out, const uint32_t* a, idx an, idx k) noexcept nogil:
    """out = a mod 2**k."""
    cdef idx ws = k >> 5, m
    cdef int bs = k & 31
    m = ws + 1 if bs else ws
    if m > an:
        m = an
    memcpy(out, a, m * sizeof(uint32_t))
    if bs and ws < an:
        out[ws] &= (<uint32_t>1 << bs) - 1
    return norm(out, m)


cdef idx add_shifted(uint32_t* acc, idx an, const uint32_t* t, idx tn, idx s) noexcept nogil:
    """acc += t << s in place.  acc must have room for the result plus one word."""
    cdef idx ws = s >> 5, i, top
    cdef int bs = s & 31
    cdef uint32_t w, prev = 0, sw
    cdef uint64_t c = 0
    if tn == 0:
        return an
    top = ws + tn + 1
    for i in range(an, top):
        acc[i] = 0
    if an < top:
        an = top
    for i in range(tn):
        w = t[i]
        if bs:
            sw = (w << bs) | (prev >> (32 - bs))
        else:
            sw = w
        prev = w
        c += <uint64_t>acc[ws + i] + sw
        acc[ws + i] = <uint32_t>c
        c >>= 32
    sw = prev >> (32 - bs) if bs else 0
    c += <uint64_t>acc[ws + tn] + sw
    acc[ws + tn] = <uint32_t>c
    c >>= 32
    i = ws + tn + 1
    while c:
        if i >= an:
            acc[i] = 0
            an = i + 1
        c += acc[i]
        acc[i] = <uint32_t>c
        c >>= 32
        i += 1
    return norm(acc, an)


cdef inline void toggle_bit(uint32_t* a, idx j) noexcept nogil:
    a[j >> 5] ^= <uint32_t>1 << (j & 31)


cdef inline bint test_bit(const uint32_t* a, idx an, idx j) noexcept nogil:
    if (j >> 5) >= an:
        return 0
    return (a[j >> 5] >> (j & 31)) & 1


cdef inline uint64_t u64_of(const uint32_t* a, idx an) noexcept nogil:
    cdef uint64_t v = 0
    if an > 0:
        v = a[0]
    if an > 1:
        v |= (<uint64_t>a[1]) << 32
    return v


cdef inline idx store_u64(uint32_t* out, uint64_t v) noexcept nogil:
    out[0] = <uint32_t>v
    out[1] = <uint32_t>(v >> 32)
    return norm(out, 2)


cdef inline int bitlen64(uint64_t v) noexcept nogil:
    return 0 if v == 0 else 64 - __builtin_clzll(v)


# ---------------------------------------------------------- native (< 2**31)

cdef uint64_t school_u64(uint64_t a, uint64_t b) noexcept nogil:
    # single-digit product at word radix
    return a * b


cdef uint64_t nik_square_u64(uint64_t a) noexcept nogil:
    """Two-phase residue/partial recurrence for a < 2**32."""
    cdef uint64_t res[65]
    cdef int n, i, j, t
    cdef uint64_t b
    if a < 2:
        return a & a
    t = __builtin_ctzll(a)
    a >>= t
    n = bitlen64(a)
    res[1] = a
    for i in range(2, n + 1):
        j = n - i + 1
        if (res[i - 1] >> j) & 1:
            res[i] = res[i - 1] - (<uint64_t>1 << j)
        else:
            res[i] = res[i - 1]
    b = res[n] & res[n]
    for i in range(2, n + 1):
        j = n - i + 1
        if res[j] != res[j + 1]:
            b = b + ((res[j] + res[j + 1]) << (n - j))
    return b << (2 * t)


cdef int64_t nik_mul_u64(uint64_t a, uint64_t b) noexcept nogil:
    """Difference-of-squares product for a, b < 2**31; ERR_ALGO if the quarter is inexact."""
    cdef int ta = __builtin_ctzll(a) if a else 0
    cdef int tb = __builtin_ctzll(b) if b else 0
    cdef uint64_t d1, d2, r
    a >>= ta
    b >>= tb
    if a == b:
        r = nik_square_u64(a)
    else:
        d1 = nik_square_u64(a + b)
        d2 = nik_square_u64(a - b if a > b else b - a)
        if d1 < d2 or (d1 - d2) & 3:
            return ERR_ALGO
        r = (d1 - d2) >> 2
    return <int64_t>(r << (ta + tb))


cdef int64_t kara_u64(uint64_t a, uint64_t b, idx thr, bint nik) noexcept nogil:
    cdef int n = bitlen64(a if a > b else b)
    cdef int k, sa, sb
    cdef uint64_t mask, a0, a1, b0, b1, cross
    cdef int64_t c0, c1, c2
    if n < thr or n < 2:
        if nik:
            return nik_mul_u64(a, b)
        return <int64_t>school_u64(a, b)
    k = n >> 1
    mask = (<uint64_t>1 << k) - 1
    a0 = a & mask
    a1 = a >> k
    b0 = b & mask
    b1 = b >> k
    sa = (a0 > a1) - (a0 < a1)
    sb = (b0 > b1) - (b0 < b1)
    c0 = kara_u64(a0, b0, thr, nik)
    c1 = kara_u64(a1, b1, thr, nik)
    c2 = kara_u64(a0 - a1 if a0 > a1 else a1 - a0, b0 - b1 if b0 > b1 else b1 - b0, thr, nik)
    if c0 < 0 or c1 < 0 or c2 < 0:
        return ERR_ALGO
    cross = <uint64_t>c0 + <uint64_t>c1
    if sa * sb > 0:
        if cross < <uint64_t>c2:
            return ERR_ALGO
        cross -= <uint64_t>c2
    elif sa * sb < 0:
        cross += <uint64_t>c2
    return <int64_t>(<uint64_t>c0 + (cross << k) + ((<uint64_t>c1) << (2 * k)))


# ---------------------------------------------------------------- limb kernels

cdef idx school_n(uint32_t* out, const uint32_t* a, idx an, const uint32_t* b, idx bn) noexcept nogil:
    """Classical digit-by-digit product; out needs an + bn words and must not alias."""
    cdef const uint32_t* t
    cdef idx i, j, tn
    cdef uint64_t c, bi
    if an < bn:
        t = a; a = b; b = t
        tn = an; an = bn; bn = tn
    memset(out, 0, (an + bn) * sizeof(uint32_t))
    if bn == 0:
        return 0
    for i in range(bn):
        bi = b[i]
        if bi == 0:
            continue
        c = 0
        for j in range(an):
            c += a[j] * bi + out[i + j]
            out[i + j] = <uint32_t>c
            c >>= 32
        out[i + an] = <uint32_t>c
    return norm(out, an + bn)


cdef idx nik_square_n(uint32_t* out, const uint32_t* a, idx an) noexcept nogil:
    """out = a*a by the residue/partial recurrence; out needs 2*an + 2 words.

    The forward phase strips top bits of a working copy in place, recording which
    steps stripped.  The reverse phase rebuilds each residue A_j from A_{j+1} by
    restoring the stripped bit, so only one residue is live at a time.
    """
    cdef idx t, n, i, j, s, rn, tn, bn, cap = 2 * an + 2
    cdef uint32_t* res
    cdef uint32_t* tmp
    cdef uint8_t* stripped
    cdef uint64_t v
    memset(out, 0, cap * sizeof(uint32_t))
    if an == 0:
        return 0
    if an == 1 and a[0] == 1:
        out[0] = 1
        return 1
    if an == 1 and a[0] < (<uint32_t>1 << NATIVE_BITS):
        return store_u64(out, nik_square_u64(a[0]))
    t = tzbits(a, an)
    res = <uint32_t*>calloc(an + 2, sizeof(uint32_t))
    tmp = <uint32_t*>calloc(an + 2, sizeof(uint32_t))
    stripped = <uint8_t*>calloc(an * 32 + 2, 1)
    if res == NULL or tmp == NULL or stripped == NULL:
        free(res); free(tmp); free(stripped)
        return ERR_NOMEM
    rn = shr_n(res, a, an, t)
    n = bitlen(res, rn)
    # forward: A_i = A_{i-1} - 2**j when bit j of A_{i-1} is set
    for i in range(2, n + 1):
        j = n - i + 1
        if test_bit(res, rn, j):
            toggle_bit(res, j)
            stripped[i] = 1
    rn = norm(res, rn)
    # B_1 = A_n * A_n, a one-bit product
    bn = 1 if (rn and (res[0] & res[0] & 1)) else 0
    out[0] = bn
    # reverse: B_i = B_{i-1} + (A_j + A_{j+1}) * 2**(n-j) when A_j != A_{j+1}
    for i in range(2, n + 1):
        j = n - i + 1
        s = n - j
        if stripped[j + 1]:
            tn = rn
            memcpy(tmp, res, rn * sizeof(uint32_t))
            toggle_bit(res, s)
            if (s >> 5) + 1 > rn:
                rn = (s >> 5) + 1
            tn = add_n(tmp, res, rn, tmp, tn)
            bn = add_shifted(out, bn, tmp, tn, s)
    free(res); free(tmp); free(stripped)
    if t:
        bn = shl_n(out, out, bn, 2 * t)
    return bn


cdef idx nik_mul_n(uint32_t* out, const uint32_t* a, idx an, const uint32_t* b, idx bn) noexcept nogil:
    """out = a*b = ((a+b)**2 - |a-b|**2) / 4; out needs an + bn + 2 words."""
    cdef idx ta, tb, xn, yn, sn, dn, d1n, d2n, rn, m, i
    cdef uint32_t* x
    cdef uint32_t* y
    cdef uint32_t* sm
    cdef uint32_t* df
    cdef uint32_t* d1
    cdef uint32_t* d2
    cdef int c
    cdef int64_t r
    if an == 0 or bn == 0:
        memset(out, 0, 2 * sizeof(uint32_t))
        return 0
    if an == 1 and bn == 1 and a[0] < (<uint32_t>1 << NATIVE_BITS) and b[0] < (<uint32_t>1 << NATIVE_BITS):
        r = nik_mul_u64(a[0], b[0])
        if r < 0:
            return ERR_ALGO
        return store_u64(out, <uint64_t>r)
    m = (an if an > bn else bn) + 2
    x = <uint32_t*>calloc(an + 1, sizeof(uint32_t))
    y = <uint32_t*>calloc(bn + 1, sizeof(uint32_t))
    sm = <uint32_t*>calloc(m, sizeof(uint32_t))
    df = <uint32_t*>calloc(m, sizeof(uint32_t))
    d1 = <uint32_t*>calloc(2 * m + 2, sizeof(uint32_t))
    d2 = <uint32_t*>calloc(2 * m + 2, sizeof(uint32_t))
    if x == NULL or y == NULL or sm == NULL or df == NULL or d1 == NULL or d2 == NULL:
        free(x); free(y); free(sm); free(df); free(d1); free(d2)
        return ERR_NOMEM
    ta = tzbits(a, an)
    tb = tzbits(b, bn)
    xn = shr_n(x, a, an, ta)
    yn = shr_n(y, b, bn, tb)
    c = cmp_n(x, xn, y, yn)
    if c == 0:
        rn = nik_square_n(d1, x, xn)
    else:
        sn = add_n(sm, x, xn, y, yn)
        if c > 0:
            dn = sub_n(df, x, xn, y, yn)
        else:
            dn = sub_n(df, y, yn, x, xn)
        d1n = nik_square_n(d1, sm, sn)
        d2n = nik_square_n(d2, df, dn)
        if d1n < 0 or d2n < 0:
            rn = d1n if d1n < 0 else d2n
        elif cmp_n(d1, d1n, d2, d2n) < 0:
            rn = ERR_ALGO
        else:
            rn = sub_n(d1, d1, d1n, d2, d2n)
            if rn and (d1[0] & 3):
                rn = ERR_ALGO
            else:
                rn = shr_n(d1, d1, rn, 2)
    if rn >= 0:
        memset(out, 0, (an + bn + 2) * sizeof(uint32_t))
        for i in range(rn):
            out[i] = d1[i]
        rn = shl_n(out, out, rn, ta + tb)
    free(x); free(y); free(sm); free(df); free(d1); free(d2)
    return rn


cdef idx base_mul(uint32_t* out, const uint32_t* a, idx an, const uint32_t* b, idx bn, bint nik) noexcept nogil:
    if nik:
        return nik_mul_n(out, a, an, b, bn)
    return school_n(out, a, an, b, bn)


cdef idx kara_n(uint32_t* out, const uint32_t* a, idx an, const uint32_t* b, idx bn,
                idx thr, bint nik) noexcept nogil:
    """Karatsuba with threshold; out needs an + bn + 2 words and must not alias."""
    cdef idx n, k, hw, pw, a0n, a1n, b0n, b1n, dan, dbn, c0n, c1n, c2n, crn, rn
    cdef int sa, sb
    cdef idx nbits_a = bitlen(a, an), nbits_b = bitlen(b, bn)
    cdef uint32_t* blk
    cdef uint32_t *a0, *a1, *b0, *b1, *da, *db, *c0, *c1, *c2, *cr
    cdef int64_t r
    n = nbits_a if nbits_a > nbits_b else nbits_b
    if n < thr or n < 2:
        return base_mul(out, a, an, b, bn, nik)
    if n <= NATIVE_BITS:
        r = kara_u64(u64_of(a, an), u64_of(b, bn), thr, nik)
        if r < 0:
            return ERR_ALGO
        return store_u64(out, <uint64_t>r)
    k = n >> 1
    hw = ((n - k) >> 5) + 2
    pw = 2 * hw + 2
    blk = <uint32_t*>calloc(6 * hw + 4 * pw, sizeof(uint32_t))
    if blk == NULL:
        return ERR_NOMEM
    a0 = blk; a1 = a0 + hw; b0 = a1 + hw; b1 = b0 + hw; da = b1 + hw; db = da + hw
    c0 = db + hw; c1 = c0 + pw; c2 = c1 + pw; cr = c2 + pw
    a0n = low_bits(a0, a, an, k)
    a1n = shr_n(a1, a, an, k)
    b0n = low_bits(b0, b, bn, k)
    b1n = shr_n(b1, b, bn, k)
    sa = cmp_n(a0, a0n, a1, a1n)
    sb = cmp_n(b0, b0n, b1, b1n)
    dan = sub_n(da, a0, a0n, a1, a1n) if sa >= 0 else sub_n(da, a1, a1n, a0, a0n)
    dbn = sub_n(db, b0, b0n, b1, b1n) if sb >= 0 else sub_n(db, b1, b1n, b0, b0n)
    c0n = kara_n(c0, a0, a0n, b0, b0n, thr, nik)
    c1n = kara_n(c1, a1, a1n, b1, b1n, thr, nik)
    c2n = kara_n(c2, da, dan, db, dbn, thr, nik)
    if c0n < 0 or c1n < 0 or c2n < 0:
        free(blk)
        return ERR_ALGO if (c0n == ERR_ALGO or c1n == ERR_ALGO or c2n == ERR_ALGO) else ERR_NOMEM
    # cross = c0 + c1 - sa*sb*c2 = a0*b1 + a1*b0
    crn = add_n(cr, c0, c0n, c1, c1n)
    if sa * sb > 0:
        if cmp_n(cr, crn, c2, c2n) < 0:
            free(blk)
            return ERR_ALGO
        crn = sub_n(cr, cr, crn, c2, c2n)
    elif sa * sb < 0:
        crn = add_n(cr, cr, crn, c2, c2n)
    memset(out, 0, (an + bn + 2) * sizeof(uint32_t))
    memcpy(out, c0, c0n * sizeof(uint32_t))
    rn = add_shifted(out, c0n, cr, crn, k)
    rn = add_shifted(out, rn, c1, c1n, 2 * k)
    free(blk)
    return rn


# ------------------------------------------------------------ Python surface

cdef uint32_t* to_limbs(object v, idx* n, idx extra) except NULL:
    cdef idx words = (v.bit_length() + 31) >> 5
    cdef bytes data = v.to_bytes(words * 4, "little")
    cdef uint32_t* buf = <uint32_t*>calloc(words + extra + 1, sizeof(uint32_t))
    if buf == NULL:
        raise MemoryError()
    memcpy(buf, PyBytes_AS_STRING(data), words * 4)
    n[0] = words
    return buf


cdef object from_limbs(uint32_t* buf, idx n):
    return int.from_bytes(PyBytes_FromStringAndSize(<char*>buf, n * 4), "little")


cdef _check(idx rn, str what):
    if rn == ERR_ALGO:
        raise AlgorithmError(f"{what}: internal invariant violated")
    if rn < 0:
        raise MemoryError()


cdef _natural(v):
    if not isinstance(v, int) or v < 0:
        raise ValueError(f"expected a non-negative int, got {v!r}")


def school_mul(a, b):
    _natural(a); _natural(b)
    cdef idx an, bn, rn
    cdef uint32_t* x = to_limbs(a, &an, 0)
    cdef uint32_t* y = NULL
    cdef uint32_t* out = NULL
    try:
        y = to_limbs(b, &bn, 0)
        out = <uint32_t*>calloc(an + bn + 2, sizeof(uint32_t))
        if out == NULL:
            raise MemoryError()
        with nogil:
            rn = school_n(out, x, an, y, bn)
        return from_limbs(out, rn)
    finally:
        free(x); free(y); free(out)


def nik_square(a):
    _natural(a)
    cdef idx an, rn
    cdef uint32_t* x = to_limbs(a, &an, 0)
    cdef uint32_t* out = <uint32_t*>calloc(2 * an + 2, sizeof(uint32_t))
    try:
        if out == NULL:
            raise MemoryError()
        with nogil:
            rn = nik_square_n(out, x, an)
        _check(rn, "nik_square")
        return from_limbs(out, rn)
    finally:
        free(x); free(out)


def nik_mul(a, b):
    _natural(a); _natural(b)
    cdef idx an, bn, rn
    cdef uint32_t* x = to_limbs(a, &an, 0)
    cdef uint32_t* y = NULL
    cdef uint32_t* out = NULL
    try:
        y = to_limbs(b, &bn, 0)
        out = <uint32_t*>calloc(an + bn + 2, sizeof(uint32_t))
        if out == NULL:
            raise MemoryError()
        with nogil:
            rn = nik_mul_n(out, x, an, y, bn)
        _check(rn, "nik_mul: (a+b)^2 - (a-b)^2 not an exact multiple of 4")
        return from_limbs(out, rn)
    finally:
        free(x); free(y); free(out)


def karatsuba(a, b, threshold, nikhilam_base):
    _natural(a); _natural(b)
    cdef idx an, bn, rn
    cdef idx thr = threshold
    cdef bint nik = bool(nikhilam_base)
    cdef uint32_t* x = to_limbs(a, &an, 0)
    cdef uint32_t* y = NULL
    cdef uint32_t* out = NULL
    try:
        y = to_limbs(b, &bn, 0)
        out = <uint32_t*>calloc(an + bn + 2, sizeof(uint32_t))
        if out == NULL:
            raise MemoryError()
        with nogil:
            rn = kara_n(out, x, an, y, bn, thr, nik)
        _check(rn, "karatsuba: negative cross term or inexact base case")
        return from_limbs(out, rn)
    finally:
        free(x); free(y); free(out)
