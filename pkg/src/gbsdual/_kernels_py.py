"""Pure-Python kernels with the same contract as the compiled ``_kernels``.

Values are Python ints (or any ring elements), so nothing overflows; these
are also the fallback when the compiled int64 path overflows.
"""


def subset_hafnians(rows):
    """Return ``t`` with ``t[mask]`` the hafnian of ``rows`` restricted to ``mask``.

    Every mask is filled in increasing order; the lowest member of a mask is
    paired with each other member, so all needed submasks are already known.
    """
    k = len(rows)
    t = [0] * (1 << k)
    t[0] = 1
    for mask in range(3, 1 << k):
        if bin(mask).count("1") & 1:
            continue
        low = mask & -mask
        row = rows[low.bit_length() - 1]
        rest = mask ^ low
        acc = 0
        m = rest
        while m:
            b = m & -m
            m ^= b
            w = row[b.bit_length() - 1]
            if w:
                acc = acc + w * t[rest ^ b]
        t[mask] = acc
    return t


def graded_subset_sums(table, k):
    """``out[mask][s]`` = sum of ``table[T]`` over ``T`` within ``mask``, ``|T| = s``."""
    n = 1 << k
    out = [[0] * (k + 1) for _ in range(n)]
    for mask in range(n):
        out[mask][bin(mask).count("1")] = table[mask]
    for b in range(k):
        bit = 1 << b
        for mask in range(n):
            if mask & bit:
                dst, src = out[mask], out[mask ^ bit]
                for s in range(k + 1):
                    if src[s]:
                        dst[s] += src[s]
    return out
