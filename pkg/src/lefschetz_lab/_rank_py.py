"""Pure-Python fraction-free elimination on arbitrary-precision integers."""


def rank_bigint(rows):
    """Rank over Q of an integer matrix given as a list of row lists (consumed)."""
    a = [list(map(int, row)) for row in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    r = 0
    prev = 1
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if a[i][c] != 0), None)
        if p is None:
            continue
        a[p], a[r] = a[r], a[p]
        piv = a[r][c]
        pivot_row = a[r]
        for i in range(r + 1, m):
            row = a[i]
            lead = row[c]
            if lead == 0:
                # (piv * x - 0) // prev, still exact
                for j in range(c + 1, n):
                    row[j] = piv * row[j] // prev
            else:
                for j in range(c + 1, n):
                    row[j] = (piv * row[j] - lead * pivot_row[j]) // prev
            row[c] = 0
        prev = piv
        r += 1
    return r
