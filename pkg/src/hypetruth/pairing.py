"""A size-additive bijection between N x N and N.

Pairs are enumerated by total bit length s = len(a) + len(b), then by
len(a), then lexicographically by value.  Unlike Cantor's polynomial the
code of (a, b) has about len(a) + len(b) + log bits, so the codes of deep,
unbalanced syntax trees stay linear in the size of the tree.
"""

from __future__ import annotations


def _cnt(l: int) -> int:
    # naturals whose bit length is exactly l
    return 1 if l == 0 else 1 << (l - 1)


def _low(l: int) -> int:
    return 0 if l == 0 else 1 << (l - 1)


def _before(s: int) -> int:
    # number of pairs with total bit length below s
    if s == 0:
        return 0
    if s == 1:
        return 1
    return (s + 1) << (s - 2)


def _offset(s: int, la: int) -> int:
    # pairs with total s and first length below la
    return sum(_cnt(k) * _cnt(s - k) for k in range(la)) if s < 3 else (
        0 if la == 0 else (1 << (s - 1)) + (la - 1) * (1 << (s - 2))
    )


def pair(a: int, b: int) -> int:
    if a < 0 or b < 0:
        raise ValueError("pair expects naturals")
    la, lb = a.bit_length(), b.bit_length()
    s = la + lb
    return _before(s) + _offset(s, la) + (a - _low(la)) * _cnt(lb) + (b - _low(lb))


def unpair(c: int) -> tuple[int, int]:
    if c < 0:
        raise ValueError("unpair expects a natural")
    n = c.bit_length()
    s = max(0, n - max(1, n.bit_length()) - 2)
    while _before(s) > c:
        s -= 1
    while _before(s + 1) <= c:
        s += 1
    r = c - _before(s)
    # locate la: offsets are increasing in la
    if s < 3:
        la = 0
        while la < s and _offset(s, la + 1) <= r:
            la += 1
    elif r < (1 << (s - 1)):
        la = 0
    else:
        la = min(s, 1 + (r - (1 << (s - 1))) // (1 << (s - 2)))
    r -= _offset(s, la)
    lb = s - la
    q, m = divmod(r, _cnt(lb))
    return _low(la) + q, _low(lb) + m


def proj1(c: int) -> int:
    return unpair(c)[0]


def proj2(c: int) -> int:
    return unpair(c)[1]
