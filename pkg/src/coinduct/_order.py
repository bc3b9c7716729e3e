"""Canonical total order on the nested int/tuple/str values used as group
elements, coset ids and coordinates."""


def canon_key(x):
    if x is None:
        return (0,)
    if isinstance(x, bool):
        return (1, int(x))
    if isinstance(x, int):
        return (1, x)
    if isinstance(x, str):
        return (2, x)
    if isinstance(x, (tuple, list)):
        return (3, len(x), tuple(canon_key(y) for y in x))
    if isinstance(x, frozenset):
        return (4, tuple(sorted(canon_key(y) for y in x)))
    return (5, repr(x))


def canon_sorted(xs):
    return sorted(xs, key=canon_key)
