"""
Neighborhood Operators
======================

The twelve move types explored by the descent:
- inter-route: 1-0 relocate, 1-1 swap, 2-0 pair relocate, 2-1 pair/single
  swap, 2-2 pair swap, and 2-opt (tail exchange)
- intra-route: the same 1-0 .. 2-2 exchanges inside one route
- separate: split one route into two

Pair operators carry reversal flags for the inserted pairs. Moves are
enumerated in a fixed order (routes, then positions, then flags) so the
search is reproducible.
"""

from dataclasses import dataclass
from itertools import combinations, permutations

INTER_1_0 = "inter-1-0"
INTER_1_1 = "inter-1-1"
INTER_2_0 = "inter-2-0"
INTER_2_1 = "inter-2-1"
INTER_2_2 = "inter-2-2"
INTRA_1_0 = "intra-1-0"
INTRA_1_1 = "intra-1-1"
INTRA_2_0 = "intra-2-0"
INTRA_2_1 = "intra-2-1"
INTRA_2_2 = "intra-2-2"
TWO_OPT = "2-opt"
SEPARATE = "separate"

DEFAULT_ORDER = (
    INTER_1_0, INTER_1_1, INTER_2_0, INTER_2_1, INTER_2_2,
    INTRA_1_0, INTRA_1_1, INTRA_2_0, INTRA_2_1, INTRA_2_2,
    TWO_OPT, SEPARATE,
)

INTER = "inter"
INTRA = "intra"

_FLAGS = (False, True)


@dataclass(frozen=True)
class Move:
    """
    One neighborhood move.

    routes holds one route index for intra moves and separate, two for
    inter moves and 2-opt. positions and flags are operator specific.
    """

    kind: str
    routes: tuple
    positions: tuple
    flags: tuple = ()

    @property
    def scope(self):
        return INTRA if len(self.routes) == 1 else INTER


def _pair(route, p, reverse):
    segment = route[p:p + 2]
    return segment[::-1] if reverse else segment


# Enumeration

def _inter_1_0(routes):
    for a, b in permutations(range(len(routes)), 2):
        for p in range(len(routes[a])):
            for q in range(len(routes[b]) + 1):
                yield Move(INTER_1_0, (a, b), (p, q))


def _inter_1_1(routes):
    for a, b in combinations(range(len(routes)), 2):
        for p in range(len(routes[a])):
            for q in range(len(routes[b])):
                yield Move(INTER_1_1, (a, b), (p, q))


def _inter_2_0(routes):
    for a, b in permutations(range(len(routes)), 2):
        for p in range(len(routes[a]) - 1):
            for q in range(len(routes[b]) + 1):
                for reverse in _FLAGS:
                    yield Move(INTER_2_0, (a, b), (p, q), (reverse,))


def _inter_2_1(routes):
    for a, b in permutations(range(len(routes)), 2):
        for p in range(len(routes[a]) - 1):
            for q in range(len(routes[b])):
                for reverse in _FLAGS:
                    yield Move(INTER_2_1, (a, b), (p, q), (reverse,))


def _inter_2_2(routes):
    for a, b in combinations(range(len(routes)), 2):
        for p in range(len(routes[a]) - 1):
            for q in range(len(routes[b]) - 1):
                for first in _FLAGS:
                    for second in _FLAGS:
                        yield Move(INTER_2_2, (a, b), (p, q), (first, second))


def _intra_1_0(routes):
    for a, route in enumerate(routes):
        for p in range(len(route)):
            for q in range(len(route)):
                if q != p:
                    yield Move(INTRA_1_0, (a,), (p, q))


def _intra_1_1(routes):
    for a, route in enumerate(routes):
        for p, q in combinations(range(len(route)), 2):
            yield Move(INTRA_1_1, (a,), (p, q))


def _intra_2_0(routes):
    for a, route in enumerate(routes):
        for p in range(len(route) - 1):
            for q in range(len(route) - 1):
                for reverse in _FLAGS:
                    if q == p and not reverse:
                        continue
                    yield Move(INTRA_2_0, (a,), (p, q), (reverse,))


def _intra_2_1(routes):
    for a, route in enumerate(routes):
        for p in range(len(route) - 1):
            for q in range(len(route)):
                if q in (p, p + 1):
                    continue
                for reverse in _FLAGS:
                    yield Move(INTRA_2_1, (a,), (p, q), (reverse,))


def _intra_2_2(routes):
    for a, route in enumerate(routes):
        for p in range(len(route) - 1):
            for q in range(p + 2, len(route) - 1):
                for first in _FLAGS:
                    for second in _FLAGS:
                        yield Move(INTRA_2_2, (a,), (p, q), (first, second))


def _two_opt(routes):
    for a, b in combinations(range(len(routes)), 2):
        len_a, len_b = len(routes[a]), len(routes[b])
        for p in range(len_a + 1):
            for q in range(len_b + 1):
                if (p, q) in ((0, 0), (len_a, len_b)):
                    continue
                yield Move(TWO_OPT, (a, b), (p, q))


def _separate(routes):
    for a, route in enumerate(routes):
        for p in range(1, len(route)):
            yield Move(SEPARATE, (a,), (p,))


_ENUMERATORS = {
    INTER_1_0: _inter_1_0,
    INTER_1_1: _inter_1_1,
    INTER_2_0: _inter_2_0,
    INTER_2_1: _inter_2_1,
    INTER_2_2: _inter_2_2,
    INTRA_1_0: _intra_1_0,
    INTRA_1_1: _intra_1_1,
    INTRA_2_0: _intra_2_0,
    INTRA_2_1: _intra_2_1,
    INTRA_2_2: _intra_2_2,
    TWO_OPT: _two_opt,
    SEPARATE: _separate,
}


def enumerate_moves(kind, routes):
    """
    Yield every move of one neighborhood on the given routes.

    Args:
        kind (str): operator name (see DEFAULT_ORDER)
        routes (sequence): customer tuples

    Returns:
        generator of Move
    """
    try:
        enumerator = _ENUMERATORS[kind]
    except KeyError:
        raise ValueError(f"unknown neighborhood {kind!r}, expected one of {DEFAULT_ORDER}") from None
    return enumerator(routes)


# Application

def apply_move(move, routes):
    """
    Routes produced by a move.

    Args:
        move (Move): move to apply
        routes (sequence): current customer tuples

    Returns:
        list: new customer tuples replacing routes[move.routes]; empty
        routes are omitted
    """
    kind = move.kind
    if move.scope == INTER:
        first, second = (tuple(routes[r]) for r in move.routes)
        new = _apply_inter(kind, first, second, move.positions, move.flags)
    else:
        route = tuple(routes[move.routes[0]])
        new = _apply_intra(kind, route, move.positions, move.flags)
    return [r for r in new if r]


def _apply_inter(kind, r1, r2, positions, flags):
    p, q = positions
    if kind == INTER_1_0:
        return [r1[:p] + r1[p + 1:], r2[:q] + (r1[p],) + r2[q:]]
    if kind == INTER_1_1:
        return [r1[:p] + (r2[q],) + r1[p + 1:], r2[:q] + (r1[p],) + r2[q + 1:]]
    if kind == INTER_2_0:
        return [r1[:p] + r1[p + 2:], r2[:q] + _pair(r1, p, flags[0]) + r2[q:]]
    if kind == INTER_2_1:
        return [r1[:p] + (r2[q],) + r1[p + 2:], r2[:q] + _pair(r1, p, flags[0]) + r2[q + 1:]]
    if kind == INTER_2_2:
        return [
            r1[:p] + _pair(r2, q, flags[1]) + r1[p + 2:],
            r2[:q] + _pair(r1, p, flags[0]) + r2[q + 2:],
        ]
    if kind == TWO_OPT:
        return [r1[:p] + r2[q:], r2[:q] + r1[p:]]
    raise ValueError(f"{kind!r} is not an inter-route move")


def _apply_intra(kind, route, positions, flags):
    if kind == SEPARATE:
        (p,) = positions
        return [route[:p], route[p:]]
    p, q = positions
    if kind == INTRA_1_0:
        rest = route[:p] + route[p + 1:]
        return [rest[:q] + (route[p],) + rest[q:]]
    if kind == INTRA_1_1:
        swapped = list(route)
        swapped[p], swapped[q] = swapped[q], swapped[p]
        return [tuple(swapped)]
    if kind == INTRA_2_0:
        rest = route[:p] + route[p + 2:]
        return [rest[:q] + _pair(route, p, flags[0]) + rest[q:]]
    if kind == INTRA_2_1:
        pair, single = _pair(route, p, flags[0]), (route[q],)
        if q < p:
            return [route[:q] + pair + route[q + 1:p] + single + route[p + 2:]]
        return [route[:p] + single + route[p + 2:q] + pair + route[q + 1:]]
    if kind == INTRA_2_2:
        first, second = _pair(route, p, flags[0]), _pair(route, q, flags[1])
        return [route[:p] + second + route[p + 2:q] + first + route[q + 2:]]
    raise ValueError(f"{kind!r} is not an intra-route move")
