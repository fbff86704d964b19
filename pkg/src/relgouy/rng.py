"""Seeded sample points from a fixed 64-bit linear congruential generator.

state <- (6364136223846793005 * state + 1442695040888963407) mod 2**64
uniform = (state >> 11) * 2**-53, drawn after advancing the state.

The generator is deliberately trivial so other implementations can reproduce
the exact same verification points.
"""

from __future__ import annotations

from .kgmodes import RelativeEvent

_MULT = 6364136223846793005
_INC = 1442695040888963407
_MASK = (1 << 64) - 1


class Lcg64:
    def __init__(self, seed: int):
        self.state = int(seed) & _MASK

    def next_u64(self) -> int:
        self.state = (_MULT * self.state + _INC) & _MASK
        return self.state

    def uniform(self, lo: float = 0.0, hi: float = 1.0) -> float:
        return lo + (hi - lo) * ((self.next_u64() >> 11) * 2.0**-53)


def safe_points(seed: int, count: int, w0: float, zR: float, transverse: float = 2.0, axial: float = 3.0):
    """Relative events with |xi1|, |xi2| <= transverse*w0 and |s| <= axial*zR.

    Per point the draws are xi1, xi2, s, then the share of s carried by xi3.
    """
    gen = Lcg64(seed)
    pts = []
    for _ in range(count):
        xi1 = gen.uniform(-transverse, transverse) * w0
        xi2 = gen.uniform(-transverse, transverse) * w0
        s = gen.uniform(-axial, axial) * zR
        xi3 = gen.uniform(0.0, 1.0) * s
        pts.append(RelativeEvent(xi1, xi2, xi3, s - xi3))
    return pts


def transverse_time_samples(seed: int, count: int, w0: float, tR: float, transverse: float = 2.0, axial: float = 3.0):
    """(xi1, xi2, tau) triples with |xi| <= transverse*w0 and |tau| <= axial*tR."""
    gen = Lcg64(seed)
    return [
        (gen.uniform(-transverse, transverse) * w0,
         gen.uniform(-transverse, transverse) * w0,
         gen.uniform(-axial, axial) * tR)
        for _ in range(count)
    ]
