"""Deterministic counter-based random streams for the samplers.

The generator is fixed forever: golden sampler outputs depend on it.

Primitive: the splitmix64 finalizer

    mix64(z): z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
              z ^= z >> 27; z *= 0x94D049BB133111EB;
              z ^= z >> 31                       (all mod 2^64)

Stream layout (everything is a pure function of seed and indices, so any
evaluation order and any worker partition produce identical samples):

* sample g (0-based):        base_g   = mix64(seed + PHI * (g + 1))
* child q of a stream b:     child(b, q) = mix64(b + PHI2 * q), q >= 1
* draw t (0-based) from b:   draw(b, t)  = mix64(b + PHI * (t + 1))

with PHI = 0x9E3779B97F4A7C15 and PHI2 = 0xC2B2AE3D27D4EB4F.

Tree samplers give every node its own stream: the root gets
child(base_g, 1); a node with stream b hands its two children
child(b, 2a+1) and child(b, 2a+2), where a is the node's local retry
attempt (always 0 except at equal-size splits of the uniform-unordered
model).  Uniform integers in [0, m) use threshold rejection on 64-bit
draws, so they are exactly uniform; values of m needing more than one
64-bit word consume ceil(bits/64) draws per attempt, little-endian.
"""

from __future__ import annotations

__all__ = [
    "MASK64",
    "PHI",
    "PHI2",
    "mix64",
    "sample_base",
    "child_stream",
    "draw",
    "uniform_below",
]

MASK64 = (1 << 64) - 1
PHI = 0x9E3779B97F4A7C15
PHI2 = 0xC2B2AE3D27D4EB4F
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


def sample_base(seed: int, g: int) -> int:
    """Stream base for global sample index ``g`` under ``seed``."""
    return mix64((seed + PHI * (g + 1)) & MASK64)


def child_stream(base: int, q: int) -> int:
    """Derived stream ``q`` (q >= 1) of a parent stream."""
    return mix64((base + PHI2 * q) & MASK64)


def draw(base: int, t: int) -> int:
    """The t-th (0-based) 64-bit draw of a stream."""
    return mix64((base + PHI * (t + 1)) & MASK64)


def uniform_below(base: int, m: int, t: int) -> tuple[int, int]:
    """Exact uniform integer in [0, m) from stream ``base``.

    Consumes draws starting at counter ``t``; returns (value, next t).
    Accepts a word u in [0, 2^(64w)) only when u >= 2^(64w) mod m, which
    leaves a region of size divisible by m, so u mod m is unbiased.
    """
    if m <= 0:
        raise ValueError("modulus must be positive")
    words = (m.bit_length() + 63) // 64
    space = 1 << (64 * words)
    thresh = space % m
    while True:
        u = 0
        for i in range(words):
            u |= draw(base, t + i) << (64 * i)
        t += words
        if u >= thresh:
            return u % m, t
