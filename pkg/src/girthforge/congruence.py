"""Linear congruence solving over Z_m."""

from __future__ import annotations

import math


def solve_linear(coeff: int, rhs: int, modulus: int) -> tuple[int, ...]:
    """All s in [0, modulus) with coeff * s == rhs (mod modulus).

    There are either no solutions or exactly gcd(coeff, modulus) of them,
    spaced modulus/gcd apart.
    """
    if modulus < 1:
        raise ValueError("modulus must be >= 1")
    g = math.gcd(coeff, modulus)
    if g == 0:
        # coeff == 0 and modulus would have gcd == modulus; g == 0 only if
        # modulus == 0, which is excluded above.
        raise AssertionError("unreachable")
    if rhs % g:
        return ()
    m = modulus // g
    if m == 1:
        return tuple(range(modulus))
    inv = pow((coeff // g) % m, -1, m)
    base = ((rhs // g) * inv) % m
    return tuple(base + k * m for k in range(g))
