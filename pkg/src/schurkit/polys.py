"""Small exact polynomial helpers over the rationals.

Polynomials are tuples of coefficients in ascending degree order with no
trailing zeros; () is the zero polynomial.  Coefficients are ints or
Fractions, normalized through rootdata.exact.
"""

from __future__ import annotations

from fractions import Fraction

from .rootdata import exact


def normalize(coeffs):
    cs = [exact(Fraction(c)) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def degree(p):
    return len(p) - 1


def add(p, q):
    length = max(len(p), len(q))
    return normalize((p[k] if k < len(p) else 0) + (q[k] if k < len(q) else 0) for k in range(length))


def mul(p, q):
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return normalize(out)


def from_roots(roots):
    """Monic polynomial with the given roots (with multiplicity)."""
    p = (1,)
    for r in roots:
        p = mul(p, (-r, 1))
    return p


def evaluate(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def divmod_poly(p, q):
    """Exact division with remainder over the rationals."""
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    quot = [0] * max(len(p) - len(q) + 1, 0)
    lead = Fraction(q[-1])
    while len(rem) >= len(q) and any(c != 0 for c in rem):
        shift = len(rem) - len(q)
        factor = Fraction(rem[-1]) / lead
        quot[shift] = factor
        for k, c in enumerate(q):
            rem[shift + k] -= factor * c
        while rem and rem[-1] == 0:
            rem.pop()
    return normalize(quot), normalize(rem)


def divides(q, p):
    """True iff q divides p exactly."""
    if not p:
        return True
    _, rem = divmod_poly(p, q)
    return rem == ()


def to_string(p, var="T"):
    if not p:
        return "0"
    parts = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if c == 0:
            continue
        if k == 0:
            term = str(abs(c))
        else:
            mag = abs(c)
            coeff = "" if mag == 1 else str(mag)
            term = f"{coeff}{var}" + (f"^{k}" if k > 1 else "")
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(f"+ {term}" if c > 0 else f"- {term}")
    return " ".join(parts)
