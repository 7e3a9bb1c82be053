"""Internal multivariate polynomials over Q.

A polynomial in n variables is a dict mapping exponent tuples of length n
to nonzero ``Fraction`` coefficients; {} is the zero polynomial.  This is
plumbing for the scalar field layer: only the handful of operations the
field needs, no general polynomial API.  GCDs are delegated to sympy's
sparse polynomial rings.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd

from sympy.polys.domains import QQ
from sympy.polys.rings import ring as _sympy_ring

Mono = tuple
Poly = dict

_SYMPY_RINGS = {}


def _sring(nvars: int):
    if nvars not in _SYMPY_RINGS:
        names = ",".join(f"v{i}" for i in range(nvars))
        _SYMPY_RINGS[nvars] = _sympy_ring(names, QQ)[0]
    return _SYMPY_RINGS[nvars]


def p_zero() -> Poly:
    return {}

def p_const(nvars: int, c) -> Poly:
    c = Fraction(c)
    return {} if c == 0 else {(0,) * nvars: c}

def p_var(nvars: int, i: int) -> Poly:
    e = [0] * nvars
    e[i] = 1
    return {tuple(e): Fraction(1)}

def p_is_zero(a: Poly) -> bool:
    return not a

def p_is_const(a: Poly) -> bool:
    return all(all(e == 0 for e in m) for m in a)

def p_add(a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for m, c in b.items():
        s = out.get(m, 0) + c
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out

def p_neg(a: Poly) -> Poly:
    return {m: -c for m, c in a.items()}

def p_sub(a: Poly, b: Poly) -> Poly:
    return p_add(a, p_neg(b))

def p_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return {}
    out: Poly = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            s = out.get(m, 0) + ca * cb
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return out

def p_scale(a: Poly, c) -> Poly:
    c = Fraction(c)
    if c == 0:
        return {}
    return {m: cc * c for m, cc in a.items()}

def p_derive(a: Poly, var: int) -> Poly:
    out: Poly = {}
    for m, c in a.items():
        e = m[var]
        if e:
            m2 = m[:var] + (e - 1,) + m[var + 1:]
            s = out.get(m2, 0) + c * e
            if s:
                out[m2] = s
            else:
                out.pop(m2, None)
    return out

def p_equal(a: Poly, b: Poly) -> bool:
    return a == b

def p_degree(a: Poly, var: int) -> int:
    # degree of the zero polynomial is -1 by convention here
    return max((m[var] for m in a), default=-1)

def p_min_exp(a: Poly, var: int) -> int:
    return min((m[var] for m in a), default=-1)

def p_eval_zero(a: Poly, var: int) -> Poly:
    """Set variable ``var`` to 0."""
    return {m: c for m, c in a.items() if m[var] == 0}


def p_content(a: Poly) -> Fraction:
    """Positive rational c with a/c integer-coefficient and primitive."""
    if not a:
        return Fraction(1)
    num = 0
    den = 1
    for c in a.values():
        num = int_gcd(num, c.numerator)
        den = den * c.denominator // int_gcd(den, c.denominator)
    return Fraction(num, den)


def p_int_vp(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def p_frac_vp(c: Fraction, p: int) -> int:
    return p_int_vp(c.numerator, p) - p_int_vp(c.denominator, p)


def p_min_vp(a: Poly, p: int) -> int:
    """Gauss valuation: min over coefficients of the p-adic valuation."""
    return min(p_frac_vp(c, p) for c in a.values())


def _to_sympy(a: Poly, nvars: int):
    R = _sring(nvars)
    return R.from_dict({m: QQ(c.numerator, c.denominator) for m, c in a.items()})


def _from_sympy(e) -> Poly:
    out = {}
    for m, c in dict(e).items():
        out[tuple(m)] = Fraction(int(c.numerator), int(c.denominator))
    return out


def p_gcd(a: Poly, b: Poly, nvars: int) -> Poly:
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    return _from_sympy(_to_sympy(a, nvars).gcd(_to_sympy(b, nvars)))


def p_divexact(a: Poly, g: Poly, nvars: int) -> Poly:
    """Exact division a/g; g must divide a."""
    if not a:
        return {}
    q, r = _to_sympy(a, nvars).div(_to_sympy(g, nvars))
    if r:
        raise ArithmeticError("inexact polynomial division")
    return _from_sympy(q)


def p_sort_key(m: Mono):
    return (sum(m), m)


def p_to_str(a: Poly, names: tuple) -> str:
    if not a:
        return "0"
    parts = []
    for m in sorted(a, key=p_sort_key, reverse=True):
        c = a[m]
        factors = []
        for name, e in zip(names, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        if not factors:
            txt = str(c)
        else:
            body = "*".join(factors)
            if c == 1:
                txt = body
            elif c == -1:
                txt = f"-{body}"
            else:
                txt = f"{c}*{body}"
        parts.append(txt)
    out = parts[0]
    for t in parts[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out
