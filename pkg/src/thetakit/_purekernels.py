"""Pure-Python versions of the hot summation loops.

Every function returns ``(value, terms_used, converged)``; the public modules
turn a False flag into :class:`~thetakit.errors.NoConvergence`.  The compiled
module ``_kernels`` implements the same signatures.
"""

import cmath
import math

PI = math.pi


def _shift_trig(kind, x, d):
    # d-th derivative of sin/cos is a phase shift by d*pi/2
    if kind == 0:
        return cmath.cos(x + 0.5 * PI * d)
    return cmath.sin(x + 0.5 * PI * d)


def fourier(kind, v, tau, deriv, tol, max_terms):
    """d-th v-derivative of the defining Fourier series of theta_kind."""
    v = complex(v)
    tau = complex(tau)
    aq = math.exp(-PI * tau.imag)
    grow = 2.0 * PI * abs(v.imag)
    half = kind in (1, 2)
    total = 0j
    if not half:
        total = 1.0 + 0j if deriv == 0 else 0j
    small = 0
    prev_env = math.inf
    n = 0 if half else 1
    used = 0
    while used < max_terms:
        m = n + 0.5 if half else float(n)
        freq = 2.0 * m * PI
        nome = cmath.exp(1j * PI * tau * m * m)
        x = freq * v
        if kind == 1:
            t = (-1) ** n * nome * _shift_trig(1, x, deriv)
        elif kind == 2:
            t = nome * _shift_trig(0, x, deriv)
        elif kind == 3:
            t = nome * _shift_trig(0, x, deriv)
        else:
            t = (-1) ** n * nome * _shift_trig(0, x, deriv)
        t *= 2.0 * freq ** deriv
        total += t
        used += 1
        # envelope bound of |term|; log-concave in n so "small and falling" is final
        env = 2.0 * aq ** (m * m) * math.exp(grow * m) * freq ** deriv
        if env < tol * (1.0 + abs(total)) and env <= prev_env:
            small += 1
            if small >= 2:
                return total, used, True
        else:
            small = 0
        prev_env = env
        n += 1
    return total, used, False


def product(kind, v, tau, tol, max_terms):
    """Truncated Jacobi triple product for theta_kind."""
    v = complex(v)
    tau = complex(tau)
    q = cmath.exp(1j * PI * tau)
    aq = abs(q)
    c2 = cmath.cos(2.0 * PI * v)
    grow = 1.0 + 2.0 * math.exp(2.0 * PI * abs(v.imag))
    if kind == 1:
        total = 2.0 * cmath.exp(0.25j * PI * tau) * cmath.sin(PI * v)
        off, sgn = 2, -1.0
    elif kind == 2:
        total = 2.0 * cmath.exp(0.25j * PI * tau) * cmath.cos(PI * v)
        off, sgn = 2, 1.0
    elif kind == 3:
        total = 1.0 + 0j
        off, sgn = 1, 1.0
    else:
        total = 1.0 + 0j
        off, sgn = 1, -1.0
    small = 0
    k = 0
    while k < max_terms:
        e = 2 * k + off
        qe = q ** e
        total *= (1.0 - q ** (2 * k + 2)) * (1.0 + sgn * 2.0 * qe * c2 + qe * qe)
        k += 1
        env = aq ** e * grow
        if env < tol:
            small += 1
            if small >= 2:
                return total, k, True
        else:
            small = 0
    return total, k, False


def _w_list(q, scale, tol, max_terms):
    """w_k = -4 q^(2k+1)/(1-q^(2k+1))^2 = 1/sin^2((k+1/2) pi tau) until negligible."""
    ws = []
    q2 = q * q
    qk = q
    small = 0
    for _ in range(max_terms):
        w = -4.0 * qk / (1.0 - qk) ** 2
        ws.append(w)
        if abs(w) * scale < tol:
            small += 1
            if small >= 2:
                return ws, True
        else:
            small = 0
        qk *= q2
    return ws, False


def wpow_sum(q, p, tol, max_terms):
    """Sum over k of w_k**p, stopped on a relative tail criterion."""
    q = complex(q)
    q2 = q * q
    qk = q
    total = 0j
    small = 0
    for k in range(max_terms):
        w = -4.0 * qk / (1.0 - qk) ** 2
        t = w ** p
        total += t
        if abs(t) <= tol * abs(total) or t == 0:
            small += 1
            if small >= 2:
                return total, k + 1, True
        else:
            small = 0
        qk *= q2
    return total, max_terms, False


def exponent_sum(q, x2, tol, max_terms):
    """sum_{p>=1} c_2p x2**p with c_2p = -(1/p) sum_k w_k**p.

    The k-list is built once; each p reuses the running powers (w_k x2)**p.
    Converges for |w_0 x2| < 1, which is the validity strip.
    """
    q = complex(q)
    x2 = complex(x2)
    if x2 == 0:
        return 0j, 0, True
    ws, ok = _w_list(q, max(1.0, abs(x2)), tol * 1e-3, max_terms)
    if not ok:
        return 0j, 0, False
    base = [w * x2 for w in ws]
    pows = list(base)
    total = 0j
    small = 0
    for p in range(1, max_terms + 1):
        if p > 1:
            for i in range(len(pows)):
                pows[i] *= base[i]
        s = sum(pows)
        t = -s / p
        total += t
        if abs(t) < tol * (1.0 + abs(total)):
            small += 1
            if small >= 2:
                return total, p, True
        else:
            small = 0
        # trailing powers decay fastest; drop them once negligible
        while len(pows) > 1 and abs(pows[-1]) < 1e-300:
            pows.pop()
            base.pop()
    return total, max_terms, False


def binomial_sum(q, p, tol, max_terms):
    """(-1)^(p+1) 2^(2p+1)/(2p)! * sum_{n>=p} (n+p-1)!/(n-p)! q^n/(1-q^(2n)).

    The factorial ratio is carried incrementally together with the
    2^(2p+1)/(2p)! normalisation, so nothing overflows for moderate p.
    """
    q = complex(q)
    weight = 2.0 ** (2 * p + 1) / (2 * p)
    qn = q ** p
    total = 0j
    small = 0
    prev = math.inf
    n = p
    for used in range(1, max_terms + 1):
        t = weight * qn / (1.0 - qn * qn)
        total += t
        a = abs(t)
        if not math.isfinite(a):
            return total, used, False
        if (a <= tol * abs(total) or t == 0) and a <= prev:
            small += 1
            if small >= 2:
                sign = 1.0 if p % 2 == 1 else -1.0
                return sign * total, used, True
        else:
            small = 0
        prev = a
        weight *= (n + p) / (n + 1 - p)
        qn *= q
        n += 1
    sign = 1.0 if p % 2 == 1 else -1.0
    return sign * total, max_terms, False
