# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled summation loops; same signatures as ``_purekernels``."""

from libc.math cimport exp, fabs, isfinite, M_PI
from libc.stdlib cimport malloc, free

cdef extern from "complex.h" nogil:
    double complex cexp(double complex)
    double complex ccos(double complex)
    double complex csin(double complex)
    double complex cpow(double complex, double complex)
    double cabs(double complex)
    double cimag(double complex)


cdef inline double complex _trig(int use_sin, double complex x, int d) nogil:
    cdef double complex y = x + 0.5 * M_PI * d
    if use_sin:
        return csin(y)
    return ccos(y)


def fourier(int kind, v, tau, int deriv, double tol, int max_terms):
    cdef double complex cv = complex(v)
    cdef double complex ct = complex(tau)
    cdef double aq = exp(-M_PI * cimag(ct))
    cdef double grow = 2.0 * M_PI * fabs(cimag(cv))
    cdef bint half = kind == 1 or kind == 2
    cdef double complex total = 0
    cdef double complex t, nome
    cdef double m, freq, env, fd
    cdef double prev_env = 1e308
    cdef int n, used = 0, small = 0, j
    cdef double sgn
    if not half and deriv == 0:
        total = 1.0
    n = 0 if half else 1
    with nogil:
        while used < max_terms:
            m = n + 0.5 if half else <double>n
            freq = 2.0 * m * M_PI
            nome = cexp(1j * M_PI * ct * (m * m))
            sgn = -1.0 if (n & 1) else 1.0
            if kind == 1:
                t = sgn * nome * _trig(1, freq * cv, deriv)
            elif kind == 4:
                t = sgn * nome * _trig(0, freq * cv, deriv)
            else:
                t = nome * _trig(0, freq * cv, deriv)
            fd = 1.0
            for j in range(deriv):
                fd *= freq
            t = t * (2.0 * fd)
            total = total + t
            used += 1
            env = 2.0 * exp(m * m * (-M_PI * cimag(ct)) + grow * m) * fd
            if env < tol * (1.0 + cabs(total)) and env <= prev_env:
                small += 1
                if small >= 2:
                    break
            else:
                small = 0
            prev_env = env
            n += 1
    return complex(total), used, small >= 2


def product(int kind, v, tau, double tol, int max_terms):
    cdef double complex cv = complex(v)
    cdef double complex ct = complex(tau)
    cdef double complex q = cexp(1j * M_PI * ct)
    cdef double aq = cabs(q)
    cdef double complex c2 = ccos(2.0 * M_PI * cv)
    cdef double grow = 1.0 + 2.0 * exp(2.0 * M_PI * fabs(cimag(cv)))
    cdef double complex total, qe, q2k2
    cdef double complex q2 = q * q
    cdef int off, k = 0, small = 0
    cdef double sgn, env
    if kind == 1:
        total = 2.0 * cexp(0.25j * M_PI * ct) * csin(M_PI * cv)
        off = 2
        sgn = -1.0
    elif kind == 2:
        total = 2.0 * cexp(0.25j * M_PI * ct) * ccos(M_PI * cv)
        off = 2
        sgn = 1.0
    elif kind == 3:
        total = 1.0
        off = 1
        sgn = 1.0
    else:
        total = 1.0
        off = 1
        sgn = -1.0
    qe = q if off == 1 else q2
    q2k2 = q2
    env = aq ** off * grow
    with nogil:
        while k < max_terms:
            total = total * (1.0 - q2k2) * (1.0 + sgn * 2.0 * qe * c2 + qe * qe)
            k += 1
            if env < tol:
                small += 1
                if small >= 2:
                    break
            else:
                small = 0
            qe = qe * q2
            q2k2 = q2k2 * q2
            env = env * aq * aq
    return complex(total), k, small >= 2


def wpow_sum(q, int p, double tol, int max_terms):
    cdef double complex cq = complex(q)
    cdef double complex q2 = cq * cq
    cdef double complex qk = cq
    cdef double complex total = 0, w, t
    cdef int k, j, small = 0, used = max_terms
    with nogil:
        for k in range(max_terms):
            w = -4.0 * qk / ((1.0 - qk) * (1.0 - qk))
            t = w
            for j in range(1, p):
                t = t * w
            total = total + t
            if cabs(t) <= tol * cabs(total) or t == 0:
                small += 1
                if small >= 2:
                    used = k + 1
                    break
            else:
                small = 0
            qk = qk * q2
    return complex(total), used, small >= 2


def exponent_sum(q, x2, double tol, int max_terms):
    cdef double complex cq = complex(q)
    cdef double complex cx = complex(x2)
    cdef double complex q2 = cq * cq, qk = cq, w, s, t, total = 0
    cdef double scale = cabs(cx)
    cdef double wtol = tol * 1e-3
    cdef int nk = 0, small = 0, i, p, used = max_terms
    cdef bint ok = False
    if cx == 0:
        return 0j, 0, True
    if scale < 1.0:
        scale = 1.0
    cdef double complex *base = <double complex *> malloc(max_terms * sizeof(double complex))
    cdef double complex *pows = <double complex *> malloc(max_terms * sizeof(double complex))
    if base == NULL or pows == NULL:
        free(base)
        free(pows)
        raise MemoryError()
    try:
        with nogil:
            for i in range(max_terms):
                w = -4.0 * qk / ((1.0 - qk) * (1.0 - qk))
                base[nk] = w * cx
                pows[nk] = base[nk]
                nk += 1
                if cabs(w) * scale < wtol:
                    small += 1
                    if small >= 2:
                        ok = True
                        break
                else:
                    small = 0
                qk = qk * q2
        if not ok:
            return 0j, 0, False
        small = 0
        with nogil:
            for p in range(1, max_terms + 1):
                if p > 1:
                    for i in range(nk):
                        pows[i] = pows[i] * base[i]
                s = 0
                for i in range(nk):
                    s = s + pows[i]
                t = -s / p
                total = total + t
                if cabs(t) < tol * (1.0 + cabs(total)):
                    small += 1
                    if small >= 2:
                        used = p
                        break
                else:
                    small = 0
                while nk > 1 and cabs(pows[nk - 1]) < 1e-300:
                    nk -= 1
        return complex(total), used, small >= 2
    finally:
        free(base)
        free(pows)


def binomial_sum(q, int p, double tol, int max_terms):
    cdef double complex cq = complex(q)
    cdef double weight = 2.0 ** (2 * p + 1) / (2 * p)
    cdef double complex qn = cq ** p
    cdef double complex total = 0, t
    cdef double a, prev = 1e308
    cdef int n = p, used, small = 0, count = max_terms
    cdef bint bad = False
    with nogil:
        for used in range(1, max_terms + 1):
            t = weight * qn / (1.0 - qn * qn)
            total = total + t
            a = cabs(t)
            if not isfinite(a):
                bad = True
                count = used
                break
            if (a <= tol * cabs(total) or t == 0) and a <= prev:
                small += 1
                if small >= 2:
                    count = used
                    break
            else:
                small = 0
            prev = a
            weight = weight * (n + p) / (n + 1 - p)
            qn = qn * cq
            n += 1
    if p % 2 == 0:
        total = -total
    return complex(total), count, (small >= 2) and not bad
