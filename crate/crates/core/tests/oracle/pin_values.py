"""Arbitrary-precision reference values frozen into tests/oracles.rs.

Independent of the Rust code path: direct products and term-by-term series
in mpmath at 60 digits. Run with `python3 pin_values.py`.
"""
import mpmath as mp

mp.mp.dps = 60
XI = mp.mpf("0.45048")
CAP = 512


def f_lag(xi, n):
    x = xi * xi
    return mp.laguerre(n, 1, x) / ((n + 1) * mp.laguerre(n, 0, x))


def f_q(q, n):
    if n == 0:
        return mp.mpf(1)
    return mp.sqrt((q**n - q**-n) / (q - 1 / q) / n)


def factorials(f, count):
    out = [f(0) ** 2]
    for k in range(1, count):
        out.append(out[-1] * k * f(k) ** 2)
    return out


def amplitudes(fact, zeta2):
    terms = [mp.mpf(zeta2) ** n / fact[n] for n in range(len(fact))]
    s = mp.fsum(terms)
    return [mp.sqrt(t / s) for t in terms]


def separation(fact, zeta2):
    c = amplitudes(fact, zeta2)
    return 2 * mp.fsum(mp.sqrt(n + 1) * c[n] * c[n + 1] for n in range(len(c) - 1))


def visibility(fact, zeta2, n, eta):
    x = mp.mpf(zeta2) * (1 - eta)
    terms = [mp.factorial(n + k) / mp.factorial(k) * x**k / fact[n + k] for k in range(len(fact) - n)]
    num = mp.fsum(t * (-1) ** k for k, t in enumerate(terms))
    return abs(num) / mp.fsum(terms)


lag = lambda n: f_lag(XI, n)
fact_lag = factorials(lag, 160)

print("f_q(2,2)            ", mp.nstr(f_q(mp.mpf(2), 2), 20))
print("[3]_f! laguerre     ", mp.nstr(fact_lag[3], 20))
print("ln [3]_f! laguerre  ", mp.nstr(mp.log(fact_lag[3]), 20))
print("exp_f laguerre(2)   ", mp.nstr(mp.fsum(mp.mpf(2) ** n / fact_lag[n] for n in range(160)), 20))
print("exp_f laguerre(1)^2 ", mp.nstr(mp.fsum(1 / fact_lag[n] for n in range(160)) ** 2, 20))
amps = amplitudes(fact_lag, 2)
for n in range(0, 24, 3):
    print("amp laguerre n=%-3d  " % n, mp.nstr(amps[n], 20))
print("separation laguerre ", mp.nstr(separation(fact_lag, 2), 20))
for n in (1, 2, 3):
    print("V laguerre n=%d      " % n, mp.nstr(visibility(fact_lag, 2, n, mp.e**-1), 20))

fact_q = factorials(lambda n: f_q(mp.mpf("1.2"), n), 160)
print("V q1.2 z2=1 n=2 gt=1 ", mp.nstr(visibility(fact_q, 1, 2, mp.e**-1), 20))
print("d q1.2 z2=2          ", mp.nstr(separation(fact_q, 2), 20))

root = mp.findroot(
    lambda xi: separation(factorials(lambda n: f_lag(xi, n), 160), 2) - 2 * mp.sqrt(2),
    (mp.mpf("0.4500"), mp.mpf("0.4510")),
    solver="anderson",
)
print("calibrated xi       ", mp.nstr(root, 20))
d02 = separation(factorials(lambda n: f_lag(mp.mpf("0.2"), n), 160), 1)
print("d laguerre(0.2) z=1 ", mp.nstr(d02, 20))
