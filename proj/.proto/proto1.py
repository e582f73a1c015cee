import numpy as np
from scipy.integrate import solve_ivp, quad
from scipy.special import ellipj, ellipk, ellipkinc, ellipeinc
from scipy.optimize import brentq

# Paper conventions
s0 = np.eye(2, dtype=complex)
s1 = np.array([[0, 1], [1, 0]], dtype=complex)
s2 = np.array([[0, 1j], [-1j, 0]], dtype=complex)  # paper sign
s3 = np.array([[1, 0], [0, -1]], dtype=complex)
sig = [s0, s1, s2, s3]

G0 = 0.1
I0c = 1.0
Hp = 4.1     # \tilde H'
dH = Hp - 4*I0c

lam_m = np.sqrt(I0c**2 - abs(dH/(2*G0)))
lam_p = np.sqrt(I0c**2 + abs(dH/(2*G0)))
om = 2*G0*lam_p
kap = lam_m/lam_p
m = kap**2
print("lam-=%.10f lam+=%.10f om=%.10f kap=%.10f" % (lam_m, lam_p, om, kap))

# --- closed forms ---
def i3_closed(t):
    sn, cn, dn, ph = ellipj(om*t, m)
    return lam_m*sn

def phi0_closed(t, phi00=0.0):
    # phi0(0) + 2t + dH/(I0*om) * Pi(n; am(om t), kap)
    sn, cn, dn, ph = ellipj(om*t, m)
    n = lam_m**2/I0c**2
    # incomplete Pi via numerical quadrature on amplitude ph (unwrap via ellipj's ph)
    val = quad(lambda th: 1.0/((1-n*np.sin(th)**2)*np.sqrt(1-m*np.sin(th)**2)), 0, ph, limit=200)[0]
    return phi00 + 2*t + dH/(I0c*om)*val

def phi3p_closed(t, phi3p0):
    # my arctan form
    n = lam_m**2/I0c**2
    sn, cn, dn, ph = ellipj(om*t, m)
    q = np.sqrt(n - m)/np.sqrt(1-n)
    F = lambda cnv, dnv: np.arctan(cnv*np.sqrt(n-m)/(np.sqrt(1-n)*dnv))
    C = 2*lam_m*dH/(I0c**2*om*np.sqrt(1-n)*np.sqrt(n-m))
    return phi3p0 - C*(np.arctan(q) - F(cn, dn))

# --- ODE oracle for angles (exe1..exe3) ---
def rhs(t, y):
    ph0, ph3 = y
    I3 = i3_closed(t)
    return [2 + I0c*dH/(I0c**2 - I3**2), -2*I3*dH/(I0c**2 - I3**2)]

phi3p0 = np.arccos(dH/(2*G0*I0c**2))
print("phi3p0 =", phi3p0, "cos=", np.cos(phi3p0))
sol = solve_ivp(rhs, [0, 10], [0.1234, phi3p0], rtol=1e-12, atol=1e-14, dense_output=True)
for t in [1.0, 3.0, 7.0, 10.0]:
    a = sol.sol(t)
    print("t=%4.1f  phi0 ode=%.12f closed=%.12f diff=%.3e   phi3p ode=%.12f closed=%.12f diff=%.3e"
          % (t, a[0], phi0_closed(t, 0.1234), a[0]-phi0_closed(t, 0.1234),
             a[1], phi3p_closed(t, phi3p0), a[1]-phi3p_closed(t, phi3p0)))
