import numpy as np
from scipy.integrate import quad
from scipy.special import ellipk
from scipy.optimize import brentq

G0 = 0.1; I0c = 1.0; Hp = 4.1; dH = Hp - 4*I0c
lam_m = np.sqrt(I0c**2 - abs(dH/(2*G0)))
lam_p = np.sqrt(I0c**2 + abs(dH/(2*G0)))
om = 2*G0*lam_p; kap = lam_m/lam_p; m = kap**2

def R(s):
    G0p = 2*G0*(I0c**2 - s**2)      # \tilde G0'
    H0p = 4*I0c                      # \tilde H0'
    return G0p**2 - (Hp - H0p)**2

# locate + polish upper turning point
r = brentq(R, 0.0, I0c, xtol=1e-15, rtol=8.9e-16)
for _ in range(3):
    h = 1e-6*max(1, abs(r))
    dR = (R(r+h)-R(r-h))/(2*h)
    r = r - R(r)/dR
print("polished root:", r, " exact lam-:", lam_m, " diff:", r-lam_m, " R(r):", R(r))

rlo, rhi = -r, r     # symmetric case; use generic subtraction anyway
e1, e2 = R(rlo), R(rhi)
def Rt(s):
    w = (s - rlo)/(rhi - rlo)
    return R(s) - ((1-w)*e1 + w*e2)

# integral over [rlo, rhi] of 1/sqrt(Rt): split at midpoint, substitute both ends
mid = 0.5*(rlo+rhi)
def left(u):   # s = rlo + u^2
    v = Rt(rlo + u*u)
    if v <= 0: v = abs((Rt(rlo+1.0001*u*u) - Rt(rlo+0.9999*u*u)))*1e100  # shouldn't happen
    return 2*u/np.sqrt(v)
def right(u):  # s = rhi - u^2
    v = Rt(rhi - u*u)
    return 2*u/np.sqrt(v) if v > 0 else 0.0
T1 = quad(left, 0, np.sqrt(mid-rlo), epsabs=1e-13, epsrel=1e-13, limit=400)[0]
T2 = quad(right, 0, np.sqrt(rhi-mid), epsabs=1e-13, epsrel=1e-13, limit=400)[0]
T = T1 + T2
Texact = 2*ellipk(m)/om
print("half period quad: %.15f  exact 2K/om: %.15f  diff: %.3e" % (T, Texact, T - Texact))
