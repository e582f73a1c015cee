import numpy as np
from scipy.integrate import solve_ivp
from scipy.special import ellipj

G0 = 0.1; I0c = 1.0; Hp = 4.1; dH = Hp - 4*I0c
lam_m = np.sqrt(I0c**2 - abs(dH/(2*G0)))
lam_p = np.sqrt(I0c**2 + abs(dH/(2*G0)))
om = 2*G0*lam_p; kap = lam_m/lam_p; m = kap**2; n = lam_m**2/I0c**2
phi3p0 = np.arccos(dH/(2*G0*I0c**2))

def i3c(t):
    sn, cn, dn, ph = ellipj(om*t, m); return lam_m*sn

def rhs(t, y):
    I3 = i3c(t); return [-2*I3*dH/(I0c**2 - I3**2)]
sol = solve_ivp(rhs, [0, 10], [phi3p0], rtol=1e-12, atol=1e-14, dense_output=True)

# literal complex continuation of (522):
def phi3p_522(t):
    sn, cn, dn, ph = ellipj(om*t, m)
    pref = dH/(4*G0*lam_m*lam_p*np.sqrt(complex((lam_m**2-I0c**2)*(lam_p**2-I0c**2))))
    num = np.sqrt(complex((lam_m**2-I0c**2)*(1-m*sn**2))) - kap*np.sqrt(complex((lam_p**2-I0c**2)*(1-sn**2)))
    den = np.sqrt(complex((lam_m**2-I0c**2)*(1-m*sn**2))) + kap*np.sqrt(complex((lam_p**2-I0c**2)*(1-sn**2)))
    v = pref*np.log(num/den)
    v0 = phi3p_522_at0()
    return phi3p0 + (v - v0)

def phi3p_522_at0():
    sn, cn, dn = 0.0, 1.0, 1.0
    pref = dH/(4*G0*lam_m*lam_p*np.sqrt(complex((lam_m**2-I0c**2)*(lam_p**2-I0c**2))))
    num = np.sqrt(complex((lam_m**2-I0c**2)*(1-m*sn**2))) - kap*np.sqrt(complex((lam_p**2-I0c**2)*(1-sn**2)))
    den = np.sqrt(complex((lam_m**2-I0c**2)*(1-m*sn**2))) + kap*np.sqrt(complex((lam_p**2-I0c**2)*(1-sn**2)))
    return pref*np.log(num/den)

# my arctan form
def phi3p_mine(t):
    sn, cn, dn, ph = ellipj(om*t, m)
    C = 2*lam_m*dH/(I0c**2*om*np.sqrt(1-n)*np.sqrt(n-m))
    F = np.arctan(cn*np.sqrt(n-m)/(np.sqrt(1-n)*dn))
    F0 = np.arctan(np.sqrt(n-m)/np.sqrt(1-n))
    return phi3p0 - C*(F0 - F)

for t in [0.5, 2.0, 5.0, 9.0]:
    ode = sol.sol(t)[0]
    lit = phi3p_522(t)
    print("t=%4.1f ode=%.10f  literal522=%s  mine=%.10f (diff %.2e)"
          % (t, ode, lit, phi3p_mine(t), phi3p_mine(t)-ode))
