import numpy as np
from scipy.integrate import solve_ivp, quad
from scipy.special import ellipj, ellipk
from scipy.optimize import brentq

s0 = np.eye(2, dtype=complex)
s1 = np.array([[0, 1], [1, 0]], dtype=complex)
s2 = np.array([[0, 1j], [-1j, 0]], dtype=complex)
s3 = np.array([[1, 0], [0, -1]], dtype=complex)
svec = [s1, s2, s3]

def ks_forward(th, ze):
    nz = np.real(np.vdot(ze, ze))
    y = np.array([np.real(np.vdot(th, sk@ze) + np.vdot(ze, sk@th))/(2*nz) for sk in svec])
    x = np.array([np.real(np.vdot(ze, sk@ze))/2 for sk in svec])
    return y, x

def project(z):
    e = z[:2]; xi = z[2:]
    th = (e + 1j*xi)/np.sqrt(2)
    ze = (1j*e + xi)/np.sqrt(2)
    return ks_forward(th, ze)

rng = np.random.default_rng(7)
e = rng.normal(size=2) + 1j*rng.normal(size=2)
xi = rng.normal(size=2) + 1j*rng.normal(size=2)
xi *= np.linalg.norm(e)/np.linalg.norm(xi)

def kflow(t):
    return project(np.concatenate([np.exp(1j*t)*e, np.exp(-1j*t)*xi]))

y0, x0 = kflow(0.0)
yp, xp = kflow(np.pi)
print("x(t+pi)-x(t):", np.max(np.abs(xp-x0)), " y:", np.max(np.abs(yp-y0)))

def conserved(y, x):
    nx = np.linalg.norm(x)
    R0 = nx*(1+np.dot(y,y))
    R = (1-np.dot(y,y))*x + 2*np.dot(x,y)*y
    M = 2*np.cross(x, y)
    return R0, R, M
R00, Rv0, Mv0 = conserved(y0, x0)
dev = 0.0
for t in np.linspace(0, 6, 20):
    y, x = kflow(t)
    R0t, Rt, Mt = conserved(y, x)
    dev = max(dev, abs(R0t-R00), np.max(np.abs(Rt-Rv0)), np.max(np.abs(Mt-Mv0)))
print("max conserved dev along analytic flow:", dev)

# Ik, Jk from (3I)/(3J) vs iju from lift
def iju(z):
    e_, xi_ = z[:2], z[2:]
    I = np.array([0.5*np.real(np.vdot(e_, s@e_)) for s in [s0]+svec])
    J = np.array([0.5*np.real(np.vdot(xi_, s@xi_)) for s in [s0]+svec])
    return I, J
z0 = np.concatenate([e, xi])
I, J = iju(z0)
y, x = project(z0)
nx = np.linalg.norm(x)
Ik = 0.5*(1-np.dot(y,y))*x + np.dot(x,y)*y - np.cross(x,y)
Jk = 0.5*(1-np.dot(y,y))*x + np.dot(x,y)*y + np.cross(x,y)
print("I vec dev:", np.max(np.abs(Ik - I[1:])), " J vec dev:", np.max(np.abs(Jk - J[1:])))
print("I0,J0 vs R0/2:", I[0]-nx*(1+np.dot(y,y))/2, J[0]-nx*(1+np.dot(y,y))/2)
print("R=I+J dev:", np.max(np.abs((I[1:]+J[1:]) - Rv0)), " M=J-I dev:", np.max(np.abs((J[1:]-I[1:]) - Mv0)))

# ---- printed x/y lists vs KS pipeline (the closed-form Sec.5 trajectories) ----
G0 = 0.1; I0c = 1.0; Hp = 4.1; dH = Hp - 4*I0c
lam_m = np.sqrt(I0c**2 - abs(dH/(2*G0)))
lam_p = np.sqrt(I0c**2 + abs(dH/(2*G0)))
om = 2*G0*lam_p; kap = lam_m/lam_p; m = kap**2; n = lam_m**2/I0c**2
D1 = 0.3; D2 = -0.7; phi00 = 0.25
phi3p0 = np.arccos(dH/(2*G0*I0c**2))

def i3c(t):
    sn, cn, dn, ph = ellipj(om*t, m); return lam_m*sn
def phi0c(t):
    sn, cn, dn, ph = ellipj(om*t, m)
    val = quad(lambda th: 1.0/((1-n*np.sin(th)**2)*np.sqrt(1-m*np.sin(th)**2)), 0, ph, limit=400)[0]
    return phi00 + 2*t + dH/(I0c*om)*val
def phi3pc(t):
    sn, cn, dn, ph = ellipj(om*t, m)
    C = 2*lam_m*dH/(I0c**2*om*np.sqrt(1-n)*np.sqrt(n-m))
    F = np.arctan(cn*np.sqrt(n-m)/(np.sqrt(1-n)*dn))
    F0 = np.arctan(np.sqrt(n-m)/np.sqrt(1-n))
    return phi3p0 - C*(F0 - F)

def state_closed(t, l):
    I3p = i3c(t); p0 = phi0c(t); p3 = phi3pc(t)
    if l == 1:
        e1 = np.sqrt(I0c+I3p)*np.exp(0.5j*(p0 + 0.5*(p3+D1)))
        e2 = np.sqrt(I0c-I3p)*np.exp(0.5j*(p0 - 0.5*(p3+D1)))
        xx1 = np.exp(-0.5j*(D2+D1))*np.conj(e2)
        xx2 = np.exp(-0.5j*(D2-D1))*np.conj(e1)
    else:
        e1 = np.sqrt(I0c+I3p)*np.exp(0.5j*(p0 + 0.5*(p3-D1)))
        e2 = np.sqrt(I0c-I3p)*np.exp(0.5j*(p0 - 0.5*(p3-D1)))
        xx1 = np.exp(-0.5j*(D2+D1))*np.conj(e1)
        xx2 = np.exp(-0.5j*(D2-D1))*np.conj(e2)
    return np.array([e1, e2, xx1, xx2]), I3p, p0, p3

def printed_xy(t, l):
    _, I3p, p0, p3 = state_closed(t, l)
    c = np.cos; s = np.sin
    if l == 1:
        x1 = c(p3/2)*c(D1/2) - s((2*p0+D2)/2)*c(p3/2)
        x2 = c(p3/2)*c((2*p0+D2)/2) + s(p3/2)*c(D1/2)
        x3 = -s(D1/2)*c((2*p0+D2)/2)
        den = I0c - s((2*p0+D2)/2)*c(D1/2)
        y1 = c((2*p0+D2)/2)*c(p3/2)/den
        y2 = c((2*p0+D2)/2)*s(p3/2)/den
        y3 = s((2*p0+D2)/2)*s(D1/2)/(-den)
    else:
        x1 = c(p3/2)*c(D1/2) + s((2*p0+D2)/2)*c(D1/2)
        x2 = s(D1/2)*s((2*p0+D2)/2) - c(p3/2)*s(D1/2)
        x3 = I3p - s(p3/2)*c((2*p0+D2)/2)
        den = I0c - s((2*p0+D2)/2)*c(p3/2)
        y1 = c((2*p0+D2)/2)*c(D1/2)/den
        y2 = s((2*p0+D2)/2)*s(D1/2)/(-den)
        y3 = s((2*p0+D2)/2)*s(p3/2)/(-den)
    return np.array([y1,y2,y3]), np.array([x1,x2,x3])

for l in (1, -1):
    md = 0.0
    for t in np.linspace(0, 10, 21):
        z, I3p, p0, p3 = state_closed(t, l)
        yk, xk = project(z)
        ypr, xpr = printed_xy(t, l)
        md = max(md, np.max(np.abs(yk-ypr)), np.max(np.abs(xk-xpr)))
    print("l=%+d printed-list max deviation from KS pipeline over [0,10]: %.3e" % (l, md))

# final IJ display check
for l in (1, -1):
    md = 0.0
    for t in np.linspace(0, 10, 21):
        z, I3p, p0, p3 = state_closed(t, l)
        I, J = iju(z)
        r = np.sqrt(I0c**2 - I3p**2)
        if l == 1:
            I1 = r*np.cos((p3+D1)/2); I2 = r*np.sin((p3+D1)/2)
            J1 = r*np.cos((p3-D1)/2); J2 = r*np.sin((p3-D1)/2)
            I3 = I3p; J3 = -I3p
        else:
            I1 = r*np.cos((p3-D1)/2); I2 = r*np.sin((p3-D1)/2)
            J1 = r*np.cos((p3+D1)/2); J2 = -r*np.sin((p3+D1)/2)
            I3 = I3p; J3 = I3p
        md = max(md, abs(I[1]-I1), abs(I[2]-I2), abs(I[3]-I3), abs(J[1]-J1), abs(J[2]-J2), abs(J[3]-J3))
    print("l=%+d final IJ display max dev: %.3e" % (l, md))
