import numpy as np
import itertools

rng = np.random.default_rng(42)

def pmli(G, s0, steps=100):
    s = s0.copy()
    objs = [np.real(s.conj()@G@s)]
    for _ in range(steps):
        g = G@s
        ns = np.where(np.abs(g)==0, s, np.exp(1j*np.angle(g)))
        s = ns
        objs.append(np.real(s.conj()@G@s))
    return s, np.array(objs)

# Part 2 of acceptance 3: n=3, 8-point grid, >=0.9x exhaustive in >=45/50
n = 3
grid = np.exp(2j*np.pi*np.arange(8)/8)
wins = 0
ratios = []
for trial in range(50):
    B = rng.standard_normal((n,n)) + 1j*rng.standard_normal((n,n))
    G = B@B.conj().T  # PSD
    s0 = np.exp(2j*np.pi*rng.random(n))
    s, objs = pmli(G, s0, 100)
    assert np.all(np.diff(objs) >= -1e-9*np.abs(objs[:-1]).max())
    best = 0
    for combo in itertools.product(grid, repeat=n):
        v = np.array(combo)
        best = max(best, np.real(v.conj()@G@v))
    r = objs[-1]/best
    ratios.append(r)
    if r >= 0.9: wins += 1
print("PMLI >= 0.9x exhaustive:", wins, "/50, min ratio:", min(ratios))

# micro-instance: M=1, Nm=2, L=1, 8-phase grid, algorithm1-like vs exhaustive
# delta = const * |v^T S v|^2 ; S = (b_ir*b_ti)(b_ri*b_it)^T random angles
c=3e8; f=1e9; d=c/(2*f)
wins2=0
for trial in range(20):
    th = rng.uniform(-np.pi/2, np.pi/2, 2)
    b1 = np.exp(2j*np.pi*f/c*d*np.arange(2)*np.sin(th[0]))
    b2 = np.exp(2j*np.pi*f/c*d*np.arange(2)*np.sin(th[1]))
    S = np.outer(b1*b2, b1*b2)
    best = 0
    for combo in itertools.product(grid, repeat=2):
        v = np.array(combo)
        best = max(best, abs(v@S@v)**2)
    # continuous optimum via PMLI on biquadratic with eta
    v1 = np.exp(2j*np.pi*rng.random(2)); v2 = v1.copy()
    eta = 1.0
    # E(v) for L=1,M=1: Q1 = vecS^T (v kron I), W = w0 scalar>0 (take 1)
    def Q1v(v): return (S.flatten(order='F') @ np.kron(v.reshape(-1,1), np.eye(2))).reshape(1,2)
    def Q2v(v): return (S.flatten(order='F') @ np.kron(np.eye(2), v.reshape(-1,1))).reshape(1,2)
    for t in range(60):
        for (va, vb, upd1) in [(v2, v1, True),(v1, v2, False)]:
            E = (Q1v(va).conj().T@Q1v(va) + Q2v(va).conj().T@Q2v(va))/2
            lam = np.linalg.eigvalsh(E)[-1]
            Et = lam*np.eye(2)-E
            Ecal = np.block([[Et, -eta*va.reshape(-1,1)],[-eta*va.conj().reshape(1,-1), np.array([[2*eta*2]])]])
            lh = np.linalg.eigvalsh(Ecal)[-1]
            Eh = lh*np.eye(3)-Ecal
            vb_bar = np.concatenate([vb,[1.]])
            g = (Eh@vb_bar)[:2]
            nv = np.where(np.abs(g)==0, vb, np.exp(1j*np.angle(g)))
            if upd1: v1 = nv
            else: v2 = nv
    got = abs(v1@S@v1)**2
    if got >= 0.95*best: wins2 += 1
print("micro-instance >= 0.95x:", wins2, "/20")
