import numpy as np

rng = np.random.default_rng(7)
c = 3e8

def steering(theta, fl, Nm, d):
    k = np.arange(Nm)
    return np.exp(2j*np.pi*fl/c*d*k*np.sin(theta))

def angle_from(irs_pos, axis, endpoint):
    u = endpoint - irs_pos
    u = u / np.linalg.norm(u)
    s = np.clip(u @ axis, -1.0, 1.0)
    return np.arcsin(s)

class Scene:
    def __init__(self, L=4, M=2, Nm=8, N=50):
        self.fc, self.B, self.L, self.N = 1e9, 100e6, L, N
        self.T = 1/(self.B/(L+1))
        self.Tpri = 20e-6
        self.radar = np.array([0.,0.])
        self.target = np.array([0.,5000.])
        self.vel = np.array([10.,10.])
        base = [np.array([100.,100.]), np.array([-100.,100.]), np.array([150.,50.])]
        self.irs = base[:M]
        self.M, self.Nm = M, Nm
        self.d = c/(2*self.fc)
        self.axis = np.array([1.,0.])
        self.df = self.B/(L+1)
        self.fl = self.fc + np.arange(L)*self.df

def path_params(sc):
    d_tr = np.linalg.norm(sc.target-sc.radar)
    nu0 = 2*sc.vel@(sc.target-sc.radar)/d_tr/c
    tau0 = 2*d_tr/c
    nus = []
    for p in sc.irs:
        d_it = np.linalg.norm(sc.target-p)
        nus.append(2*sc.vel@(sc.target-p)/d_it/c)
    return tau0, nu0, np.array(nus)

def build_S(sc):
    # S[l][m] : Nm x Nm
    S = [[None]*sc.M for _ in range(sc.L)]
    for l in range(sc.L):
        for m in range(sc.M):
            th_ri = angle_from(sc.irs[m], sc.axis, sc.radar)
            th_ti = angle_from(sc.irs[m], sc.axis, sc.target)
            b_ri = steering(th_ri, sc.fl[l], sc.Nm, sc.d)
            b_ti = steering(th_ti, sc.fl[l], sc.Nm, sc.d)
            b_ir, b_it = b_ri, b_ti  # reciprocity
            S[l][m] = np.outer(b_ir*b_ti, b_ri*b_it)
    return S

def build_P(sc, tau0, nus, keep_delay=True):
    P = np.zeros((sc.L*sc.M, sc.N), complex)
    n = np.arange(sc.N)
    for l in range(sc.L):
        for m in range(sc.M):
            ph = np.exp(2j*np.pi*sc.fl[l]*nus[m]*n*sc.Tpri)
            if keep_delay:
                ph = np.exp(-2j*np.pi*sc.fl[l]*tau0)*ph
            P[l*sc.M+m] = ph
    return P

def build_C(L, M):
    # C: L^2 M x L M , vec(BlockDiag(h_l^T)) = C h
    C = np.zeros((L*L*M, L*M))
    H_of = lambda h: np.kron(np.eye(L), np.ones((1,1)))  # unused
    # brute force: column j of C = vec(BlockDiag with h=e_j)
    for j in range(L*M):
        h = np.zeros(L*M)
        h[j] = 1
        Hm = np.zeros((L, L*M))
        for l in range(L):
            Hm[l, l*M:(l+1)*M] = h[l*M:(l+1)*M]
        C[:, j] = Hm.flatten(order='F')
    return C

def lemma1_C(L, M):
    # literal Lemma 1 construction
    C = np.zeros((L*L*M, L*M))
    for l in range(L):
        Ups = np.zeros((L*L*M, M))
        aleph = np.zeros((L, L)); aleph[l, l] = 1
        for i in range(L*M):
            e = np.zeros(L*M); e[i] = 1
            Ci = np.kron(e.reshape(-1,1), np.eye(L))
            Ei = e.reshape((M, L), order='F')
            Ups += Ci @ (aleph.T @ Ei.T)
        C[:, l*M:(l+1)*M] = Ups
    return C

def h_direct(sc, S, v):
    # v: concat of per-m blocks
    h = np.zeros(sc.L*sc.M, complex)
    for l in range(sc.L):
        for m in range(sc.M):
            vm = v[m*sc.Nm:(m+1)*sc.Nm]
            h[l*sc.M+m] = vm @ S[l][m] @ vm
    return h

def Q1(sc, S, v):
    # L*M x M*Nm
    out = np.zeros((sc.L*sc.M, sc.M*sc.Nm), complex)
    for l in range(sc.L):
        for m in range(sc.M):
            vm = v[m*sc.Nm:(m+1)*sc.Nm]
            Qm = np.kron(vm.reshape(-1,1), np.eye(sc.Nm))  # Nm^2 x Nm
            out[l*sc.M+m, m*sc.Nm:(m+1)*sc.Nm] = S[l][m].flatten(order='F') @ Qm
    return out

def Q2(sc, S, v):
    out = np.zeros((sc.L*sc.M, sc.M*sc.Nm), complex)
    for l in range(sc.L):
        for m in range(sc.M):
            vm = v[m*sc.Nm:(m+1)*sc.Nm]
            Qm = np.kron(np.eye(sc.Nm), vm.reshape(-1,1))
            out[l*sc.M+m, m*sc.Nm:(m+1)*sc.Nm] = S[l][m].flatten(order='F') @ Qm
    return out

def assemble_X(sc, h, alpha):
    X = np.zeros((sc.L, sc.L*sc.M), complex)
    for l in range(sc.L):
        X[l, l*sc.M:(l+1)*sc.M] = alpha[l]*h[l*sc.M:(l+1)*sc.M]
    return X

def delta_trace(a, X, P, Sinv):
    A = np.diag(a)
    Bm = A@X@P
    return np.real(np.trace(Sinv@Bm@Bm.conj().T))

def build_W(sc, a, alpha, P, Sinv, C):
    A = np.diag(a)
    D = assemble_X(sc, np.ones(sc.L*sc.M), alpha)  # D block diag of alpha rows
    AD = A@D
    U = np.diag(AD.flatten(order='F'))
    Acal = np.kron((P@P.conj().T).T, Sinv)
    return C.conj().T @ U.conj().T @ Acal @ U @ C

sc = Scene()
tau0, nu0, nus = path_params(sc)
S = build_S(sc)
P = build_P(sc, tau0, nus)
C = lemma1_C(sc.L, sc.M)
Cb = build_C(sc.L, sc.M)
print("Lemma1 C == brute C:", np.allclose(C, Cb))

rho, sig2 = 0.5, 1.0
Sig = sig2*rho**np.abs(np.subtract.outer(np.arange(sc.L), np.arange(sc.L)))
Sinv = np.linalg.inv(Sig)

# random unimodular v, unit a
v = np.exp(2j*np.pi*rng.random(sc.M*sc.Nm))
a = np.ones(sc.L, complex)/np.sqrt(sc.L)
alpha = np.ones(sc.L)  # per-l alpha vector of alphas? actually alpha_lm: use ones L x M -> flatten
alpha_lm = np.ones((sc.L, sc.M), complex)

def assemble_X2(sc, h, alpha_lm):
    X = np.zeros((sc.L, sc.L*sc.M), complex)
    for l in range(sc.L):
        X[l, l*sc.M:(l+1)*sc.M] = alpha_lm[l]*h[l*sc.M:(l+1)*sc.M]
    return X

def build_W2(sc, a, alpha_lm, P, Sinv, C):
    A = np.diag(a)
    D = np.zeros((sc.L, sc.L*sc.M), complex)
    for l in range(sc.L):
        D[l, l*sc.M:(l+1)*sc.M] = alpha_lm[l]
    AD = A@D
    U = np.diag(AD.flatten(order='F'))
    Acal = np.kron((P@P.conj().T).T, Sinv)
    return C.conj().T @ U.conj().T @ Acal @ U @ C

h = h_direct(sc, S, v)
print("h == Q1 v:", np.allclose(h, Q1(sc,S,v)@v), " == Q2 v:", np.allclose(h, Q2(sc,S,v)@v))
u2 = np.exp(2j*np.pi*rng.random(sc.M*sc.Nm))
print("cross-symmetry Q1(u)w == Q2(w)u:", np.allclose(Q1(sc,S,u2)@v, Q2(sc,S,v)@u2))

X = assemble_X2(sc, h, alpha_lm)
W = build_W2(sc, a, alpha_lm, P, Sinv, C)
d1 = delta_trace(a, X, P, Sinv)
d2 = np.real(h.conj()@W@h)
Ma = (X@P@P.conj().T@X.conj().T).T * Sinv
d3 = np.real(a.conj()@Ma@a)
G1 = Q1(sc,S,v).conj().T@W@Q1(sc,S,v); G2 = Q2(sc,S,v).conj().T@W@Q2(sc,S,v)
E = (G1+G2)/2
d4 = np.real(v.conj()@E@v)
print("four-way delta:", d1, d2, d3, d4, " rel spread:", (max(d1,d2,d3,d4)-min(d1,d2,d3,d4))/d1)

# vec(X) = U C h identity
A = np.diag(a)
D = np.zeros((sc.L, sc.L*sc.M), complex)
for l in range(sc.L):
    D[l, l*sc.M:(l+1)*sc.M] = alpha_lm[l]
U = np.diag((A@D).flatten(order='F'))
print("vec(AX)=UCh:", np.allclose((A@X).flatten(order='F'), U@C@h))

# Algorithm 1
def pmli_lift_step(Etil, vother, eta, vk, MNm):
    n = MNm
    Ecal = np.zeros((n+1, n+1), complex)
    Ecal[:n,:n] = Etil
    Ecal[:n, n] = -eta*vother
    Ecal[n, :n] = -eta*vother.conj()
    Ecal[n, n] = 2*eta*MNm
    lam = np.linalg.eigvalsh(Ecal)[-1]
    Ehat = lam*np.eye(n+1) - Ecal
    vbar = np.concatenate([vk, [1.]])
    g = Ehat@vbar
    newv = np.exp(1j*np.angle(g[:n]))
    # tie-break: keep previous where zero
    z = np.abs(g[:n]) == 0
    newv[z] = vk[z]
    return newv, Ehat

def algorithm1(sc, S, P, Sinv, C, alpha_lm, eta=1.0, G1i=10, G2i=30, seed=3):
    r = np.random.default_rng(seed)
    v1 = np.exp(2j*np.pi*r.random(sc.M*sc.Nm)); v2 = v1.copy()
    a = np.ones(sc.L, complex)/np.sqrt(sc.L)
    MNm = sc.M*sc.Nm
    h = h_direct(sc, S, v1); X = assemble_X2(sc, h, alpha_lm)
    trace = [delta_trace(a, X, P, Sinv)]
    for s in range(G1i):
        W = build_W2(sc, a, alpha_lm, P, Sinv, C)
        for t in range(G2i):
            E2 = ((Q1(sc,S,v2).conj().T@W@Q1(sc,S,v2))+(Q2(sc,S,v2).conj().T@W@Q2(sc,S,v2)))/2
            Et2 = np.linalg.eigvalsh(E2)[-1]*np.eye(MNm)-E2
            v1,_ = pmli_lift_step(Et2, v2, eta, v1, MNm)
            E1 = ((Q1(sc,S,v1).conj().T@W@Q1(sc,S,v1))+(Q2(sc,S,v1).conj().T@W@Q2(sc,S,v1)))/2
            Et1 = np.linalg.eigvalsh(E1)[-1]*np.eye(MNm)-E1
            v2,_ = pmli_lift_step(Et1, v1, eta, v2, MNm)
        v = v1
        h = h_direct(sc, S, v); X = assemble_X2(sc, h, alpha_lm)
        # waveform power method to convergence
        for it in range(1000):
            Ma = (X@P@P.conj().T@X.conj().T).T * Sinv
            anew = Ma@a; anew = anew/np.linalg.norm(anew)
            if np.linalg.norm(anew-a) < 1e-12: a = anew; break
            a = anew
        trace.append(delta_trace(a, X, P, Sinv))
        v1 = v2 = v
    return a, v, trace

a_s, v_s, tr = algorithm1(sc, S, P, Sinv, C, alpha_lm)
print("delta trace:", [f"{x:.4g}" for x in tr])
print("improvement factor:", tr[-1]/tr[0])
print("phase dist v1 v2 final: (same by construction)")
print("|h| designed:", np.abs(h_direct(sc, S, v_s)))
