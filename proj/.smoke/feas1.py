import numpy as np

c = 3e8
fc, B, L, N = 1e9, 100e6, 4, 50
T = 50e-9
Tpri = 20e-6
df = B / (L + 1)
assert abs(df - 1/T) < 1e-6
radar = np.array([0.0, 0.0])
irs = [np.array([100.0, 100.0]), np.array([-100.0, 100.0])]
target = np.array([0.0, 5000.0])
vel = np.array([10.0, 10.0])

d_tr = np.linalg.norm(target - radar)
nu0 = 2 * vel @ (target - radar) / d_tr / c
tau0 = 2 * d_tr / c
print("nu0 =", nu0, " tau0 =", tau0)

M = 2
nus, taus = [], []
for m in range(M):
    d_ri = np.linalg.norm(irs[m] - radar)
    d_it = np.linalg.norm(target - irs[m])
    nus.append(2 * vel @ (target - irs[m]) / d_it / c)
    taus.append(2 * (d_ri + d_it) / c)
    print(f"IRS{m+1}: d_ri={d_ri:.6f} d_it={d_it:.6f} tau={taus[-1]*1e6:.6f}us nu={nus[-1]:.6e}")

fl = fc + np.arange(L) * df
# P matrix LM x N, row = l*M+m
P = np.zeros((L*M, N), complex)
for l in range(L):
    for m in range(M):
        n = np.arange(N)
        P[l*M+m] = np.exp(-2j*np.pi*fl[l]*tau0) * np.exp(2j*np.pi*fl[l]*nus[m]*n*Tpri)
sv = np.linalg.svd(P, compute_uv=False)
print("svs of P:", sv)
print("sv ratios:", sv/sv[0])
tol = 1e-9
r_eff = int(np.sum(sv > tol*sv[0]))
print("r_eff(1e-9) =", r_eff)

# exact-rank projector using pinv with rank cutoff
U, s, Vh = np.linalg.svd(P, full_matrices=False)
k = r_eff
Pi = Vh[:k].conj().T @ Vh[:k]   # projector onto row space of P (N x N)
PiP = np.eye(N) - Pi

# H0 Monte Carlo: T = det(YY^H)/det(Y PiP Y^H), Sigma irrelevant (invariance) -> use I
rng = np.random.default_rng(12345)
ntr = 5000
stats = np.zeros(ntr)
for t in range(ntr):
    Y = (rng.standard_normal((L, N)) + 1j*rng.standard_normal((L, N))) / np.sqrt(2)
    s0 = np.linalg.slogdet(Y @ Y.conj().T)[1]
    s1 = np.linalg.slogdet(Y @ PiP @ Y.conj().T)[1]
    stats[t] = s0 - s1   # = ln T
from scipy import stats as sps
r = r_eff
for name, sample, dof in [("rL on N lnT", N*stats, r*L), ("2rL on 2N lnT", 2*N*stats, 2*r*L)]:
    ks = sps.kstest(sample, 'chi2', args=(dof,))
    print(f"{name}: dof={dof} mean={sample.mean():.3f} (chi2 mean {dof}) KS D={ks.statistic:.4f} p={ks.pvalue:.3e}")

# Bartlett-style multiplier (diagnostic)
mult = N - (L + r + 1)/2
sampleB = 2*mult*stats
ksB = sps.kstest(sampleB, 'chi2', args=(2*r*L,))
print(f"Bartlett 2(N-(L+r+1)/2) lnT vs chi2_{2*r*L}: mean={sampleB.mean():.3f} KS D={ksB.statistic:.4f} p={ksB.pvalue:.3e}")

# empirical PFA at chi2 thresholds
for conv, sample, dof in [("rL", N*stats, r*L), ("2rL", 2*N*stats, 2*r*L)]:
    for pfa in (1e-2, 1e-1):
        gam = sps.chi2.isf(pfa, dof)
        emp = np.mean(sample > gam)
        print(f"conv {conv} pfa {pfa}: thresh {gam:.2f} emp {emp:.4f}")
