"""Independent reference values for the C++ test suite.

Everything here uses scipy/numpy/mpmath directly on dense matrices and never
imports the library under test.  Run once; the output is committed as
tests/data/derived_values.json and read by the unit tests.
"""
import json
import sys
from pathlib import Path

import mpmath as mp
import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import expm

mp.mp.dps = 40


def spin_half(d):
    """2x2 defining matrices: K0 = sigma3/2, ladder factors 1 (su2) or i (su11)."""
    x = 1.0 if d == 2 else 1j
    k0 = np.diag([0.5, -0.5]).astype(complex)
    kp = np.array([[0, x], [0, 0]], dtype=complex)
    km = np.array([[0, 0], [x, 0]], dtype=complex)
    return k0, kp, km, x


def gauss_from_2x2(m, x):
    # [[1, tp x],[0,1]] diag(s, 1/s) [[1,0],[tm x,1]] = [[.., tp x/s],[tm x/s, 1/s]]
    d = m[1, 1]
    return m[0, 1] / (x * d), 1.0 / d**2, m[1, 0] / (x * d)


def canonical_2x2(eps, mu, d):
    k0, kp, km, x = spin_half(d)
    v = expm(2 * eps * k0 + 2 * mu * km + 2 * np.conj(mu) * kp)
    return v, gauss_from_2x2(v, x)


def fock(n_cut):
    n = np.arange(n_cut)
    k0 = np.diag((n + 0.5) / 2).astype(complex)
    km = np.zeros((n_cut, n_cut), dtype=complex)
    for k in range(2, n_cut):
        km[k - 2, k] = 0.5 * np.sqrt(k * (k - 1))
    return k0, km.T.copy(), km


def cplx(z):
    return [float(np.real(z)), float(np.imag(z))]


out = {}

for d, key in ((2, "su2"), (-2, "su11")):
    v, (tp, t0, tm) = canonical_2x2(0.0, 0.25, d)
    out[f"gauss_eps0_mu025_{key}"] = {"theta_plus": cplx(tp), "theta_zero": cplx(t0), "theta_minus": cplx(tm)}
    if d == 2:
        out["product_eps0_mu025_su2"] = [[cplx(v[i, j]) for j in range(2)] for i in range(2)]

mu = 0.1 * np.exp(1j * np.pi / 4)
_, (tp, t0, tm) = canonical_2x2(0.3, mu, 2)
out["gauss_eps03_mu01pi4_su2"] = {
    "theta_plus": cplx(tp), "theta_zero": cplx(t0), "theta_minus": cplx(tm),
    "phi": float(abs(tm)), "varphi": float(np.angle(-tm)),
}

k0, kp, km = fock(30)
mu = 0.1 + 0.05j
v30 = expm(2 * 0.2 * k0 + 2 * mu * km + 2 * np.conj(mu) * kp)
out["su11_N30_canonical_entries"] = {
    "eps": 0.2, "mu": cplx(mu),
    "entries": [[i, j, cplx(v30[i, j])] for (i, j) in [(0, 0), (2, 0), (0, 2), (4, 2), (6, 10), (14, 14)]],
}

# Stationary roots by a scalar root-finder on the flow quadratic.
out["swanson_stationary_phi"] = float(mp.findroot(lambda p: 0.2 * p**2 - p + 0.2, 0.2))
out["su2_stationary_phi"] = float(mp.findroot(lambda p: 0.1 * p**2 + p - 0.1, 0.1))
out["swanson_re_w"] = float(mp.sqrt(0.84))

# Dense spectrum of the truncated constant Swanson matrix.
k0, kp, km = fock(60)
ev = np.linalg.eigvals(2 * k0 + 0.4 * km + 0.4 * kp)
ev = ev[np.argsort(ev.real)]
out["swanson_spectrum_N60"] = [float(e.real) for e in ev[:10]]


def propagate(h_of_t, psi0, t_eval, rtol, atol):
    def rhs(t, y):
        psi = y[: len(psi0)] + 1j * y[len(psi0):]
        dpsi = -1j * (h_of_t(t) @ psi)
        return np.concatenate([dpsi.real, dpsi.imag])

    y0 = np.concatenate([psi0.real, psi0.imag])
    sol = solve_ivp(rhs, (t_eval[0], t_eval[-1]), y0, method="DOP853", t_eval=t_eval, rtol=rtol, atol=atol)
    n = len(psi0)
    return sol.y[:n] + 1j * sol.y[n:]


# Swanson N=40 from e_0 to t=5.
k0, kp, km = fock(40)
h = 2 * k0 + 0.4 * km + 0.4 * kp
psi0 = np.zeros(40, dtype=complex)
psi0[0] = 1
ref = propagate(lambda t: h, psi0, [0.0, 5.0], 1e-13, 1e-15)[:, -1]
check = expm(-1j * h * 5.0) @ psi0
out["swanson_e0_t5"] = {
    "amplitudes": [cplx(ref[k]) for k in range(0, 12, 2)],
    "expm_agreement": float(np.linalg.norm(ref - check) / np.linalg.norm(check)),
}

# Norm growth under i psi' = 2 i K0 psi for K0 eigenvalue 1 (spin 1, m = 1).
psi = propagate(lambda t: np.diag([2j, 0, -2j]), np.array([1, 0, 0], dtype=complex), [0.0, 1.0], 1e-13, 1e-15)
out["naive_growth_omega_i_t1"] = float(np.vdot(psi[:, -1], psi[:, -1]).real)

# Riccati trajectory for the driven spin-1 case, integrated on theta_minus
# directly: d/dt m = 2i [omega m + alpha - beta m^2], omega = 1 + 0.1 sin t.
def riccati(t, y):
    m = y[0] + 1j * y[1]
    w = 1 + 0.1 * np.sin(t)
    dm = 2j * (w * m + 0.05 - 0.05 * m * m)
    return [dm.real, dm.imag]


m0 = float(mp.findroot(lambda m: 0.05 * m**2 - m - 0.05, -0.05))
sol = solve_ivp(riccati, (0.0, 5.0), [m0, 0.0], method="DOP853", rtol=1e-13, atol=1e-15, t_eval=[0.0, 2.5, 5.0])
ms = sol.y[0] + 1j * sol.y[1]
out["su2_driven_riccati"] = {
    "theta_minus0": m0,
    "samples": [[float(t), float(abs(m)), float(np.angle(-m))] for t, m in zip(sol.t, ms)],
}

# Hermitian limit: omega=1, alpha=0.1, beta=conj(alpha) on spin 1.
target = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parents[2] / "tests/data/derived_values.json"
target.write_text(json.dumps(out, indent=2) + "\n")
print(f"wrote {target}")
