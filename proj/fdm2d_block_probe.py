import numpy as np, sys

# 2-D variant of the off-center block probe: patch = nodes i in [i0, i1] at
# weight 1 on the y=0 face, h=1/40, k=0.2 h^2.
def run2d_block(q, i0, i1, h=0.025, kfac=0.2, u0=0.05, thr=10.0, tmax=5000.0):
    N = round(1.0 / h)
    k = kfac * h * h
    lam = k / (h * h)
    u = np.full((N + 1,) * 2, u0)
    eta = np.zeros(N + 1)
    eta[i0:i1 + 1] = 1.0
    t = 0.0
    step = 0
    M1p = u.max()
    m1p = u.min()
    while t < tmax:
        g = np.empty((N + 3,) * 2)
        g[1:-1, 1:-1] = u
        g[0, 1:-1] = u[1, :]
        g[-1, 1:-1] = u[-2, :]
        g[1:-1, 0] = u[:, 1] + 2 * h * eta * u[:, 0] ** q
        g[1:-1, -1] = u[:, -2]
        c = g[1:-1, 1:-1]
        u = c + lam * (g[:-2, 1:-1] + g[2:, 1:-1]
                       + g[1:-1, :-2] + g[1:-1, 2:] - 4 * c)
        step += 1
        t = step * k
        M1 = u.max()
        if M1 >= thr:
            m1 = u.min()
            T0 = (step - 1) * k + k * (thr - M1p) / (M1 - M1p)
            m1T0 = m1p + (m1 - m1p) * (T0 - (step - 1) * k) / k
            return T0, m1T0, step
        M1p = M1
        m1p = u.min()
    return None, None, step

q = float(sys.argv[1]); i0 = int(sys.argv[2]); i1 = int(sys.argv[3])
T0, m1, steps = run2d_block(q, i0, i1)
print(f"2D q={q} block nodes {i0}..{i1}: T0={T0} m1(T0)={m1} steps={steps}")
