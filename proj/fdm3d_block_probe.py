import numpy as np, sys

# Off-center full-weight block probe: patch = nodes i,j in [i0, i1] at weight 1.
def run3d_block(q, i0, i1, h=0.1, kfac=0.1, u0=0.05, thr=10.0, tmax=3000.0):
    N = round(1.0 / h)
    k = kfac * h * h
    lam = k / (h * h)
    u = np.full((N + 1,) * 3, u0)
    eta = np.zeros((N + 1, N + 1))
    eta[i0:i1 + 1, i0:i1 + 1] = 1.0
    t = 0.0
    step = 0
    M1p = u.max()
    m1p = u.min()
    while t < tmax:
        g = np.empty((N + 3,) * 3)
        g[1:-1, 1:-1, 1:-1] = u
        g[0, 1:-1, 1:-1] = u[1, :, :]
        g[-1, 1:-1, 1:-1] = u[-2, :, :]
        g[1:-1, 0, 1:-1] = u[:, 1, :]
        g[1:-1, -1, 1:-1] = u[:, -2, :]
        g[1:-1, 1:-1, 0] = u[:, :, 1] + 2 * h * eta * u[:, :, 0] ** q
        g[1:-1, 1:-1, -1] = u[:, :, -2]
        c = g[1:-1, 1:-1, 1:-1]
        u = c + lam * (g[:-2, 1:-1, 1:-1] + g[2:, 1:-1, 1:-1]
                       + g[1:-1, :-2, 1:-1] + g[1:-1, 2:, 1:-1]
                       + g[1:-1, 1:-1, :-2] + g[1:-1, 1:-1, 2:] - 6 * c)
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
T0, m1, steps = run3d_block(q, i0, i1)
print(f"3D q={q} block nodes {i0}..{i1}: T0={T0} m1(T0)={m1} steps={steps}")
