import numpy as np, sys

def run3d(q, Lside, h, kfac, u0=0.05, thr=10.0, tmax=500.0, corner=0.25):
    N = round(1.0/h)
    k = kfac*h*h
    lam = k/(h*h)
    u = np.full((N+1,)*3, u0)
    # flux face z=0; patch centered square side Lside; eta[i,j]
    eta = np.zeros((N+1, N+1))
    a = 0.5 - Lside/2.0; b = 0.5 + Lside/2.0
    tol = 1e-12
    for i in range(N+1):
        for j in range(N+1):
            x, y = i*h, j*h
            inx = a-tol < x < b+tol; iny = a-tol < y < b+tol
            if not (inx and iny): continue
            ex = abs(x-a) < tol or abs(x-b) < tol
            ey = abs(y-a) < tol or abs(y-b) < tol
            if ex and ey: eta[i,j] = corner
            elif ex or ey: eta[i,j] = 0.5
            else: eta[i,j] = 1.0
    t = 0.0; step = 0
    M1p = u.max(); m1p = u.min()
    while t < tmax:
        # build ghost-padded array: pad with mirrors, then add flux on z=0 face
        g = np.pad(u, 1, mode='edge')  # placeholder, fix below with proper mirror
        g[0,:,:]  = np.pad(u,1,mode='edge')[2,:,:]*0  # will overwrite
        # simpler: construct padded with interior mirrors
        g = np.empty((N+3,)*3)
        g[1:-1,1:-1,1:-1] = u
        g[0,1:-1,1:-1]  = u[1,:,:];  g[-1,1:-1,1:-1] = u[-2,:,:]
        g[1:-1,0,1:-1]  = u[:,1,:];  g[1:-1,-1,1:-1] = u[:,-2,:]
        g[1:-1,1:-1,0]  = u[:,:,1] + 2*h*eta*u[:,:,0]**q
        g[1:-1,1:-1,-1] = u[:,:,-2]
        c = g[1:-1,1:-1,1:-1]
        un = c + lam*(g[:-2,1:-1,1:-1]+g[2:,1:-1,1:-1]+g[1:-1,:-2,1:-1]+g[1:-1,2:,1:-1]+g[1:-1,1:-1,:-2]+g[1:-1,1:-1,2:]-6*c)
        u = un; step += 1; t = step*k
        M1 = u.max()
        if M1 >= thr:
            m1 = u.min()
            T0 = (step-1)*k + k*(thr-M1p)/(M1-M1p)
            m1T0 = m1p + (m1-m1p)*(T0-(step-1)*k)/k
            return T0, m1T0, step
        M1p = M1; m1p = u.min()
    return None, None, step

q = float(sys.argv[1]); L = float(sys.argv[2]); corner = float(sys.argv[3])
T0, m1, steps = run3d(q, L, 1/10, 0.1, tmax=3000.0, corner=corner)
print(f"3D q={q} side={L} corner={corner}: T0={T0} m1(T0)={m1} steps={steps}")
