"""Independent brute-force reference implementations used as test oracles.

Everything here is built from ladder operators rather than the packaged
matrices, so agreement is a genuine cross-check and not a tautology.
"""
import numpy as np

D_GS = 2870.0
GAMMA_NV = 2.80
D_PAR = 3.5e-9
D_PERP = 1.7e-7
A_PAR = -2.14
A_PERP = -2.7
P_QUAD = -4.95
GAMMA_N = 3.1e-4


def ladder_spin1():
    """(Sx, Sy, Sz) for spin 1 in basis |+1>, |0>, |-1> via S+/S-."""
    sp = np.zeros((3, 3), dtype=complex)
    # <m+1|S+|m> = sqrt(s(s+1) - m(m+1)), rows/cols ordered m = +1, 0, -1
    sp[0, 1] = np.sqrt(2.0)
    sp[1, 2] = np.sqrt(2.0)
    sm = sp.conj().T
    sx = (sp + sm) / 2.0
    sy = (sp - sm) / (2.0j)
    sz = np.diag([1.0, 0.0, -1.0]).astype(complex)
    return sx, sy, sz


def brute_hamiltonian(b, e):
    """9x9 ground-state Hamiltonian, MHz, from ladder operators.

    Transverse Stark signs follow the package convention: +Ex on
    (Sx^2 - Sy^2), -Ey on (SxSy + SySx).
    """
    sx, sy, sz = ladder_spin1()
    eye = np.eye(3, dtype=complex)
    h_el = (D_GS + D_PAR * e[2]) * (sz @ sz - 2.0 / 3.0 * eye)
    h_el += GAMMA_NV * (b[0] * sx + b[1] * sy + b[2] * sz)
    h_el += D_PERP * (e[0] * (sx @ sx - sy @ sy) - e[1] * (sx @ sy + sy @ sx))
    h = np.kron(h_el, eye)
    h += A_PAR * np.kron(sz, sz) + A_PERP * (np.kron(sx, sx) + np.kron(sy, sy))
    h += P_QUAD * np.kron(eye, sz @ sz - 2.0 / 3.0 * eye)
    h += GAMMA_N * np.kron(eye, b[0] * sx + b[1] * sy + b[2] * sz)
    return h


def brute_lines(b, e, bmw):
    """(frequencies, strengths) over all eigenstate pairs, drive vector bmw."""
    h = brute_hamiltonian(b, e)
    w, v = np.linalg.eigh(h)
    sx, sy, sz = ladder_spin1()
    eye = np.eye(3, dtype=complex)
    s_part = bmw[0] * sx + bmw[1] * sy + bmw[2] * sz
    h_int = GAMMA_NV * np.kron(s_part, eye) + GAMMA_N * np.kron(eye, s_part)
    m = v.conj().T @ h_int @ v
    freqs, amps = [], []
    for i in range(9):
        for f in range(i + 1, 9):
            freqs.append(w[f] - w[i])
            amps.append(abs(m[f, i]) ** 2)
    return np.array(freqs), np.array(amps)


def central_doublet(b, e):
    """m_I = 0 transition pair (f_minus, f_plus) via eigenvector overlaps."""
    h = brute_hamiltonian(b, e)
    w, v = np.linalg.eigh(h)
    # m_I = 0 kets sit at product-basis indices 1, 4, 7 for m_s = +1, 0, -1
    weight = (np.abs(v[[1, 4, 7], :]) ** 2).sum(axis=0)
    idx = np.argsort(weight)[-3:]
    ground = idx[int(np.argmax(np.abs(v[4, idx]) ** 2))]
    upper = sorted((i for i in idx if i != ground), key=lambda i: w[i])
    return w[upper[0]] - w[ground], w[upper[1]] - w[ground]
