"""Independent numpy reference for the constants frozen into the C++ tests."""
import itertools
import numpy as np

w = np.exp(2j * np.pi / 3)
Z = np.diag([1, w, w * w])
X = np.zeros((3, 3), complex)
for i in range(3):
    X[i, (i + 1) % 3] = 1


def t3(k):
    p, q = k**2 + 2 / k, k**2 - 1 / k
    return (p * Z + q * Z @ X + q * Z @ X @ X) / 3


def family(tb):
    th = dict(a=tb + np.pi / 6, b=tb, g=tb + np.pi / 3, d=tb + np.pi / 6)
    s1 = np.sin(3 * (th["a"] - th["b"]))
    s2 = np.sin(3 * (th["g"] - th["d"]))
    r = dict(a=-np.sin(3 * th["b"]) / s1, b=np.sin(3 * th["a"]) / s1,
             g=-np.sin(3 * th["d"]) / s2, d=np.sin(3 * th["g"]) / s2)
    c = {}
    for key in "abgd":
        t = th[key]
        if r[key] < 0:
            r[key], t = -r[key], t + np.pi
        c[key] = (r[key], t, r[key] * np.exp(1j * t))
    return c


def coeffs(tb):
    c = family(tb)
    return c["a"][2], c["b"][2], c["g"][2], c["d"][2]


def canonical(tb):
    al, be, ga, de = coeffs(tb)
    k = np.exp(2j * np.pi / 6 * 2) if False else np.exp(2j * (np.pi / 6))
    T = t3(k)
    A0 = np.conj(al * Z + be * T)
    A1 = np.conj(ga * Z + de * T)
    return A0, A1, Z, T


def W(tb, A0, A1, B0, B1):
    al, be, ga, de = coeffs(tb)
    M = np.kron(A0, al * B0 + be * B1) + np.kron(A1, ga * B0 + de * B1)
    return M + M.conj().T


def det_value(s, al, be, ga, de):
    a0, a1, b0, b1 = s
    v = w**a0 * (al * w**b0 + be * w**b1) + w**a1 * (ga * w**b0 + de * w**b1)
    return 2 * v.real


def enumerate_c(tb):
    al, be, ga, de = coeffs(tb)
    best, arg = -np.inf, None
    for s in itertools.product(range(3), repeat=4):
        v = det_value(s, al, be, ga, de)
        if v > best + 1e-12:
            best, arg = v, s
    return best, arg


phi = np.zeros(9, complex)
for i in range(3):
    phi[4 * i] = 1 / np.sqrt(3)

print("family pi/12", {k: (v[0], v[1]) for k, v in family(np.pi / 12).items()})
print("family pi/24", {k: (v[0], v[1]) for k, v in family(np.pi / 24).items()})
print("amplitudes SATWAP", -np.sin(-np.pi / 4), np.sin(np.pi / 4))
for tb in (np.pi / 12, np.pi / 24, 0.1, 0.4):
    print("enum", tb, enumerate_c(tb))
A0, A1, B0, B1 = canonical(np.pi / 12)
Wm = W(np.pi / 12, A0, A1, B0, B1)
print("W eig pi/12", np.linalg.eigvalsh(Wm))
print("trace W", np.trace(Wm))
al, be, ga, de = coeffs(np.pi / 12)
L1 = np.eye(9) - np.kron(A0, al * B0 + be * B1)
e00 = np.zeros(9); e00[0] = 1
print("|L1 00|", np.linalg.norm(L1 @ e00), "|L1^dag 00|", np.linalg.norm(L1.conj().T @ e00))
print("W00", (e00 @ Wm @ e00).real)
print("T3(e^{i pi/3})", np.round(t3(np.exp(1j * np.pi / 3)), 15).tolist())
print("T3(e^{i pi/4}) eig", np.linalg.eigvals(t3(np.exp(1j * np.pi / 4))))
H = np.array([[2, 1 - 1j, 0.5j], [1 + 1j, -1, 0.25], [-0.5j, 0.25, 3]])
print("eig H", np.linalg.eigvalsh(H).tolist())
print("classical pi/48", enumerate_c(np.pi / 48)[0])
print("det value (1,2,0,1) pi/12", det_value((1, 2, 0, 1), *coeffs(np.pi / 12)))
