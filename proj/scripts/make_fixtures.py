#!/usr/bin/env python3
# Copyright 2025 The combifock Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""One-shot generator for the FCIDUMP fixtures under data/fcidump/.

Self-contained restricted Hartree-Fock over cartesian Gaussians
(McMurchie-Davidson integrals), followed by an MO transform of the lowest
`norb` orbitals and a Molpro-style FCIDUMP dump in chemists' notation.

The fixtures are generated once and checked in; the library never imports
this script. Run `python3 scripts/make_fixtures.py --out data/fcidump` to
regenerate, then inspect the printed self-checks (known STO-3G integrals,
RHF reference energies) before committing.
"""

import argparse
import math
import os
import sys

import numpy as np
from scipy.special import gammainc, gamma

ANGSTROM_TO_BOHR = 1.0 / 0.52917721092

# ---------------------------------------------------------------------------
# Basis sets. Format: list of (l, [(exponent, coefficient), ...]) per atom.

H_STO3G = [
    (0, [(3.42525091, 0.15432897), (0.62391373, 0.53532814),
         (0.16885540, 0.44463454)]),
]

H_CCPVTZ = [
    (0, [(33.8700, 0.0060680), (5.0950, 0.0453080), (1.1590, 0.2028220)]),
    (0, [(0.3258, 1.0)]),
    (0, [(0.1027, 1.0)]),
    (1, [(1.4070, 1.0)]),
    (1, [(0.3880, 1.0)]),
    (2, [(1.0570, 1.0)]),
]

# Even-tempered lithium basis: 11s geometric series covering core through
# valence plus 4p for the LiH pi manifold. Used instead of a tabulated set
# so the generator carries no external basis files.
LI_EVEN_TEMPERED = (
    [(0, [(0.0205 * 3.0**k, 1.0)]) for k in range(11)]
    + [(1, [(0.05 * 3.0**k, 1.0)]) for k in range(4)]
)


def cartesian_components(l):
    return [(lx, ly, l - lx - ly) for lx in range(l, -1, -1)
            for ly in range(l - lx, -1, -1)]


def double_factorial(n):
    return 1 if n <= 1 else n * double_factorial(n - 2)


class Primitive:
    __slots__ = ("alpha", "coef")

    def __init__(self, alpha, coef):
        self.alpha = alpha
        self.coef = coef


class BasisFunction:
    """One normalized contracted cartesian Gaussian."""

    __slots__ = ("center", "lmn", "prims")

    def __init__(self, center, lmn, prims):
        self.center = np.asarray(center, dtype=float)
        self.lmn = lmn
        self.prims = prims


def build_basis(atoms, basis_per_element):
    funcs = []
    for (element, center) in atoms:
        for (l, prims) in basis_per_element[element]:
            for lmn in cartesian_components(l):
                plist = []
                for (alpha, coef) in prims:
                    norm = math.sqrt(
                        (2.0 * alpha / math.pi) ** 1.5
                        * (4.0 * alpha) ** sum(lmn)
                        / (double_factorial(2 * lmn[0] - 1)
                           * double_factorial(2 * lmn[1] - 1)
                           * double_factorial(2 * lmn[2] - 1)))
                    plist.append(Primitive(alpha, coef * norm))
                funcs.append(BasisFunction(center, lmn, plist))
    # Contraction normalization via the analytic self-overlap.
    for f in funcs:
        s = primitive_pair_overlap(f, f)
        scale = 1.0 / math.sqrt(s)
        for p in f.prims:
            p.coef *= scale
    return funcs


# ---------------------------------------------------------------------------
# McMurchie-Davidson machinery.

def hermite_e(i, j, t, Qx, a, b, memo):
    """Hermite expansion coefficient E_t^{ij} for a Gaussian product."""
    if t < 0 or t > i + j:
        return 0.0
    key = (i, j, t)
    if key in memo:
        return memo[key]
    p = a + b
    q = a * b / p
    if i == j == t == 0:
        val = math.exp(-q * Qx * Qx)
    elif j == 0:
        val = (hermite_e(i - 1, j, t - 1, Qx, a, b, memo) / (2.0 * p)
               - (q * Qx / a) * hermite_e(i - 1, j, t, Qx, a, b, memo)
               + (t + 1) * hermite_e(i - 1, j, t + 1, Qx, a, b, memo))
    else:
        val = (hermite_e(i, j - 1, t - 1, Qx, a, b, memo) / (2.0 * p)
               + (q * Qx / b) * hermite_e(i, j - 1, t, Qx, a, b, memo)
               + (t + 1) * hermite_e(i, j - 1, t + 1, Qx, a, b, memo))
    memo[key] = val
    return val


def boys(m, T):
    if T < 1e-13:
        return 1.0 / (2 * m + 1) - T / (2 * m + 3)
    a = m + 0.5
    return gamma(a) * gammainc(a, T) / (2.0 * T**a)


def hermite_r(t, u, v, n, p, PC, memo):
    """Auxiliary Hermite Coulomb integral R^n_{tuv}."""
    key = (t, u, v, n)
    if key in memo:
        return memo[key]
    if t == u == v == 0:
        val = (-2.0 * p) ** n * boys(n, p * float(np.dot(PC, PC)))
    elif t > 0:
        val = (t - 1) * hermite_r(t - 2, u, v, n + 1, p, PC, memo) if t > 1 else 0.0
        val += PC[0] * hermite_r(t - 1, u, v, n + 1, p, PC, memo)
    elif u > 0:
        val = (u - 1) * hermite_r(t, u - 2, v, n + 1, p, PC, memo) if u > 1 else 0.0
        val += PC[1] * hermite_r(t, u - 1, v, n + 1, p, PC, memo)
    else:
        val = (v - 1) * hermite_r(t, u, v - 2, n + 1, p, PC, memo) if v > 1 else 0.0
        val += PC[2] * hermite_r(t, u, v - 1, n + 1, p, PC, memo)
    memo[key] = val
    return val


def primitive_overlap(la, lb, A, B, a, b):
    S = 1.0
    for d in range(3):
        S *= hermite_e(la[d], lb[d], 0, A[d] - B[d], a, b, {})
    p = a + b
    return S * (math.pi / p) ** 1.5


def primitive_pair_overlap(fa, fb):
    s = 0.0
    for pa in fa.prims:
        for pb in fb.prims:
            s += pa.coef * pb.coef * primitive_overlap(
                fa.lmn, fb.lmn, fa.center, fb.center, pa.alpha, pb.alpha)
    return s


def primitive_kinetic(la, lb, A, B, a, b):
    lx, ly, lz = lb

    def S(shift_dim, shift):
        lmn = list(lb)
        lmn[shift_dim] += shift
        if lmn[shift_dim] < 0:
            return 0.0
        return primitive_overlap(la, tuple(lmn), A, B, a, b)

    s0 = primitive_overlap(la, lb, A, B, a, b)
    term0 = b * (2 * (lx + ly + lz) + 3) * s0
    term1 = -2.0 * b * b * (S(0, 2) + S(1, 2) + S(2, 2))
    term2 = -0.5 * (lx * (lx - 1) * S(0, -2)
                    + ly * (ly - 1) * S(1, -2)
                    + lz * (lz - 1) * S(2, -2))
    return term0 + term1 + term2


def primitive_nuclear(la, lb, A, B, a, b, nuclei):
    p = a + b
    P = (a * A + b * B) / p
    Ex = [hermite_e(la[0], lb[0], t, A[0] - B[0], a, b, {})
          for t in range(la[0] + lb[0] + 1)]
    Ey = [hermite_e(la[1], lb[1], u, A[1] - B[1], a, b, {})
          for u in range(la[1] + lb[1] + 1)]
    Ez = [hermite_e(la[2], lb[2], v, A[2] - B[2], a, b, {})
          for v in range(la[2] + lb[2] + 1)]
    total = 0.0
    for (Z, C) in nuclei:
        PC = P - C
        memo = {}
        acc = 0.0
        for t in range(len(Ex)):
            for u in range(len(Ey)):
                for v in range(len(Ez)):
                    acc += Ex[t] * Ey[u] * Ez[v] * hermite_r(t, u, v, 0, p, PC, memo)
        total += -Z * acc
    return total * 2.0 * math.pi / p


def one_electron_matrices(funcs, nuclei):
    n = len(funcs)
    S = np.zeros((n, n))
    T = np.zeros((n, n))
    V = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            fi, fj = funcs[i], funcs[j]
            s = t = v = 0.0
            for pi in fi.prims:
                for pj in fj.prims:
                    c = pi.coef * pj.coef
                    s += c * primitive_overlap(fi.lmn, fj.lmn, fi.center,
                                               fj.center, pi.alpha, pj.alpha)
                    t += c * primitive_kinetic(fi.lmn, fj.lmn, fi.center,
                                               fj.center, pi.alpha, pj.alpha)
                    v += c * primitive_nuclear(fi.lmn, fj.lmn, fi.center,
                                               fj.center, pi.alpha, pj.alpha,
                                               nuclei)
            S[i, j] = S[j, i] = s
            T[i, j] = T[j, i] = t
            V[i, j] = V[j, i] = v
    return S, T, V


def pair_hermite_tensor(fa, fb, pa, pb):
    """E_ab[t,u,v] for one primitive pair, plus composite exponent data."""
    a, b = pa.alpha, pb.alpha
    A, B = fa.center, fb.center
    nt = fa.lmn[0] + fb.lmn[0] + 1
    nu = fa.lmn[1] + fb.lmn[1] + 1
    nv = fa.lmn[2] + fb.lmn[2] + 1
    E = np.zeros((nt, nu, nv))
    ex = [hermite_e(fa.lmn[0], fb.lmn[0], t, A[0] - B[0], a, b, {}) for t in range(nt)]
    ey = [hermite_e(fa.lmn[1], fb.lmn[1], u, A[1] - B[1], a, b, {}) for u in range(nu)]
    ez = [hermite_e(fa.lmn[2], fb.lmn[2], v, A[2] - B[2], a, b, {}) for v in range(nv)]
    for t in range(nt):
        if ex[t] == 0.0:
            continue
        for u in range(nu):
            if ey[u] == 0.0:
                continue
            for v in range(nv):
                E[t, u, v] = ex[t] * ey[u] * ez[v]
    p = a + b
    P = (a * A + b * B) / p
    return E, p, P


def electron_repulsion(funcs):
    """Full (ij|kl) tensor in chemists' notation, 8-fold symmetric."""
    n = len(funcs)
    eri = np.zeros((n, n, n, n))

    pair_data = {}
    pair_list = []
    for i in range(n):
        for j in range(i + 1):
            entries = []
            for pi in funcs[i].prims:
                for pj in funcs[j].prims:
                    E, p, P = pair_hermite_tensor(funcs[i], funcs[j], pi, pj)
                    entries.append((pi.coef * pj.coef, E, p, P))
            pair_data[(i, j)] = entries
            pair_list.append((i, j))

    npairs = len(pair_list)
    for pi_idx in range(npairs):
        (i, j) = pair_list[pi_idx]
        bra = pair_data[(i, j)]
        for qi_idx in range(pi_idx + 1):
            (k, l) = pair_list[qi_idx]
            ket = pair_data[(k, l)]
            val = 0.0
            for (cb, Eb, p, P) in bra:
                for (ck, Ek, q, Q) in ket:
                    alpha = p * q / (p + q)
                    PQ = P - Q
                    memo = {}
                    acc = 0.0
                    nt, nu, nv = Eb.shape
                    mt, mu, mv = Ek.shape
                    for t in range(nt):
                        for u in range(nu):
                            for v in range(nv):
                                e1 = Eb[t, u, v]
                                if e1 == 0.0:
                                    continue
                                for tt in range(mt):
                                    for uu in range(mu):
                                        for vv in range(mv):
                                            e2 = Ek[tt, uu, vv]
                                            if e2 == 0.0:
                                                continue
                                            sign = -1.0 if (tt + uu + vv) % 2 else 1.0
                                            acc += e1 * sign * e2 * hermite_r(
                                                t + tt, u + uu, v + vv, 0,
                                                alpha, PQ, memo)
                    val += (cb * ck * acc * 2.0 * math.pi**2.5
                            / (p * q * math.sqrt(p + q)))
            for (a, b) in ((i, j), (j, i)):
                for (c, d) in ((k, l), (l, k)):
                    eri[a, b, c, d] = val
                    eri[c, d, a, b] = val
    return eri


# ---------------------------------------------------------------------------
# Restricted Hartree-Fock.

def rhf(S, Hcore, eri, n_electrons, max_iter=200, tol=1e-11):
    n = S.shape[0]
    sval, svec = np.linalg.eigh(S)
    keep = sval > 1e-9
    X = svec[:, keep] / np.sqrt(sval[keep])
    nocc = n_electrons // 2

    def diagonalize(F):
        Fp = X.T @ F @ X
        eps, Cp = np.linalg.eigh(Fp)
        return eps, X @ Cp

    eps, C = diagonalize(Hcore)
    D = C[:, :nocc] @ C[:, :nocc].T
    energy = 0.0
    diis_f, diis_e = [], []
    for it in range(max_iter):
        J = np.einsum("pqrs,rs->pq", eri, D)
        K = np.einsum("prqs,rs->pq", eri, D)
        F = Hcore + 2.0 * J - K
        err = F @ D @ S - S @ D @ F
        diis_f.append(F)
        diis_e.append(err)
        if len(diis_f) > 8:
            diis_f.pop(0)
            diis_e.pop(0)
        if len(diis_f) > 1:
            m = len(diis_f)
            B = -np.ones((m + 1, m + 1))
            B[m, m] = 0.0
            for a in range(m):
                for b in range(m):
                    B[a, b] = np.sum(diis_e[a] * diis_e[b])
            rhs = np.zeros(m + 1)
            rhs[m] = -1.0
            try:
                w = np.linalg.solve(B, rhs)[:m]
                F = sum(w[a] * diis_f[a] for a in range(m))
            except np.linalg.LinAlgError:
                pass
        eps, C = diagonalize(F)
        D = C[:, :nocc] @ C[:, :nocc].T
        new_energy = np.sum(D * (2.0 * Hcore + 2.0 * J - K))
        if abs(new_energy - energy) < tol and it > 1:
            energy = new_energy
            break
        energy = new_energy
    return energy, eps, C


def mo_transform(eri, C, norb):
    Ca = C[:, :norb]
    tmp = np.einsum("pqrs,pi->iqrs", eri, Ca, optimize=True)
    tmp = np.einsum("iqrs,qj->ijrs", tmp, Ca, optimize=True)
    tmp = np.einsum("ijrs,rk->ijks", tmp, Ca, optimize=True)
    return np.einsum("ijks,sl->ijkl", tmp, Ca, optimize=True)


def write_fcidump(path, norb, nelec, ms2, h1, h2, e_core):
    with open(path, "w") as f:
        f.write(" &FCI NORB=%d,NELEC=%d,MS2=%d,\n" % (norb, nelec, ms2))
        f.write("  ORBSYM=" + "1," * norb + "\n")
        f.write("  ISYM=1,\n")
        f.write(" &END\n")

        def line(v, i, j, k, l):
            f.write("%23.16E %4d %4d %4d %4d\n" % (v, i, j, k, l))

        for i in range(norb):
            for j in range(i + 1):
                for k in range(i + 1):
                    lmax = j if k == i else k
                    for l in range(lmax + 1):
                        v = h2[i, j, k, l]
                        if abs(v) > 1e-16:
                            line(v, i + 1, j + 1, k + 1, l + 1)
        for i in range(norb):
            for j in range(i + 1):
                v = h1[i, j]
                if abs(v) > 1e-16:
                    line(v, i + 1, j + 1, 0, 0)
        line(e_core, 0, 0, 0, 0)


def run_molecule(atoms, basis_map, n_electrons):
    nuclei = [(charge_of(el), np.asarray(pos)) for (el, pos) in atoms]
    funcs = build_basis(atoms, basis_map)
    S, T, V = one_electron_matrices(funcs, nuclei)
    eri = electron_repulsion(funcs)
    Hcore = T + V
    e_elec, eps, C = rhf(S, Hcore, eri, n_electrons)
    e_nuc = 0.0
    for a in range(len(nuclei)):
        for b in range(a):
            Za, Ra = nuclei[a]
            Zb, Rb = nuclei[b]
            e_nuc += Za * Zb / np.linalg.norm(Ra - Rb)
    return funcs, Hcore, eri, eps, C, e_elec, e_nuc


def charge_of(element):
    return {"H": 1.0, "Li": 3.0}[element]


def emit_active_space(outdir, name, norb, nelec, ms2, Hcore, eri, C, e_nuc):
    h1 = C[:, :norb].T @ Hcore @ C[:, :norb]
    h2 = mo_transform(eri, C, norb)
    path = os.path.join(outdir, name)
    write_fcidump(path, norb, nelec, ms2, h1, h2, e_nuc)
    return path


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="data/fcidump")
    ap.add_argument("--h2-distances", default="0.35,0.55,0.7,1.4,1.8,2.8,4.4,6.0")
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)

    # Self-check: minimal-basis H2 against the standard published integrals.
    rb = 0.7414 * ANGSTROM_TO_BOHR
    atoms = [("H", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, rb))]
    funcs, Hcore, eri, eps, C, e_elec, e_nuc = run_molecule(
        atoms, {"H": H_STO3G}, 2)
    h1 = C.T @ Hcore @ C
    h2 = mo_transform(eri, C, 2)
    print("[check] sto-3g h11 = %.4f (expect -1.2528)" % h1[0, 0])
    print("[check] sto-3g h22 = %.4f (expect -0.4756)" % h1[1, 1])
    print("[check] sto-3g (11|11) = %.4f (expect 0.6746)" % h2[0, 0, 0, 0])
    print("[check] sto-3g (11|22) = %.4f (expect 0.6636)" % h2[0, 0, 1, 1])
    print("[check] sto-3g (12|12) = %.4f (expect 0.1813)" % h2[0, 1, 0, 1])
    print("[check] sto-3g e_core = %.4f (expect 0.7137)" % e_nuc)
    print("[check] sto-3g RHF total = %.5f (expect about -1.11671)"
          % (e_elec + e_nuc))
    # 2x2 singlet FCI block: reference vs doubly excited determinant.
    e00 = 2 * h1[0, 0] + h2[0, 0, 0, 0]
    e11 = 2 * h1[1, 1] + h2[1, 1, 1, 1]
    k01 = h2[0, 1, 0, 1]
    fci = np.linalg.eigvalsh(np.array([[e00, k01], [k01, e11]]))[0] + e_nuc
    print("[check] sto-3g FCI ground = %.5f (expect about -1.13727)" % fci)
    emit_active_space(args.out, "h2sto3g_4so_0.7414A.fcidump",
                      2, 2, 0, Hcore, eri, C, e_nuc)
    print("wrote h2sto3g_4so_0.7414A.fcidump")

    # Atomic hydrogen sanity check for the p/d integral paths.
    funcs, Hcore, eri, eps, C, e_elec, e_nuc = run_molecule(
        [("H", (0.0, 0.0, 0.0))], {"H": H_CCPVTZ}, 1)
    # Restricted energy of one electron in the lowest orbital.
    print("[check] H atom lowest orbital energy = %.5f (expect about -0.49981)"
          % eps[0])

    sizes = [2, 4, 5, 8, 11, 15]  # active spatial orbitals per H2 fixture
    for dist_str in args.h2_distances.split(","):
        dist = float(dist_str)
        rb = dist * ANGSTROM_TO_BOHR
        atoms = [("H", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, rb))]
        funcs, Hcore, eri, eps, C, e_elec, e_nuc = run_molecule(
            atoms, {"H": H_CCPVTZ}, 2)
        print("h2 %sA: nao=%d RHF total = %.6f" % (
            dist_str, len(funcs), e_elec + e_nuc))
        for m in sizes:
            name = "h2_%dso_%sA.fcidump" % (2 * m, dist_str)
            emit_active_space(args.out, name, m, 2, 0, Hcore, eri, C, e_nuc)
        sys.stdout.flush()

    lih_dist = "1.595"
    rb = float(lih_dist) * ANGSTROM_TO_BOHR
    atoms = [("Li", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, rb))]
    basis_map = {"Li": LI_EVEN_TEMPERED, "H": H_CCPVTZ}
    funcs, Hcore, eri, eps, C, e_elec, e_nuc = run_molecule(atoms, basis_map, 4)
    print("lih %sA: nao=%d RHF total = %.6f (expect about -7.98)" % (
        lih_dist, len(funcs), e_elec + e_nuc))
    for m in (3, 4, 5):
        name = "lih_%dso_%sA.fcidump" % (2 * m, lih_dist)
        emit_active_space(args.out, name, m, 4, 0, Hcore, eri, C, e_nuc)
    print("done")


if __name__ == "__main__":
    main()
