#!/usr/bin/env python3
# Copyright 2026 The lossy-qsci Authors
# SPDX-License-Identifier: Apache-2.0
"""Regenerate the FCIDUMP fixtures under fixtures/.

Requires pyscf. Each fixture is written as <name>.fcidump plus a <name>.meta
sidecar (key = value lines) carrying orbital energies and reference values
computed by pyscf, which the C++ test suite uses as an independent check.
Energies are in Hartree, bond lengths in Angstrom.
"""
import argparse
import os

import numpy as np
from pyscf import ao2mo, fci, gto, mcscf, scf


def write_fcidump(path, h1, eri, ncas, nelec, ecore):
    eri = ao2mo.restore(8, eri, ncas)
    with open(path, "w") as f:
        f.write(f" &FCI NORB={ncas:4d},NELEC={nelec:3d},MS2=0,\n")
        f.write("  ORBSYM=" + "1," * ncas + "\n  ISYM=1,\n &END\n")
        ij = 0
        for i in range(ncas):
            for j in range(i + 1):
                kl = 0
                for k in range(ncas):
                    for l in range(k + 1):
                        if ij >= kl:
                            v = eri[ij * (ij + 1) // 2 + kl]
                            if abs(v) > 1e-14:
                                f.write(f"{v: .17e} {i+1:4d} {j+1:4d} {k+1:4d} {l+1:4d}\n")
                        kl += 1
                ij += 1
        for i in range(ncas):
            for j in range(i + 1):
                if abs(h1[i, j]) > 1e-14:
                    f.write(f"{h1[i, j]: .17e} {i+1:4d} {j+1:4d}    0    0\n")
        f.write(f"{ecore: .17e}    0    0    0    0\n")


def write_meta(path, items):
    with open(path, "w") as f:
        for k, v in items:
            if isinstance(v, (list, tuple, np.ndarray)):
                v = " ".join(f"{x:.17e}" for x in v)
            elif isinstance(v, float):
                v = f"{v:.17e}"
            f.write(f"{k} = {v}\n")


def build(outdir, name, atom, basis, ncas, nelecas, bond, description, dm0=None):
    mol = gto.M(atom=atom, basis=basis, unit="Angstrom", verbose=0)
    mf = scf.RHF(mol)
    mf.conv_tol = 1e-12
    mf.max_cycle = 400
    mf.kernel(dm0=dm0)
    if not mf.converged:
        mf = scf.newton(mf)
        mf.kernel(mf.make_rdm1())
    nmo = mf.mo_coeff.shape[1]
    if ncas is None:
        ncas = nmo
        nelecas = mol.nelectron
    cas = mcscf.CASCI(mf, ncas, nelecas)
    h1, ecore = cas.get_h1eff()
    eri = cas.get_h2eff()
    ncore = cas.ncore
    occ_alpha = nelecas // 2
    e_hf_active = ecore + 2 * np.trace(h1[:occ_alpha, :occ_alpha])
    eri4 = ao2mo.restore(1, eri, ncas)
    for i in range(occ_alpha):
        for j in range(occ_alpha):
            e_hf_active += 2 * eri4[i, i, j, j] - eri4[i, j, j, i]
    e_fci, _ = fci.direct_spin1.kernel(h1, eri, ncas, (nelecas // 2, nelecas - nelecas // 2),
                                       ecore=ecore, conv_tol=1e-13, nroots=1)
    write_fcidump(os.path.join(outdir, name + ".fcidump"), h1, eri, ncas, nelecas, ecore)
    write_meta(os.path.join(outdir, name + ".meta"), [
        ("description", description),
        ("basis", basis),
        ("bond_length_angstrom", float(bond)),
        ("n_spatial", ncas),
        ("n_electrons", nelecas),
        ("frozen_core_orbitals", ncore),
        ("orbital_energies", mf.mo_energy[ncore:ncore + ncas]),
        ("hf_energy", float(e_hf_active)),
        ("fci_energy_ms0", float(e_fci)),
    ])
    return mf.make_rdm1()


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=os.path.join(os.path.dirname(__file__), "..", "fixtures"))
    args = ap.parse_args()
    out = args.out
    os.makedirs(out, exist_ok=True)

    for r in (0.5, 0.735, 1.0, 1.5, 2.0):
        build(out, f"h2_sto3g_{r:.3f}", f"H 0 0 0; H 0 0 {r}", "sto-3g", None, None, r,
              "H2 full space, RHF orbitals")
    build(out, "h2_631g_4.000", "H 0 0 0; H 0 0 4.0", "6-31g", None, None, 4.0,
          "H2 full space, RHF orbitals")
    build(out, "lih_sto3g_2.500_10_2", "Li 0 0 0; H 0 0 2.5", "sto-3g", 5, 2, 2.5,
          "LiH (10,2): Li 1s frozen, five active spatial orbitals")
    build(out, "lih_sto3g_2.500_6_2", "Li 0 0 0; H 0 0 2.5", "sto-3g", 3, 2, 2.5,
          "LiH (6,2): Li 1s frozen, three active spatial orbitals")
    c2h4 = ("C 0 0 0.6695; C 0 0 -0.6695; H 0 0.9289 1.2321; H 0 -0.9289 1.2321;"
            " H 0 0.9289 -1.2321; H 0 -0.9289 -1.2321")
    build(out, "c2h4_sto3g_16_6", c2h4, "sto-3g", 8, 6, 1.339,
          "C2H4 (16,6): three highest occupied and five lowest virtual RHF orbitals")
    dm = {}
    for r in (0.9, 1.2, 1.5, 1.8, 2.1, 2.4, 2.7, 3.0):
        for ncas in (8, 10):
            dm[ncas] = build(out, f"c2_631g_{r:.3f}_{2 * ncas}_4", f"C 0 0 0; C 0 0 {r}", "6-31g",
                             ncas, 4, r,
                             f"C2 ({2 * ncas},4): four lowest RHF orbitals frozen, next {ncas} active",
                             dm0=dm.get(ncas))


if __name__ == "__main__":
    main()
