"""Regenerate the FCIDUMP fixtures under tests/data with PySCF.

Writes one FCIDUMP per benchmark molecule plus ``benchmarks.json`` holding the
RHF/FCI reference energies and the singlet FCI gap E1 - E0 for each.

    python scripts/make_fixtures.py [outdir]
"""

import json
import sys
from pathlib import Path

from pyscf import fci, gto, scf
from pyscf.tools import fcidump

MOLECULES = {
    "h2_sto3g": dict(atom="H 0 0 0; H 0 0 0.7414", basis="sto-3g"),
    "h2_sto6g": dict(atom="H 0 0 0; H 0 0 0.7414", basis="sto-6g"),
    "lih_sto3g": dict(atom="Li 0 0 0; H 0 0 1.5949", basis="sto-3g"),
    "h2o_sto3g": dict(
        atom="O 0 0 0.1173; H 0 0.7572 -0.4692; H 0 -0.7572 -0.4692",
        basis="sto-3g",
    ),
}


def main(outdir):
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    meta = {}
    for name, kw in MOLECULES.items():
        mol = gto.M(unit="Angstrom", verbose=0, **kw)
        mf = scf.RHF(mol).run()
        path = outdir / f"{name}.fcidump"
        fcidump.from_scf(mf, str(path), tol=1e-12)
        cis = fci.FCI(mf)
        cis.nroots = 2
        cis = fci.addons.fix_spin_(cis, ss=0)
        e, _ = cis.kernel()
        meta[name] = {
            "norb": int(mf.mo_coeff.shape[1]),
            "nelec": int(mol.nelectron),
            "e_rhf": float(mf.e_tot),
            "e_fci": float(e[0]),
            "gap": float(e[1] - e[0]),
        }
        print(name, meta[name])
    (outdir / "benchmarks.json").write_text(json.dumps(meta, indent=2) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).parents[1] / "tests" / "data")
