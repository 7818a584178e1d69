"""The JSON interchange formats and the command-line front end: this
script writes a tiny workspace of input files and drives every CLI
subcommand over it.

Run:  python3 demos/06_file_formats_and_cli.py
"""

import json
import os
import subprocess
import sys
import tempfile

from realcech import io, standard
from realcech.cochains import RealComplex
from realcech.coefficients import make_standard

workdir = tempfile.mkdtemp(prefix="realcech_demo_")
print("workspace:", workdir)


def write(name, obj):
    path = os.path.join(workdir, name)
    with open(path, "w") as fh:
        fh.write(io.dumps(obj))
    return path


def cli(*args):
    r = subprocess.run([sys.executable, "-m", "realcech.cli", *args],
                       capture_output=True, text=True)
    print(f"$ realcech {' '.join(args)}")
    print("  ->", r.stdout.strip().replace("\n", " ")[:200])
    return r


# a groupoid file (composition as [g, h, g*h] triples; units are derived)
z2 = standard.cyclic_group(2)
gpath = write("z2.json", io.groupoid_to_json(z2))
print("\ngroupoid file:", json.dumps(io.groupoid_to_json(z2)))

cli("validate", gpath)
cli("nerve", gpath, "--max-degree", "3")
cli("cohomology", gpath, "--coeff", "mu(4)_conj", "--n", "1")
cli("invariant-sections", gpath, "--coeff", "mu(4)_conj")

# twist file: base + coefficients + normalized 2-cocycle (+ grading)
mu2 = make_standard("mu(2)_conj")
cx = RealComplex(z2, mu2)
om = cx.from_values(2, lambda t: (1,) if t == (1, 1) else (0,))
tpath = write("twist.json", {
    "base": io.groupoid_to_json(z2),
    "S": {"preset": "mu(2)_conj"},
    "omega": om.serialize(),
    "delta": None,
})
cli("ext", "classify", gpath, "--m", "4")
cli("ext", "build", tpath)
cli("ext", "extract", tpath)
cli("ext", "dd", tpath)

# cup product of two grading cocycles
d1 = write("delta.json", {"degree": 1, "values": [[0, [0]], [1, [1]]]})
cli("cup", gpath, "--coeff", "mu(4)_conj", "--delta", d1, "--delta-prime", d1)

# bundles
cli("bundle", "classify", gpath, "--coeff", "mu(4)_conj")

# Morita checks against a cover and against a surjection
p2 = standard.pair_groupoid(2, [1, 0])
ppath = write("pair2.json", io.groupoid_to_json(p2))
cpath = write("cover.json", {"blocks": [[0], [1], [0, 1]]})
cli("morita-check", ppath, "--coeff", "mu(4)_conj", "--cover", cpath)

x2 = standard.discrete_space(2)
xpath = write("x2.json", io.groupoid_to_json(x2))
spath = write("surj.json", {"pi": [0, 0, 1], "rho_total": [0, 1, 2]})
cli("morita-check", xpath, "--coeff", "mu(4)_conj", "--cech", spath)

# vanishing with a representation file (rationals as "a/b" strings or ints)
z3 = standard.cyclic_group(3)
g3 = write("z3.json", io.groupoid_to_json(z3))
rpath = write("rep.json", {"p": 1, "q": 1,
                           "action": [[[1, 0], [0, 1]]] * 3,
                           "nu": [[[1, 0], [0, -1]]]})
cli("vanish", g3, "--rep", rpath, "--n-max", "2")

# long exact sequence input
qpath = write("seq.json", {"left": "mu(2)_trivial", "middle": "mu(4)_trivial",
                           "right": "mu(2)_trivial", "i": [[2]], "p": [[1]]})
cli("les", gpath, "--sequence", qpath)
