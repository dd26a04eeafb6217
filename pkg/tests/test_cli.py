import csv
import io
import math
import subprocess
import sys
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from seppack import bounds as B
from seppack import formulas as F
from seppack.analysis import read_packing
from seppack.cli import EXIT_INPUT, EXIT_OK, EXIT_VIOLATED, OUTDIR_ENV, InputError, main, parse_grid
from seppack.geometry import Geometry


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def outdir(tmp_path, monkeypatch):
    monkeypatch.setenv(OUTDIR_ENV, str(tmp_path))
    return tmp_path


class TestGrid:
    def test_forms(self):
        assert parse_grid("0.5").tolist() == [0.5]
        assert parse_grid("0:1:101")[57] == np.linspace(0, 1, 101)[57]
        for bad in ("a", "0:1", "0:1:0", "0:1:x"):
            with pytest.raises(InputError):
                parse_grid(bad)


class TestBounds:
    def test_euclidean_text(self):
        code, out, _ = run("bounds", "--geometry", "euclidean", "--lambda", "0.93", "--rho", "1")
        assert code == EXIT_OK
        assert f"density: {B.density_bound_euclidean(0.93).value:.17g}" in out
        assert f"tightness: {B.tightness_bound_euclidean(0.93).value:.17g}" in out
        assert out.count("regime: family\n") == 2

    def test_sphere_octahedral_regime(self):
        code, out, _ = run("bounds", "--geometry", "sphere", "--lambda", "0", "--rho", "0.7854")
        assert code == EXIT_OK and "regular" in out.lower()

    def test_hyperbolic_csv_bit_identical(self):
        code, out, _ = run("bounds", "--geometry", "hyperbolic", "--lambda", "0", "--rho", "1", "--format", "csv")
        assert code == EXIT_OK
        rows = list(csv.DictReader(io.StringIO(out)))
        assert float(rows[0]["value"]) == B.density_bound(Geometry.HYPERBOLIC, 0.0, 1.0).value
        assert float(rows[1]["value"]) == B.tightness_bound(Geometry.HYPERBOLIC, 0.0, 1.0).value

    def test_domain_error_names_precondition(self):
        code, _, err = run("bounds", "--geometry", "sphere", "--lambda", "1.2", "--rho", "0.5")
        assert code == EXIT_INPUT and "lambda" in err

    def test_missing_flag(self):
        code, _, _ = run("bounds", "--geometry", "euclidean", "--lambda", "0.5")
        assert code == EXIT_INPUT


class TestSweep:
    def test_euclidean_density_csv(self, outdir):
        code, _, _ = run("sweep", "--geometry", "euclidean", "--quantity", "density", "--lambda", "0:1:101",
                         "--out", "d.csv")
        assert code == EXIT_OK
        text = (outdir / "d.csv").read_text()
        rows = list(csv.DictReader(io.StringIO(text)))
        assert len(rows) == 101
        lams = np.linspace(0, 1, 101)
        for row, lam in zip(rows, lams):
            assert float(row["value"]) == B.density_bound_euclidean(float(lam)).value
        regimes = [r["regime"] for r in rows]
        kink = next(i for i, r in enumerate(regimes) if r != regimes[0])
        assert lams[kink - 1] <= math.sqrt(3) / 2 < lams[kink]
        code, _, _ = run("sweep", "--geometry", "euclidean", "--quantity", "density", "--lambda", "0:1:101",
                         "--out", "d2.csv")
        assert (outdir / "d2.csv").read_bytes() == (outdir / "d.csv").read_bytes()

    def test_domain_points_marked(self):
        code, out, _ = run("sweep", "--geometry", "sphere", "--quantity", "density", "--lambda", "0:1.5:4",
                           "--rho", "0.5")
        assert code == EXIT_OK
        assert out.strip().splitlines()[-1].endswith("domain")

    def test_hyperbolic_region_ordering(self):
        code, out, _ = run("sweep", "--geometry", "hyperbolic", "--quantity", "regions", "--lambda", "0.05:3:60")
        assert code == EXIT_OK
        for row in csv.DictReader(io.StringIO(out)):
            chain = [float(row[k]) for k in ("lambda", "x_at_y_min", "y_s", "y_min", "arcsinh_sqrt2_sinh")]
            assert all(a < b for a, b in zip(chain, chain[1:]))

    def test_sphere_regions_meet(self):
        meet = math.asin(0.6)
        code, out, _ = run("sweep", "--geometry", "sphere", "--quantity", "regions", "--lambda", f"{meet}")
        row = next(csv.DictReader(io.StringIO(out)))
        assert float(row["y_s"]) == pytest.approx(float(row["y_b"]), abs=1e-6)

    @pytest.mark.parametrize("quantity", ["density", "regions"])
    def test_svg_parses(self, outdir, quantity):
        code, _, _ = run("sweep", "--geometry", "sphere", "--quantity", quantity, "--lambda", "0:0.7:30",
                         "--rho", "0.5", "--out", "f.svg")
        assert code == EXIT_OK
        root = ET.parse(outdir / "f.svg").getroot()
        assert root.tag.endswith("svg") and root.get("version") == "1.1"
        assert root.findall("{http://www.w3.org/2000/svg}path")


class TestFileVerbs:
    def test_generate_verify_grid(self, outdir):
        assert run("generate", "square-grid", "--n", "3", "--lambda", "1", "--out", "grid.txt")[0] == EXIT_OK
        path = str(outdir / "grid.txt")
        code, out, _ = run("verify", path, "--oracle")
        assert code == EXIT_OK and out.startswith("PASS") and "agrees" in out
        assert run("verify", path, "--lambda", "1.01")[0] == EXIT_INPUT

    def test_verify_reports_non_separable_pair(self, outdir):
        run("generate", "regular-triangle", "--geometry", "euclidean", "--rho", "1", "--lambda", "0.9",
            "--out", "tri.txt")
        code, out, _ = run("verify", str(outdir / "tri.txt"))
        assert code == EXIT_VIOLATED and "pair" in out

    def test_verify_overlap_and_bad_file(self, tmp_path):
        p = tmp_path / "bad.txt"
        p.write_text("geometry euclidean\nrho 1\nlambda 0\ncount 2\n0 0 1\n1 0 1\n")
        code, _, err = run("verify", str(p))
        assert code == EXIT_INPUT and "record 1" in err
        assert run("verify", str(tmp_path / "missing.txt"))[0] == EXIT_INPUT

    def test_contact_flower(self, outdir):
        run("generate", "hex-patch", "--n", "7", "--out", "hex7.txt")
        code, out, _ = run("contact", str(outdir / "hex7.txt"))
        assert code == EXIT_OK
        assert "contacts 12" in out and "maximum contacts for lambda 0: 12" in out

    def test_contact_grid_edge_bound(self, outdir):
        run("generate", "square-grid", "--n", "3", "--out", "g.txt")
        code, out, _ = run("contact", str(outdir / "g.txt"))
        assert code == EXIT_OK and "triangle-free edge bound 12" in out and "outer-face incidences 8" in out

    def test_decompose_records_and_svg(self, outdir):
        run("generate", "platonic", "--n", "6", "--out", "oct.txt")
        code, out, _ = run("decompose", str(outdir / "oct.txt"))
        assert code == EXIT_OK
        lines = out.strip().splitlines()
        assert lines[0] == "# stage refined" and len(lines) == 9
        assert run("decompose", str(outdir / "oct.txt"), "--out", "oct.svg")[0] == EXIT_OK
        root = ET.parse(outdir / "oct.svg").getroot()
        assert root.find("{http://www.w3.org/2000/svg}title").text.startswith("sphere")

    def test_decompose_not_saturated(self, tmp_path):
        p = tmp_path / "sparse.txt"
        pts = "\n".join(f"{x} {y} 1" for x in range(0, 40, 8) for y in range(0, 40, 8))
        p.write_text(f"geometry euclidean\nrho 1\nlambda 0\ncount 25\n{pts}\n")
        code, out, _ = run("decompose", str(p))
        assert code == EXIT_VIOLATED and out.startswith("FAIL")

    def test_generated_file_matches_library(self, outdir):
        from seppack.generators import euclidean_extremal_density_lattice

        run("generate", "density-lattice", "--lambda", "0.93", "--window", "3", "--out", "lat.txt")
        loaded = read_packing(outdir / "lat.txt")
        assert np.array_equal(loaded.centers, euclidean_extremal_density_lattice(0.93, 3).centers)

    def test_random_generation_is_seeded(self, outdir):
        for name in ("a.txt", "b.txt"):
            run("generate", "random", "--geometry", "hyperbolic", "--rho", "0.4", "--extent", "1", "--seed", "3",
                "--out", name)
        assert (outdir / "a.txt").read_bytes() == (outdir / "b.txt").read_bytes()

    def test_packing_svg(self, outdir):
        assert run("generate", "platonic", "--n", "12", "--format", "svg", "--out", "ico.svg")[0] == EXIT_OK
        ET.parse(outdir / "ico.svg")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "seppack", "bounds", "--geometry", "euclidean", "--lambda", "1",
                           "--rho", "1"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert f"{math.pi / 4:.17g}" in proc.stdout
