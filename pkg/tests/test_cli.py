import pytest

from nndt.cli import main
from nndt.fileio import ParseError, read_points, read_triangles, write_points
from nndt.generators import generate
from nndt.nng import compute_spread
from nndt.render import render_svg


class TestGenerate:
    def test_uniform_square_in_bounds(self, tmp_path):
        out = tmp_path / "p.txt"
        assert main(["generate", "--n", "4", "--seed", "1",
                     "--output", str(out)]) == 0
        pts = read_points(out)
        assert len(pts) == 4
        assert all(0 <= x <= 1 and 0 <= y <= 1 for x, y in pts)

    def test_byte_identical_for_same_arguments(self, tmp_path):
        a = tmp_path / "a.txt"
        b = tmp_path / "b.txt"
        for out in (a, b):
            main(["generate", "--dist", "clustered", "--n", "100",
                  "--seed", "7", "--output", str(out)])
        assert a.read_bytes() == b.read_bytes()

    def test_distributions_distinct_and_seed_sensitive(self):
        u1 = generate("uniform-square", 50, 1)
        u2 = generate("uniform-square", 50, 2)
        g = generate("grid-jitter", 50, 1)
        assert u1 != u2
        assert u1 != g

    def test_grid_jitter_spread_polynomial(self):
        # alpha frozen at 0.05 after measurement: jittered grids stay near
        # sqrt(n) spread, far below the alpha * n^2 budget
        for n in (64, 256, 1024):
            est = compute_spread(generate("grid-jitter", n, 3))
            assert est.value <= 0.05 * n * n


class TestPointsIO:
    def test_comments_and_blanks_skipped(self, tmp_path):
        f = tmp_path / "p.txt"
        f.write_text("# header\n\n0.5 0.25\n# more\n1.0 2.0\n")
        assert read_points(f) == [(0.5, 0.25), (1.0, 2.0)]

    def test_parse_error_cites_line(self, tmp_path):
        f = tmp_path / "p.txt"
        f.write_text("0.5 0.25\nnot numbers\n")
        with pytest.raises(ParseError, match=":2:"):
            read_points(f)
        f.write_text("0.5\n")
        with pytest.raises(ParseError, match=":1:"):
            read_points(f)

    def test_roundtrip_exact(self, tmp_path):
        pts = generate("uniform-square", 50, 9)
        f = tmp_path / "p.txt"
        write_points(f, pts)
        assert read_points(f) == pts


class TestPipeline:
    def test_triangulate_then_verify(self, tmp_path):
        p = tmp_path / "p.txt"
        t = tmp_path / "t.txt"
        main(["generate", "--n", "1000", "--seed", "2", "--output", str(p)])
        assert main(["triangulate", "--input", str(p), "--output", str(t),
                     "--seed", "4"]) == 0
        assert main(["verify", "--points", str(p), "--triangles", str(t)]) == 0

    def test_verify_rejects_flipped_diagonal(self, tmp_path, capsys):
        p = tmp_path / "p.txt"
        t = tmp_path / "t.txt"
        # strictly convex, not cocircular
        write_points(p, [(0.0, 0.0), (2.0, 0.0), (2.2, 1.7), (0.0, 1.0)])
        main(["triangulate", "--input", str(p), "--output", str(t),
              "--seed", "0"])
        good = read_triangles(t)
        used = {tuple(sorted((a, b))) for tri in good
                for a, b in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0]))}
        # flip to the other diagonal
        diag = next(
            (a, b) for a in range(4) for b in range(a + 1, 4)
            if (a, b) not in used
        )
        others = [q for q in range(4) if q not in diag]
        bad = [(diag[0], diag[1], others[0]), (diag[0], others[1], diag[1])]
        t.write_text("".join(f"{a} {b} {c}\n" for a, b, c in bad))
        assert main(["verify", "--points", str(p), "--triangles", str(t)]) == 1
        assert "FAIL" in capsys.readouterr().err

    def test_exit_codes_on_bad_input(self, tmp_path, capsys):
        f = tmp_path / "bad.txt"
        f.write_text("zap\n")
        t = tmp_path / "t.txt"
        assert main(["triangulate", "--input", str(f), "--output", str(t),
                     "--seed", "0"]) == 2
        assert "error:" in capsys.readouterr().err
        f.write_text("0 0\n1 0\n2 0\n")
        assert main(["triangulate", "--input", str(f), "--output", str(t),
                     "--seed", "0"]) == 2

    def test_determinism_of_outputs(self, tmp_path):
        p = tmp_path / "p.txt"
        main(["generate", "--n", "300", "--seed", "5", "--output", str(p)])
        outs = []
        for tag in ("1", "2"):
            t = tmp_path / f"t{tag}.txt"
            c = tmp_path / f"c{tag}.csv"
            s = tmp_path / f"s{tag}.svg"
            main(["triangulate", "--input", str(p), "--output", str(t),
                  "--seed", "11", "--svg", str(s), "--counters", str(c)])
            outs.append((t.read_bytes(), c.read_bytes(), s.read_bytes()))
        assert outs[0] == outs[1]

    def test_spread_command(self, tmp_path, capsys):
        p = tmp_path / "p.txt"
        write_points(p, [(0.0, 0.0), (1.0, 0.0), (3.0, 0.0), (0.0, 4.0)])
        assert main(["spread", "--input", str(p)]) == 0
        assert "spread" in capsys.readouterr().out

    def test_bench_csv(self, tmp_path):
        out = tmp_path / "bench.csv"
        assert main(["bench", "--sizes", "128,256", "--seeds", "2",
                     "--output", str(out)]) == 0
        lines = out.read_text().strip().splitlines()
        assert len(lines) == 5  # header + 2 sizes x 2 seeds
        header = lines[0].split(",")
        assert "work_per_point" in header
        assert "history_visits" in header


class TestSvg:
    def test_triangle_has_three_edges(self, tmp_path):
        f = tmp_path / "t.svg"
        render_svg([(0, 0), (1, 0), (0, 1)], [(0, 1, 2)], f)
        text = f.read_text()
        assert text.count("<line") == 3
        assert "viewBox" in text

    def test_square_has_five_edges(self, tmp_path):
        f = tmp_path / "s.svg"
        render_svg(
            [(0, 0), (1, 0), (1, 1), (0, 1)],
            [(0, 1, 2), (0, 2, 3)],
            f,
        )
        assert f.read_text().count("<line") == 5

    def test_byte_identical(self, tmp_path):
        pts = generate("uniform-square", 40, 0)
        from nndt.driver import run

        tris = run(pts, seed=0).triangles_input_ids()
        a = tmp_path / "a.svg"
        b = tmp_path / "b.svg"
        render_svg(pts, tris, a)
        render_svg(pts, tris, b)
        assert a.read_bytes() == b.read_bytes()


class TestRoundTrip:
    @pytest.mark.parametrize("dist", ["uniform-square", "clustered", "grid-jitter"])
    @pytest.mark.parametrize("n,seed", [(500, 0), (3000, 1)])
    def test_triangulate_verify_roundtrip(self, tmp_path, dist, n, seed):
        p = tmp_path / "p.txt"
        t = tmp_path / "t.txt"
        assert main(["generate", "--dist", dist, "--n", str(n),
                     "--seed", str(seed), "--output", str(p)]) == 0
        assert main(["triangulate", "--input", str(p), "--output", str(t),
                     "--seed", str(seed)]) == 0
        assert main(["verify", "--points", str(p), "--triangles", str(t)]) == 0
