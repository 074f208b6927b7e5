import json

import numpy as np
import pytest

from hgfrft import cli, graph, io
from hgfrft import transform as T


def run(*argv):
    return cli.main([str(a) for a in argv])


def write_config(path, **cfg):
    path.write_text(json.dumps(cfg))
    return path


@pytest.fixture
def ring_setup(tmp_path, rng):
    cfg = write_config(
        tmp_path / "cfg.json",
        graph={"builtin": "cycle", "n": 4},
        shift="laplacian",
        m=3,
        alpha=0.7,
        beta=0.5,
    )
    x = rng.normal(size=(3, 4)) + 1j * rng.normal(size=(3, 4))
    sig = io.write_complex_csv(tmp_path / "x.csv", x)
    return cfg, sig, x


class TestFormats:
    def test_complex_csv_roundtrip(self, tmp_path, rng):
        x = rng.normal(size=(3, 2)) + 1j * rng.normal(size=(3, 2))
        p = io.write_complex_csv(tmp_path / "s.csv", x, 0.3, -1.0)
        back, meta = io.read_complex_csv(p)
        assert np.array_equal(back, x)
        assert meta == {"m": 3, "n": 2, "alpha": 0.3, "beta": -1.0}
        assert len(p.read_text().splitlines()[0].split(",")) == 4

    def test_ragged(self, tmp_path):
        p = tmp_path / "bad.csv"
        p.write_text("1,0,2,0\n1,0\n")
        with pytest.raises(io.ParseError):
            io.read_complex_csv(p)


class TestTransformCommands:
    def test_zero_orders_identity(self, tmp_path, ring_setup):
        _, sig, x = ring_setup
        cfg = write_config(tmp_path / "zero.json", graph={"builtin": "cycle", "n": 4}, alpha=0, beta=0)
        assert run("transform", "--config", cfg, "--signal", sig, "--out", tmp_path / "o") == 0
        spec, meta = io.read_complex_csv(tmp_path / "o" / "spectrum.csv")
        assert np.abs(spec - x).max() <= 1e-12
        assert (meta["alpha"], meta["beta"]) == (0, 0)

    def test_first_order_is_hgft(self, tmp_path, ring_setup):
        _, sig, x = ring_setup
        cfg = write_config(tmp_path / "one.json", graph={"builtin": "cycle", "n": 4})
        assert run("transform", "--config", cfg, "--signal", sig, "--out", tmp_path / "o") == 0
        spec, _ = io.read_complex_csv(tmp_path / "o" / "spectrum.csv")
        ref = T.dft_operator(3).base @ x @ T.gft_operator(graph.cycle_graph(4)).base.T
        assert np.abs(spec - ref).max() <= 1e-10

    def test_round_trip_with_negated_orders(self, tmp_path, ring_setup):
        cfg, sig, x = ring_setup
        assert run("transform", "--config", cfg, "--signal", sig, "--out", tmp_path / "fwd") == 0
        neg = write_config(tmp_path / "neg.json", graph={"builtin": "cycle", "n": 4}, alpha=-0.7, beta=-0.5)
        assert run("transform", "--config", neg, "--signal", tmp_path / "fwd" / "spectrum.csv", "--out", tmp_path / "back") == 0
        back, _ = io.read_complex_csv(tmp_path / "back" / "spectrum.csv")
        assert np.abs(back - x).max() <= 1e-9

    def test_inverse_uses_sidecar_orders(self, tmp_path, ring_setup):
        cfg, sig, x = ring_setup
        run("transform", "--config", cfg, "--signal", sig, "--out", tmp_path / "fwd")
        assert run("inverse", "--config", cfg, "--spectrum", tmp_path / "fwd" / "spectrum.csv", "--out", tmp_path / "inv") == 0
        back, _ = io.read_complex_csv(tmp_path / "inv" / "signal.csv")
        assert np.abs(back - x).max() <= 1e-9

    def test_partials_compose(self, tmp_path, ring_setup):
        cfg, sig, x = ring_setup
        run("partial-h", "--config", cfg, "--signal", sig, "--out", tmp_path / "h")
        run("partial-g", "--config", cfg, "--signal", tmp_path / "h" / "partial_h.csv", "--out", tmp_path / "hg")
        run("transform", "--config", cfg, "--signal", sig, "--out", tmp_path / "t")
        a, _ = io.read_complex_csv(tmp_path / "hg" / "partial_g.csv")
        b, _ = io.read_complex_csv(tmp_path / "t" / "spectrum.csv")
        assert np.abs(a - b).max() <= 1e-12

    def test_bandpass_and_convolve(self, tmp_path, ring_setup):
        cfg, sig, x = ring_setup
        region = tmp_path / "region.json"
        region.write_text("[[0, 0], [1, 2]]")
        assert run("filter-bandpass", "--config", cfg, "--signal", sig, "--region", region, "--out", tmp_path / "bp") == 0
        y, _ = io.read_complex_csv(tmp_path / "bp" / "bandpass.csv")
        assert y.shape == x.shape
        assert run("convolve", "--config", cfg, "--signal", sig, "--kernel", sig, "--out", tmp_path / "cv") == 0


class TestSamplingCommands:
    def test_sample_then_recover(self, tmp_path, ring_setup):
        cfg, _, _ = ring_setup
        fh, fg = T.dft_operator(3), T.gft_operator(graph.cycle_graph(4))
        from hgfrft.signals import synthesize_bandlimited

        x = synthesize_bandlimited({0: 1, 4: 0.5j, 7: -2}, fh.at(0.7), fg.at(0.5))
        sig = io.write_complex_csv(tmp_path / "bl.csv", x)
        assert run("sample-greedy", "--config", cfg, "--signal", sig, "--samples", 3, "--out", tmp_path / "s") == 0
        plan = io.read_json(tmp_path / "s" / "plan.json")
        assert set(plan) == {"w", "support", "alpha", "beta"}
        assert plan["support"] == [[0, 0], [1, 0], [1, 3]]
        assert run(
            "recover", "--config", cfg, "--plan", tmp_path / "s" / "plan.json",
            "--sampled", tmp_path / "s" / "samples.csv", "--signal", sig, "--out", tmp_path / "r",
        ) == 0
        assert io.read_json(tmp_path / "r" / "recover.json")["error"] < 1e-10

    def test_grid_search_table(self, tmp_path, rng):
        fh, fg = T.dft_operator(2), T.gft_operator(graph.path_graph(3))
        from hgfrft.signals import synthesize_bandlimited

        x = synthesize_bandlimited({0: 1, 4: 2}, fh.at(1), fg.at(1))
        sig = io.write_complex_csv(tmp_path / "x.csv", x)
        cfg = write_config(tmp_path / "c.json", graph={"builtin": "path", "n": 3}, params={"noise_sigma": 0.1}, seed=3)
        args = ["grid-search", "--config", cfg, "--signal", sig, "--samples", 2,
                "--alpha-range=-1,1", "--beta-range=-1,1", "--coarse-step", 0.5, "--fine-step", 0.25]
        assert run(*args, "--out", tmp_path / "g1") == 0
        lines = (tmp_path / "g1" / "grid.csv").read_text().splitlines()
        coarse = [l for l in lines[1:] if l.startswith("coarse")]
        assert len(coarse) == (2 / 0.5 + 1) ** 2
        opt = io.read_json(tmp_path / "g1" / "optimum.json")
        at_one = next(float(l.split(",")[3]) for l in coarse if l.split(",")[1:3] == ["1", "1"])
        assert opt["error"] <= at_one
        assert run(*args, "--out", tmp_path / "g2") == 0
        assert (tmp_path / "g1" / "grid.csv").read_bytes() == (tmp_path / "g2" / "grid.csv").read_bytes()


class TestDemos:
    def test_product_demo(self, tmp_path):
        assert run("product-demo", "--out", tmp_path) == 0
        report = json.loads((tmp_path / "report.json").read_text())
        assert report["plans"]["hgfrft"]["error"] < 1e-10
        assert report["plans"]["hgft"]["error"] > 0.1
        assert len(report["plans"]["hgfrft"]["w"]) == 3

    def test_chirp_demo(self, tmp_path):
        cfg = write_config(tmp_path / "c.json", params={"nodes": 48, "vertex": 16, "alpha_step": 0.05})
        assert run("chirp-demo", "--config", cfg, "--out", tmp_path) == 0
        rep = io.read_json(tmp_path / "chirp_report.json")
        assert (rep["f0"], rep["bandwidth"]) == (130, 310)
        assert rep["best_ratio"] > rep["ratio_at_1"]
        x, _ = io.read_complex_csv(tmp_path / "chirp_field.csv")
        assert x.shape == (200, 48)

    def test_heat_degenerate(self, tmp_path):
        cfg = write_config(
            tmp_path / "h.json", graph={"builtin": "path", "n": 4}, m=5,
            params={"s": 0.0, "t_horizon": 7, "f1": [1, 2, 3, 4], "omega": [0, 0, 0, 0, 0]},
        )
        assert run("heat", "--config", cfg, "--out", tmp_path) == 0
        y, _ = io.read_complex_csv(tmp_path / "heat_input.csv")
        out, _ = io.read_complex_csv(tmp_path / "heat_spectrum.csv")
        assert np.abs(out - y * 7 / np.sqrt(5)).max() <= 1e-12

    def test_heat_matches_iteration(self, tmp_path):
        from hgfrft.signals import heat_iteration

        g = graph.path_graph(5)
        cfg = write_config(tmp_path / "h.json", graph={"builtin": "path", "n": 5}, params={"s": 0.2, "t_horizon": 8, "f1": [0, 1, 0, 0, 2]})
        assert run("heat", "--config", cfg, "--out", tmp_path) == 0
        out, _ = io.read_complex_csv(tmp_path / "heat_spectrum.csv")
        x = heat_iteration(np.array([0, 1, 0, 0, 2.0]), graph.shift_matrix(g, "laplacian"), 0.2, 8)
        ref = T.hgfrft(x, T.dft_operator(8).at(1), T.gft_operator(g).at(1)).coeff
        assert np.abs(out - ref).max() <= 1e-8

    def test_wave_unstable_exit_code(self, tmp_path):
        cfg = write_config(tmp_path / "w.json", graph={"builtin": "path", "n": 4}, params={"s": 5.0})
        assert run("wave", "--config", cfg, "--out", tmp_path) == cli.EXIT_STABILITY

    def test_wave_ok(self, tmp_path):
        cfg = write_config(tmp_path / "w.json", graph={"builtin": "path", "n": 4}, params={"s": 0.5})
        assert run("wave", "--config", cfg, "--out", tmp_path) == 0

    def test_compactness_monotone(self, tmp_path, ring_setup):
        cfg, sig, _ = ring_setup
        assert run("compactness", "--config", cfg, "--signal", sig, "--out", tmp_path) == 0
        rows = (tmp_path / "compactness.csv").read_text().splitlines()
        assert rows[0] == "percentile,hgfrft,partial_h,partial_g"
        vals = np.array([[float(v) for v in r.split(",")] for r in rows[1:]])
        assert np.all(np.diff(vals[:, 1:], axis=0) >= 0)

    def test_gen_graph(self, tmp_path):
        cfg = write_config(tmp_path / "g.json", graph={"builtin": "random_geometric", "n": 48, "radius": 0.25, "seed": 7})
        assert run("gen-graph", "--config", cfg, "--out", tmp_path) == 0
        assert io.read_json(tmp_path / "graph.json")["edges"] == 170
        assert graph.from_edge_list(tmp_path / "graph.csv").num_edges == 170


class TestErrors:
    def test_unknown_field_rejected(self, tmp_path):
        cfg = write_config(tmp_path / "bad.json", graph={"builtin": "path", "n": 3}, colour="red")
        assert run("gen-graph", "--config", cfg, "--out", tmp_path) == cli.EXIT_CONFIG

    def test_missing_signal(self, tmp_path, ring_setup):
        cfg, _, _ = ring_setup
        assert run("transform", "--config", cfg, "--out", tmp_path) == cli.EXIT_CONFIG

    def test_rank_deficient_is_numeric(self, tmp_path, ring_setup):
        cfg, sig, _ = ring_setup
        plan = tmp_path / "plan.json"
        plan.write_text(json.dumps({"w": [0], "support": [[0, 0], [0, 1]], "alpha": 1, "beta": 1}))
        assert run("recover", "--config", cfg, "--plan", plan, "--signal", sig, "--out", tmp_path) == cli.EXIT_NUMERIC


def test_module_entry_point(tmp_path):
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "hgfrft", "product-demo", "--out", str(tmp_path)], capture_output=True)
    assert proc.returncode == 0
    assert (tmp_path / "report.json").exists()
