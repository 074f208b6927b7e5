"""Command-line front end.

Every subcommand reads an optional JSON config (``--config``), writes its
results under ``--out`` and exits with 0 on success, 2 on configuration
errors, 3 on numeric failures and 4 on stability violations.
"""

import argparse
import json
import sys
from pathlib import Path

import jsonschema
import numpy as np

from . import filtering, graph, io, sampling, signals, transform
from .errors import GraphError, HGFRFTError, NumericError, ParseError, UnstableSpeed

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_STABILITY = 0, 2, 3, 4

_GRAPH_SCHEMA = {
    "type": "object",
    "properties": {
        "builtin": {"enum": ["path", "cycle", "directed_cycle", "random_geometric", "product"]},
        "n": {"type": "integer", "minimum": 2},
        "radius": {"type": "number", "exclusiveMinimum": 0},
        "seed": {"type": "integer"},
        "factors": {"type": "array", "minItems": 2, "maxItems": 2, "items": {"$ref": "#/$defs/graph"}},
        "edge_list": {"type": "string"},
    },
    "additionalProperties": False,
}

CONFIG_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$defs": {"graph": _GRAPH_SCHEMA},
    "type": "object",
    "properties": {
        "graph": {"$ref": "#/$defs/graph"},
        "shift": {"enum": ["adjacency", "laplacian", "cyclic"]},
        "m": {"type": "integer", "minimum": 2},
        "hilbert": {
            "type": "object",
            "properties": {
                "kind": {"enum": ["dft", "graph"]},
                "graph": {"$ref": "#/$defs/graph"},
                "shift": {"enum": ["adjacency", "laplacian", "cyclic"]},
            },
            "required": ["kind"],
            "additionalProperties": False,
        },
        "alpha": {"type": "number"},
        "beta": {"type": "number"},
        "experiment": {"type": "string"},
        "params": {"type": "object"},
        "out": {"type": "string"},
        "seed": {"type": "integer"},
    },
    "additionalProperties": False,
}


class ConfigError(HGFRFTError):
    pass


def load_config(path):
    cfg = {} if path is None else io.read_json(path)
    try:
        jsonschema.validate(cfg, CONFIG_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise ConfigError(f"invalid config: {exc.message}") from None
    return cfg


def build_graph(spec):
    if spec is None:
        raise ConfigError("config needs a 'graph' entry")
    if "edge_list" in spec:
        return graph.from_edge_list(spec["edge_list"])
    kind = spec.get("builtin")
    if kind == "product":
        if "factors" not in spec:
            raise ConfigError("product graph needs 'factors'")
        return graph.cartesian_product(*(build_graph(f) for f in spec["factors"]))
    if "n" not in spec:
        raise ConfigError(f"builtin graph {kind!r} needs 'n'")
    n = spec["n"]
    if kind == "path":
        return graph.path_graph(n)
    if kind == "cycle":
        return graph.cycle_graph(n)
    if kind == "directed_cycle":
        return graph.cycle_graph(n, directed=True)
    if kind == "random_geometric":
        return graph.random_geometric_graph(n, spec.get("radius", 0.25), spec.get("seed", 0))
    raise ConfigError("graph needs 'builtin' or 'edge_list'")


def _default_shift(g):
    return "cyclic" if g.directed else "laplacian"


class Context:
    """Resolved config plus lazily built operator families."""

    def __init__(self, cfg, args):
        self.cfg = cfg
        self.args = args
        self.params = cfg.get("params", {})
        self.seed = args.seed if args.seed is not None else cfg.get("seed", 0)
        self.out = Path(args.out or cfg.get("out") or ".")
        self.out.mkdir(parents=True, exist_ok=True)
        self.alpha = float(cfg.get("alpha", 1.0))
        self.beta = float(cfg.get("beta", 1.0))
        self._graph = None

    @property
    def graph(self):
        if self._graph is None:
            self._graph = build_graph(self.cfg.get("graph"))
        return self._graph

    def graph_family(self):
        g = self.graph
        return transform.gft_operator(g, self.cfg.get("shift", _default_shift(g)))

    def hilbert_family(self, m=None):
        spec = self.cfg.get("hilbert", {"kind": "dft"})
        if spec["kind"] == "graph":
            hg = build_graph(spec.get("graph"))
            fam = transform.gft_operator(hg, spec.get("shift", _default_shift(hg)))
            if m is not None and fam.size != m:
                raise ConfigError(f"Hilbert graph has {fam.size} vertices, signal has {m} rows")
            return fam
        m = m if m is not None else self.cfg.get("m")
        if m is None:
            raise ConfigError("config needs 'm' (Hilbert grid size)")
        if "m" in self.cfg and self.cfg["m"] != m:
            raise ConfigError(f"config m={self.cfg['m']} but signal has {m} rows")
        return transform.dft_operator(m)

    def families_for(self, x):
        fam_g = self.graph_family()
        if x.shape[1] != fam_g.size:
            raise ConfigError(f"graph has {fam_g.size} vertices, signal has {x.shape[1]} columns")
        return self.hilbert_family(x.shape[0]), fam_g

    def read_signal(self, flag="signal"):
        path = getattr(self.args, flag, None)
        if path is None:
            raise ConfigError(f"--{flag} is required")
        x, _ = io.read_complex_csv(path)
        return x

    def path(self, name):
        return self.out / name


def _range(text):
    lo, hi = (float(v) for v in text.split(","))
    if hi < lo:
        raise argparse.ArgumentTypeError("range must be lo,hi with lo <= hi")
    return lo, hi


# --- subcommands ---------------------------------------------------------


def cmd_transform(ctx):
    x = ctx.read_signal()
    fh, fg = ctx.families_for(x)
    spec = transform.hgfrft(x, fh.at(ctx.alpha), fg.at(ctx.beta))
    io.write_complex_csv(ctx.path("spectrum.csv"), spec.coeff, spec.alpha, spec.beta)


def cmd_inverse(ctx):
    c, meta = io.read_complex_csv(ctx.args.spectrum)
    alpha = meta.get("alpha") if meta.get("alpha") is not None else ctx.alpha
    beta = meta.get("beta") if meta.get("beta") is not None else ctx.beta
    fh, fg = ctx.families_for(c)
    x = transform.inverse_hgfrft(transform.JointSpectrum(c, alpha, beta), fh.at(-alpha), fg.at(-beta))
    io.write_complex_csv(ctx.path("signal.csv"), x)


def cmd_partial_h(ctx):
    x = ctx.read_signal()
    fh, _ = ctx.families_for(x)
    io.write_complex_csv(ctx.path("partial_h.csv"), transform.partial_h(x, fh.at(ctx.alpha)), ctx.alpha, None)


def cmd_partial_g(ctx):
    x = ctx.read_signal()
    _, fg = ctx.families_for(x)
    io.write_complex_csv(ctx.path("partial_g.csv"), transform.partial_g(x, fg.at(ctx.beta)), None, ctx.beta)


def _region(ctx, shape):
    if ctx.args.region:
        return filtering.FrequencyRegion.from_json(Path(ctx.args.region).read_text(), shape)
    if "region" in ctx.params:
        return filtering.FrequencyRegion([tuple(p) for p in ctx.params["region"]], shape)
    if "support" in ctx.params:
        return filtering.FrequencyRegion.from_flat(ctx.params["support"], shape)
    return None


def cmd_filter_bandpass(ctx):
    x = ctx.read_signal()
    fh, fg = ctx.families_for(x)
    region = _region(ctx, x.shape)
    if region is None:
        raise ConfigError("bandpass needs --region or params.region")
    y = filtering.bandpass(x, region, fh.at(ctx.alpha), fg.at(ctx.beta))
    io.write_complex_csv(ctx.path("bandpass.csv"), y)


def cmd_convolve(ctx):
    x = ctx.read_signal()
    g = ctx.read_signal("kernel")
    fh, fg = ctx.families_for(x)
    io.write_complex_csv(ctx.path("convolved.csv"), filtering.convolve(g, x, fh.at(ctx.alpha), fg.at(ctx.beta)))


def _num_samples(ctx, default=None):
    k = ctx.args.samples if ctx.args.samples is not None else ctx.params.get("samples", default)
    if k is None:
        raise ConfigError("--samples is required")
    return int(k)


def cmd_sample_greedy(ctx):
    x = ctx.read_signal() if ctx.args.signal else None
    if x is not None:
        fh, fg = ctx.families_for(x)
    else:
        fg = ctx.graph_family()
        fh = ctx.hilbert_family()
    op_h, op_g = fh.at(ctx.alpha), fg.at(ctx.beta)
    shape = (fh.size, fg.size)
    region = _region(ctx, shape)
    if region is None:
        if x is None:
            raise ConfigError("sample-greedy needs a support (--region/params) or --signal")
        k = _num_samples(ctx)
        region = sampling.top_support(transform.hgfrft(x, op_h, op_g).coeff, k)
    plan = sampling.make_plan(op_h, op_g, region, _num_samples(ctx, len(region)))
    io.write_json(ctx.path("plan.json"), plan.to_dict())
    if x is not None:
        vals = sampling.sample(x, plan.w)
        io.write_complex_csv(ctx.path("samples.csv"), vals[None, :])


def cmd_recover(ctx):
    if not ctx.args.plan:
        raise ConfigError("--plan is required")
    raw = io.read_json(ctx.args.plan)
    fg = ctx.graph_family()
    fh = ctx.hilbert_family()
    shape = (fh.size, fg.size)
    op_h, op_g = fh.at(raw["alpha"]), fg.at(raw["beta"])
    support = filtering.FrequencyRegion([tuple(p) for p in raw["support"]], shape)
    u_k = sampling.bandlimited_basis(op_h, op_g, support)
    d = sampling.selection_matrix(raw["w"], u_k.shape[0])
    plan = sampling.SamplingPlan(tuple(raw["w"]), support, d, sampling.reconstruction_operator(d, u_k), op_h.order, op_g.order)
    if ctx.args.sampled:
        vals, _ = io.read_complex_csv(ctx.args.sampled)
        vals = vals.reshape(-1)
    else:
        vals = sampling.sample(ctx.read_signal(), plan.w)
    rec = sampling.recover(vals, plan)
    io.write_complex_csv(ctx.path("recovered.csv"), rec)
    report = {"samples": len(plan.w)}
    if ctx.args.signal:
        report["error"] = sampling.recovery_error(rec, ctx.read_signal())
    io.write_json(ctx.path("recover.json"), report)


def cmd_grid_search(ctx):
    a = ctx.args
    x = ctx.read_signal()
    fh, fg = ctx.families_for(x)
    k = _num_samples(ctx)
    sigma = float(ctx.params.get("noise_sigma", 0.1))
    rng = np.random.default_rng(ctx.seed)
    noise = sigma / np.sqrt(2) * (rng.normal(size=k) + 1j * rng.normal(size=k))
    res = sampling.grid_search(
        x,
        noise,
        fh,
        fg,
        k,
        alpha_range=a.alpha_range or tuple(ctx.params.get("alpha_range", (-2.0, 2.0))),
        beta_range=a.beta_range or tuple(ctx.params.get("beta_range", (-2.0, 2.0))),
        coarse_step=a.coarse_step or ctx.params.get("coarse_step", 0.25),
        fine_step=a.fine_step or ctx.params.get("fine_step", 0.01),
    )
    io.write_table(ctx.path("grid.csv"), ["stage", "alpha", "beta", "error"], res.table)
    io.write_json(ctx.path("optimum.json"), {"alpha": res.alpha, "beta": res.beta, "error": res.error})


def product_demo(alpha=0.7, beta=0.5, coeffs=None):
    """Path-graph Hilbert side, ring-graph vertex side, three-term bandlimited signal."""
    coeffs = coeffs or {0: 1.0, 1: 0.5, 2: 2.0}
    fh = transform.gft_operator(graph.path_graph(4), "laplacian")
    fg = transform.gft_operator(graph.cycle_graph(4), "laplacian")
    op_h, op_g = fh.at(alpha), fg.at(beta)
    x = signals.synthesize_bandlimited(coeffs, op_h, op_g)
    support = filtering.FrequencyRegion.from_flat(sorted(coeffs), x.shape)
    report = {"alpha": alpha, "beta": beta, "support": [list(p) for p in support.pairs], "plans": {}}
    for name, (a, b) in (("hgfrft", (alpha, beta)), ("hgft", (1.0, 1.0))):
        plan = sampling.make_plan(fh.at(a), fg.at(b), support)
        rec = sampling.recover(sampling.sample(x, plan.w), plan)
        report["plans"][name] = {**plan.to_dict(), "error": sampling.recovery_error(rec, x)}
    return report, x


def cmd_product_demo(ctx):
    alpha = float(ctx.cfg.get("alpha", 0.7))
    beta = float(ctx.cfg.get("beta", 0.5))
    report, x = product_demo(alpha, beta)
    io.write_complex_csv(ctx.path("signal.csv"), x)
    io.write_json(ctx.path("report.json"), report)


def cmd_chirp_demo(ctx):
    p = ctx.params
    spec = signals.ChirpSpec(
        f0=p.get("f0", 50.0),
        b0=p.get("b0", 150.0),
        duration=p.get("duration", 0.2),
        samples=p.get("samples", 200),
        df=p.get("df", 5.0),
        db=p.get("db", 10.0),
    )
    nodes = int(p.get("nodes", 48))
    vertex = int(p.get("vertex", 16))
    if not 1 <= vertex <= nodes:
        raise ConfigError(f"vertex {vertex} outside 1..{nodes}")
    x = signals.chirp_field(spec, nodes)
    fam = transform.dft_operator(spec.samples)
    lo, hi = p.get("alpha_range", (0.0, 2.0))
    alphas = sampling.order_grid(lo, hi, p.get("alpha_step", 0.01))
    col = x[:, vertex - 1]
    ratios = [(float(a), signals.peak_to_energy(fam.at(a).mat @ col)) for a in alphas]
    best_alpha, best_ratio = max(ratios, key=lambda r: (r[1], -r[0]))
    io.write_complex_csv(ctx.path("chirp_field.csv"), x)
    io.write_table(ctx.path("concentration.csv"), ["alpha", "peak_to_energy"], ratios)
    spectra = np.stack([fam.at(1.0).mat @ col, fam.at(best_alpha).mat @ col], axis=1)
    io.write_complex_csv(ctx.path("vertex_spectra.csv"), spectra)
    io.write_json(
        ctx.path("chirp_report.json"),
        {
            "vertex": vertex,
            "f0": spec.start_frequency(vertex),
            "bandwidth": spec.bandwidth(vertex),
            "best_alpha": best_alpha,
            "best_ratio": best_ratio,
            "ratio_at_1": signals.peak_to_energy(fam.at(1.0).mat @ col),
        },
    )


def _diffusion_inputs(ctx):
    fg = ctx.graph_family()
    n = fg.size
    t_horizon = int(ctx.params.get("t_horizon", 8))
    m = ctx.cfg.get("m", t_horizon)
    fh = ctx.hilbert_family(m)
    f1 = np.asarray(ctx.params.get("f1", [1.0] + [0.0] * (n - 1)), dtype=complex)
    if f1.shape != (n,):
        raise ConfigError(f"params.f1 must have {n} entries")
    # Hilbert factor scaled so that (1, 1) reproduces the transform of the iterates
    h0 = fh.at(ctx.alpha).mat[:, 0] * np.sqrt(fh.size)
    y = np.outer(h0, fg.at(ctx.beta).mat @ f1)
    omega = ctx.params.get("omega", "dft")
    omega = signals.dft_frequencies(fh.size) if omega == "dft" else np.asarray(omega, dtype=float)
    lam = fg.shift_eigenvalues.real
    s = float(ctx.params.get("s", 0.1))
    return transform.JointSpectrum(y, ctx.alpha, ctx.beta), lam, omega, s, t_horizon


def cmd_heat(ctx):
    y, lam, omega, s, t = _diffusion_inputs(ctx)
    spec = signals.heat_spectral_solution(y, lam, omega, s, t)
    io.write_complex_csv(ctx.path("heat_input.csv"), y.coeff, y.alpha, y.beta)
    io.write_complex_csv(ctx.path("heat_spectrum.csv"), spec.coeff, spec.alpha, spec.beta)


def cmd_wave(ctx):
    y, lam, omega, s, t = _diffusion_inputs(ctx)
    spec = signals.wave_spectral_solution(y, lam, omega, s, t)
    io.write_complex_csv(ctx.path("wave_input.csv"), y.coeff, y.alpha, y.beta)
    io.write_complex_csv(ctx.path("wave_spectrum.csv"), spec.coeff, spec.alpha, spec.beta)


def cmd_compactness(ctx):
    x = ctx.read_signal()
    fh, fg = ctx.families_for(x)
    op_h, op_g = fh.at(ctx.alpha), fg.at(ctx.beta)
    pct = ctx.params.get("percentiles", list(range(0, 101, 5)))
    curves = {
        "hgfrft": signals.energy_compactness(transform.hgfrft(x, op_h, op_g), pct),
        "partial_h": signals.energy_compactness(transform.partial_h(x, op_h), pct),
        "partial_g": signals.energy_compactness(transform.partial_g(x, op_g), pct),
    }
    rows = [(float(p), *(float(curves[k][i, 1]) for k in curves)) for i, p in enumerate(pct)]
    io.write_table(ctx.path("compactness.csv"), ["percentile", *curves], rows)


def cmd_gen_graph(ctx):
    g = ctx.graph
    graph.to_edge_list(g, ctx.path("graph.csv"))
    meta = {"n": g.n, "edges": g.num_edges, "directed": g.directed}
    if "connected" in g.meta:
        meta["connected"] = g.meta["connected"]
    io.write_json(ctx.path("graph.json"), meta)


COMMANDS = {
    "transform": cmd_transform,
    "inverse": cmd_inverse,
    "partial-h": cmd_partial_h,
    "partial-g": cmd_partial_g,
    "filter-bandpass": cmd_filter_bandpass,
    "convolve": cmd_convolve,
    "sample-greedy": cmd_sample_greedy,
    "recover": cmd_recover,
    "grid-search": cmd_grid_search,
    "product-demo": cmd_product_demo,
    "chirp-demo": cmd_chirp_demo,
    "heat": cmd_heat,
    "wave": cmd_wave,
    "compactness": cmd_compactness,
    "gen-graph": cmd_gen_graph,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="hgfrft", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON experiment config")
        p.add_argument("--out", help="output directory")
        p.add_argument("--seed", type=int)
        p.add_argument("--signal", help="joint signal CSV")
        p.add_argument("--kernel", help="convolution kernel CSV")
        p.add_argument("--spectrum", help="joint spectrum CSV")
        p.add_argument("--region", help="JSON array of [i, j] pairs")
        p.add_argument("--plan", help="sampling plan JSON")
        p.add_argument("--sampled", help="sampled values CSV")
        p.add_argument("--samples", type=int, help="number of samples / bandwidth K")
        p.add_argument("--alpha-range", type=_range)
        p.add_argument("--beta-range", type=_range)
        p.add_argument("--coarse-step", type=float)
        p.add_argument("--fine-step", type=float)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        ctx = Context(load_config(args.config), args)
        COMMANDS[args.command](ctx)
    except UnstableSpeed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STABILITY
    except NumericError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ConfigError, GraphError, ParseError, HGFRFTError, OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
