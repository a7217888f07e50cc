"""Named experiment scenarios: config loading, runners and CSV/JSON output.

Each scenario kind has a fixed column schema so its CSV output is stable and
diffable; degree-valued columns are written with six decimals. A JSON summary
echoes the fully resolved configuration next to the measured metrics.
"""

from __future__ import annotations

import configparser
import csv
import dataclasses
import itertools
import json
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path

import numpy as np

from .core import DEFAULT_GRID, NetworkParams
from .causal_inference import causal_estimate
from .fitting import (DEFAULT_SWEEP, c_from_gains, fit_c_plane, fit_logit_curve,
                      fit_mu, network_sweep_decodes, oracle_sweep,
                      readout_observer, readout_sds)
from .input_layer import StimulusEvent, input_for_event
from .network import argmax_center, forward_pass
from .pooling import cached_weights, pool_all, pool_unisensory_auditory, \
    pool_unisensory_visual, divisive_normalize, relatedness_index
from .readout import profile_peak_and_width
from .recalibration import AdaptationState, run_schedule, train_with_probe


class ConfigError(Exception):
    """A scenario configuration failed to parse or validate."""


@dataclass(frozen=True)
class ScenarioConfig:
    """A parsed scenario: identity, network parameters and the raw
    kind-specific option sections."""

    name: str
    kind: str
    network: NetworkParams
    options: dict
    out_dir: str
    source: Path | None = None


_NETWORK_FIELDS = {f.name for f in dataclasses.fields(NetworkParams)}


def _get(section: dict, section_name: str, key: str, conv, default=None):
    if key not in section:
        if default is not None:
            return default
        raise ConfigError(f"{section_name}.{key}: required key is missing")
    try:
        return conv(section[key])
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{section_name}.{key}: {exc}") from exc


def _floats(text: str) -> list[float]:
    return [float(tok) for tok in text.replace(",", " ").split()]


def _ints(text: str) -> list[int]:
    return [int(tok) for tok in text.replace(",", " ").split()]


def _pairs(text: str) -> list[tuple[float, float]]:
    out = []
    for tok in text.split():
        a, _, b = tok.partition(":")
        out.append((float(a), float(b)))
    return out


def load_config(path) -> ScenarioConfig:
    """Parse and validate a scenario config file (INI-style sections)."""
    path = Path(path)
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        read = parser.read(path)
    except configparser.Error as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    if not read:
        raise ConfigError(f"{path}: cannot read config file")
    return parse_config(parser, source=path)


def parse_config(parser: configparser.ConfigParser, source: Path | None = None) -> ScenarioConfig:
    if not parser.has_section("scenario"):
        raise ConfigError("scenario: section is missing")
    scen = dict(parser.items("scenario"))
    name = _get(scen, "scenario", "name", str)
    kind = _get(scen, "scenario", "kind", str)
    if kind not in RUNNERS:
        raise ConfigError(f"scenario.kind: unknown kind {kind!r}")

    net_kwargs = {}
    if parser.has_section("network"):
        for key, value in parser.items("network"):
            if key not in _NETWORK_FIELDS:
                raise ConfigError(f"network.{key}: unknown parameter")
            try:
                net_kwargs[key] = float(value)
            except ValueError as exc:
                raise ConfigError(f"network.{key}: {exc}") from exc
    try:
        network = NetworkParams(**net_kwargs)
    except ValueError as exc:
        raise ConfigError(f"network: {exc}") from exc

    options = {sec: dict(parser.items(sec)) for sec in parser.sections()
               if sec not in ("scenario", "network")}
    out_dir = "out"
    if parser.has_section("outputs"):
        out_dir = parser.get("outputs", "dir", fallback="out")
    return ScenarioConfig(name=name, kind=kind, network=network,
                          options=options, out_dir=out_dir, source=source)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.6f}"
    return str(value)


def write_table(path: Path, columns, rows) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def _sweep_values(opts: dict, section: str) -> np.ndarray:
    lo = _get(opts, section, "visual_min", float)
    hi = _get(opts, section, "visual_max", float)
    step = _get(opts, section, "visual_step", float)
    return np.arange(lo, hi + step / 2, step)


# ---------------------------------------------------------------- runners

def _run_pooling_profile(cfg: ScenarioConfig, out: Path) -> dict:
    opts = cfg.options.get("stimuli", {})
    s_a = _get(opts, "stimuli", "auditory", float, 0.0)
    s_v = _get(opts, "stimuli", "visual", float, 0.0)
    seed = _get(cfg.options.get("noise", {}), "noise", "seed", int, 7)
    params, grid = cfg.network, DEFAULT_GRID
    weights = cached_weights(params, grid)

    aud = input_for_event(StimulusEvent(auditory=s_a), params, grid=grid)
    vis = input_for_event(StimulusEvent(visual=s_v), params, grid=grid)
    prof_a = pool_unisensory_auditory(aud, weights)
    prof_v = pool_unisensory_visual(vis, weights)
    sum_a = profile_peak_and_width(prof_a, grid)
    sum_v = profile_peak_and_width(prof_v, grid)

    rng = np.random.default_rng(seed)
    aud_n = input_for_event(StimulusEvent(auditory=s_a), params, noise=True, rng=rng, grid=grid)
    vis_n = input_for_event(StimulusEvent(visual=s_v), params, noise=True, rng=rng, grid=grid)
    prof_a_noisy = pool_unisensory_auditory(aud_n, weights)
    prof_v_noisy = pool_unisensory_visual(vis_n, weights)

    gauss_a = np.exp(-((grid.centers - sum_a.loc) ** 2) / (2 * sum_a.sd ** 2))
    gauss_v = np.exp(-((grid.centers - sum_v.loc) ** 2) / (2 * sum_v.sd ** 2))
    rows = zip(grid.centers,
               prof_a / prof_a.max(), prof_a_noisy / prof_a_noisy.max(), gauss_a,
               prof_v / prof_v.max(), prof_v_noisy / prof_v_noisy.max(), gauss_v)
    write_table(out / "profiles.csv",
                ["center", "aud_pooled", "aud_pooled_noisy", "aud_gaussian",
                 "vis_pooled", "vis_pooled_noisy", "vis_gaussian"], rows)
    return {"aud_peak": sum_a.loc, "aud_sd": sum_a.sd, "aud_fit_rmse": sum_a.fit_rmse,
            "vis_peak": sum_v.loc, "vis_sd": sum_v.sd, "vis_fit_rmse": sum_v.fit_rmse}


def _run_fusion_track(cfg: ScenarioConfig, out: Path) -> dict:
    opts = cfg.options.get("stimuli", {})
    s_a = _get(opts, "stimuli", "auditory", float, 0.0)
    sweep = _sweep_values(opts, "stimuli")
    series = cfg.options.get("series", {})
    if not series:
        raise ConfigError("series: at least one 'name = rise:width' entry required")
    grid = DEFAULT_GRID
    rows = []
    metrics = {}
    for name, spec in series.items():
        (rise, width), = _pairs(spec)
        params = replace(cfg.network, rise=rise, width=width)
        weights = cached_weights(params, grid)
        sd_a, sd_v = readout_sds(params, grid)
        w_aud = sd_v ** 2 / (sd_a ** 2 + sd_v ** 2)
        worst = 0.0
        for s_v in sweep:
            inp = input_for_event(StimulusEvent(auditory=s_a, visual=float(s_v)),
                                  params, grid=grid)
            pooled = pool_all(inp, weights, params.bias)
            peak = argmax_center(pooled.r_m, grid)
            fused = w_aud * s_a + (1 - w_aud) * float(s_v)
            dev = peak - fused
            if abs(s_v - s_a) <= 40:
                worst = max(worst, abs(dev))
            rows.append((name, rise, width, sd_a, sd_v, float(s_v), peak, fused, dev))
        metrics[f"max_abs_deviation_within40_{name}"] = worst
    write_table(out / "fusion.csv",
                ["series", "rise", "width", "sd_a", "sd_v", "visual_loc",
                 "ms_peak", "fusion_estimate", "deviation"], rows)
    return metrics


def _run_relatedness(cfg: ScenarioConfig, out: Path) -> dict:
    opts = cfg.options.get("stimuli", {})
    s_a = _get(opts, "stimuli", "auditory", float, 0.0)
    sweep = _sweep_values(opts, "stimuli")
    series = cfg.options.get("series", {})
    if not series:
        raise ConfigError("series: at least one 'name = bias:p_common' entry required")
    grid = DEFAULT_GRID
    rows = []
    metrics = {}
    for name, spec in series.items():
        (bias, p_common), = _pairs(spec)
        params = replace(cfg.network, bias=bias)
        weights = cached_weights(params, grid)
        observer = readout_observer(params, p_common, grid)
        fracs = []
        for s_v in sweep:
            inp = input_for_event(StimulusEvent(auditory=s_a, visual=float(s_v)),
                                  params, grid=grid)
            frac_m, frac_a = relatedness_index(pool_all(inp, weights, bias))
            post = causal_estimate(s_a, float(s_v), observer).post_common
            fracs.append(frac_m)
            rows.append((name, bias, p_common, float(s_v), abs(float(s_v) - s_a),
                         frac_m, frac_a, post, 1.0 - post))
        fracs = np.asarray(fracs)
        metrics[f"peak_disparity_{name}"] = float(abs(sweep[int(np.argmax(fracs))] - s_a))
        metrics[f"max_fraction_{name}"] = float(fracs.max())
    write_table(out / "relatedness.csv",
                ["series", "bias", "p_common", "visual_loc", "disparity",
                 "ms_fraction", "aud_fraction", "oracle_post_common",
                 "oracle_post_separate"], rows)
    return metrics


def _run_point_decode(cfg: ScenarioConfig, out: Path) -> dict:
    opts = cfg.options.get("stimuli", {})
    s_a = _get(opts, "stimuli", "auditory", float)
    s_v = _get(opts, "stimuli", "visual", float)
    grid = DEFAULT_GRID
    result = forward_pass(StimulusEvent(auditory=s_a, visual=s_v), cfg.network, grid=grid)
    write_table(out / "estimates.csv",
                ["s_a", "s_v", "bias", "est_a", "est_v"],
                [(s_a, s_v, cfg.network.bias, result.est_a, result.est_v)])
    rec = result.reconstruction
    write_table(out / "profiles.csv",
                ["center", "rho_left", "rho_right", "rho_product", "rho_visual"],
                zip(grid.centers, rec.rho_l, rec.rho_r, rec.rho_l * rec.rho_r, rec.rho_v))
    return {"est_a": result.est_a, "est_v": result.est_v}


def _oracle_opts(cfg: ScenarioConfig):
    opts = cfg.options.get("oracle", {})
    p_common = _get(opts, "oracle", "p_common", float)
    n_samples = _get(opts, "oracle", "n_samples", int, 10000)
    seed = _get(opts, "oracle", "seed", int, 0)
    return p_common, n_samples, seed


def _run_disparity_fit(cfg: ScenarioConfig, out: Path) -> dict:
    opts = cfg.options.get("stimuli", {})
    s_a = _get(opts, "stimuli", "auditory", float, 0.0)
    sweep = _sweep_values(opts, "stimuli")
    p_common, n_samples, seed = _oracle_opts(cfg)
    params, grid = cfg.network, DEFAULT_GRID
    observer = readout_observer(params, p_common, grid)
    oracle = oracle_sweep(observer, s_a=s_a, s_v_values=sweep,
                          n_samples=n_samples, seed=seed)
    net_a, net_v = network_sweep_decodes(params, [params.bias], s_a=s_a,
                                         s_v_values=sweep, grid=grid)
    rows = [(p_common, params.bias, float(sv), float(sv) - s_a,
             net_a[0, i], net_v[0, i], oracle.est_a[i], oracle.est_v[i])
            for i, sv in enumerate(sweep)]
    write_table(out / "sweep.csv",
                ["p_common", "bias", "visual_loc", "disparity",
                 "net_a", "net_v", "oracle_a", "oracle_v"], rows)
    return {"rmse_a": float(np.sqrt(np.mean((net_a[0] - oracle.est_a) ** 2))),
            "rmse_v": float(np.sqrt(np.mean((net_v[0] - oracle.est_v) ** 2))),
            "sigma_a": observer.sigma_a, "sigma_v": observer.sigma_v}


def _fit_options(cfg: ScenarioConfig):
    opts = cfg.options.get("fit", {})
    p_values = _get(opts, "fit", "p_values", _floats)
    pairs_text = opts.get("gain_pairs")
    if pairs_text:
        pairs = _pairs(pairs_text)
    else:
        pairs = [(cfg.network.gain_a, cfg.network.gain_v)]
    return p_values, pairs


def _run_mu_law(cfg: ScenarioConfig, out: Path) -> dict:
    stim = cfg.options.get("stimuli", {})
    s_a = _get(stim, "stimuli", "auditory", float, 0.0)
    sweep = _sweep_values(stim, "stimuli") if "visual_min" in stim else DEFAULT_SWEEP
    n_samples, seed = _oracle_opts_partial(cfg)
    p_values, pairs = _fit_options(cfg)
    rows = []
    metrics = {}
    for gain_a, gain_v in pairs:
        params = replace(cfg.network, gain_a=gain_a, gain_v=gain_v)
        fits = []
        for p in p_values:
            fit = fit_mu(p, params, s_a=s_a, s_v_values=sweep,
                         n_samples=n_samples, seed=seed)
            fits.append(fit)
        c_fit, law_rmse = fit_logit_curve([(f.p_common, f.mu) for f in fits])
        for f in fits:
            rows.append((gain_a, gain_v, f.p_common, f.mu,
                         f.rmse_a, f.rmse_v, c_fit))
        tag = f"{gain_a:g}x{gain_v:g}"
        metrics[f"c_fit_{tag}"] = c_fit
        metrics[f"logit_rmse_{tag}"] = law_rmse
    metrics["mean_logit_rmse"] = float(np.mean(
        [v for k, v in metrics.items() if k.startswith("logit_rmse_")]))
    write_table(out / "mu_fits.csv",
                ["gain_a", "gain_v", "p_common", "best_mu",
                 "rmse_a", "rmse_v", "c_fit"], rows)
    return metrics


def _oracle_opts_partial(cfg: ScenarioConfig):
    opts = cfg.options.get("oracle", {})
    n_samples = _get(opts, "oracle", "n_samples", int, 10000)
    seed = _get(opts, "oracle", "seed", int, 0)
    return n_samples, seed


def _run_aggregate(cfg: ScenarioConfig, out: Path) -> dict:
    stim = cfg.options.get("stimuli", {})
    s_a = _get(stim, "stimuli", "auditory", float, 0.0)
    sweep = _sweep_values(stim, "stimuli") if "visual_min" in stim else DEFAULT_SWEEP
    n_samples, seed = _oracle_opts_partial(cfg)
    p_values, pairs = _fit_options(cfg)
    grid = DEFAULT_GRID
    rows = []
    oracle_all, net_all = [], []
    for gain_a, gain_v in pairs:
        params = replace(cfg.network, gain_a=gain_a, gain_v=gain_v)
        for p in p_values:
            fit = fit_mu(p, params, s_a=s_a, s_v_values=sweep,
                         n_samples=n_samples, seed=seed)
            fitted = replace(params, bias=fit.mu)
            observer = readout_observer(fitted, p, grid)
            oracle = oracle_sweep(observer, s_a=s_a, s_v_values=sweep,
                                  n_samples=n_samples, seed=seed)
            net_a, net_v = network_sweep_decodes(fitted, [fit.mu], s_a=s_a,
                                                 s_v_values=sweep, grid=grid)
            for i, sv in enumerate(sweep):
                rows.append((gain_a, gain_v, p, float(sv),
                             oracle.est_a[i], net_a[0, i],
                             oracle.est_v[i], net_v[0, i]))
            oracle_all.extend([*oracle.est_a, *oracle.est_v])
            net_all.extend([*net_a[0], *net_v[0]])
    oracle_all = np.asarray(oracle_all)
    net_all = np.asarray(net_all)
    ss_res = float(np.sum((net_all - oracle_all) ** 2))
    ss_tot = float(np.sum((oracle_all - oracle_all.mean()) ** 2))
    write_table(out / "scatter.csv",
                ["gain_a", "gain_v", "p_common", "visual_loc",
                 "oracle_a", "net_a", "oracle_v", "net_v"], rows)
    return {"r_squared": 1.0 - ss_res / ss_tot, "n_points": len(net_all)}


def _run_gain_plane(cfg: ScenarioConfig, out: Path) -> dict:
    stim = cfg.options.get("stimuli", {})
    s_a = _get(stim, "stimuli", "auditory", float, 0.0)
    sweep = _sweep_values(stim, "stimuli") if "visual_min" in stim else DEFAULT_SWEEP
    n_samples, seed = _oracle_opts_partial(cfg)
    fit_opts = cfg.options.get("fit", {})
    gain_a_values = _get(fit_opts, "fit", "gain_a_values", _floats)
    gain_v_values = _get(fit_opts, "fit", "gain_v_values", _floats)
    p_common = _get(fit_opts, "fit", "p_common", float, 0.5)
    rows = []
    samples = []
    for gain_a in gain_a_values:
        for gain_v in gain_v_values:
            params = replace(cfg.network, gain_a=gain_a, gain_v=gain_v)
            fit = fit_mu(p_common, params, s_a=s_a, s_v_values=sweep,
                         n_samples=n_samples, seed=seed)
            samples.append((gain_a, gain_v, fit.mu))
            rows.append((gain_a, gain_v, fit.mu, c_from_gains(gain_a, gain_v)))
    coef_a, coef_v, intercept, r2 = fit_c_plane(samples)
    write_table(out / "gain_plane.csv",
                ["gain_a", "gain_v", "c_fit", "c_predicted"], rows)
    return {"coef_gain_a": coef_a, "coef_gain_v": coef_v,
            "intercept": intercept, "r_squared": r2,
            "negative_c": bool(min(c for _, _, c in samples) < 0)}


def _schedule_options(cfg: ScenarioConfig):
    opts = cfg.options.get("schedule", {})
    s_a = _get(opts, "schedule", "auditory", float, 0.0)
    s_v = _get(opts, "schedule", "visual", float, 8.0)
    adapt = cfg.options.get("adaptation", {})
    rate = _get(adapt, "adaptation", "rate", float, 0.65)
    decay = _get(adapt, "adaptation", "decay", float, 0.009)
    return opts, s_a, s_v, rate, decay


def _run_aftereffect(cfg: ScenarioConfig, out: Path) -> dict:
    opts, s_a, s_v, rate, decay = _schedule_options(cfg)
    reps = _get(opts, "schedule", "reps", int, 20)
    delays = _get(opts, "schedule", "delays", _ints, [1, 5, 20])
    probe_locs = _get(opts, "schedule", "probe_locations", _floats, [0.0, -15.0, 15.0])
    probe_delay = _get(opts, "schedule", "probe_delay", int, 1)
    params, grid = cfg.network, DEFAULT_GRID

    def fresh_state():
        return AdaptationState.initial(grid, rate=rate, decay=decay)

    rows = []
    trial = 0
    online = []
    baseline = run_schedule(train_with_probe(reps, delays[0], probe_loc=s_a,
                                             s_a=s_a, s_v=s_v),
                            params, adaptation=fresh_state(), grid=grid)
    for step in baseline:
        if step.event is not None and step.event.visual is not None:
            trial += 1
            online.append(step.est_a)
            rows.append((trial, "train", step.t, 0, s_a, s_v,
                         step.est_a, step.est_a - s_a))
    probe_shifts = {}
    for delay in delays:
        steps = run_schedule(train_with_probe(reps, delay, probe_loc=s_a,
                                              s_a=s_a, s_v=s_v),
                             params, adaptation=fresh_state(), grid=grid)
        probe = steps[-1]
        trial += 1
        shift = probe.est_a - s_a
        probe_shifts[delay] = shift
        rows.append((trial, "probe", probe.t, delay, s_a, None,
                     probe.est_a, shift))
    write_table(out / "timecourse.csv",
                ["trial", "kind", "time_s", "delay_s", "stim_a", "stim_v",
                 "est_a", "shift"], rows)

    space_rows = []
    space_shifts = {}
    for loc in probe_locs:
        steps = run_schedule(train_with_probe(reps, probe_delay, probe_loc=loc,
                                              s_a=s_a, s_v=s_v),
                             params, adaptation=fresh_state(), grid=grid)
        probe = steps[-1]
        shift = probe.est_a - loc
        space_shifts[loc] = shift
        space_rows.append((loc, probe.est_a, shift))
    write_table(out / "space.csv", ["probe_loc", "est_a", "shift"], space_rows)

    online = np.asarray(online, dtype=float)
    metrics = {"online_mean": float(online.mean()),
               "online_first": float(online[0]),
               "online_last": float(online[-1]),
               "online_range": float(online.max() - online.min())}
    for delay, shift in probe_shifts.items():
        metrics[f"aftereffect_delay{delay}"] = shift
    center = space_shifts.get(s_a)
    if center:
        metrics["min_offcenter_ratio"] = min(
            shift / center for loc, shift in space_shifts.items() if loc != s_a)
    ref = cfg.options.get("reference", {}).get("fixture")
    if ref:
        ref_path = Path(ref)
        if not ref_path.is_absolute() and cfg.source is not None:
            ref_path = cfg.source.parent / ref_path
        if ref_path.exists():
            metrics["fixture_rmse"] = reference_rmse(ref_path, rows)
    return metrics


def reference_rmse(fixture_path: Path, rows) -> float:
    """RMSE between measured shifts and a digitized reference time course.

    The fixture is a CSV with columns ``trial, shift``; rows are joined on
    the trial index and missing trials are skipped.
    """
    reference = {}
    with open(fixture_path, newline="") as fh:
        for record in csv.DictReader(fh):
            reference[int(record["trial"])] = float(record["shift"])
    diffs = [row[7] - reference[row[0]] for row in rows if row[0] in reference]
    if not diffs:
        raise ConfigError(f"reference.fixture: no trials match {fixture_path}")
    return float(np.sqrt(np.mean(np.square(diffs))))


def _run_cumulative(cfg: ScenarioConfig, out: Path) -> dict:
    opts, s_a, s_v, rate, decay = _schedule_options(cfg)
    reps_values = _get(opts, "schedule", "reps_values", _ints, [1, 20])
    delay = _get(opts, "schedule", "delay", int, 1)
    params, grid = cfg.network, DEFAULT_GRID
    rows = []
    results = {}
    for reps in reps_values:
        state = AdaptationState.initial(grid, rate=rate, decay=decay)
        steps = run_schedule(train_with_probe(reps, delay, probe_loc=s_a,
                                              s_a=s_a, s_v=s_v),
                             params, adaptation=state, grid=grid)
        train_est = [s.est_a for s in steps
                     if s.event is not None and s.event.visual is not None]
        aftereffect = steps[-1].est_a - s_a
        results[reps] = (train_est[0], train_est[-1], aftereffect)
        rows.append((reps, train_est[0], train_est[-1], aftereffect))
    write_table(out / "cumulative.csv",
                ["reps", "ve_first", "ve_last", "aftereffect"], rows)
    lo, hi = min(reps_values), max(reps_values)
    return {"ve_single": results[lo][0], "ve_final": results[hi][1],
            "ve_change": abs(results[hi][1] - results[lo][0]),
            "aftereffect_single": results[lo][2],
            "aftereffect_final": results[hi][2],
            "aftereffect_gain": results[hi][2] - results[lo][2]}


RUNNERS = {
    "pooling_profile": _run_pooling_profile,
    "fusion_track": _run_fusion_track,
    "relatedness": _run_relatedness,
    "point_decode": _run_point_decode,
    "disparity_fit": _run_disparity_fit,
    "mu_law": _run_mu_law,
    "aggregate": _run_aggregate,
    "gain_plane": _run_gain_plane,
    "aftereffect": _run_aftereffect,
    "cumulative": _run_cumulative,
}


def run_scenario(config: ScenarioConfig | str | Path, out_root=".") -> dict:
    """Run one scenario and write its tables plus a JSON summary.

    Returns the summary dict. Outputs land under ``out_root/<outputs.dir>``.
    """
    cfg = config if isinstance(config, ScenarioConfig) else load_config(config)
    out = Path(out_root) / cfg.out_dir
    out.mkdir(parents=True, exist_ok=True)
    metrics = RUNNERS[cfg.kind](cfg, out)
    summary = {
        "scenario": cfg.name,
        "kind": cfg.kind,
        "network": dataclasses.asdict(cfg.network),
        "options": cfg.options,
        "metrics": metrics,
    }
    with open(out / "summary.json", "w") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return summary


FIGURES = {
    "fig2": ["fig2"],
    "fig3": ["fig3"],
    "fig4": ["fig4"],
    "fig5": ["fig5"],
    "fig6": ["fig6_p05", "fig6_p95", "fig6_p005"],
    "fig7": ["fig7"],
    "fig8": ["fig8"],
    "fig9": ["fig9"],
    "fig10": ["fig10_p05", "fig10_p95", "fig10_p005"],
    "fig11": ["fig11"],
    "fig12": ["fig12"],
}


def bundled_config(name: str) -> ScenarioConfig:
    """Load one of the packaged scenario configs by bare name."""
    ref = resources.files("avloc") / "configs" / f"{name}.ini"
    if not ref.is_file():
        raise ConfigError(f"no bundled config named {name!r}")
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    with ref.open() as fh:
        parser.read_file(fh)
    return parse_config(parser)


def reproduce_figure(figure_id: str, out_root=".") -> list[dict]:
    """Run the bundled scenario(s) behind one figure identifier."""
    if figure_id not in FIGURES:
        raise ConfigError(
            f"unknown figure {figure_id!r}; choose from {', '.join(sorted(FIGURES))}")
    summaries = []
    for name in FIGURES[figure_id]:
        cfg = bundled_config(name)
        summaries.append(run_scenario(cfg, Path(out_root) / figure_id))
    return summaries


def parse_overrides(tokens) -> dict:
    """Parse ``section.key=v1,v2`` sweep overrides into lists of values."""
    out = {}
    for token in tokens:
        key, sep, values = token.partition("=")
        if not sep or "." not in key:
            raise ConfigError(f"override {token!r} is not section.key=value[,value...]")
        section, field = key.split(".", 1)
        out[(section, field)] = values.split(",")
    return out


def sweep(config_path, overrides, out_root=".") -> list[dict]:
    """Run the cartesian product of override values over a base config.

    Each point runs in its own subdirectory; an index table mapping points to
    override values is written last.
    """
    base = Path(config_path)
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    if not parser.read(base):
        raise ConfigError(f"{base}: cannot read config file")
    parsed = parse_overrides(overrides)
    for section, field in parsed:
        if not parser.has_section(section) and section != "network":
            raise ConfigError(f"{section}.{field}: section not present in config")
        if parser.has_section(section) and not parser.has_option(section, field):
            if section != "network":
                raise ConfigError(f"{section}.{field}: key not present in config")
        if section == "network" and field not in _NETWORK_FIELDS:
            raise ConfigError(f"network.{field}: unknown parameter")

    keys = list(parsed)
    combos = list(itertools.product(*(parsed[k] for k in keys))) or [()]
    summaries = []
    index_rows = []
    root = Path(out_root)
    for i, combo in enumerate(combos):
        point = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
        point.read_dict({s: dict(parser.items(s)) for s in parser.sections()})
        for (section, field), value in zip(keys, combo):
            if not point.has_section(section):
                point.add_section(section)
            point.set(section, field, value)
        cfg = parse_config(point, source=base)
        cfg = dataclasses.replace(cfg, out_dir=f"{cfg.out_dir}/point_{i:03d}")
        summaries.append(run_scenario(cfg, root))
        index_rows.append((i, *combo, cfg.out_dir))
    write_table(root / "sweep_index.csv",
                ["point", *(f"{s}.{f}" for s, f in keys), "dir"], index_rows)
    return summaries
