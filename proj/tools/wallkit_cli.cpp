// Configuration-driven experiment runner: frame search, wall-state
// selection, control simulation, pulse-sequence comparison, and the
// spectral purity bound, with CSV (and optional SVG) outputs.

#include "wallkit/wallkit.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>

namespace fs = std::filesystem;
using namespace wallkit;

namespace {

struct RunContext {
  ExperimentConfig cfg;
  bool plots = false;
  std::vector<std::pair<std::string, double>> timings;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  void mark(const std::string& label) {
    auto now = std::chrono::steady_clock::now();
    timings.emplace_back(label, std::chrono::duration<double>(now - t0).count());
    t0 = now;
  }
  std::string out(const std::string& name) const {
    return (fs::path(cfg.out_dir) / name).string();
  }
};

ModelSpec resolve_model(const ExperimentConfig& cfg) {
  if (!cfg.model.empty()) return model_by_id(cfg.model);
  ModelSpec m;
  m.id = "custom";
  m.dims = {cfg.nl, cfg.nw, cfg.ne};
  m.H = read_matrix(cfg.hamiltonian_file);
  if (m.H.rows() != m.dims.total())
    throw ConfigError("hamiltonian file dimension does not match dims");
  return m;
}

// Rotate the full Hamiltonian by a unitary on the logical+wall block.
Mat rotate_frame(const Mat& H, const TripartiteDims& dims, const Mat& U) {
  Mat Ufull = kron(U, Mat::Identity(dims.ne, dims.ne));
  return Ufull.adjoint() * H * Ufull;
}

Mat environment_hamiltonian(const Mat& He_full, const TripartiteDims& dims) {
  return partial_trace(He_full, dims, kSubE) / double(dims.nl * dims.nw);
}

Mat frame_for_config(RunContext& rc, const ModelSpec& m, FrameResult* out_frame) {
  if (rc.cfg.frame == "identity") {
    if (out_frame) out_frame->U = Mat::Identity(m.dims.nl * m.dims.nw, m.dims.nl * m.dims.nw);
    return m.H;
  }
  FrameSearchOptions opt;
  opt.eta_reg = rc.cfg.eta_reg;
  opt.restarts = rc.cfg.restarts;
  opt.seed = rc.cfg.seed;
  FrameResult fr = find_wall_frame(m.H, m.dims, opt);
  fr.U = align_logical_frame(m.H, m.dims, fr.U);
  if (out_frame) *out_frame = fr;
  rc.mark("frame-search");
  return rotate_frame(m.H, m.dims, fr.U);
}

Vec initial_wall(const ModelSpec& m, const Mat& H_frame) {
  if (m.w_hat) return *m.w_hat;
  TripartiteBases bases = make_bases(m.dims);
  CoeffTensor g = decompose_hamiltonian(H_frame, m.dims, bases);
  HamiltonianTerms terms = extract_terms(g, bases);
  Mat Hlw = partial_trace(terms.Hlw, m.dims, kSubL | kSubW) / double(m.dims.ne);
  OSD d = osd_decompose(Hlw, m.dims.nl, m.dims.nw);
  if (d.s[0] > 1e-12 && m.dims.nw == 2 && d.s[0] - d.s[1] > 1e-6)
    return optimal_qubit_wall(d);
  WallResult wr = find_wall_state(d);
  return wr.w;
}

Mat drive_for(const ModelSpec& m, const Vec& w) {
  return m.Hu ? *m.Hu : wall_drive_hamiltonian(w);
}

Mat logical_pure_state(int nl, std::uint64_t seed) {
  if (nl == 2) {
    Vec v(2);
    v << 1.0, cplx(0, 1);
    v /= v.norm();
    return Mat(v * v.adjoint());
  }
  Rng rng(derive_seed(seed, "rho-l"));
  return haar_random_pure(nl, rng);
}

int cmd_find_frame(RunContext& rc) {
  ModelSpec m = resolve_model(rc.cfg);
  FrameCost fc(m.H, m.dims, rc.cfg.eta_reg);
  Mat I = Mat::Identity(m.dims.nl * m.dims.nw, m.dims.nl * m.dims.nw);
  auto id_c = fc.components(I);

  FrameSearchOptions opt;
  opt.eta_reg = rc.cfg.eta_reg;
  opt.restarts = rc.cfg.restarts;
  opt.seed = rc.cfg.seed;
  FrameResult fr = find_wall_frame(m.H, m.dims, opt);
  fr.U = align_logical_frame(m.H, m.dims, fr.U);
  rc.mark("frame-search");

  write_matrix(rc.out("U_hat.mat"), fr.U);
  std::ofstream sum(rc.out("frame_summary.txt"));
  sum << std::setprecision(12);
  sum << "model = " << m.id << "\n";
  sum << "eta_reg = " << rc.cfg.eta_reg << "\n";
  sum << "J_identity = " << id_c.J << "\n";
  sum << "J_reg_identity = " << id_c.J + rc.cfg.eta_reg * id_c.Hlw_norm2 << "\n";
  sum << "Hlw_norm2_identity = " << id_c.Hlw_norm2 << "\n";
  sum << "J_opt = " << fr.J << "\n";
  sum << "J_reg_opt = " << fr.J_reg << "\n";
  sum << "Hlw_norm2_opt = " << fr.Hlw_norm2 << "\n";
  sum << "stalled = " << (fr.stalled ? "true" : "false") << "\n";
  sum.close();
  rc.mark("write");
  write_manifest(rc.cfg.out_dir, rc.cfg, rc.timings);
  return 0;
}

int cmd_find_wall(RunContext& rc) {
  ModelSpec m = resolve_model(rc.cfg);
  FrameResult fr;
  Mat H = frame_for_config(rc, m, &fr);
  TripartiteBases bases = make_bases(m.dims);
  CoeffTensor g = decompose_hamiltonian(H, m.dims, bases);
  HamiltonianTerms terms = extract_terms(g, bases);
  Mat Hlw = partial_trace(terms.Hlw, m.dims, kSubL | kSubW) / double(m.dims.ne);
  OSD d = osd_decompose(Hlw, m.dims.nl, m.dims.nw);

  std::ofstream osd_csv(rc.out("osd.csv"));
  osd_csv << "index,singular_value\n" << std::setprecision(12);
  for (size_t i = 0; i < d.s.size(); ++i) osd_csv << i + 1 << "," << d.s[i] << "\n";
  osd_csv.close();

  bool variance_usable = d.s[0] > 1e-12;
  std::string objective_used = rc.cfg.objective;
  if (rc.cfg.objective == "variance" && !variance_usable) objective_used = "purity-avg";

  Mat He_local = environment_hamiltonian(terms.He, m.dims);
  Mat rho_e = thermal_state(He_local, rc.cfg.beta);
  Gamma1 g1(H, m.dims, rho_e);

  WallSearchOptions wopt;
  wopt.seed = rc.cfg.seed;
  WallResult wr = (objective_used == "variance") ? find_wall_state(d, wopt)
                                                 : find_wall_state(g1, wopt);
  rc.mark("wall-search");

  std::ofstream wf(rc.out("w_hat.txt"));
  wf << std::setprecision(17);
  for (Eigen::Index i = 0; i < wr.w.size(); ++i)
    wf << wr.w(i).real() << " " << wr.w(i).imag() << "\n";
  wf.close();

  Rng rng(derive_seed(rc.cfg.seed, "wall-randoms"));
  std::ofstream gcsv(rc.out("gamma_summary.csv"));
  gcsv << "state,gamma1,gamma2\n" << std::setprecision(12);
  gcsv << "w_hat," << g1.value(wr.w) << "," << gamma2(d, wr.w) << "\n";
  for (int k = 0; k < 20; ++k) {
    Vec w = haar_random_vec(m.dims.nw, rng);
    gcsv << "random_" << k + 1 << "," << g1.value(w) << "," << gamma2(d, w) << "\n";
  }
  gcsv.close();

  std::ofstream sum(rc.out("wall_summary.txt"));
  sum << std::setprecision(12);
  sum << "model = " << m.id << "\n";
  sum << "frame = " << rc.cfg.frame << "\n";
  sum << "objective_requested = " << rc.cfg.objective << "\n";
  sum << "objective_used = " << objective_used << "\n";
  sum << "variance_usable = " << (variance_usable ? "true" : "false") << "\n";
  sum << "objective_value = " << wr.value << "\n";
  sum.close();
  rc.mark("write");
  write_manifest(rc.cfg.out_dir, rc.cfg, rc.timings);
  return 0;
}

int cmd_simulate(RunContext& rc) {
  ModelSpec m = resolve_model(rc.cfg);
  Mat H = frame_for_config(rc, m, nullptr);
  TripartiteBases bases = make_bases(m.dims);
  HamiltonianTerms terms = extract_terms(decompose_hamiltonian(H, m.dims, bases), bases);
  Vec w = initial_wall(m, H);
  Mat rho_e = thermal_state(environment_hamiltonian(terms.He, m.dims), rc.cfg.beta);
  Mat rho0 = kron(logical_pure_state(m.dims.nl, rc.cfg.seed), Mat(w * w.adjoint()), rho_e);
  auto times = time_grid(rc.cfg.t_final, rc.cfg.n_points);

  std::vector<PlotSeries> plot;
  std::ofstream thr(rc.out("threshold_summary.csv"));
  thr << "scheme,gain,time_to_" << rc.cfg.threshold << "\n" << std::setprecision(12);
  auto record = [&](const std::string& scheme, double gain, const std::string& fname,
                    const Trajectory& tr) {
    write_trajectory_csv(rc.out(fname), tr);
    auto tt = time_to_threshold(tr, rc.cfg.threshold);
    thr << scheme << "," << gain << ",";
    if (tt) thr << *tt << "\n";
    else thr << "none\n";
    if (rc.plots) plot.push_back({scheme + (gain ? "_" + std::to_string(gain) : ""), tr.t, tr.gamma});
  };

  record("free", 0.0, "free.csv", simulate_hamiltonian(H, rho0, m.dims, times));
  for (const std::string& scheme : rc.cfg.schemes) {
    if (scheme == "measurement") {
      for (double f : rc.cfg.meas_freqs)
        record("measurement", f, "measurement_f" + std::to_string(f) + ".csv",
               simulate_measured(H, rho0, m.dims, w, f, rc.cfg.t_final));
    } else if (scheme == "dissipation") {
      for (double eta : rc.cfg.diss_rates) {
        Lindblad lb{H, wall_dissipators(m.dims, w, eta)};
        for (const Mat& extra : m.jumps) lb.L.push_back(extra);
        record("dissipation", eta, "dissipation_eta" + std::to_string(eta) + ".csv",
               simulate_lindblad(lb, rho0, m.dims, times));
      }
    } else if (scheme == "driving") {
      Mat Hu = drive_for(m, w);
      for (double kappa : rc.cfg.drive_kappas)
        record("driving", kappa, "driving_kappa" + std::to_string(kappa) + ".csv",
               simulate_hamiltonian(driven_hamiltonian(H, m.dims, Hu, kappa), rho0,
                                    m.dims, times));
    }
  }
  thr.close();
  rc.mark("simulate");
  if (rc.plots) write_svg_plot(rc.out("purity.svg"), "logical purity vs t", plot);
  write_manifest(rc.cfg.out_dir, rc.cfg, rc.timings);
  return 0;
}

int cmd_dd_compare(RunContext& rc) {
  ModelSpec m = resolve_model(rc.cfg);
  Mat H = frame_for_config(rc, m, nullptr);
  TripartiteBases bases = make_bases(m.dims);
  HamiltonianTerms terms = extract_terms(decompose_hamiltonian(H, m.dims, bases), bases);
  Vec w = initial_wall(m, H);
  Mat rho_e = thermal_state(environment_hamiltonian(terms.He, m.dims), rc.cfg.beta);
  Mat rho0 = kron(logical_pure_state(m.dims.nl, rc.cfg.seed), Mat(w * w.adjoint()), rho_e);

  double T = 1.0 / rc.cfg.dd_frequency;
  int cycles = int(std::floor(rc.cfg.t_final / T + 1e-9));
  double kd = rc.cfg.dd_drive_kappa;
  Mat Hdrv = (kd != 0.0) ? driven_hamiltonian(H, m.dims, drive_for(m, w), kd) : H;

  auto run = [&](DDSequence seq, const Mat& Hbase) {
    DDOptions opt;
    opt.sequence = seq;
    opt.ideal = rc.cfg.dd_ideal;
    opt.period = T;
    int pulses = (seq == DDSequence::Universal) ? 4 : 2;
    opt.tau = rc.cfg.dd_ideal ? 0.0 : rc.cfg.dd_duty * T / pulses;
    opt.cycles = cycles;
    return simulate_dd(Hbase, rho0, m.dims, opt);
  };

  std::vector<std::pair<std::string, Trajectory>> cols;
  if (rc.cfg.dd_sequence != "selective")
    cols.emplace_back("universal", run(DDSequence::Universal, H));
  if (rc.cfg.dd_sequence != "universal")
    cols.emplace_back("selective", run(DDSequence::Selective, H));
  if (kd != 0.0) {
    std::vector<double> ts;
    for (int c = 0; c <= cycles; ++c) ts.push_back(c * T);
    cols.emplace_back("wall_drive", simulate_hamiltonian(Hdrv, rho0, m.dims, ts));
    if (rc.cfg.dd_sequence != "selective")
      cols.emplace_back("universal_drive", run(DDSequence::Universal, Hdrv));
    if (rc.cfg.dd_sequence != "universal")
      cols.emplace_back("selective_drive", run(DDSequence::Selective, Hdrv));
  }
  rc.mark("dd");

  std::ofstream csv(rc.out("dd_compare.csv"));
  csv << "t";
  for (auto& [name, tr] : cols) csv << "," << name;
  csv << "\n" << std::setprecision(12);
  for (size_t i = 0; i < cols.front().second.t.size(); ++i) {
    csv << cols.front().second.t[i];
    for (auto& [name, tr] : cols) csv << "," << tr.gamma[i];
    csv << "\n";
  }
  csv.close();
  if (rc.plots) {
    std::vector<PlotSeries> plot;
    for (auto& [name, tr] : cols) plot.push_back({name, tr.t, tr.gamma});
    write_svg_plot(rc.out("dd_compare.svg"), "pulse sequences: purity vs t", plot);
  }
  write_manifest(rc.cfg.out_dir, rc.cfg, rc.timings);
  return 0;
}

int cmd_eternal_bound(RunContext& rc) {
  ModelSpec m = resolve_model(rc.cfg);
  if (!m.Hu) throw ConfigError("eternal-bound requires a model with a control Hamiltonian");
  if (!m.w_hat) throw ConfigError("eternal-bound requires a designated wall state");
  TripartiteBases bases = make_bases(m.dims);
  HamiltonianTerms terms =
      extract_terms(decompose_hamiltonian(m.H, m.dims, bases), bases);
  Mat rho_e = thermal_state(environment_hamiltonian(terms.He, m.dims), rc.cfg.beta);
  Mat rho0 = kron(logical_pure_state(m.dims.nl, rc.cfg.seed),
                  Mat((*m.w_hat) * m.w_hat->adjoint()), rho_e);

  std::vector<double> sweep = rc.cfg.kappa_sweep;
  if (sweep.empty()) sweep = {1, 3, 10, 30, 100};

  std::ofstream csv(rc.out("bound_sweep.csv"));
  csv << "kappa,gamma_bar,rho_l1,bound\n" << std::setprecision(12);
  BoundReport last;
  double last_kappa = 0.0;
  std::vector<PlotSeries> plot{{"bound", {}, {}}};
  for (double kappa : sweep) {
    Mat Hk = driven_hamiltonian(m.H, m.dims, *m.Hu, kappa);
    BoundReport rep = purity_decomposition(rho0, spectral_data(Hk, kappa), m.dims);
    csv << kappa << "," << rep.gamma_bar << "," << rep.rho_l1 << "," << rep.bound << "\n";
    plot[0].x.push_back(kappa);
    plot[0].y.push_back(rep.bound);
    last = rep;
    last_kappa = kappa;
  }
  csv.close();
  rc.mark("sweep");

  Mat Hk = driven_hamiltonian(m.H, m.dims, *m.Hu, last_kappa);
  AsymptoticEigens asymp = asymptotic_eigenstates(m.H, *m.Hu, m.dims);
  IndexSets sets = index_sets(asymp, *m.w_hat, spectral_data(Hk, last_kappa), m.dims);
  EternalVerdict verdict = check_eternal_condition(sets);
  CorollaryVerdict cor =
      corollary_check(asymp, *m.w_hat, spectral_data(Hk, last_kappa), m.dims);
  rc.mark("certificate");

  std::ofstream rep(rc.out("bound_report.txt"));
  rep << std::setprecision(12);
  rep << "model = " << m.id << "\n";
  rep << "kappa = " << last_kappa << "\n";
  rep << "gamma_bar = " << last.gamma_bar << "\n";
  rep << "rho_l1 = " << last.rho_l1 << "\n";
  rep << "bound = " << last.bound << "\n";
  rep << "gamma0 = " << last.gamma0 << "\n";
  rep << "k1_size = " << sets.k1_states.size() << "\n";
  rep << "k1_k2_size = " << sets.k1_k2.size() << "\n";
  rep << "c1_k1_k2_empty = " << (verdict.empty ? "true" : "false") << "\n";
  if (verdict.witness) {
    const Quadruple& q = *verdict.witness;
    rep << "witness = (" << q.a + 1 << "," << q.b + 1 << "," << q.i + 1 << ","
        << q.j + 1 << ")\n";
    rep << "witness_lambda = " << verdict.witness_lambda << "\n";
  } else {
    rep << "witness = none\n";
  }
  rep << "corollary = "
      << (cor.status == CorollaryStatus::Holds
              ? "holds"
              : cor.status == CorollaryStatus::Fails ? "fails" : "inapplicable")
      << "\n";
  rep.close();
  if (rc.plots) write_svg_plot(rc.out("bound_sweep.svg"), "bound vs drive", plot);
  write_manifest(rc.cfg.out_dir, rc.cfg, rc.timings);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wall-state engineering toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_override;
  bool plots = false;
  std::uint64_t seed_override = 0;
  bool have_seed = false;

  std::map<std::string, int (*)(RunContext&)> handlers = {
      {"find-frame", cmd_find_frame}, {"find-wall", cmd_find_wall},
      {"simulate", cmd_simulate},     {"dd-compare", cmd_dd_compare},
      {"eternal-bound", cmd_eternal_bound}};
  for (auto& [name, fn] : handlers) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "experiment config file")->required();
    sub->add_option("--out", out_override, "output directory override");
    sub->add_option("--seed", seed_override, "root seed override")
        ->each([&](const std::string&) { have_seed = true; });
    sub->add_flag("--plots", plots, "also write SVG plots");
  }

  CLI11_PARSE(app, argc, argv);

  RunContext rc;
  rc.plots = plots;
  try {
    rc.cfg = load_config(config_path);
    if (!out_override.empty()) rc.cfg.out_dir = out_override;
    if (have_seed) rc.cfg.seed = seed_override;
    fs::create_directories(rc.cfg.out_dir);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    return handlers.at(app.get_subcommands().front()->get_name())(rc);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}
