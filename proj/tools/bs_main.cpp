#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bs/experiment.hpp"
#include "bs/geometry.hpp"
#include "bs/io.hpp"

namespace fs = std::filesystem;
using namespace bs;
using io::json;

namespace {

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::ZeroParameter:
    case ErrorCode::PresentationMismatch:
    case ErrorCode::WrongClass:
    case ErrorCode::ParseError:
    case ErrorCode::WeightSumError:
    case ErrorCode::DuplicateSupport:
    case ErrorCode::ConfigError:
    case ErrorCode::WrongDrift:
      return 2;
    case ErrorCode::OracleUnresolved:
    case ErrorCode::CapExceeded:
    case ErrorCode::TruncationError:
    case ErrorCode::DepthTooDeep:
    case ErrorCode::NotAdjacent:
    case ErrorCode::DegenerateStrip:
    case ErrorCode::MembershipError:
    case ErrorCode::InsufficientSamples:
      return 3;
    case ErrorCode::IOError:
    case ErrorCode::InternalError:
      return 4;
  }
  return 4;
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string fmt(double v) { return io::format_double(v); }

struct Options {
  int p = 0, q = 0;
  std::string config;
  std::uint64_t seed = 0;
  std::uint64_t trajectories = 100;
  std::int64_t steps = 1000;
  int depth = 8;
  std::string out;
  int bfs_cap = 10;
  std::vector<std::string> words;
};

struct LoadedMeasure {
  json cfg;
  walk::Measure m;
  std::uint64_t hash = 0;
};

LoadedMeasure load_measure(const std::string& path) {
  if (path.empty()) fail(ErrorCode::ConfigError, "--config is required here");
  json j = io::load_json_file(path);
  LoadedMeasure lm{j, io::measure_from_json(j), io::config_hash(j)};
  if (!lm.m.generation.certified) {
    std::cerr << "warning: generation certificate not found up to depth "
              << lm.m.generation.depth_cap << "; missing:";
    for (const auto& g : lm.m.generation.missing) std::cerr << " " << g;
    if (!lm.m.generation.search_exhausted) std::cerr << " (search capped)";
    std::cerr << "\n";
  }
  return lm;
}

std::vector<std::pair<std::string, std::string>> meta_for(std::uint64_t hash,
                                                          std::uint64_t seed) {
  return {{"version", io::kVersion}, {"config", hex64(hash)}, {"seed", std::to_string(seed)}};
}

std::string out_file(const std::string& dir, const std::string& name) {
  fs::create_directories(dir);
  return (fs::path(dir) / name).string();
}

core::Presentation pres_from(const Options& o) {
  if (o.p == 0 && o.q == 0)
    fail(ErrorCode::ConfigError, "--p and --q are required here");
  return core::classify(o.p, o.q);
}

std::uint64_t pq_hash(const core::Presentation& pres) {
  json j;
  j["p"] = pres.raw_p;
  j["q"] = pres.raw_q;
  return io::config_hash(j);
}

void cmd_classify(const Options& o) {
  auto pres = pres_from(o);
  std::cout << core::group_class_name(pres.cls) << " normalized p=" << pres.p
            << " q=" << pres.q << "\n";
}

void need_words(const Options& o, std::size_t n) {
  if (o.words.size() != n)
    fail(ErrorCode::ConfigError,
         "expected " + std::to_string(n) + " word(s), got " + std::to_string(o.words.size()));
}

void cmd_reduce(const Options& o) {
  auto pres = pres_from(o);
  need_words(o, 1);
  std::cout << core::reduce(pres, o.words[0]).to_string() << "\n";
}

void cmd_mul(const Options& o) {
  auto pres = pres_from(o);
  need_words(o, 2);
  auto g = core::reduce(pres, o.words[0]);
  auto h = core::reduce(pres, o.words[1]);
  std::cout << core::multiply(g, h).to_string() << "\n";
}

void cmd_inv(const Options& o) {
  auto pres = pres_from(o);
  need_words(o, 1);
  std::cout << core::invert(core::reduce(pres, o.words[0])).to_string() << "\n";
}

void cmd_ball(const Options& o) {
  auto pres = pres_from(o);
  auto counts = geom::ball_growth(pres, o.depth, std::max(o.bfs_cap, o.depth));
  if (!o.out.empty()) {
    io::CsvWriter csv(out_file(o.out, "ball.csv"), {"radius", "count"},
                      meta_for(pq_hash(pres), o.seed));
    for (std::size_t r = 0; r < counts.size(); ++r)
      csv.row({std::to_string(r), std::to_string(counts[r])});
  }
  for (std::size_t r = 0; r < counts.size(); ++r)
    std::cout << r << "," << counts[r] << "\n";
}

void cmd_metrics(const Options& o) {
  auto pres = pres_from(o);
  need_words(o, 2);
  auto g = core::reduce(pres, o.words[0]);
  auto h = core::reduce(pres, o.words[1]);
  std::cout << "d_tree=" << geom::d_tree(proj::project_tree(g), proj::project_tree(h))
            << "\n";
  if (pres.cls == core::GroupClass::EqualAbs)
    std::cout << "d_eucl=" << fmt(geom::d_eucl(proj::project_euclid(g), proj::project_euclid(h)))
              << "\n";
  else
    std::cout << "d_hyp=" << fmt(geom::d_hyp(proj::project_hyp(g), proj::project_hyp(h)))
              << "\n";
  auto diff = core::multiply(core::invert(g), h);
  auto wl = core::word_length(diff, o.bfs_cap);
  std::cout << "d_word_lo=" << wl.lower << "\n";
  std::cout << "d_word_hi=" << wl.upper << "\n";
}

walk::WalkConfig simulate_config(const Options& o) {
  walk::WalkConfig cfg;
  cfg.steps = o.steps;
  cfg.checkpoints = walk::geometric_checkpoints(o.steps);
  cfg.prefix_depth = o.depth;
  cfg.dense_lambda = false;
  return cfg;
}

void cmd_simulate(const Options& o) {
  auto lm = load_measure(o.config);
  if (o.out.empty()) fail(ErrorCode::ConfigError, "simulate needs --out");
  walk::WalkConfig cfg = simulate_config(o);
  io::JsonlWriter w(out_file(o.out, "trajectories.jsonl"));
  json header;
  header["schema"] = io::kTrajSchema;
  header["version"] = io::kVersion;
  header["config"] = hex64(lm.hash);
  header["seed"] = o.seed;
  header["p"] = lm.m.pres.raw_p;
  header["q"] = lm.m.pres.raw_q;
  header["steps"] = o.steps;
  header["trajectories"] = o.trajectories;
  header["prefix_depth"] = o.depth;
  w.line(header);
  walk::Sampler sampler(lm.m);
  for (std::uint64_t i = 0; i < o.trajectories; ++i) {
    auto t = walk::run_trajectory(lm.m, sampler, o.seed, i, cfg);
    for (const auto& cp : t.cps) w.line(io::checkpoint_to_json(i, cp, lm.m.pres));
  }
  std::cout << "wrote " << out_file(o.out, "trajectories.jsonl") << "\n";
}

void cmd_stats(const Options& o) {
  auto lm = load_measure(o.config);
  if (o.out.empty()) fail(ErrorCode::ConfigError, "stats needs --out (the run directory)");
  auto records = io::read_jsonl((fs::path(o.out) / "trajectories.jsonl").string());
  auto ts = io::trajectories_from_records(records);
  if (ts.empty()) fail(ErrorCode::ConfigError, "no checkpoint records found");
  std::cout << "trajectories=" << ts.size() << "\n";
  bool has_tree = !ts[0].cps.empty() && ts[0].cps.back().tree_depth >= 0;
  bool has_B = !ts[0].cps.empty() && ts[0].cps.back().has_B;
  if (has_tree) {
    auto rep = expt::tree_convergence_from(ts, o.depth);
    std::cout << "final_fraction=" << fmt(rep.final_fraction) << "\n";
  }
  if (has_B) {
    auto sp = expt::speed_from(ts, lm.m.pres);
    if (!sp.median.empty())
      std::cout << "speed_median_final=" << fmt(sp.median.back()) << "\n";
    int sign = expt::drift_sign(lm.m);
    if (sign != 0) {
      auto hyp = expt::hyp_limit_from(ts, lm.m.pres, sign);
      if (sign < 0)
        std::cout << "residual_frac_below_1e-3=" << fmt(hyp.frac_residual_below(1e-3))
                  << "\n";
      else
        std::cout << "frac_ln_A_positive=" << fmt(hyp.frac_ln_A_above(0.0)) << "\n";
      std::cout << "median_abs_B=" << fmt(hyp.median_abs_B()) << "\n";
    }
  }
}

expt::WalkSetup setup_from(const Options& o, const LoadedMeasure& lm) {
  return {lm.m, o.seed, o.trajectories, o.steps};
}

void cmd_converge_tree(const Options& o) {
  auto lm = load_measure(o.config);
  auto rep = expt::run_tree_convergence(setup_from(o, lm), o.depth);
  if (!o.out.empty()) {
    io::CsvWriter csv(out_file(o.out, "converge_tree.csv"), {"n", "frac_stable"},
                      meta_for(lm.hash, o.seed));
    for (std::size_t i = 0; i < rep.schedule.size(); ++i)
      csv.row({std::to_string(rep.schedule[i]), fmt(rep.frac_stable[i])});
  }
  std::cout << "prefix_depth=" << rep.prefix_depth << "\n";
  std::cout << "final_fraction=" << fmt(rep.final_fraction) << "\n";
}

void cmd_converge_hyp(const Options& o) {
  auto lm = load_measure(o.config);
  auto rep = expt::run_hyp_limit(setup_from(o, lm));
  if (!o.out.empty()) {
    io::CsvWriter csv(out_file(o.out, "converge_hyp.csv"),
                      {"stream", "lambda_final", "ln_A_final", "residual_half", "abs_B_final"},
                      meta_for(lm.hash, o.seed));
    for (const auto& r : rep.rows)
      csv.row({std::to_string(r.stream), std::to_string(r.lambda_final), fmt(r.ln_A_final),
               fmt(r.residual_half), fmt(r.abs_B_final)});
  }
  std::cout << "drift_sign=" << rep.drift_sign << "\n";
  if (rep.drift_sign < 0) {
    std::cout << "residual_frac_below_1e-3=" << fmt(rep.frac_residual_below(1e-3)) << "\n";
    std::cout << "median_abs_B=" << fmt(rep.median_abs_B()) << "\n";
  } else {
    std::cout << "frac_ln_A_positive=" << fmt(rep.frac_ln_A_above(0.0)) << "\n";
  }
}

void cmd_speed(const Options& o) {
  auto lm = load_measure(o.config);
  auto rep = expt::run_speed(setup_from(o, lm));
  if (!o.out.empty()) {
    io::CsvWriter csv(out_file(o.out, "speed.csv"), {"n", "median_speed", "q25", "q75"},
                      meta_for(lm.hash, o.seed));
    for (std::size_t i = 0; i < rep.ns.size(); ++i)
      csv.row({std::to_string(rep.ns[i]), fmt(rep.median[i]), fmt(rep.q25[i]),
               fmt(rep.q75[i])});
  }
  for (std::size_t i = 0; i < rep.ns.size(); ++i)
    std::cout << rep.ns[i] << "," << fmt(rep.median[i]) << "," << fmt(rep.q25[i]) << ","
              << fmt(rep.q75[i]) << "\n";
}

void cmd_ladder(const Options& o) {
  auto lm = load_measure(o.config);
  std::int64_t k_max = std::min<std::int64_t>(1000, o.steps / 10);
  if (k_max < 10) fail(ErrorCode::ConfigError, "--steps too small for the record-gap tail");
  auto rep = expt::run_ladder(setup_from(o, lm), 10, k_max, 10000);
  if (!o.out.empty()) {
    io::CsvWriter csv(out_file(o.out, "ladder.csv"), {"k", "survival"},
                      meta_for(lm.hash, o.seed));
    for (std::size_t i = 0; i < rep.ks.size(); ++i)
      csv.row({std::to_string(rep.ks[i]), fmt(rep.survival[i])});
  }
  std::cout << "gaps=" << rep.gap_count << "\n";
  std::cout << "slope=" << fmt(rep.slope) << "\n";
}

void cmd_hitting(const Options& o) {
  auto lm = load_measure(o.config);
  auto rep = expt::run_hitting(setup_from(o, lm), o.depth);
  if (!o.out.empty()) {
    io::CsvWriter csv(out_file(o.out, "hitting.csv"), {"depth", "cell", "mass"},
                      meta_for(lm.hash, o.seed));
    for (int d = 1; d <= rep.depth; ++d)
      for (const auto& cell : rep.by_depth[d - 1])
        csv.row({std::to_string(d), cell.prefix,
                 fmt(static_cast<double>(cell.count) / static_cast<double>(rep.total))});
  }
  std::cout << "ends=" << rep.total << "\n";
  std::cout << "refinement=" << (rep.refinement_consistent ? "ok" : "violated") << "\n";
  std::cout << "depth1_cells=" << (rep.depth1_possible - rep.depth1_zero_cells) << "/"
            << rep.depth1_possible << "\n";
  for (int d = 1; d <= rep.depth; ++d)
    std::cout << "max_mass_d" << d << "=" << fmt(rep.max_mass[d - 1]) << "\n";
}

void cmd_strip_check(const Options& o) {
  auto lm = load_measure(o.config);
  boundary::GaugeMode mode;
  std::int64_t end_steps;
  if (lm.m.pres.cls == core::GroupClass::EqualAbs) {
    mode = boundary::GaugeMode::EqualAbs;
    end_steps = 20 * o.steps;
  } else {
    int sign = expt::drift_sign(lm.m);
    if (sign > 0)
      fail(ErrorCode::WrongDrift,
           "strip-check needs drift <= 0; reflect the measure first");
    mode = sign < 0 ? boundary::GaugeMode::WordBall : boundary::GaugeMode::ZeroDrift;
    end_steps = sign < 0 ? 20 * o.steps : 40 * o.steps;
  }
  std::vector<std::int64_t> schedule;
  for (std::int64_t n = 10; n < o.steps; n *= 10) schedule.push_back(n);
  schedule.push_back(o.steps);
  auto rep = expt::run_strip_audit(setup_from(o, lm), mode, schedule, end_steps, o.bfs_cap);
  if (!o.out.empty()) {
    io::CsvWriter csv(out_file(o.out, "strip.csv"),
                      {"n", "count_lo", "count_hi", "log_over_n"}, meta_for(lm.hash, o.seed));
    for (const auto& r : rep.rows)
      csv.row({std::to_string(r.n), r.at_lo.count_lo.get_str(), r.at_hi.count_hi.get_str(),
               fmt(r.ln_over_n)});
  }
  std::cout << "mode=" << (mode == boundary::GaugeMode::WordBall
                               ? "word-ball"
                               : (mode == boundary::GaugeMode::ZeroDrift ? "zero-drift"
                                                                         : "equal-abs"))
            << "\n";
  std::cout << "window=" << rep.window << "\n";
  std::cout << "bounds=" << (rep.all_bounds_ok ? "ok" : "violated") << "\n";
  for (const auto& r : rep.rows)
    std::cout << "n=" << r.n << " k=[" << r.k.lo << "," << r.k.hi << "] count=["
              << r.at_lo.count_lo.get_str() << "," << r.at_hi.count_hi.get_str()
              << "] log_over_n=" << fmt(r.ln_over_n) << "\n";
}

void cmd_bilipschitz(const Options& o) {
  auto pres = pres_from(o);
  if (!pres.hyperbolic_class())
    fail(ErrorCode::WrongClass, "bilipschitz audit needs a hyperbolic-plane class");
  geom::PlanePath path = geom::make_plane_path(
      pres, std::vector<int>(static_cast<std::size_t>(o.depth) + 1, 0),
      std::vector<int>(static_cast<std::size_t>(o.depth) + 1, 0));
  auto rep = geom::bilipschitz_audit(path, o.depth);
  if (!o.out.empty()) {
    io::CsvWriter csv(out_file(o.out, "bilipschitz.csv"),
                      {"pair_id", "d_plane", "d_hyp", "ratio"}, meta_for(pq_hash(pres), o.seed));
    for (std::size_t i = 0; i < rep.rows.size(); ++i)
      csv.row({std::to_string(i), std::to_string(rep.rows[i].d_plane), fmt(rep.rows[i].d_hyp),
               fmt(rep.rows[i].ratio)});
  }
  std::cout << "pairs=" << rep.pairs << "\n";
  std::cout << "forward_violations=" << rep.forward_violations << "\n";
  std::cout << "max_ratio=" << fmt(rep.max_ratio) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Baumslag-Solitar group calculator and random-walk lab"};
  app.set_version_flag("--version", io::kVersion);
  app.require_subcommand(1);

  Options o;
  auto add_pq = [&](CLI::App* sub) {
    sub->add_option("--p", o.p, "first parameter of BS(p,q)")->required();
    sub->add_option("--q", o.q, "second parameter of BS(p,q)")->required();
  };
  auto add_run = [&](CLI::App* sub, bool with_traj = true) {
    sub->add_option("--config", o.config, "measure config JSON")->required();
    sub->add_option("--seed", o.seed, "master seed");
    if (with_traj) sub->add_option("--trajectories", o.trajectories, "trajectory count");
    sub->add_option("--steps", o.steps, "steps per trajectory");
    sub->add_option("--out", o.out, "output directory");
  };

  auto* classify = app.add_subcommand("classify", "normalize and classify a presentation");
  add_pq(classify);

  auto add_words = [&](CLI::App* sub) {
    sub->add_option("--word", o.words, "word over a,b (letters a A b B, e.g. \"a b^2 A\")");
    sub->add_option("words", o.words, "words (positional)");
  };

  auto* reduce = app.add_subcommand("reduce", "normal form of a word");
  add_pq(reduce);
  add_words(reduce);

  auto* mul = app.add_subcommand("mul", "product of two words");
  add_pq(mul);
  add_words(mul);

  auto* inv = app.add_subcommand("inv", "inverse of a word");
  add_pq(inv);
  add_words(inv);

  auto* ball = app.add_subcommand("ball", "word-metric ball sizes");
  add_pq(ball);
  ball->add_option("--depth", o.depth, "ball radius")->required();
  ball->add_option("--bfs-cap", o.bfs_cap, "search cap")->default_val(12);
  ball->add_option("--out", o.out, "output directory");
  ball->add_option("--seed", o.seed, "echoed into file headers");

  auto* metrics = app.add_subcommand("metrics", "distances between two elements");
  add_pq(metrics);
  add_words(metrics);
  metrics->add_option("--bfs-cap", o.bfs_cap, "word-length search cap");

  auto* simulate = app.add_subcommand("simulate", "run trajectories, write checkpoints");
  add_run(simulate);
  simulate->add_option("--depth", o.depth, "tree prefix depth");

  auto* stats = app.add_subcommand("stats", "offline diagnostics from recorded checkpoints");
  add_run(stats, false);
  stats->add_option("--depth", o.depth, "tree prefix depth");

  auto* ctree = app.add_subcommand("converge-tree", "tree-boundary convergence study");
  add_run(ctree);
  ctree->add_option("--depth", o.depth, "tree prefix depth");

  auto* chyp = app.add_subcommand("converge-hyp", "plane-limit convergence study");
  add_run(chyp);

  auto* speed = app.add_subcommand("speed", "escape speed quartiles over time");
  add_run(speed);

  auto* ladder = app.add_subcommand("ladder", "level record-gap tail");
  add_run(ladder);

  auto* hitting = app.add_subcommand("hitting", "boundary hitting histogram");
  add_run(hitting);
  hitting->add_option("--depth", o.depth, "histogram depth");

  auto* strip = app.add_subcommand("strip-check", "strip intersection cardinality audit");
  add_run(strip, false);
  strip->add_option("--bfs-cap", o.bfs_cap, "word-length search cap")->default_val(6);

  auto* bilip = app.add_subcommand("bilipschitz", "plane vs half-plane metric comparison");
  add_pq(bilip);
  bilip->add_option("--depth", o.depth, "audit radius")->required();
  bilip->add_option("--out", o.out, "output directory");
  bilip->add_option("--seed", o.seed, "echoed into file headers");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (classify->parsed()) cmd_classify(o);
    else if (reduce->parsed()) cmd_reduce(o);
    else if (mul->parsed()) cmd_mul(o);
    else if (inv->parsed()) cmd_inv(o);
    else if (ball->parsed()) cmd_ball(o);
    else if (metrics->parsed()) cmd_metrics(o);
    else if (simulate->parsed()) cmd_simulate(o);
    else if (stats->parsed()) cmd_stats(o);
    else if (ctree->parsed()) cmd_converge_tree(o);
    else if (chyp->parsed()) cmd_converge_hyp(o);
    else if (speed->parsed()) cmd_speed(o);
    else if (ladder->parsed()) cmd_ladder(o);
    else if (hitting->parsed()) cmd_hitting(o);
    else if (strip->parsed()) cmd_strip_check(o);
    else if (bilip->parsed()) cmd_bilipschitz(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
