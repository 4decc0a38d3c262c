#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <omp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "mriu/catalog.hpp"
#include "mriu/decomp.hpp"
#include "mriu/errors.hpp"
#include "mriu/invariants.hpp"
#include "mriu/minimize.hpp"
#include "mriu/moments.hpp"
#include "mriu/state_io.hpp"
#include "mriu/studies.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("MRIU_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("MRIU_SEED is not an integer: ") + env);
    }
  }
  return 1;
}

struct StateSource {
  std::string state;
  std::string file;

  void attach(CLI::App* app) {
    auto* s = app->add_option("--state", state, "catalog name or path to a JSON state file");
    auto* f = app->add_option("--state-file", file, "path to a JSON state file");
    s->excludes(f);
  }

  mriu::StateTensor load() const {
    if (state.empty() && file.empty()) throw UsageError("one of --state or --state-file is required");
    if (!file.empty()) return mriu::read_state_file(file);
    try {
      return mriu::named_state(state);
    } catch (const mriu::DomainError&) {
      if (fs::exists(state)) return mriu::read_state_file(state);
      throw;
    }
  }

  std::string label() const { return file.empty() ? state : file; }
};

json complex_json(mriu::Complex z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const mriu::ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

void emit(const json& j, const std::string& out) {
  const std::string text = j.dump(2);
  std::cout << text << '\n';
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) throw UsageError("cannot write " + out);
    f << text << '\n';
  }
}

void log_seed(std::uint64_t seed) { std::cerr << "seed: " << seed << '\n'; }

mriu::RenyiOrder parse_q(const std::string& s) {
  try {
    return mriu::RenyiOrder::parse(s);
  } catch (const mriu::DomainError& e) {
    throw UsageError(e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimal Renyi-Ingarden-Urbanik entropy of multipartite pure states"};
  app.require_subcommand(1);
  app.fallthrough();
  int threads = 0;
  app.add_option("--threads", threads, "cap on OpenMP threads (default: all cores)")->check(CLI::NonNegativeNumber);

  std::uint64_t seed = 0;
  bool seed_given = false;
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "RNG seed (default: $MRIU_SEED or 1)")->each([&](const std::string&) {
      seed_given = true;
    });
  };
  std::string q_text = "1";
  std::string out;

  // riu
  auto* riu = app.add_subcommand("riu", "minimal RIU entropy over local unitaries");
  StateSource riu_src;
  riu_src.attach(riu);
  riu->add_option("--q", q_text, "Renyi order (real >= 0 or inf)");
  mriu::RiuOptions riu_opts;
  riu->add_option("--restarts", riu_opts.restarts, "number of starts")->check(CLI::PositiveNumber);
  riu->add_option("--steps", riu_opts.max_steps, "max proposals per start")->check(CLI::PositiveNumber);
  bool symmetric = false;
  riu->add_flag("--symmetric", symmetric, "one-parameter U(p)^n scan for permutation-invariant qubit states");
  riu->add_option("--out", out, "also write the JSON result here");
  add_seed(riu);

  // entropy
  auto* ent = app.add_subcommand("entropy", "Renyi entropy of the product-basis probabilities");
  StateSource ent_src;
  ent_src.attach(ent);
  ent->add_option("--q", q_text, "Renyi order (real >= 0 or inf)");
  bool ent_hosvd = false;
  ent->add_flag("--hosvd", ent_hosvd, "use the HOSVD core instead of the given basis");

  // hosvd
  auto* hos = app.add_subcommand("hosvd", "higher-order SVD");
  StateSource hos_src;
  hos_src.attach(hos);
  std::string core_out;
  hos->add_option("--core-out", core_out, "write the core tensor as a JSON state file");

  // parafac
  auto* par = app.add_subcommand("parafac", "CP decomposition by alternating least squares");
  StateSource par_src;
  par_src.attach(par);
  std::size_t rank = 1;
  par->add_option("--rank", rank, "number of rank-one terms")->check(CLI::PositiveNumber);
  mriu::ParafacOptions par_opts;
  par->add_option("--restarts", par_opts.restarts, "random starts besides the HOSVD start")
      ->check(CLI::NonNegativeNumber);
  par->add_option("--iters", par_opts.max_iters, "max ALS sweeps")->check(CLI::PositiveNumber);
  par->add_option("--tol", par_opts.tol, "relative convergence tolerance");
  add_seed(par);

  // rank
  auto* rnk = app.add_subcommand("rank", "tensor rank estimate via PARAFAC");
  StateSource rnk_src;
  rnk_src.attach(rnk);
  double rank_tol = 1e-6;
  rnk->add_option("--tol", rank_tol, "residual tolerance relative to ||C||");
  add_seed(rnk);

  // tangle / hyperdet / schmidt-bound
  auto* tng = app.add_subcommand("tangle", "3-tangle of a three-qubit state");
  StateSource tng_src;
  tng_src.attach(tng);
  auto* hyp = app.add_subcommand("hyperdet", "four-qubit hyperdeterminant and T");
  StateSource hyp_src;
  hyp_src.attach(hyp);
  auto* sch = app.add_subcommand("schmidt-bound", "largest-Schmidt-coefficient bound on the separable overlap");
  StateSource sch_src;
  sch_src.attach(sch);

  // moments
  auto* mom = app.add_subcommand("moments", "exact even moments <tau^2k> of the 3-tangle");
  int k = 1;
  mom->add_option("--k", k, "moment index (tau^{2k})")->required();
  bool exact = false, allow_large = false;
  mom->add_flag("--exact", exact, "print the reduced fraction");
  mom->add_flag("--allow-large", allow_large, "permit 4 <= k <= 6");

  // ensemble
  auto* ens = app.add_subcommand("ensemble", "Haar-random ensemble statistics");
  mriu::EnsembleConfig ecfg;
  std::string stat = "raw", report;
  ens->add_option("--n", ecfg.n, "number of parties")->check(CLI::PositiveNumber);
  ens->add_option("--d", ecfg.d, "local dimension")->check(CLI::Range(2, 64));
  ens->add_option("--stat", stat, "raw|hosvd|riu|tangle|tangle2|hyperT|lambda_max");
  ens->add_option("--q", q_text, "Renyi order for raw/hosvd/riu");
  ens->add_option("--samples", ecfg.samples, "number of states")->check(CLI::PositiveNumber);
  ens->add_option("--bins", ecfg.bins, "histogram bins (0 = Freedman-Diaconis)");
  ens->add_option("--restarts", ecfg.riu.restarts, "optimizer starts for --stat riu")->check(CLI::PositiveNumber);
  ens->add_option("--out", out, "histogram CSV");
  ens->add_option("--report", report, "full report JSON");
  add_seed(ens);

  // scaling
  auto* scl = app.add_subcommand("scaling", "three-qudit overlap scaling study");
  mriu::ScalingConfig scfg;
  scl->add_option("--dmin", scfg.dmin)->check(CLI::Range(2, 10));
  scl->add_option("--dmax", scfg.dmax)->check(CLI::Range(2, 10));
  scl->add_option("--samples", scfg.samples)->check(CLI::Range(2, 10000000));
  scl->add_option("--lu-dmax", scfg.lu_dmax, "compute lambda_LU for d <= this (0 disables)");
  scl->add_option("--restarts", scfg.riu.restarts, "optimizer starts for lambda_LU")->check(CLI::PositiveNumber);
  scl->add_option("--out", out, "CSV table");
  scl->add_option("--report", report, "JSON report");
  add_seed(scl);

  // catalog
  auto* cat = app.add_subcommand("catalog", "list named states or export one");
  std::string export_name;
  cat->add_option("--export", export_name, "state to export as JSON");
  cat->add_option("--out", out, "destination file for --export (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (threads > 0) omp_set_num_threads(threads);
    if (!seed_given) seed = default_seed();

    if (*riu) {
      const auto c = riu_src.load();
      const auto q = parse_q(q_text);
      json j{{"state", riu_src.label()}, {"q", q.to_string()}};
      if (symmetric) {
        const auto r = mriu::riu_symmetric(c, q);
        j["method"] = "symmetric";
        j["value"] = r.value;
        j["p"] = r.p;
      } else {
        log_seed(seed);
        riu_opts.seed = seed;
        const auto r = mriu::riu_minimize(c, q, riu_opts);
        j["method"] = "random_walk";
        j["value"] = r.value;
        j["converged"] = r.converged;
        j["seed"] = seed;
        j["restart_values"] = r.trace;
        j["optimizer"] = json::array();
        for (const auto& f : r.optimizer.factors) j["optimizer"].push_back(matrix_json(f));
      }
      emit(j, out);
    } else if (*ent) {
      auto c = ent_src.load();
      if (ent_hosvd) c = mriu::hosvd(c).core;
      const auto q = parse_q(q_text);
      emit({{"state", ent_src.label()}, {"q", q.to_string()}, {"basis", ent_hosvd ? "hosvd" : "given"},
            {"value", mriu::renyi(mriu::prob_vector(c), q)}},
           "");
    } else if (*hos) {
      const auto c = hos_src.load();
      const auto h = mriu::hosvd(c);
      if (!core_out.empty()) mriu::write_state_file(core_out, h.core);
      json j{{"state", hos_src.label()}, {"kmode_sv", h.kmode_sv}};
      j["core"] = json::parse(mriu::state_to_json(h.core));
      emit(j, "");
    } else if (*par) {
      const auto c = par_src.load();
      log_seed(seed);
      par_opts.seed = seed;
      const auto m = mriu::parafac_als(c, rank, par_opts);
      json factors = json::array();
      for (const auto& f : m.factors) factors.push_back(matrix_json(f));
      emit({{"state", par_src.label()},
            {"rank", m.rank},
            {"weights", m.weights},
            {"residual", m.residual},
            {"converged", m.converged},
            {"degenerate", m.degenerate},
            {"iterations", m.iterations},
            {"factors", factors},
            {"seed", seed}},
           "");
    } else if (*rnk) {
      const auto c = rnk_src.load();
      log_seed(seed);
      mriu::ParafacOptions po;
      po.seed = seed;
      const auto r = mriu::rank_estimate(c, rank_tol, po);
      emit({{"state", rnk_src.label()},
            {"rank", r.rank},
            {"residual", r.residual},
            {"heuristic", r.heuristic},
            {"max_rank", mriu::max_tensor_rank(c.dims())},
            {"seed", seed}},
           "");
    } else if (*tng) {
      const auto c = tng_src.load();
      emit({{"state", tng_src.label()},
            {"invariant", "tau"},
            {"value", mriu::tangle(c)},
            {"det3", complex_json(mriu::det3(c))}},
           "");
    } else if (*hyp) {
      const auto c = hyp_src.load();
      c.require_normalized();
      emit({{"state", hyp_src.label()},
            {"invariant", "T"},
            {"value", mriu::hyper_t(c)},
            {"det4", complex_json(mriu::det4(c))}},
           "");
    } else if (*sch) {
      const auto c = sch_src.load();
      c.require_normalized();
      emit({{"state", sch_src.label()}, {"value", mriu::schmidt_bound(c)}}, "");
    } else if (*mom) {
      const auto m = mriu::tangle_even_moment(k, allow_large);
      if (exact) std::cout << mriu::to_string(m) << '\n';
      std::cout << std::setprecision(17) << m.get_d() << '\n';
    } else if (*ens) {
      ecfg.statistic = mriu::parse_statistic(stat);
      ecfg.q = parse_q(q_text);
      ecfg.seed = seed;
      log_seed(seed);
      const auto r = mriu::ensemble_stat(ecfg);
      if (!out.empty()) {
        std::ofstream f(out);
        if (!f) throw UsageError("cannot write " + out);
        mriu::write_histogram_csv(f, r.histogram);
      }
      if (!report.empty()) {
        std::ofstream f(report);
        if (!f) throw UsageError("cannot write " + report);
        f << mriu::report_to_json(r) << '\n';
      }
      std::cout << r.statistic << ": samples=" << r.samples << " mean=" << r.mean
                << " second_moment=" << r.second_moment << " std=" << r.stddev << " seed=" << r.seed << '\n';
    } else if (*scl) {
      if (scfg.dmax < scfg.dmin) throw UsageError("--dmax must be >= --dmin");
      scfg.seed = seed;
      log_seed(seed);
      const auto r = mriu::scaling_study(scfg);
      if (!out.empty()) {
        std::ofstream f(out);
        if (!f) throw UsageError("cannot write " + out);
        mriu::write_scaling_csv(f, r);
      }
      if (!report.empty()) {
        std::ofstream f(report);
        if (!f) throw UsageError("cannot write " + report);
        f << mriu::scaling_to_json(r) << '\n';
      }
      mriu::write_scaling_csv(std::cout, r);
      std::cout << "slope lambda_h " << r.lambda_h_fit.slope << " +- " << r.lambda_h_fit.slope_se
                << ", lambda_p " << r.lambda_p_fit.slope << " +- " << r.lambda_p_fit.slope_se << '\n';
    } else if (*cat) {
      if (!export_name.empty()) {
        const auto c = mriu::named_state(export_name);
        if (out.empty()) {
          std::cout << mriu::state_to_json(c) << '\n';
        } else {
          mriu::write_state_file(out, c);
        }
      } else {
        for (const auto& e : mriu::catalog_entries()) {
          std::cout << std::left << std::setw(10) << e.name << ' ';
          for (std::size_t i = 0; i < e.dims.size(); ++i) std::cout << (i ? "x" : "") << e.dims[i];
          std::cout << "  " << e.description << '\n';
        }
        std::cout << "D(n,k)     2^n       Dicke state, 0 <= k <= n\n";
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const mriu::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
