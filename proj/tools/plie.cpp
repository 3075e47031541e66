#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "plie/run.hpp"

namespace {

struct Flags {
  std::string suite, kappa, config, out, space;
  int n = 0, d = 0, l = 0;
  std::uint64_t seed = 0, samples = 0, index = 0;
  double radius = 0, tol_exact = 0, tol_fd = 0, fd_step = 0;
  unsigned threads = 0;
};

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--n", f.n, "rows of A (size n)");
  app->add_option("--d", f.d, "columns of A (size d)");
  app->add_option("--l", f.l, "group size for GL(l) brackets");
  app->add_option("--seed", f.seed, "random seed (PLIE_SEED if absent)");
  app->add_option("--radius", f.radius, "sampling disk radius");
  app->add_option("--config", f.config, "JSON config file; flags take precedence");
}

/// defaults < config file < PLIE_SEED < flags.
plie::RunConfig resolve(CLI::App* app, const Flags& f) {
  plie::RunConfig cfg;
  if (app->count("--config")) plie::apply_config(cfg, plie::read_config_file(f.config));
  if (const char* env = std::getenv("PLIE_SEED")) {
    try {
      std::size_t used = 0;
      const std::string s(env);
      cfg.seed = std::stoull(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
    } catch (const std::exception&) {
      throw plie::ConfigError("PLIE_SEED must be an unsigned integer");
    }
  }
  auto given = [app](const char* name) {
    try {
      return app->count(name) > 0;
    } catch (const CLI::OptionNotFound&) {
      return false;
    }
  };
  if (given("--suite")) cfg.suite = f.suite;
  if (given("--n")) cfg.n = f.n;
  if (given("--d")) cfg.d = f.d;
  if (given("--l")) cfg.l = f.l;
  if (given("--kappa")) cfg.kappa = plie::parse_kappa(f.kappa);
  if (given("--seed")) cfg.seed = f.seed;
  if (given("--samples")) cfg.samples = f.samples;
  if (given("--radius")) {
    if (!(f.radius > 0.0)) throw plie::ConfigError("radius must be > 0");
    cfg.radius = f.radius;
  }
  if (given("--tol-exact")) cfg.tol_exact = f.tol_exact;
  if (given("--tol-fd")) cfg.tol_fd = f.tol_fd;
  if (given("--fd-step")) cfg.fd_step = f.fd_step;
  if (given("--out")) cfg.out = f.out;
  if (given("--threads")) cfg.threads = f.threads;
  return cfg;
}

int emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    std::cerr << "error: cannot write " << path << "\n";
    return plie::kExitConfig;
  }
  os << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"plie: covariant Poisson structures on S(n,d) and their decoupling"};
  app.require_subcommand(1);
  Flags f;

  auto* verify = app.add_subcommand("verify", "run a verification suite and print a JSON report");
  add_common(verify, f);
  verify->add_option("--suite", f.suite,
                     "jacobi, decouple-m, decouple-F, factorization, ao-maps, moment, lemma4, symplectic, rank, "
                     "zakrzewski, actions or all");
  verify->add_option("--kappa", f.kappa, "kappa as re,im");
  verify->add_option("--samples", f.samples, "number of seeded sample points");
  verify->add_option("--tol-exact", f.tol_exact, "tolerance of exactly differentiated checks");
  verify->add_option("--tol-fd", f.tol_fd, "tolerance of finite-difference checks");
  verify->add_option("--fd-step", f.fd_step, "finite-difference step");
  verify->add_option("--out", f.out, "report path (default stdout)");
  verify->add_option("--threads", f.threads, "worker threads (default: hardware)");

  auto* gen = app.add_subcommand("gen-point", "print a seeded random point as JSON");
  add_common(gen, f);
  gen->add_option("--space", f.space, "spin, S, gl, dual or tuple")->required();
  gen->add_option("--index", f.index, "sample index");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return plie::kExitConfig;
  }

  try {
    if (*verify) {
      const plie::RunConfig cfg = resolve(verify, f);
      const plie::RunResult r = plie::run_suite(cfg);
      if (!r.message.empty()) std::cerr << "error: " << r.message << "\n";
      if (!r.report.empty()) {
        if (const int rc = emit(r.report, cfg.out)) return rc;
      }
      return r.exit_code;
    }
    const plie::RunConfig cfg = resolve(gen, f);
    return emit(plie::gen_point(cfg, f.space, f.index).dump(2) + "\n", cfg.out);
  } catch (const plie::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return plie::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return plie::kExitInternal;
  }
}
