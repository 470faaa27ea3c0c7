// cobound: construction, exact coboundary expansion, certification and testing.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cobound/building_like.hpp"
#include "cobound/error.hpp"
#include "cobound/expansion.hpp"
#include "cobound/f2.hpp"
#include "cobound/io.hpp"
#include "cobound/matroids.hpp"
#include "cobound/spherical_building.hpp"
#include "cobound/tester.hpp"

using namespace cobound;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;
constexpr int kExitCertification = 4;

struct Clock {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

std::uint64_t default_budget() {
  if (const char* env = std::getenv("COBOUND_BUDGET")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "COBOUND_BUDGET is not an integer");
    }
  }
  return kDefaultBudget;
}

void emit(const Json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  out << j.dump(2) << '\n';
}

int param(const std::vector<std::string>& params, std::size_t i, const char* name) {
  if (i >= params.size()) throw Error(ErrorCode::InvalidArgument, std::string("missing parameter ") + name);
  try {
    return std::stoi(params[i]);
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidArgument, std::string("parameter ") + name + " is not an integer");
  }
}

Artifact build_family(const std::string& family, const std::vector<std::string>& params, std::uint64_t budget,
                      RunManifest& manifest) {
  if (family == "simplex") return simplex_artifact(param(params, 0, "n"));
  if (family == "partition") return partition_artifact(param(params, 0, "n"), param(params, 1, "m"), budget);
  if (family == "building") return building_artifact(param(params, 0, "n"), param(params, 1, "q"));
  if (params.empty()) throw Error(ErrorCode::InvalidArgument, "missing input file");
  manifest.inputs.emplace_back(params[0], file_hash(params[0]));
  if (family == "matroid") {
    std::ifstream in(params[0]);
    try {
      return matroid_artifact(matroid_spec_from_json(Json::parse(in)), manifest.seed);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::ParseError, e.what());
    }
  }
  if (family == "file") return load_complex(params[0]);
  throw Error(ErrorCode::InvalidArgument, "unknown family " + family);
}

Artifact load_input(const std::string& path, RunManifest& manifest) {
  manifest.inputs.emplace_back(path, file_hash(path));
  return load_complex(path);
}

std::vector<BoundCertificate> family_bounds(const Artifact& a, int k) {
  const int n = a.complex->dimension();
  std::vector<BoundCertificate> out;
  if (a.family == "simplex") out.push_back(bound_simplex(n, k));
  if (a.family == "partition") {
    const int m = a.params.at("m").get<int>();
    out.push_back(bound_expcolor(n, k, m));
    out.push_back(bound_epsilon1(n, k));
  }
  if (a.family == "matroid") out.push_back(bound_epsilon1(n, k));
  if (a.family == "building") out.push_back(bound_epsilon2(n, k, factorial(n + 2)));
  return out;
}

int cmd_build(const std::string& family, const std::vector<std::string>& params, const std::string& out,
              const std::string& facets_out, std::uint64_t budget, std::uint64_t seed) {
  Clock clock;
  RunManifest manifest{"build", {}, {{"family", family}, {"params", params}}, seed, budget};
  Artifact a = build_family(family, params, budget, manifest);
  manifest.wall_time = clock.seconds();
  emit(artifact_to_json(a, manifest), out);
  if (!facets_out.empty()) {
    std::ofstream f(facets_out);
    if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + facets_out);
    write_facets(f, *a.complex);
  }
  return 0;
}

int cmd_hk(const std::string& input, int k, std::uint64_t budget, bool no_prune, unsigned threads,
           const std::string& out) {
  Clock clock;
  RunManifest manifest{"hk", {}, {{"dim", k}, {"prune", !no_prune}, {"threads", threads}}, 0, budget};
  Artifact a = load_input(input, manifest);
  const ExpansionResult r = h_exact(*a.complex, k, HkOptions{budget, !no_prune, threads});
  Json j = to_json(r, *a.complex);
  manifest.wall_time = clock.seconds();
  j["manifest"] = to_json(manifest);
  emit(j, out);
  return 0;
}

int cmd_bounds(const std::string& input, const std::string& family, const std::vector<std::string>& params, int k,
               std::uint64_t budget, const std::string& out) {
  Clock clock;
  RunManifest manifest{"bounds", {}, {{"dim", k}}, 0, budget};
  Artifact a = input.empty() ? build_family(family, params, budget, manifest) : load_input(input, manifest);
  const PureComplex& X = *a.complex;
  if (k < 0 || k >= X.dimension()) throw Error(ErrorCode::DimensionMismatch, "need 0 <= dim < n");
  Json certs = Json::array();
  for (const auto& b : family_bounds(a, k)) certs.push_back(to_json(b));
  if (a.family == "partition") {
    const Rational theta = theta_closed_form(X.dimension(), a.params.at("m").get<int>(), k);
    certs.push_back(to_json(BoundCertificate{"theta-closed-form", BoundSide::Lower, 1 / theta,
                                             {{"theta_k", to_fraction_string(theta)}}}));
  }
  try {
    certs.push_back(to_json(singleton_upper_bound(X, k, budget)));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BudgetExceeded) throw;
  }
  manifest.wall_time = clock.seconds();
  emit({{"manifest", to_json(manifest)}, {"family", a.family}, {"k", k}, {"certificates", certs}}, out);
  return 0;
}

int cmd_certify(const std::string& input, int kmax, std::uint64_t budget, const std::string& out) {
  Clock clock;
  RunManifest manifest{"certify", {}, {{"kmax", kmax}}, 0, budget};
  Artifact a = load_input(input, manifest);
  const PureComplex& X = *a.complex;
  kmax = std::min(kmax, X.dimension() - 1);
  const BuildingLikeStructure st = artifact_structure(a, budget);
  const StructureReport report = verify_structure(st, kmax);
  bool ok = report.passed();
  Json levels = Json::array();
  if (ok && kmax >= 0) {
    const FillingFamily chains = build_filling(st, kmax);
    ok &= !verify_filling(X, chains).has_value();
    ok &= !verify_support(X, chains, *st.family).has_value();
    for (int k = 0; k <= kmax; ++k) {
      bool homotopy = true;
      for (std::size_t i = 0; i < X.face_count(k); ++i)
        homotopy &= check_homotopy(X, chains, 0, BitChain::indicator(X, k, i));
      const std::uint64_t a_k = compute_a_k(st, k);
      const ThetaReport theta = compute_theta(X, chains, k, st.family.get());
      Json certs = Json::array();
      std::vector<BoundCertificate> all = family_bounds(a, k);
      for (auto& c : certified_bounds(X, k, a_k, theta)) all.push_back(std::move(c));
      for (const auto& c : all) certs.push_back(to_json(c));
      Json level = {{"k", k}, {"homotopy", homotopy}, {"a_k", a_k}, {"theta", to_json(theta)}, {"certificates", certs}};
      try {
        const ExpansionResult h = h_exact(X, k, HkOptions{budget, true, 1});
        bool respected = true;
        for (const auto& c : all) respected &= respects(c, h.value);
        level["h_exact"] = to_fraction_string(h.value);
        level["bounds_respected"] = respected;
        ok &= respected;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::BudgetExceeded) throw;
      }
      ok &= homotopy;
      levels.push_back(level);
    }
  }
  manifest.wall_time = clock.seconds();
  emit({{"manifest", to_json(manifest)}, {"passed", ok}, {"structure", to_json(report)}, {"levels", levels}}, out);
  return ok ? 0 : kExitCertification;
}

int cmd_test(const std::string& input, const std::string& cochain, const TesterConfig& cfg, std::uint64_t budget,
             const std::string& out) {
  Clock clock;
  RunManifest manifest{"test", {}, {{"dim", cfg.k}, {"trials", cfg.trials}, {"threads", cfg.threads}}, cfg.seed,
                       budget};
  Artifact a = load_input(input, manifest);
  manifest.inputs.emplace_back(cochain, file_hash(cochain));
  const BitChain alpha = read_cochain(cochain, *a.complex, cfg.k);
  const TesterReport r = run_tester(*a.complex, alpha, cfg, std::nullopt, budget);
  Json j = to_json(r);
  manifest.wall_time = clock.seconds();
  j["manifest"] = to_json(manifest);
  emit(j, out);
  return 0;
}

int cmd_explore(const std::vector<int>& qs, int n, std::uint64_t budget, unsigned threads, const std::string& out) {
  const auto rows = explore_conjecture(n, qs, HkOptions{budget, true, threads});
  if (out.empty() || out == "-") {
    write_conjecture_csv(std::cout, rows);
  } else {
    std::ofstream f(out);
    if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + out);
    write_conjecture_csv(f, rows);
  }
  return 0;
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::BudgetExceeded: return kExitBudget;
    case ErrorCode::FillFailed:
    case ErrorCode::MissingChain: return kExitCertification;
    default: return kExitInput;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact coboundary expansion of simplicial complexes over F2"};
  app.require_subcommand(1);
  std::string out;
  std::optional<std::uint64_t> budget_flag;
  unsigned threads = 1;

  auto* build = app.add_subcommand("build", "Build a complex artifact");
  std::string family;
  std::vector<std::string> params;
  std::string facets_out;
  std::uint64_t seed = 1;
  build->add_option("--family", family, "simplex|partition|building|matroid|file")->required();
  build->add_option("params", params, "Family parameters or input file");
  build->add_option("-o,--output", out, "Artifact JSON path");
  build->add_option("--facets", facets_out, "Also write a facet file");
  build->add_option("--seed", seed, "Seed for sampled matroid checks");
  build->add_option("--budget", budget_flag);

  auto* hk = app.add_subcommand("hk", "Exact h_k by coset enumeration");
  std::string input;
  int dim = 0;
  bool no_prune = false;
  hk->add_option("input", input, "Artifact or facet file")->required();
  hk->add_option("--dim", dim, "k")->required();
  hk->add_option("--budget", budget_flag);
  hk->add_flag("--no-prune", no_prune);
  hk->add_option("--threads", threads);
  hk->add_option("-o,--output", out);

  auto* bounds = app.add_subcommand("bounds", "Certified bounds on h_k");
  bounds->add_option("args", params, "Artifact file, or family parameters with --family");
  bounds->add_option("--family", family);
  bounds->add_option("--dim", dim, "k")->required();
  bounds->add_option("--budget", budget_flag);
  bounds->add_option("-o,--output", out);

  auto* certify = app.add_subcommand("certify", "Verify the building-like structure and certify bounds");
  int kmax = 0;
  certify->add_option("input", input)->required();
  certify->add_option("--kmax", kmax);
  certify->add_option("--budget", budget_flag);
  certify->add_option("-o,--output", out);

  auto* test = app.add_subcommand("test", "Run the randomized coboundary tester");
  std::string cochain;
  TesterConfig cfg;
  test->add_option("input", input)->required();
  test->add_option("cochain", cochain, "One supported k-face per line")->required();
  test->add_option("--dim", cfg.k)->required();
  test->add_option("--trials", cfg.trials)->check(CLI::PositiveNumber);
  test->add_option("--seed", cfg.seed);
  test->add_option("--threads", cfg.threads);
  test->add_option("--budget", budget_flag);
  test->add_option("-o,--output", out);

  auto* explore = app.add_subcommand("explore-conjecture", "Tabulate h_{n-1}(A_{n+1}(F_q)) against q");
  std::vector<int> qs;
  int rank_n = 1;
  explore->add_option("q", qs)->required();
  explore->add_option("--n", rank_n);
  explore->add_option("--budget", budget_flag);
  explore->add_option("--threads", threads);
  explore->add_option("-o,--output", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    const std::uint64_t budget = budget_flag ? *budget_flag : default_budget();
    if (*build) return cmd_build(family, params, out, facets_out, budget, seed);
    if (*hk) return cmd_hk(input, dim, budget, no_prune, threads, out);
    if (*bounds) {
      if (family.empty()) {
        if (params.size() != 1) throw Error(ErrorCode::InvalidArgument, "bounds needs one file or --family");
        return cmd_bounds(params[0], family, {}, dim, budget, out);
      }
      return cmd_bounds("", family, params, dim, budget, out);
    }
    if (*certify) return cmd_certify(input, kmax, budget, out);
    if (*test) return cmd_test(input, cochain, cfg, budget, out);
    if (*explore) return cmd_explore(qs, rank_n, budget, threads, out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.code());
  }
  return kExitUsage;
}
