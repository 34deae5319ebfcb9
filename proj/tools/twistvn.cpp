#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <numeric>
#include <optional>
#include <sstream>

#include "twistvn/class_algebra.hpp"
#include "twistvn/errors.hpp"
#include "twistvn/monodromy.hpp"
#include "twistvn/operator_lab.hpp"
#include "twistvn/selftest.hpp"
#include "twistvn/symmetric_transforms.hpp"

using json = nlohmann::ordered_json;
using namespace twistvn;

namespace {

constexpr const char* kToolVersion = "0.1.0";

struct BlaschkeSpec {
  BlaschkeProduct product;
  std::optional<int> power;  // set when the spec was a monomial
};

/// Accepts "power:k" inline or a JSON file {"power": k} /
/// {"zeros": [[re,im],...], "phase": t}.
BlaschkeSpec parse_blaschke_spec(const std::string& arg) {
  if (arg.rfind("power:", 0) == 0) {
    const int k = std::stoi(arg.substr(6));
    return {BlaschkeProduct::power(k), k};
  }
  std::ifstream in(arg);
  if (!in) throw std::runtime_error("cannot open Blaschke spec file: " + arg);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("malformed JSON in " + arg + ": " + e.what());
  }
  if (j.contains("power")) {
    if (!j["power"].is_number_integer())
      throw std::runtime_error(arg + ": field \"power\" must be an integer");
    const int k = j["power"].get<int>();
    return {BlaschkeProduct::power(k), k};
  }
  if (!j.contains("zeros") || !j["zeros"].is_array())
    throw std::runtime_error(arg + ": field \"zeros\" (array of [re,im]) required");
  std::vector<Complex> zeros;
  for (std::size_t i = 0; i < j["zeros"].size(); ++i) {
    const auto& z = j["zeros"][i];
    if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
      throw std::runtime_error(arg + ": zeros[" + std::to_string(i) + "] must be [re, im]");
    zeros.emplace_back(z[0].get<double>(), z[1].get<double>());
  }
  double phase = 0.0;
  if (j.contains("phase")) {
    if (!j["phase"].is_number())
      throw std::runtime_error(arg + ": field \"phase\" must be a number");
    phase = j["phase"].get<double>();
  }
  return {BlaschkeProduct(std::move(zeros), phase), std::nullopt};
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("TWISTVN_SEED")) return std::strtoull(env, nullptr, 10);
  return 12345;
}

void write_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

json formal_sum_json(const FormalClassSum& s) {
  json out = json::array();
  for (const auto& [id, k] : s.terms) out.push_back(json::array({id, k}));
  return out;
}

int cmd_analyze(const std::string& b1_arg, const std::string& b2_arg, std::uint64_t seed,
                Convention convention, const std::string& json_path, int operator_trunc) {
  const auto s1 = parse_blaschke_spec(b1_arg);
  const auto s2 = parse_blaschke_spec(b2_arg);

  ClassAlgebra algebra(s1.product, s2.product, seed);
  const AnalysisReport rep = algebra.analyze();
  const int boundary = boundary_walk_count(s1.product, s2.product);
  const bool boundary_agrees = (boundary == rep.n(0, 1));

  json report;
  report["n_matrix"] = {{rep.n(0, 0), rep.n(0, 1)}, {rep.n(1, 0), rep.n(1, 1)}};
  report["dimension"] = rep.dimension;
  report["abelian"] = rep.abelian_by_table;
  json agreement;
  agreement["boundary_vs_interior"] = boundary_agrees;
  agreement["table_vs_connectedness"] = rep.abelian_by_table == rep.abelian_by_connectedness;
  if (operator_trunc > 0) {
    if (!s1.power || !s2.power)
      throw std::runtime_error("--with-operator-lab needs monomial (power) inputs");
    const auto lab =
        joint_commutant_dim(twisted_power_symbols(*s1.power, *s2.power, convention),
                            operator_trunc);
    agreement["operator_lab"] = {{"dim", lab.dim}, {"gap", std::min(lab.gap, 1e18)}};
  }
  report["method_agreement"] = agreement;
  if (rep.witness) {
    json w;
    w["classes"] = {rep.witness->first, rep.witness->second};
    w["ab"] = formal_sum_json(rep.witness_sums->first);
    w["ba"] = formal_sum_json(rep.witness_sums->second);
    report["witness"] = w;
  }
  report["tool_version"] = kToolVersion;
  report["seed"] = seed;

  std::cout << "orders: " << s1.product.order() << ", " << s2.product.order() << "\n";
  std::cout << "convention: " << to_string(convention) << " (report is convention independent)\n";
  std::cout << "n-matrix: [[" << rep.n(0, 0) << ", " << rep.n(0, 1) << "], [" << rep.n(1, 0)
            << ", " << rep.n(1, 1) << "]]\n";
  std::cout << "dimension: " << rep.dimension << "\n";
  std::cout << "abelian: " << (rep.abelian_by_table ? "yes" : "no")
            << " (table and connectedness agree)\n";
  std::cout << "boundary walk: " << boundary << " vs interior " << rep.n(0, 1)
            << (boundary_agrees ? " [agree]" : " [DISAGREE - reported as a finding]") << "\n";
  std::cout << "max tracking residual: " << rep.max_residual << "\n";

  if (!json_path.empty()) write_json(report, json_path);
  return boundary_agrees ? 0 : 2;
}

int cmd_gcd_law(int max_order, std::uint64_t seed, const std::string& json_path) {
  bool all_pass = true;
  json entries = json::array();
  std::cout << "  k  l  interior  boundary  gcd  verdict\n";
  for (int k = 1; k <= max_order; ++k) {
    for (int l = 1; l <= max_order; ++l) {
      const auto b1 = BlaschkeProduct::power(k);
      const auto b2 = BlaschkeProduct::power(l);
      const int interior =
          monodromy_group(b1, b2, seed ^ (0x9E3779B97F4A7C15ull * (k * 64 + l))).component_count;
      const int boundary = boundary_walk_count(b1, b2);
      const int g = std::gcd(k, l);
      const bool pass = (interior == g && boundary == g);
      all_pass = all_pass && pass;
      std::cout << "  " << k << "  " << l << "  " << interior << "         " << boundary
                << "         " << g << "    " << (pass ? "pass" : "FAIL") << "\n";
      entries.push_back({{"k", k},
                         {"l", l},
                         {"interior", interior},
                         {"boundary", boundary},
                         {"gcd", g},
                         {"pass", pass}});
    }
  }
  if (!json_path.empty())
    write_json({{"max", max_order}, {"entries", entries}, {"all_pass", all_pass}, {"seed", seed}},
               json_path);
  std::cout << (all_pass ? "all entries match gcd\n" : "MISMATCH against gcd law\n");
  return all_pass ? 0 : 1;
}

int cmd_operator_check(int k, int l, int trunc, Convention convention,
                       const std::string& json_path) {
  const auto res = joint_commutant_dim(twisted_power_symbols(k, l, convention), trunc);
  const auto ab = commutant_abelian_check(res.basis, abelian_check_depth(k, l, trunc), trunc);
  const int g = std::gcd(k, l);
  const int expected = k * l + g * g;
  const bool match = (res.dim == expected) && !res.low_confidence;

  std::cout << "symbols: twisted (z1^" << k << ", z2^" << l << ") in " << to_string(convention)
            << " convention, truncation N = " << trunc << "\n";
  std::cout << "commutant dimension: " << res.dim << " (formula predicts " << expected << ")\n";
  std::cout << "svd gap: " << res.gap << (res.low_confidence ? " [LOW CONFIDENCE]" : "") << "\n";
  std::cout << "abelian: " << (ab.abelian ? "yes" : "no")
            << " (commutator residual " << ab.max_residual << ")\n";
  std::cout << (match ? "dimension matches the formula\n" : "MISMATCH against the formula\n");

  if (!json_path.empty())
    write_json({{"k", k},
                {"l", l},
                {"trunc", trunc},
                {"convention", to_string(convention)},
                {"dim", res.dim},
                {"expected_dim", expected},
                {"gap", std::min(res.gap, 1e18)},
                {"abelian", ab.abelian},
                {"commutator_residual", ab.max_residual},
                {"low_confidence", res.low_confidence},
                {"match", match}},
               json_path);
  return match ? 0 : 2;
}

int cmd_witness(const std::string& orders_csv, const std::string& json_path) {
  std::vector<int> orders;
  std::stringstream ss(orders_csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) orders.push_back(std::stoi(tok));
  const auto w = multi_blaschke_witness(orders);

  auto one_based = [](const std::vector<int>& v) {
    json a = json::array();
    for (int x : v) a.push_back(x + 1);
    return a;
  };
  std::cout << "factors: " << orders.size() << "\n";
  std::cout << "routing A (slot <- variable): " << one_based(w.routing_a).dump() << "\n";
  std::cout << "routing B (slot <- variable): " << one_based(w.routing_b).dump() << "\n";
  std::cout << "A then B: " << one_based(w.composed_ab).dump() << "\n";
  std::cout << "B then A: " << one_based(w.composed_ba).dump() << "\n";
  std::cout << (w.differ ? "compositions differ: not abelian\n" : "compositions agree\n");

  if (!json_path.empty())
    write_json({{"orders", w.orders},
                {"routing_a", one_based(w.routing_a)},
                {"routing_b", one_based(w.routing_b)},
                {"ab", one_based(w.composed_ab)},
                {"ba", one_based(w.composed_ba)},
                {"differ", w.differ}},
               json_path);
  return w.differ ? 0 : 1;
}

int cmd_selftest(const std::string& json_path) {
  const auto results = selftest::run_acceptance(&std::cout);
  if (!json_path.empty()) {
    json criteria = json::array();
    for (const auto& r : results)
      criteria.push_back({{"id", r.id},
                          {"name", r.name},
                          {"pass", r.pass},
                          {"detail", r.detail},
                          {"seconds", r.seconds}});
    write_json({{"criteria", criteria}, {"all_pass", selftest::all_passed(results)}}, json_path);
  }
  return selftest::all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"twistvn: operator-theoretic invariants of twisted Blaschke proper maps"};
  app.set_version_flag("--version", std::string("twistvn ") + kToolVersion);
  app.require_subcommand(1);

  std::string b1_arg, b2_arg, json_path, convention_str = "power", orders_csv;
  std::optional<std::uint64_t> seed_flag;
  int max_order = 4, op_k = 1, op_l = 1, op_trunc = 10, with_operator_lab = 0;

  auto* analyze = app.add_subcommand("analyze", "full pipeline for a pair of Blaschke products");
  analyze->add_option("--b1", b1_arg, "first product: file or power:k")->required();
  analyze->add_option("--b2", b2_arg, "second product: file or power:l")->required();
  analyze->add_option("--seed", seed_flag, "seed (fallback: TWISTVN_SEED, then 12345)");
  analyze->add_option("--convention", convention_str,
                      "symmetric-map convention: power|elementary|homogeneous");
  analyze->add_option("--json", json_path, "write the JSON report here");
  analyze->add_option("--with-operator-lab", with_operator_lab,
                      "also run the truncated-operator check at this truncation (power inputs only)");

  auto* gcd = app.add_subcommand("gcd-law", "n(z^k, z^l) table against gcd(k,l)");
  gcd->add_option("--max", max_order, "largest order in the table");
  gcd->add_option("--seed", seed_flag, "seed");
  gcd->add_option("--json", json_path, "write the table here");

  auto* opcheck = app.add_subcommand("operator-check",
                                     "truncated-commutant dimension vs the class-count formula");
  opcheck->add_option("--k", op_k, "first monomial order")->required();
  opcheck->add_option("--l", op_l, "second monomial order")->required();
  opcheck->add_option("--trunc", op_trunc, "truncation N per variable")->required();
  opcheck->add_option("--convention", convention_str, "symbol convention");
  opcheck->add_option("--json", json_path, "write the result here");

  auto* witness = app.add_subcommand("witness", "non-commuting routing pair for d >= 3 factors");
  witness->add_option("--orders", orders_csv, "comma-separated factor orders")->required();
  witness->add_option("--json", json_path, "write the witness here");

  auto* selftest_cmd = app.add_subcommand("selftest", "run the full acceptance battery");
  selftest_cmd->add_option("--json", json_path, "write machine-readable results here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed())
      return cmd_analyze(b1_arg, b2_arg, resolve_seed(seed_flag),
                         convention_from_string(convention_str), json_path, with_operator_lab);
    if (gcd->parsed()) return cmd_gcd_law(max_order, resolve_seed(seed_flag), json_path);
    if (opcheck->parsed())
      return cmd_operator_check(op_k, op_l, op_trunc, convention_from_string(convention_str),
                                json_path);
    if (witness->parsed()) return cmd_witness(orders_csv, json_path);
    if (selftest_cmd->parsed()) return cmd_selftest(json_path);
  } catch (const CrossCheckFailure& e) {
    std::cerr << "cross-check failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
