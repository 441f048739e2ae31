// Command-line front end: point counts, density scans, least-prime searches,
// family sieve experiments, closed-form sieve bounds, constructions, and the
// built-in reference-value suite.

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "frobscan/bounds.hpp"
#include "frobscan/constructions.hpp"
#include "frobscan/counting.hpp"
#include "frobscan/density.hpp"
#include "frobscan/error.hpp"
#include "frobscan/family.hpp"
#include "frobscan/fixtures.hpp"
#include "frobscan/primes.hpp"

namespace {

using frobscan::ExecPolicy;
using ordered_json = nlohmann::ordered_json;

enum class Format { Text, Json, Csv };

struct Output {
  Format format = Format::Text;

  // json is canonical; csv flattens pairs (and checkpoint lists) as rows;
  // text is human-oriented and not schema-stable
  void emit(const ordered_json& j) const {
    switch (format) {
      case Format::Json:
        std::cout << j.dump() << "\n";
        return;
      case Format::Csv:
        emit_csv(j);
        return;
      case Format::Text:
        emit_text(j);
        return;
    }
  }

  void emit_text(const ordered_json& j, const std::string& prefix = "") const {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object()) {
        emit_text(value, prefix + key + ".");
      } else if (key == "checkpoints" && value.is_array()) {
        std::cout << prefix << "checkpoints:";
        for (const auto& cp : value) std::cout << " " << cp.at(0) << ":" << cp.at(1);
        std::cout << "\n";
      } else {
        std::cout << prefix << key << " = " << to_scalar(value) << "\n";
      }
    }
  }

  void emit_csv(const ordered_json& j) const {
    if (j.contains("checkpoints")) {
      std::cout << "x,density\n";
      for (const auto& cp : j.at("checkpoints"))
        std::cout << cp.at(0) << "," << cp.at(1) << "\n";
      return;
    }
    std::cout << "key,value\n";
    for (const auto& [key, value] : j.items()) std::cout << key << "," << to_scalar(value) << "\n";
  }

  static std::string to_scalar(const ordered_json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
  }
};

std::vector<int64_t> parse_int_list(const std::string& csv) {
  std::vector<int64_t> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoll(item));
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw frobscan::Error(frobscan::ErrorCode::Parse, "cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ordered_json density_report_json(const frobscan::DensityReport& rep) {
  return ordered_json::parse(rep.to_json_string());
}

// ---- verify-paper ------------------------------------------------------------

struct PaperItem {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass = false;
};

class PaperSuite {
 public:
  explicit PaperSuite(const ExecPolicy& policy) : policy_(policy) {}

  void check(const std::string& name, const std::string& expected, const std::string& actual) {
    items_.push_back({name, expected, actual, expected == actual});
  }
  template <typename T>
  void check_eq(const std::string& name, T expected, T actual) {
    check(name, std::to_string(expected), std::to_string(actual));
  }

  void run(const std::optional<std::string>& fixtures_dir, bool skip_c457) {
    using namespace frobscan;
    Variety x1 = fixtures_dir ? Variety::from_file(*fixtures_dir + "/x1.var")
                              : Variety::from_text(x1_var_text());
    CountContext x1_ctx(x1);
    check_eq<uint64_t>("x1-bruteforce-at-7", 584,
                       x1_ctx.count(7, CountMethod::BruteForce, policy_));
    check_eq<uint64_t>("x1-charsum-at-7", 584, x1_ctx.count(7, CountMethod::CharSum, policy_));

    check_eq<uint64_t>("least-prime-1-mod-17", 103, least_prime_in_ap(17, 1));
    CqReport c17 = verify_cq(17, policy_);
    check("c17-all-good-p-below-103-have-n-eq-p", "true", c17.all_below_match ? "true" : "false");
    check_eq<uint64_t>("c17-count-at-103", 87, c17.n_at_p0);

    if (!skip_c457) {
      check_eq<uint64_t>("least-prime-1-mod-457", 13711, least_prime_in_ap(457, 1));
      CqReport c457 = verify_cq(457, policy_);
      check("c457-all-good-p-below-13711-have-n-eq-p", "true",
            c457.all_below_match ? "true" : "false");
      check_eq<uint64_t>("c457-count-at-13711", 13255, c457.n_at_p0);
    }

    if (fixtures_dir) {
      // cross-check the shipped data files against the embedded equations
      UniPoly c1_file = *hyperelliptic_model(Variety::from_file(*fixtures_dir + "/genus2_c1.var"));
      UniPoly c2_file = *hyperelliptic_model(Variety::from_file(*fixtures_dir + "/genus2_c2.var"));
      check("genus2-fixture-files-match-builtin", "true",
            c1_file == genus2_c1() && c2_file == genus2_c2() ? "true" : "false");
    }
    Genus2PairReport pair = verify_genus2_pair(401, policy_);
    check("genus2-pair-below-401", "true", pair.all_below_401_pass ? "true" : "false");

    check_eq<int64_t>("gamma-of-1", 10, sieve_gamma(1));
    check_eq<int64_t>("gamma-of-2", 24, sieve_gamma(2));
    check_eq<int64_t>("gamma-of-3", 46, sieve_gamma(3));
  }

  ordered_json to_json() const {
    ordered_json items = ordered_json::array();
    bool all = true;
    for (const auto& item : items_) {
      items.push_back({{"name", item.name},
                       {"pass", item.pass},
                       {"expected", item.expected},
                       {"actual", item.actual}});
      all = all && item.pass;
    }
    return ordered_json{{"items", std::move(items)}, {"all_pass", all}};
  }

  bool all_pass() const {
    for (const auto& item : items_)
      if (!item.pass) return false;
    return true;
  }

  void print_text() const {
    for (const auto& item : items_) {
      if (item.pass)
        std::cout << "[PASS] " << item.name << " = " << item.actual << "\n";
      else
        std::cout << "[FAIL] " << item.name << ": expected " << item.expected << ", got "
                  << item.actual << "\n";
    }
  }

 private:
  ExecPolicy policy_;
  std::vector<PaperItem> items_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"frobscan: F_p point counts of integer varieties, congruence-class scans "
               "and sieve bounds"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format_name = "text";
  ExecPolicy policy;
  uint64_t seed = 0x5eed5eed5eedull;
  app.add_option("--format", format_name, "Output format: text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--threads", policy.threads,
                 "Worker threads (default: FROBSCAN_THREADS env or hardware)");
  app.add_option("--work-cap", policy.work_cap,
                 "Evaluated-tuple budget per (variety, p) call");
  app.add_option("--seed", seed, "Seed for randomized searches");

  // ---- count ----
  auto* count_cmd = app.add_subcommand("count", "Count F_p points of a variety file");
  std::string variety_path, method_name = "auto";
  uint64_t prime_p = 0;
  count_cmd->add_option("--variety", variety_path, "Variety file")->required();
  count_cmd->add_option("--p", prime_p, "Prime p")->required();
  count_cmd->add_option("--method", method_name, "auto, bruteforce or charsum")
      ->check(CLI::IsMember({"auto", "bruteforce", "charsum"}));

  // ---- density ----
  auto* density_cmd = app.add_subcommand("density", "Empirical densities over scanned primes");
  auto* dens_cong = density_cmd->add_subcommand("congruence", "Density of N(p) = a (mod m)");
  auto* dens_nondiv = density_cmd->add_subcommand("nondiv",
                                                  "Density of p not dividing N(p) - a_i");
  density_cmd->require_subcommand(1);
  std::string dens_variety, dens_alist = "0", dens_resume;
  int64_t dens_a = 0;
  uint64_t dens_m = 2, dens_x = 1000;
  for (auto* sub : {dens_cong, dens_nondiv}) {
    sub->add_option("--variety", dens_variety, "Variety file")->required();
    sub->add_option("--x", dens_x, "Scan primes up to x")->required();
    sub->add_option("--resume", dens_resume, "Extend a previous JSON report");
  }
  dens_cong->add_option("--a", dens_a, "Residue a")->required();
  dens_cong->add_option("--m", dens_m, "Modulus m >= 2")->required();
  dens_nondiv->add_option("--alist", dens_alist, "Comma-separated integers a_i");

  // ---- least-prime ----
  auto* least_cmd = app.add_subcommand("least-prime", "Least-prime searches");
  auto* least_ap = least_cmd->add_subcommand("ap", "Least prime = a (mod q)");
  auto* least_nondiv =
      least_cmd->add_subcommand("nondiv", "Least good prime with p not dividing N(p) - a_i");
  least_cmd->require_subcommand(1);
  uint64_t ap_q = 0, ap_a = 1, nondiv_bound = 100000;
  std::string least_variety, least_alist = "0";
  least_ap->add_option("--q", ap_q, "Modulus q")->required();
  least_ap->add_option("--a", ap_a, "Residue a (coprime to q)");
  least_nondiv->add_option("--variety", least_variety, "Variety file")->required();
  least_nondiv->add_option("--alist", least_alist, "Comma-separated integers a_i");
  least_nondiv->add_option("--bound", nondiv_bound, "Search bound");

  // ---- family-scan ----
  auto* family_cmd = app.add_subcommand("family-scan",
                                        "Hyperelliptic family y^2 = f(t)(t - u) experiments");
  auto* fam_dp = family_cmd->add_subcommand("dp", "Exceptional parameter set D_p at one prime");
  auto* fam_exc = family_cmd->add_subcommand("exceptional",
                                             "Count u in [-T,T] exceptional for all good p < Q");
  auto* fam_exp = family_cmd->add_subcommand("experiment", "Full sieve experiment report");
  family_cmd->require_subcommand(1);
  std::string fam_f, fam_alpha = "0";
  uint64_t fam_p = 0, fam_t = 100;
  double fam_q = 0.0, fam_k = 1.0, fam_q_override = 0.0;
  for (auto* sub : {fam_dp, fam_exc, fam_exp}) {
    sub->add_option("--f", fam_f, "Separable polynomial f of even degree 2g, e.g. 't^4 + 1'")
        ->required();
    sub->add_option("--alpha", fam_alpha,
                    "Comma-separated alpha_i (trace-side constants are a_i = 1 + alpha_i)");
  }
  fam_dp->add_option("--p", fam_p, "Good prime for f")->required();
  fam_exc->add_option("--T", fam_t, "Height bound")->required();
  fam_exc->add_option("--Q", fam_q, "Prime cutoff")->required();
  fam_exp->add_option("--T", fam_t, "Height bound")->required();
  fam_exp->add_option("--K", fam_k, "Family constant K (free parameter)");
  fam_exp->add_option("--q-override", fam_q_override,
                      "Scan primes below this instead of the theorem's Q (0 = use Q)");

  // ---- sieve-bound ----
  auto* bound_cmd = app.add_subcommand("sieve-bound", "Closed-form constants and criteria");
  bound_cmd->require_subcommand(1);
  auto* sb_gamma = bound_cmd->add_subcommand("gamma", "gamma(g) = 4g^2 + 2g + 4");
  auto* sb_q = bound_cmd->add_subcommand("q", "Least-prime ceiling Q_g(T)");
  auto* sb_delta = bound_cmd->add_subcommand("delta", "Local density delta(l), exact rational");
  auto* sb_psym = bound_cmd->add_subcommand("psymplectic",
                                            "Count p-symplectic polynomials over F_l");
  auto* sb_larger = bound_cmd->add_subcommand("larger", "Gallagher larger-sieve bound");
  auto* sb_value1 = bound_cmd->add_subcommand("value1", "Value-at-1 criterion");
  auto* sb_surface = bound_cmd->add_subcommand("surface", "Value-at-1 criterion for surfaces");
  auto* sb_threefold =
      bound_cmd->add_subcommand("threefold", "Value-at-1 criterion for threefolds");
  int64_t sb_g = 2, sb_n = 1;
  double sb_k = 1.0, sb_t = 10.0, sb_Q = 10.0, sb_T2 = 1.0, sb_nu_const = 0.0;
  uint64_t sb_ell = 3;
  int64_t sb_p = 1;
  std::string sb_exclude, sb_nu_file;
  int64_t v1_m1 = 0, v1_bminus = 0, v1_bplus = 1;
  int64_t sv_b1y = 0, sv_b2y = 0, sv_b2c = 0, sv_chic = 0, sv_a = 0;
  int64_t tf_b2y = 0, tf_b0s = 0, tf_b1s = 0, tf_b2s = 0, tf_a = 0;
  sb_gamma->add_option("--g", sb_g, "Genus")->required();
  sb_q->add_option("--g", sb_g, "Genus")->required();
  sb_q->add_option("--n", sb_n, "Number of excluded traces");
  sb_q->add_option("--K", sb_k, "Family constant");
  sb_q->add_option("--T", sb_t, "Height bound")->required();
  sb_delta->add_option("--ell", sb_ell, "Prime l")->required();
  sb_delta->add_option("--g", sb_g, "Genus")->required();
  sb_delta->add_option("--n", sb_n, "Number of excluded traces");
  sb_psym->add_option("--ell", sb_ell, "Prime l")->required();
  sb_psym->add_option("--g", sb_g, "Genus")->required();
  sb_psym->add_option("--p", sb_p, "Multiplicator, coprime to l")->required();
  sb_psym->add_option("--exclude", sb_exclude, "Comma-separated excluded f'(0) residues");
  sb_larger->add_option("--Q", sb_Q, "Prime cutoff")->required();
  sb_larger->add_option("--T", sb_T2, "Height")->required();
  sb_larger->add_option("--nu-const", sb_nu_const, "Constant nu(p) for every p <= Q");
  sb_larger->add_option("--nu-file", sb_nu_file, "JSON object {\"p\": nu(p), ...}");
  sb_value1->add_option("--m1", v1_m1, "M(1)")->required();
  sb_value1->add_option("--bminus", v1_bminus, "b-")->required();
  sb_value1->add_option("--bplus", v1_bplus, "b+")->required();
  sb_surface->add_option("--b1y", sv_b1y, "b1(Y)")->required();
  sb_surface->add_option("--b2y", sv_b2y, "b2(Y)")->required();
  sb_surface->add_option("--b2c", sv_b2c, "b2 of the boundary curve")->required();
  sb_surface->add_option("--chic", sv_chic, "chi_c of the boundary curve")->required();
  sb_surface->add_option("--a", sv_a, "Congruence constant a");
  sb_threefold->add_option("--b2y", tf_b2y, "b2(Y)")->required();
  sb_threefold->add_option("--b0s", tf_b0s, "b0 of the boundary surface")->required();
  sb_threefold->add_option("--b1s", tf_b1s, "b1 of the boundary surface")->required();
  sb_threefold->add_option("--b2s", tf_b2s, "b2 of the boundary surface")->required();
  sb_threefold->add_option("--a", tf_a, "Congruence constant a");

  // ---- construct ----
  auto* construct_cmd = app.add_subcommand("construct", "Build example curves");
  construct_cmd->require_subcommand(1);
  auto* con_cq = construct_cmd->add_subcommand("cq", "The curve y^2 = x^q + 1");
  auto* con_g2 = construct_cmd->add_subcommand(
      "genus2", "CRT-combined quintic with N(p) = p impossible below a bound");
  uint64_t cq_q = 17, g2_below = 30;
  con_cq->add_option("--q", cq_q, "Odd prime q")->required();
  con_g2->add_option("--primes-below", g2_below, "Combine residues for primes 5 <= p < N")
      ->required();

  // ---- verify ----
  auto* verify_cmd = app.add_subcommand("verify", "Check a stated property by computation");
  verify_cmd->require_subcommand(1);
  auto* ver_nonex = verify_cmd->add_subcommand(
      "nonex", "p | N_S(p) for an elliptic surface within the degree bounds");
  auto* ver_cq = verify_cmd->add_subcommand("cq", "N(p) = p below the least prime = 1 (mod q)");
  auto* ver_pair = verify_cmd->add_subcommand("genus2-pair",
                                              "Genus-2 pair disjunction below 401");
  std::string surf_path;
  uint64_t ver_pmax = 101, ver_q = 17, pair_pmax = 500;
  ver_nonex->add_option("--surface", surf_path, "Surface file (a:/b:/c:/d: lines)")->required();
  ver_nonex->add_option("--pmax", ver_pmax, "Check all odd primes up to pmax");
  ver_cq->add_option("--q", ver_q, "Odd prime q")->required();
  ver_pair->add_option("--pmax", pair_pmax, "Also look for the first failure up to pmax");

  // ---- verify-paper ----
  auto* paper_cmd = app.add_subcommand(
      "verify-paper", "Run the built-in reference-value suite (exit 1 on any mismatch)");
  bool skip_c457 = false;
  std::string fixtures_dir;
  paper_cmd->add_flag("--skip-c457", skip_c457, "Skip the long q = 457 items");
  paper_cmd->add_option("--fixtures-dir", fixtures_dir,
                        "Load fixture varieties from this directory instead of the built-ins");

  Output out;
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (format_name == "json") {
      if (e.get_exit_code() == 0) return app.exit(e);  // --help
      ordered_json err{{"error", {{"code", "usage"}, {"message", e.what()}}}};
      std::cout << err.dump() << "\n";
      return 2;
    }
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  out.format = format_name == "json" ? Format::Json
               : format_name == "csv" ? Format::Csv
                                      : Format::Text;
  frobscan::global_policy() = policy;

  try {
    using namespace frobscan;

    if (*count_cmd) {
      CountContext ctx(Variety::from_file(variety_path));
      CountMethod method = method_name == "bruteforce" ? CountMethod::BruteForce
                           : method_name == "charsum"  ? CountMethod::CharSum
                                                       : CountMethod::Auto;
      PointCountRecord rec = ctx.record(prime_p, method, policy);
      ordered_json j{{"p", rec.p},
                     {"n_affine", rec.n_affine},
                     {"n_mod_p", rec.n_mod_p},
                     {"trace", rec.trace ? ordered_json(*rec.trace) : ordered_json(nullptr)},
                     {"good_reduction", rec.good_reduction},
                     {"method", method_name}};
      out.emit(j);
      return 0;
    }

    if (*density_cmd) {
      Variety v = Variety::from_file(dens_variety);
      std::optional<DensityReport> resume;
      if (!dens_resume.empty())
        resume = DensityReport::from_json_string(read_file(dens_resume));
      DensityReport rep;
      if (*dens_cong)
        rep = scan_congruence_density(v, dens_a, dens_m, dens_x, policy,
                                      resume ? &*resume : nullptr);
      else
        rep = scan_nondivisibility(v, parse_int_list(dens_alist), dens_x, policy,
                                   resume ? &*resume : nullptr);
      out.emit(density_report_json(rep));
      return 0;
    }

    if (*least_cmd) {
      if (*least_ap) {
        uint64_t p = least_prime_in_ap(ap_q, ap_a);
        out.emit(ordered_json{{"q", ap_q}, {"a", ap_a}, {"prime", p}});
        return 0;
      }
      Variety v = Variety::from_file(least_variety);
      auto p = least_good_prime_nondiv(v, parse_int_list(least_alist), nondiv_bound, policy);
      out.emit(ordered_json{{"a_list", parse_int_list(least_alist)},
                            {"bound", nondiv_bound},
                            {"prime", p ? ordered_json(*p) : ordered_json(nullptr)}});
      return 0;
    }

    if (*family_cmd) {
      FamilySpec spec = FamilySpec::from_alpha(parse_unipoly(fam_f), parse_int_list(fam_alpha));
      if (*fam_dp) {
        DpRecord dp = compute_dp(spec, fam_p, policy);
        out.emit(ordered_json{{"f", spec.f.to_string()},
                              {"alpha", spec.alpha_list()},
                              {"a_list", spec.a_list},
                              {"p", dp.p},
                              {"size", dp.size},
                              {"members", dp.members},
                              {"skipped_bad_u", dp.skipped_bad_u}});
        return 0;
      }
      if (*fam_exc) {
        ExceptionalCount res = exceptional_count(spec, fam_t, fam_q, policy);
        out.emit(ordered_json{{"f", spec.f.to_string()},
                              {"alpha", spec.alpha_list()},
                              {"a_list", spec.a_list},
                              {"T", fam_t},
                              {"Q", fam_q},
                              {"count", res.count},
                              {"witnesses", res.witnesses}});
        return 0;
      }
      std::optional<double> q_override;
      if (fam_q_override > 0.0) q_override = fam_q_override;
      SieveExperimentReport rep = sieve_experiment(spec, fam_t, fam_k, policy, q_override);
      out.emit(ordered_json::parse(rep.to_json_string()));
      return 0;
    }

    if (*bound_cmd) {
      if (*sb_gamma) {
        out.emit(ordered_json{{"g", sb_g}, {"gamma", sieve_gamma(sb_g)}});
      } else if (*sb_q) {
        SieveParams params{sb_g, sb_n, sb_k, sb_t};
        out.emit(ordered_json{
            {"g", sb_g}, {"n", sb_n}, {"K", sb_k}, {"T", sb_t}, {"q", q_bound(params)}});
      } else if (*sb_delta) {
        BigRat d = delta_ell(sb_ell, sb_g, sb_n);
        out.emit(ordered_json{{"ell", sb_ell},
                              {"g", sb_g},
                              {"n", sb_n},
                              {"delta", d.get_str()},
                              {"delta_float", d.get_d()}});
      } else if (*sb_psym) {
        uint64_t count =
            count_p_symplectic(sb_ell, sb_g, sb_p, parse_int_list(sb_exclude), policy);
        out.emit(ordered_json{{"ell", sb_ell},
                              {"g", sb_g},
                              {"p", sb_p},
                              {"excluded", parse_int_list(sb_exclude)},
                              {"count", count}});
      } else if (*sb_larger) {
        std::map<uint64_t, double> nu;
        if (!sb_nu_file.empty()) {
          ordered_json jn = ordered_json::parse(read_file(sb_nu_file));
          for (const auto& [key, value] : jn.items())
            nu[std::stoull(key)] = value.get<double>();
        } else if (sb_nu_const > 0.0) {
          for_each_prime(2, static_cast<uint64_t>(sb_Q),
                         [&](uint64_t p) { nu[p] = sb_nu_const; });
        } else {
          throw Error(ErrorCode::Domain, "larger: provide --nu-const or --nu-file");
        }
        auto bound = larger_sieve_bound(sb_Q, sb_T2, nu);
        out.emit(ordered_json{{"Q", sb_Q},
                              {"T", sb_T2},
                              {"bound", bound ? ordered_json(*bound) : ordered_json(nullptr)}});
      } else if (*sb_value1) {
        bool sat = check_value1({v1_m1, v1_bminus, v1_bplus});
        out.emit(ordered_json{
            {"m1", v1_m1}, {"b_minus", v1_bminus}, {"b_plus", v1_bplus}, {"satisfied", sat}});
      } else if (*sb_surface) {
        bool sat = surface_value1(sv_b1y, sv_b2y, sv_b2c, sv_chic, sv_a);
        out.emit(ordered_json{{"b1_y", sv_b1y},
                              {"b2_y", sv_b2y},
                              {"b2_c", sv_b2c},
                              {"chic_c", sv_chic},
                              {"a", sv_a},
                              {"satisfied", sat}});
      } else if (*sb_threefold) {
        bool sat = threefold_value1(tf_b2y, tf_b0s, tf_b1s, tf_b2s, tf_a);
        out.emit(ordered_json{{"b2_y", tf_b2y},
                              {"b0_s", tf_b0s},
                              {"b1_s", tf_b1s},
                              {"b2_s", tf_b2s},
                              {"a", tf_a},
                              {"satisfied", sat}});
      }
      return 0;
    }

    if (*construct_cmd) {
      if (*con_cq) {
        Variety v = build_cq(cq_q);
        out.emit(ordered_json{{"q", cq_q},
                              {"vars", v.vars},
                              {"equation", v.equations[0].to_string()},
                              {"bad", std::vector<uint64_t>(v.explicit_bad.begin(),
                                                            v.explicit_bad.end())}});
        return 0;
      }
      // genus2: one residue polynomial per prime 5 <= p < N, CRT-combined
      std::vector<std::pair<uint64_t, UniPoly>> pairs;
      ordered_json jpairs = ordered_json::array();
      for_each_prime(5, g2_below > 0 ? g2_below - 1 : 0, [&](uint64_t p) {
        UniPoly fp = search_genus2_anomalous(p, seed, 4'000'000, policy);
        jpairs.push_back(ordered_json{{"p", p}, {"f_p", fp.to_string()}});
        pairs.emplace_back(p, std::move(fp));
      });
      if (pairs.empty())
        throw Error(ErrorCode::Domain, "construct genus2: no primes in [5, N)");
      UniPoly f = crt_combine(pairs);
      BigInt modulus = 1;
      for (const auto& [p, fp] : pairs) modulus *= BigInt(static_cast<unsigned long>(p));
      out.emit(ordered_json{{"primes_below", g2_below},
                            {"seed", seed},
                            {"pairs", std::move(jpairs)},
                            {"modulus", modulus.get_str()},
                            {"f", f.to_string()}});
      return 0;
    }

    if (*verify_cmd) {
      if (*ver_nonex) {
        EllipticSurface s = EllipticSurface::from_file(surf_path);
        DivisibilityReport rep = check_surface_divisibility(s, ver_pmax, policy);
        out.emit(ordered_json{{"p_max", rep.p_max},
                              {"checked", rep.checked},
                              {"all_divisible", rep.all_divisible},
                              {"violations", rep.violations}});
        return rep.all_divisible ? 0 : 1;
      }
      if (*ver_cq) {
        CqReport rep = verify_cq(ver_q, policy);
        out.emit(ordered_json{
            {"q", rep.q},
            {"p0", rep.p0},
            {"n_at_p0", rep.n_at_p0},
            {"checked", rep.checked},
            {"all_below_match", rep.all_below_match},
            {"first_failure",
             rep.first_failure ? ordered_json(*rep.first_failure) : ordered_json(nullptr)},
            {"n_at_p0_equals_p0", rep.n_at_p0 == rep.p0}});
        return rep.all_below_match ? 0 : 1;
      }
      Genus2PairReport rep = verify_genus2_pair(pair_pmax, policy);
      out.emit(ordered_json{
          {"p_max", rep.p_max},
          {"checked", rep.checked},
          {"all_below_401_pass", rep.all_below_401_pass},
          {"failures_below_401", rep.failures_below_401},
          {"first_both_fail",
           rep.first_both_fail ? ordered_json(*rep.first_both_fail) : ordered_json(nullptr)}});
      return rep.all_below_401_pass ? 0 : 1;
    }

    if (*paper_cmd) {
      PaperSuite suite(policy);
      suite.run(fixtures_dir.empty() ? std::nullopt : std::optional(fixtures_dir), skip_c457);
      if (out.format == Format::Text)
        suite.print_text();
      else
        out.emit(suite.to_json());
      return suite.all_pass() ? 0 : 1;
    }
  } catch (const frobscan::Error& e) {
    const char* code = e.code() == frobscan::ErrorCode::Parse      ? "parse"
                       : e.code() == frobscan::ErrorCode::WorkCap  ? "work_cap"
                       : e.code() == frobscan::ErrorCode::NoPlan   ? "no_plan"
                       : e.code() == frobscan::ErrorCode::Internal ? "internal"
                                                                   : "domain";
    if (out.format == Format::Json) {
      ordered_json err{{"error", {{"code", code}, {"message", e.what()}}}};
      std::cout << err.dump() << "\n";
    } else {
      std::cerr << "error (" << code << "): " << e.what() << "\n";
    }
    return 2;
  } catch (const std::exception& e) {
    if (out.format == Format::Json) {
      ordered_json err{{"error", {{"code", "internal"}, {"message", e.what()}}}};
      std::cout << err.dump() << "\n";
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return 2;
  }
  return 2;
}
