#include "frobscan/family.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "json.hpp"

#include "frobscan/bounds.hpp"
#include "frobscan/error.hpp"
#include "frobscan/ff.hpp"
#include "frobscan/primes.hpp"

namespace frobscan {

FamilySpec FamilySpec::make(UniPoly f, std::vector<int64_t> a_list) {
  const int deg = f.degree();
  if (deg < 2 || deg % 2 != 0)
    throw Error(ErrorCode::Domain,
                "family polynomial must have even degree 2g >= 2, got degree " +
                    std::to_string(deg));
  FamilySpec spec;
  spec.disc_f = discriminant(f);
  if (spec.disc_f == 0)
    throw Error(ErrorCode::Domain, "family polynomial must be separable (disc != 0)");
  spec.f = std::move(f);
  spec.g = deg / 2;
  spec.a_list = std::move(a_list);
  return spec;
}

FamilySpec FamilySpec::from_alpha(UniPoly f, const std::vector<int64_t>& alpha_list) {
  std::vector<int64_t> a_list;
  a_list.reserve(alpha_list.size());
  for (int64_t alpha : alpha_list) a_list.push_back(alpha + 1);
  return make(std::move(f), std::move(a_list));
}

std::vector<int64_t> FamilySpec::alpha_list() const {
  std::vector<int64_t> alpha;
  alpha.reserve(a_list.size());
  for (int64_t a : a_list) alpha.push_back(a - 1);
  return alpha;
}

bool FamilySpec::good_prime(uint64_t p) const {
  if (p == 2) return false;
  return mod_u64(f.lc(), p) != 0 && mod_u64(disc_f, p) != 0;
}

Variety family_member(const FamilySpec& spec, const BigInt& u) {
  const std::string& t = spec.f.var();
  const std::string y = t == "y" ? "y0" : "y";
  UniPoly linear(t, {BigInt(-u), BigInt(1)});  // t - u
  UniPoly h = spec.f * linear;

  Variety v;
  v.vars = {t, y};
  IntPoly eq(v.vars);
  eq.add_term({0, 2}, 1);  // y^2
  for (std::size_t i = 0; i < h.coeffs().size(); ++i)
    eq.add_term({static_cast<uint32_t>(i), 0}, -h.coeff(i));
  v.equations.push_back(std::move(eq));
  v.disc_generator = std::move(h);
  return v;
}

DpRecord compute_dp(const FamilySpec& spec, uint64_t p, const ExecPolicy& policy) {
  if (!spec.good_prime(p))
    throw Error(ErrorCode::Domain,
                "compute_dp: p = " + std::to_string(p) + " is bad for the family polynomial");
  if (p > policy.work_cap / p)
    throw WorkCapError("compute_dp", p * p, policy.work_cap);

  ChiEvaluator chi(p);
  std::vector<uint64_t> f_at(p);
  for (uint64_t t = 0; t < p; ++t) f_at[t] = spec.f.eval_mod_p(t, p);

  // excluded trace targets 1 - a_i
  std::vector<int64_t> targets;
  for (int64_t a : spec.a_list) targets.push_back(1 - a);
  int64_t max_target = 0;
  for (int64_t v : targets) max_target = std::max(max_target, std::abs(v));
  const bool exact_compare = static_cast<int64_t>(p) > 4 * spec.g * spec.g + max_target;
  const int64_t sp = static_cast<int64_t>(p);

  const uint64_t block = 256;
  const uint64_t nblocks = (p + block - 1) / block;
  struct BlockResult {
    std::vector<uint64_t> members;
    uint64_t skipped = 0;
  };
  auto parts = map_blocks<BlockResult>(nblocks, policy.resolved_threads(), [&](uint64_t b) {
    BlockResult res;
    for (uint64_t u = b * block, end = std::min(p, (b + 1) * block); u < end; ++u) {
      if (f_at[u] == 0) {
        ++res.skipped;
        continue;
      }
      int64_t chi_sum = 0;
      for (uint64_t t = 0; t < p; ++t) {
        uint64_t lin = t >= u ? t - u : t + p - u;
        chi_sum += chi(mulmod(f_at[t], lin, p));
      }
      const int64_t trace = -chi_sum;  // N = p + chi_sum, trace = p - N
      if (trace * trace > 4 * spec.g * spec.g * sp)
        throw Error(ErrorCode::Internal, "Hasse-Weil bound violated, counting bug");
      bool member = false;
      for (int64_t target : targets) {
        if (exact_compare ? trace == target
                          : ((trace % sp) + sp) % sp == ((target % sp) + sp) % sp) {
          member = true;
          break;
        }
      }
      if (member) res.members.push_back(u);
    }
    return res;
  });

  DpRecord rec;
  rec.p = p;
  for (auto& part : parts) {
    rec.members.insert(rec.members.end(), part.members.begin(), part.members.end());
    rec.skipped_bad_u += part.skipped;
  }
  rec.size = rec.members.size();
  return rec;
}

namespace {

// the per-prime scans cost p^2; refuse cutoffs whose total is hopeless before
// sieving anything (sum of p^2 below Q is about Q^3 / (3 log Q))
void require_feasible_cutoff(double q, uint64_t cap, const char* what) {
  if (q <= 3.0) return;
  double est = q * q * q / (3.0 * std::log(q));
  if (est > static_cast<double>(cap))
    throw WorkCapError(what, est > 1e18 ? UINT64_MAX : static_cast<uint64_t>(est), cap);
}

std::vector<uint64_t> good_primes_below(const FamilySpec& spec, double q) {
  std::vector<uint64_t> out;
  if (q > 2.0) {
    uint64_t hi = static_cast<uint64_t>(std::ceil(q)) - 1;
    for_each_prime(2, hi, [&](uint64_t p) {
      if (static_cast<double>(p) < q && spec.good_prime(p)) out.push_back(p);
    });
  }
  return out;
}

}  // namespace

ExceptionalCount exceptional_count(const FamilySpec& spec, uint64_t t, double q,
                                   const ExecPolicy& policy) {
  require_feasible_cutoff(q, policy.work_cap, "exceptional_count");
  const uint64_t width = 2 * t + 1;
  std::vector<uint8_t> alive(width, 1);

  for (uint64_t p : good_primes_below(spec, q)) {
    DpRecord dp = compute_dp(spec, p, policy);
    std::vector<uint8_t> member(p, 0);
    for (uint64_t u : dp.members) member[u] = 1;
    const int64_t sp = static_cast<int64_t>(p);
    for (uint64_t i = 0; i < width; ++i) {
      if (!alive[i]) continue;
      int64_t u = static_cast<int64_t>(i) - static_cast<int64_t>(t);
      uint64_t r = static_cast<uint64_t>(((u % sp) + sp) % sp);
      if (!member[r]) alive[i] = 0;
    }
  }

  ExceptionalCount res;
  for (uint64_t i = 0; i < width; ++i) {
    if (alive[i]) {
      ++res.count;
      res.witnesses.push_back(static_cast<int64_t>(i) - static_cast<int64_t>(t));
    }
  }
  return res;
}

SieveExperimentReport sieve_experiment(const FamilySpec& spec, uint64_t t, double k,
                                       const ExecPolicy& policy,
                                       std::optional<double> q_override) {
  SieveParams params;
  params.g = spec.g;
  params.n = std::max<int64_t>(1, static_cast<int64_t>(spec.a_list.size()));
  params.k = k;
  params.t = static_cast<double>(t);

  SieveExperimentReport rep;
  rep.f_text = spec.f.to_string();
  rep.g = spec.g;
  rep.alpha = spec.alpha_list();
  rep.a_list = spec.a_list;
  rep.t = t;
  rep.k = k;
  rep.q_theorem = q_bound(params);
  rep.q_used = q_override.value_or(rep.q_theorem);

  const double gamma = static_cast<double>(sieve_gamma(spec.g));
  const double x = 2.0 * k * std::log(static_cast<double>(t));
  rep.theorem_ceiling =
      std::pow(2.0 * k, gamma / 2.0) *
      std::pow(std::log(static_cast<double>(t)), gamma / 2.0 - 1.0) *
      std::pow(std::log(x), (gamma / 2.0) * (1.0 - 2.0 / (gamma + 2.0 * params.n - 2.0)));

  // feasibility: the D_p scans cost sum p^2 below the cutoff
  require_feasible_cutoff(rep.q_used, policy.work_cap, "sieve_experiment");
  double est_work = 0.0;
  std::vector<uint64_t> primes = good_primes_below(spec, rep.q_used);
  for (uint64_t p : primes) est_work += static_cast<double>(p) * static_cast<double>(p);
  if (est_work > static_cast<double>(policy.work_cap))
    throw WorkCapError("sieve_experiment",
                       est_work > 1e18 ? UINT64_MAX : static_cast<uint64_t>(est_work),
                       policy.work_cap);

  const uint64_t width = 2 * t + 1;
  std::vector<uint8_t> alive(width, 1);
  std::map<uint64_t, double> nu;
  bool empty_dp = false;
  for (uint64_t p : primes) {
    DpRecord dp = compute_dp(spec, p, policy);
    nu[p] = static_cast<double>(dp.size);
    if (dp.size == 0) empty_dp = true;
    std::vector<uint8_t> member(p, 0);
    for (uint64_t u : dp.members) member[u] = 1;
    const int64_t sp = static_cast<int64_t>(p);
    for (uint64_t i = 0; i < width; ++i) {
      if (!alive[i]) continue;
      int64_t u = static_cast<int64_t>(i) - static_cast<int64_t>(t);
      uint64_t r = static_cast<uint64_t>(((u % sp) + sp) % sp);
      if (!member[r]) alive[i] = 0;
    }
  }
  for (uint64_t i = 0; i < width; ++i) {
    if (alive[i]) {
      ++rep.s_empirical;
      rep.witnesses.push_back(static_cast<int64_t>(i) - static_cast<int64_t>(t));
    }
  }

  if (!empty_dp) {
    // primes skipped as bad for f sieve nothing: nu(p) = p keeps the bound valid
    if (rep.q_used >= 2.0) {
      for_each_prime(2, static_cast<uint64_t>(rep.q_used), [&](uint64_t p) {
        if (static_cast<double>(p) <= rep.q_used && !nu.count(p))
          nu[p] = static_cast<double>(p);
      });
    }
    rep.larger_sieve = larger_sieve_bound(rep.q_used, static_cast<double>(t), nu);
    if (rep.larger_sieve)
      rep.s_le_bound = static_cast<double>(rep.s_empirical) <= *rep.larger_sieve;
  }
  return rep;
}

std::string SieveExperimentReport::to_json_string(int indent) const {
  nlohmann::ordered_json j;
  j["f"] = f_text;
  j["g"] = g;
  j["alpha"] = alpha;
  j["a_list"] = a_list;
  j["T"] = t;
  j["K"] = k;
  j["Q"] = q_theorem;
  j["q_used"] = q_used;
  j["S_empirical"] = s_empirical;
  j["witnesses"] = witnesses;
  if (larger_sieve)
    j["larger_sieve_bound"] = *larger_sieve;
  else
    j["larger_sieve_bound"] = nullptr;
  j["theorem_ceiling"] = theorem_ceiling;
  if (s_le_bound)
    j["s_le_bound"] = *s_le_bound;
  else
    j["s_le_bound"] = nullptr;
  return indent >= 0 ? j.dump(indent) : j.dump();
}

}  // namespace frobscan
