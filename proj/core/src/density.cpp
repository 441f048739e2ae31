#include "frobscan/density.hpp"

#include <algorithm>
#include <functional>

#include "json.hpp"

#include "frobscan/error.hpp"
#include "frobscan/primes.hpp"

namespace frobscan {

namespace {

using ordered_json = nlohmann::ordered_json;

// per-prime outcome inside one parallel segment
enum class Outcome : uint8_t { Hit, Miss, Bad, Skip, CapExceeded };

void run_prime_scan(DensityReport& rep, const CountContext& ctx, uint64_t x,
                    const ExecPolicy& policy, uint64_t skip_divisor,
                    const std::function<bool(uint64_t p, uint64_t n)>& hit) {
  uint64_t start = rep.x_max + 1;
  if (start < 2) start = 2;
  if (x < start) return;

  // segments end on checkpoint decades (100, 1000, ...) and on x itself
  std::vector<uint64_t> bounds;
  for (uint64_t d = 100; d <= x && d >= 100; d *= 10) {
    if (d >= start) bounds.push_back(d);
    if (d > x / 10) break;
  }
  if (bounds.empty() || bounds.back() != x) bounds.push_back(x);

  ExecPolicy per_prime = policy;
  per_prime.threads = 1;  // parallelism lives across primes here

  uint64_t lo = start;
  for (uint64_t bound : bounds) {
    std::vector<uint64_t> primes;
    for_each_prime(lo, bound, [&](uint64_t p) { primes.push_back(p); });

    auto results = map_blocks<Outcome>(primes.size(), policy.resolved_threads(), [&](uint64_t i) {
      uint64_t p = primes[i];
      if (ctx.is_bad(p)) return Outcome::Bad;
      if (skip_divisor != 0 && skip_divisor % p == 0) return Outcome::Skip;
      try {
        uint64_t n = ctx.count(p, CountMethod::Auto, per_prime);
        return hit(p, n) ? Outcome::Hit : Outcome::Miss;
      } catch (const WorkCapError&) {
        return Outcome::CapExceeded;
      }
    });

    bool truncated = false;
    uint64_t completed_up_to = bound;
    for (std::size_t i = 0; i < primes.size(); ++i) {
      if (results[i] == Outcome::CapExceeded) {
        truncated = true;
        completed_up_to = primes[i] - 1;
        break;
      }
      switch (results[i]) {
        case Outcome::Hit:
          ++rep.hits;
          ++rep.scanned;
          break;
        case Outcome::Miss:
          ++rep.scanned;
          break;
        case Outcome::Bad:
          rep.bad_skipped.push_back(primes[i]);
          break;
        default:
          break;
      }
    }
    rep.x_max = completed_up_to;
    if (rep.checkpoints.empty() || rep.checkpoints.back().first != rep.x_max)
      rep.checkpoints.emplace_back(rep.x_max, rep.density());
    else
      rep.checkpoints.back().second = rep.density();
    if (truncated) {
      rep.truncated = true;
      break;
    }
    lo = bound + 1;
  }
}

DensityReport start_or_resume(const std::string& predicate, const DensityReport* resume_from) {
  if (!resume_from) {
    DensityReport rep;
    rep.predicate = predicate;
    return rep;
  }
  if (resume_from->predicate != predicate)
    throw Error(ErrorCode::Domain, "resume report was produced by a different scan: '" +
                                       resume_from->predicate + "' vs '" + predicate + "'");
  return *resume_from;
}

}  // namespace

DensityReport scan_congruence_density(const Variety& v, int64_t a, uint64_t m, uint64_t x,
                                      const ExecPolicy& policy,
                                      const DensityReport* resume_from) {
  if (m < 2) throw Error(ErrorCode::Domain, "congruence scan requires m >= 2");
  CountContext ctx(v);
  const uint64_t a_norm = static_cast<uint64_t>(((a % static_cast<int64_t>(m)) +
                                                 static_cast<int64_t>(m)) %
                                                static_cast<int64_t>(m));
  std::string predicate =
      "N(p) = " + std::to_string(a_norm) + " (mod " + std::to_string(m) + ")";
  DensityReport rep = start_or_resume(predicate, resume_from);
  run_prime_scan(rep, ctx, x, policy, m,
                 [&](uint64_t, uint64_t n) { return n % m == a_norm; });
  return rep;
}

DensityReport scan_nondivisibility(const Variety& v, const std::vector<int64_t>& a_list,
                                   uint64_t x, const ExecPolicy& policy,
                                   const DensityReport* resume_from) {
  std::string predicate = "p does not divide N(p) - a for a in {";
  for (std::size_t i = 0; i < a_list.size(); ++i)
    predicate += (i ? ", " : "") + std::to_string(a_list[i]);
  predicate += "}";
  CountContext ctx(v);
  DensityReport rep = start_or_resume(predicate, resume_from);
  run_prime_scan(rep, ctx, x, policy, 0, [&](uint64_t p, uint64_t n) {
    const int64_t sp = static_cast<int64_t>(p);
    const uint64_t n_mod_p = n % p;
    for (int64_t a : a_list) {
      uint64_t a_mod_p = static_cast<uint64_t>(((a % sp) + sp) % sp);
      if (n_mod_p == a_mod_p) return false;
    }
    return true;
  });
  return rep;
}

std::optional<uint64_t> least_good_prime_nondiv(const Variety& v,
                                                const std::vector<int64_t>& a_list, uint64_t bound,
                                                const ExecPolicy& policy) {
  CountContext ctx(v);
  ExecPolicy per_prime = policy;
  per_prime.threads = 1;

  constexpr std::size_t kSegment = 512;
  std::vector<uint64_t> primes;
  std::optional<uint64_t> found;
  auto flush = [&]() {
    if (primes.empty() || found) return;
    auto hits = map_blocks<uint8_t>(primes.size(), policy.resolved_threads(), [&](uint64_t i) {
      uint64_t p = primes[i];
      if (ctx.is_bad(p)) return uint8_t{0};
      uint64_t n_mod_p = ctx.count(p, CountMethod::Auto, per_prime) % p;
      const int64_t sp = static_cast<int64_t>(p);
      for (int64_t a : a_list)
        if (n_mod_p == static_cast<uint64_t>(((a % sp) + sp) % sp)) return uint8_t{0};
      return uint8_t{1};
    });
    for (std::size_t i = 0; i < primes.size(); ++i) {
      if (hits[i]) {
        found = primes[i];
        break;
      }
    }
    primes.clear();
  };
  for_each_prime(2, bound, [&](uint64_t p) {
    if (found) return;
    primes.push_back(p);
    if (primes.size() >= kSegment) flush();
  });
  flush();
  return found;
}

std::string DensityReport::to_json_string(int indent) const {
  ordered_json j;
  j["predicate"] = predicate;
  j["x_max"] = x_max;
  j["hits"] = hits;
  j["scanned"] = scanned;
  j["bad_skipped"] = bad_skipped;
  j["density"] = density();
  ordered_json cps = ordered_json::array();
  for (const auto& [cx, cd] : checkpoints) cps.push_back(ordered_json::array({cx, cd}));
  j["checkpoints"] = std::move(cps);
  if (truncated) j["truncated"] = true;
  return indent >= 0 ? j.dump(indent) : j.dump();
}

DensityReport DensityReport::from_json_string(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  DensityReport rep;
  rep.predicate = j.at("predicate").get<std::string>();
  rep.x_max = j.at("x_max").get<uint64_t>();
  rep.hits = j.at("hits").get<uint64_t>();
  rep.scanned = j.at("scanned").get<uint64_t>();
  rep.bad_skipped = j.at("bad_skipped").get<std::vector<uint64_t>>();
  for (const auto& cp : j.at("checkpoints"))
    rep.checkpoints.emplace_back(cp.at(0).get<uint64_t>(), cp.at(1).get<double>());
  rep.truncated = j.value("truncated", false);
  return rep;
}

}  // namespace frobscan
