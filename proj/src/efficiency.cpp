#include "mvf/efficiency.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "mvf/weights.hpp"

namespace mvf {

namespace {

std::int64_t stalk_rank_at(const Coweight& alpha, const Coweight& nu, const RootSystem& rs, const BmpOptions& opts,
                           std::vector<std::pair<Coweight, std::int64_t>>* all = nullptr) {
  Truncation tr{rs, alpha};
  MomentGraph g = build_graph(tr);
  BmpResult res = bmp_stalks(tr, g, opts);
  if (all)
    for (int v = 0; v < g.num_vertices(); ++v) all->emplace_back(g.vertex(v), res.stalks.at(v).rank());
  const int x = g.index_of(nu);
  return x < 0 ? 0 : res.stalks.at(x).rank();
}

}  // namespace

Rational eta_rep(const Coweight& alpha, const Coweight& nu, const Coweight& lambda, const Coweight& mu,
                 const RootSystem& rs, const BmpOptions& opts) {
  if (!rs.is_dominant(alpha)) throw std::invalid_argument("eta_rep: alpha must be dominant");
  const std::int64_t denom = tensor_weight_dim(lambda, mu, nu, rs);
  if (denom == 0) throw std::domain_error("eta_rep: " + nu.to_string() + " is not a weight of the tensor product");
  return Rational(stalk_rank_at(alpha, nu, rs, opts)) / Rational(denom);
}

Rational eta_graph(const Coweight& alpha, const Coweight& nu, const Coweight& mu, const RootSystem& rs,
                   const BmpOptions& opts) {
  if (!rs.is_dominant(alpha)) throw std::invalid_argument("eta_graph: alpha must be dominant");
  std::vector<std::pair<Coweight, std::int64_t>> ranks;
  const std::int64_t numer = stalk_rank_at(alpha, nu, rs, opts, &ranks);
  auto mu_weights = weights_of(mu, rs);
  std::set<Coweight> partner(mu_weights.begin(), mu_weights.end());
  std::int64_t denom = 0;
  bool any = false;
  for (const auto& [z, r] : ranks)
    if (partner.count(nu - z)) {
      any = true;
      denom += r;
    }
  if (!any) throw std::domain_error("eta_graph: empty collision set at " + nu.to_string());
  if (denom == 0) throw std::domain_error("eta_graph: collision set carries no stalk rank");
  return Rational(numer) / Rational(denom);
}

std::int64_t root_count(RootType type, int rank) {
  switch (type) {
    case RootType::A:
      if (rank >= 1) return static_cast<std::int64_t>(rank) * (rank + 1);
      break;
    case RootType::D:
      if (rank >= 3) return 2 * static_cast<std::int64_t>(rank) * (rank - 1);
      break;
    case RootType::E:
      if (rank == 6) return 72;
      if (rank == 7) return 126;
      if (rank == 8) return 240;
      break;
  }
  throw std::invalid_argument(std::string("unsupported root system ") + type_letter(type) + std::to_string(rank));
}

Rational eta_bound(RootType type, int rank) {
  const std::int64_t roots = root_count(type, rank);
  const std::int64_t l = rank;
  return Rational(l) / Rational(l * l + roots);
}

std::string EfficiencyRecord::label() const { return std::string(1, type_letter(type)) + std::to_string(rank); }

EfficiencyRecord efficiency_record(RootType type, int rank, NumeratorMode mode, const BmpOptions& opts) {
  RootSystem rs = RootSystem::build(type, rank);
  EfficiencyRecord rec;
  rec.type = type;
  rec.rank = rank;
  rec.num_roots = rs.num_roots();
  rec.bound = eta_bound(type, rank);
  const Coweight theta = rs.theta();
  const Coweight zero = Coweight::zero(rank);
  rec.combinatorial_dim = tensor_weight_dim(theta, theta, zero, rs);
  rec.geometric_rank = rank;
  rec.source = "analytic";
  if (mode == NumeratorMode::Stalk) {
    try {
      rec.geometric_rank = stalk_rank_at(theta, zero, rs, opts);
      rec.source = "stalk";
    } catch (const SystemTooLarge& e) {
      rec.source = "analytic (stalk refused: estimate " + std::to_string(e.estimate()) + ")";
    }
  }
  rec.eta = Rational(rec.geometric_rank) / Rational(rec.combinatorial_dim);
  return rec;
}

std::vector<EfficiencyRecord> series_report(int max_rank, NumeratorMode mode, const BmpOptions& opts, int threads) {
  if (max_rank < 1) throw std::invalid_argument("series_report: max rank must be at least 1");
  std::vector<std::pair<RootType, int>> jobs;
  for (int l = 1; l <= max_rank; ++l) jobs.emplace_back(RootType::A, l);
  for (int l = 3; l <= max_rank; ++l) jobs.emplace_back(RootType::D, l);
  for (int l = 6; l <= 8; ++l) jobs.emplace_back(RootType::E, l);
  std::vector<EfficiencyRecord> out(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next++;
      if (i >= jobs.size()) return;
      try {
        out[i] = efficiency_record(jobs[i].first, jobs[i].second, mode, opts);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(jobs.size())));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

bool series_strictly_decreasing(const std::vector<EfficiencyRecord>& records, std::string* failure) {
  std::map<RootType, const EfficiencyRecord*> last;
  for (const auto& r : records) {
    auto it = last.find(r.type);
    if (it != last.end() && it->second->rank < r.rank && !(r.bound < it->second->bound)) {
      if (failure) *failure = it->second->label() + " bound " + it->second->bound.to_string() + " vs " + r.label() +
                              " bound " + r.bound.to_string();
      return false;
    }
    last[r.type] = &r;
  }
  return true;
}

}  // namespace mvf
