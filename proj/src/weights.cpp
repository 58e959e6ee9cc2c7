#include "mvf/weights.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mvf {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("QPolynomial: coefficient overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("QPolynomial: coefficient overflow");
  return r;
}

std::string key_of(const std::vector<int>& v) {
  return std::string(reinterpret_cast<const char*>(v.data()), v.size() * sizeof(int));
}

void require_dominant(const Coweight& w, const RootSystem& rs, const char* what) {
  if (w.rank() != rs.rank()) throw std::invalid_argument(std::string(what) + ": rank mismatch");
  if (!rs.is_dominant(w)) throw std::invalid_argument(std::string(what) + ": weight " + w.to_string() + " is not dominant");
}

}  // namespace

QPolynomial QPolynomial::constant(std::int64_t c) {
  QPolynomial p;
  if (c != 0) p.coeffs.push_back(c);
  return p;
}

std::int64_t QPolynomial::at_one() const {
  std::int64_t s = 0;
  for (auto c : coeffs) s = checked_add(s, c);
  return s;
}

std::int64_t QPolynomial::coefficient(int power) const {
  return power >= 0 && power < static_cast<int>(coeffs.size()) ? coeffs[power] : 0;
}

void QPolynomial::trim() {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

QPolynomial& QPolynomial::operator+=(const QPolynomial& o) { return add_scaled(o, 1, 0); }

QPolynomial& QPolynomial::add_scaled(const QPolynomial& o, std::int64_t scale, int shift) {
  if (o.coeffs.size() + shift > coeffs.size()) coeffs.resize(o.coeffs.size() + shift, 0);
  for (std::size_t i = 0; i < o.coeffs.size(); ++i)
    coeffs[i + shift] = checked_add(coeffs[i + shift], checked_mul(scale, o.coeffs[i]));
  trim();
  return *this;
}

std::string QPolynomial::to_string() const {
  if (coeffs.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    std::int64_t c = coeffs[i];
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << '-';
    std::int64_t a = c < 0 ? -c : c;
    if (i == 0)
      os << a;
    else {
      if (a != 1) os << a;
      os << 'q';
      if (i > 1) os << '^' << i;
    }
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------------------

KostantPartition::KostantPartition(const RootSystem& rs) : rs_(rs) {
  // Largest roots first keeps the recursion shallow.
  for (auto it = rs.positive_roots().rbegin(); it != rs.positive_roots().rend(); ++it) roots_.push_back(it->coeffs);
  memo_.resize(roots_.size() + 1);
}

const QPolynomial& KostantPartition::count(const std::vector<int>& root_coords) { return count_from(0, root_coords); }

QPolynomial KostantPartition::count(const Coweight& nu) {
  auto c = rs_.root_coordinates(nu);
  if (!c) return {};
  return count(*c);
}

const QPolynomial& KostantPartition::count_from(int first, const std::vector<int>& v) {
  static const QPolynomial zero;
  if (std::any_of(v.begin(), v.end(), [](int x) { return x < 0; })) return zero;
  auto& table = memo_[first];
  std::string key = key_of(v);
  if (auto it = table.find(key); it != table.end()) return it->second;

  QPolynomial result;
  if (first == static_cast<int>(roots_.size())) {
    if (std::all_of(v.begin(), v.end(), [](int x) { return x == 0; })) result = QPolynomial::constant(1);
  } else {
    const auto& root = roots_[first];
    std::vector<int> rest = v;
    for (int m = 0;; ++m) {
      if (std::any_of(rest.begin(), rest.end(), [](int x) { return x < 0; })) break;
      result.add_scaled(count_from(first + 1, rest), 1, m);
      for (std::size_t i = 0; i < rest.size(); ++i) rest[i] -= root[i];
    }
  }
  return memo_[first].emplace(std::move(key), std::move(result)).first->second;
}

QPolynomial kostant_partition(const Coweight& nu, const RootSystem& rs, bool q_graded) {
  KostantPartition kp(rs);
  QPolynomial p = kp.count(nu);
  return q_graded ? p : QPolynomial::constant(p.at_one());
}

std::vector<std::pair<Coweight, int>> regular_orbit_with_signs(const Coweight& start, const RootSystem& rs,
                                                               std::size_t cap) {
  std::map<Coweight, int> parity;
  std::deque<Coweight> queue{start};
  parity[start] = 0;
  while (!queue.empty()) {
    Coweight w = queue.front();
    queue.pop_front();
    int p = parity[w];
    for (int i = 0; i < rs.rank(); ++i) {
      Coweight r = rs.reflect(i, w);
      if (parity.emplace(r, p ^ 1).second) {
        if (parity.size() > cap)
          throw std::length_error("Weyl orbit exceeds " + std::to_string(cap) + " elements for " + rs.label());
        queue.push_back(std::move(r));
      }
    }
  }
  std::vector<std::pair<Coweight, int>> out;
  out.reserve(parity.size());
  for (auto& [w, p] : parity) out.emplace_back(w, p ? -1 : 1);
  return out;
}

QPolynomial weight_multiplicity(const Coweight& lambda, const Coweight& nu, const RootSystem& rs, bool q_graded) {
  require_dominant(lambda, rs, "weight_multiplicity");
  if (nu.rank() != rs.rank()) throw std::invalid_argument("weight_multiplicity: rank mismatch");
  if (!rs.root_coordinates(lambda - nu)) return {};
  const Coweight rho = rs.weyl_vector();
  const Coweight target = nu + rho;
  KostantPartition kp(rs);
  QPolynomial total;
  for (const auto& [w, sign] : regular_orbit_with_signs(lambda + rho, rs, 4'000'000)) {
    auto c = rs.root_coordinates(w - target);
    if (!c || std::any_of(c->begin(), c->end(), [](int x) { return x < 0; })) continue;
    total.add_scaled(kp.count(*c), sign, 0);
  }
  return q_graded ? total : QPolynomial::constant(total.at_one());
}

std::vector<Coweight> weights_of(const Coweight& lambda, const RootSystem& rs) {
  require_dominant(lambda, rs, "weights_of");
  std::set<Coweight> seen{lambda};
  std::deque<Coweight> queue{lambda};
  while (!queue.empty()) {
    Coweight w = queue.front();
    queue.pop_front();
    for (int i = 0; i < rs.rank(); ++i) {
      Coweight next = w - rs.simple_root(i);
      if (seen.count(next)) continue;
      if (!rs.dominance_leq(rs.dominant_conjugate(next), lambda)) continue;
      seen.insert(next);
      queue.push_back(std::move(next));
    }
  }
  return {seen.begin(), seen.end()};
}

WeightTable weight_table(const Coweight& lambda, const RootSystem& rs) {
  std::vector<Coweight> all = weights_of(lambda, rs);
  std::vector<Coweight> dominant;
  for (const auto& w : all)
    if (rs.is_dominant(w)) dominant.push_back(w);
  std::sort(dominant.begin(), dominant.end(), [&](const Coweight& a, const Coweight& b) {
    return rs.two_rho_pairing(a) > rs.two_rho_pairing(b);
  });
  std::set<Coweight> support(all.begin(), all.end());
  std::map<Coweight, std::int64_t> dom_mult;
  const Coweight rho = rs.weyl_vector();
  const Rational top = rs.inner(lambda + rho, lambda + rho);
  for (const auto& nu : dominant) {
    if (nu == lambda) {
      dom_mult[nu] = 1;
      continue;
    }
    std::int64_t sum = 0;
    for (const auto& root : rs.positive_roots()) {
      const int base = rs.pair_with_root(nu, root.coeffs);
      for (int k = 1;; ++k) {
        Coweight up = nu + root.weight * k;
        if (!support.count(up)) break;
        sum = checked_add(sum, checked_mul(base + 2 * k, dom_mult.at(rs.dominant_conjugate(up))));
      }
    }
    Rational denom = top - rs.inner(nu + rho, nu + rho);
    Rational m = Rational(checked_mul(2, sum)) / denom;
    if (!m.is_integer() || m.sign() < 0) throw std::logic_error("Freudenthal recursion produced a non-integral value");
    dom_mult[nu] = m.small_num();
  }
  WeightTable table;
  for (const auto& w : all) table[w] = dom_mult.at(rs.dominant_conjugate(w));
  return table;
}

WeightTable tensor_table(const Coweight& lambda, const Coweight& mu, const RootSystem& rs) {
  WeightTable a = weight_table(lambda, rs);
  WeightTable b = mu == lambda ? a : weight_table(mu, rs);
  WeightTable out;
  for (const auto& [s, ms] : a)
    for (const auto& [t, mt] : b) {
      auto& slot = out[s + t];
      slot = checked_add(slot, checked_mul(ms, mt));
    }
  return out;
}

std::int64_t tensor_weight_dim(const Coweight& lambda, const Coweight& mu, const Coweight& nu, const RootSystem& rs) {
  require_dominant(lambda, rs, "tensor_weight_dim");
  require_dominant(mu, rs, "tensor_weight_dim");
  WeightTable a = weight_table(lambda, rs);
  WeightTable b = mu == lambda ? a : weight_table(mu, rs);
  std::int64_t total = 0;
  for (const auto& [s, ms] : a) {
    auto it = b.find(nu - s);
    if (it != b.end()) total = checked_add(total, checked_mul(ms, it->second));
  }
  return total;
}

std::map<Coweight, std::int64_t> tensor_decompose(const Coweight& lambda, const Coweight& mu, const RootSystem& rs) {
  require_dominant(lambda, rs, "tensor_decompose");
  require_dominant(mu, rs, "tensor_decompose");
  WeightTable remaining = tensor_table(lambda, mu, rs);
  std::map<Coweight, std::int64_t> out;
  for (;;) {
    std::erase_if(remaining, [](const auto& kv) { return kv.second == 0; });
    if (remaining.empty()) break;
    auto best = remaining.begin();
    for (auto it = remaining.begin(); it != remaining.end(); ++it)
      if (rs.two_rho_pairing(it->first) > rs.two_rho_pairing(best->first)) best = it;
    const Coweight top = best->first;
    const std::int64_t n = best->second;
    if (n < 0 || !rs.is_dominant(top)) throw std::logic_error("tensor_decompose: inconsistent product table");
    out[top] += n;
    for (const auto& [w, m] : weight_table(top, rs)) {
      auto& slot = remaining[w];
      slot = checked_add(slot, -checked_mul(n, m));
    }
  }
  return out;
}

}  // namespace mvf
