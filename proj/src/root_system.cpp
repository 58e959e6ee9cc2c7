#include "mvf/root_system.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mvf {

bool Coweight::is_zero() const {
  return std::all_of(labels.begin(), labels.end(), [](int v) { return v == 0; });
}

Coweight Coweight::operator+(const Coweight& o) const {
  if (o.rank() != rank()) throw std::invalid_argument("Coweight: rank mismatch");
  Coweight r = *this;
  for (int i = 0; i < rank(); ++i) r.labels[i] += o.labels[i];
  return r;
}

Coweight Coweight::operator-(const Coweight& o) const { return *this + (-o); }

Coweight Coweight::operator-() const {
  Coweight r = *this;
  for (auto& v : r.labels) v = -v;
  return r;
}

Coweight Coweight::operator*(int k) const {
  Coweight r = *this;
  for (auto& v : r.labels) v *= k;
  return r;
}

std::string Coweight::to_string() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < rank(); ++i) os << (i ? "," : "") << labels[i];
  os << ']';
  return os.str();
}

int Root::height() const {
  int h = 0;
  for (int c : coeffs) h += c;
  return h;
}

char type_letter(RootType t) {
  switch (t) {
    case RootType::A:
      return 'A';
    case RootType::D:
      return 'D';
    case RootType::E:
      return 'E';
  }
  return '?';
}

RootType parse_root_type(const std::string& s) {
  if (s == "A" || s == "a") return RootType::A;
  if (s == "D" || s == "d") return RootType::D;
  if (s == "E" || s == "e") return RootType::E;
  throw std::invalid_argument("unsupported root system type '" + s + "' (expected A, D or E)");
}

namespace {

int dot(const std::vector<int>& a, const std::vector<int>& b) {
  int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<int> unit(int n, int i, int value) {
  std::vector<int> v(n, 0);
  v[i] = value;
  return v;
}

std::vector<std::vector<Rational>> invert(const std::vector<std::vector<int>>& m) {
  const int n = static_cast<int>(m.size());
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = m[i][j];
    a[i][n + i] = 1;
  }
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && a[p][c].is_zero()) ++p;
    if (p == n) throw std::logic_error("Cartan matrix is singular");
    std::swap(a[p], a[c]);
    Rational inv = a[c][c].inverse();
    for (auto& v : a[c]) v *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      Rational f = a[r][c];
      for (int j = 0; j < 2 * n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  std::vector<std::vector<Rational>> out(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i][j] = a[i][n + j];
  return out;
}

std::vector<std::vector<int>> realization(RootType type, int rank, int& scale) {
  std::vector<std::vector<int>> simple;
  switch (type) {
    case RootType::A:
      scale = 1;
      for (int i = 0; i < rank; ++i) {
        auto v = unit(rank + 1, i, 1);
        v[i + 1] = -1;
        simple.push_back(v);
      }
      break;
    case RootType::D:
      scale = 1;
      for (int i = 0; i + 1 < rank; ++i) {
        auto v = unit(rank, i, 1);
        v[i + 1] = -1;
        simple.push_back(v);
      }
      {
        auto v = unit(rank, rank - 2, 1);
        v[rank - 1] = 1;
        simple.push_back(v);
      }
      break;
    case RootType::E: {
      // Bourbaki labelling inside the E8 lattice, coordinates doubled.
      scale = 2;
      std::vector<std::vector<int>> e8 = {
          {1, -1, -1, -1, -1, -1, -1, 1}, {2, 2, 0, 0, 0, 0, 0, 0},  {-2, 2, 0, 0, 0, 0, 0, 0},
          {0, -2, 2, 0, 0, 0, 0, 0},      {0, 0, -2, 2, 0, 0, 0, 0}, {0, 0, 0, -2, 2, 0, 0, 0},
          {0, 0, 0, 0, -2, 2, 0, 0},      {0, 0, 0, 0, 0, -2, 2, 0},
      };
      simple.assign(e8.begin(), e8.begin() + rank);
      break;
    }
  }
  return simple;
}

}  // namespace

RootSystem RootSystem::build(RootType type, int rank) {
  bool ok = (type == RootType::A && rank >= 1) || (type == RootType::D && rank >= 3) ||
            (type == RootType::E && rank >= 6 && rank <= 8);
  if (!ok || rank > 16)
    throw std::invalid_argument(std::string("unsupported root system ") + type_letter(type) + std::to_string(rank));

  RootSystem rs;
  rs.type_ = type;
  rs.rank_ = rank;
  rs.simple_real_ = realization(type, rank, rs.scale_);
  const int norm = rs.scale_ * rs.scale_;
  rs.cartan_.assign(rank, std::vector<int>(rank));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) rs.cartan_[i][j] = dot(rs.simple_real_[i], rs.simple_real_[j]) / norm;
  rs.cartan_inverse_ = invert(rs.cartan_);

  // Reflection closure of the simple roots, tracking simple-root coefficients.
  std::map<std::vector<int>, std::vector<int>> found;  // realization -> coefficients
  std::deque<std::vector<int>> queue;
  for (int i = 0; i < rank; ++i) {
    found.emplace(rs.simple_real_[i], unit(rank, i, 1));
    queue.push_back(rs.simple_real_[i]);
  }
  while (!queue.empty()) {
    auto beta = queue.front();
    queue.pop_front();
    const auto coeffs = found.at(beta);
    for (int i = 0; i < rank; ++i) {
      int pairing = dot(beta, rs.simple_real_[i]) / norm;
      if (pairing == 0) continue;
      std::vector<int> image = beta;
      for (std::size_t k = 0; k < image.size(); ++k) image[k] -= pairing * rs.simple_real_[i][k];
      if (found.count(image)) continue;
      auto c = coeffs;
      c[i] -= pairing;
      found.emplace(image, c);
      queue.push_back(image);
    }
  }

  for (const auto& [real, coeffs] : found) {
    Root r;
    r.coeffs = coeffs;
    r.weight = Coweight::zero(rank);
    for (int j = 0; j < rank; ++j)
      for (int i = 0; i < rank; ++i) r.weight.labels[j] += coeffs[i] * rs.cartan_[i][j];
    rs.roots_real_.push_back(real);
    rs.roots_.push_back(r);
  }
  // Deterministic order: positive roots by height, then coefficients.
  std::vector<std::size_t> idx(rs.roots_.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  auto key = [&](std::size_t i) { return std::make_pair(-rs.roots_[i].height(), rs.roots_[i].coeffs); };
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
  std::vector<Root> sorted;
  std::vector<std::vector<int>> sorted_real;
  for (auto i : idx) {
    sorted.push_back(rs.roots_[i]);
    sorted_real.push_back(rs.roots_real_[i]);
  }
  rs.roots_ = std::move(sorted);
  rs.roots_real_ = std::move(sorted_real);
  for (const auto& r : rs.roots_)
    if (r.height() > 0) rs.positive_.push_back(r);
  std::sort(rs.positive_.begin(), rs.positive_.end(), [](const Root& a, const Root& b) {
    if (a.height() != b.height()) return a.height() < b.height();
    return a.coeffs < b.coeffs;
  });
  rs.highest_index_ = static_cast<int>(rs.positive_.size()) - 1;
  return rs;
}

std::string RootSystem::label() const { return std::string(1, type_letter(type_)) + std::to_string(rank_); }

Coweight RootSystem::fundamental(int i) const {
  if (i < 0 || i >= rank_) throw std::out_of_range("fundamental weight index out of range");
  return Coweight(unit(rank_, i, 1));
}

std::optional<std::vector<int>> RootSystem::root_coordinates(const Coweight& w) const {
  std::vector<int> out(rank_);
  for (int i = 0; i < rank_; ++i) {
    Rational c(0);
    for (int j = 0; j < rank_; ++j) c += cartan_inverse_[i][j] * Rational(w.labels[j]);
    if (!c.is_integer()) return std::nullopt;
    out[i] = static_cast<int>(c.small_num());
  }
  return out;
}

Rational RootSystem::inner(const Coweight& a, const Coweight& b) const {
  Rational s(0);
  for (int i = 0; i < rank_; ++i) {
    if (a.labels[i] == 0) continue;
    for (int j = 0; j < rank_; ++j)
      if (b.labels[j] != 0) s += Rational(a.labels[i] * b.labels[j]) * cartan_inverse_[i][j];
  }
  return s;
}

int RootSystem::pair_with_root(const Coweight& w, const std::vector<int>& root_coeffs) const {
  int s = 0;
  for (int i = 0; i < rank_; ++i) s += root_coeffs[i] * w.labels[i];
  return s;
}

int RootSystem::two_rho_pairing(const Coweight& w) const {
  int s = 0;
  for (const auto& r : positive_) s += pair_with_root(w, r.coeffs);
  return s;
}

Coweight RootSystem::reflect(int i, const Coweight& w) const {
  Coweight r = w;
  const int a = w.labels[i];
  for (int j = 0; j < rank_; ++j) r.labels[j] -= a * cartan_[i][j];
  return r;
}

Coweight RootSystem::reflect_root(const Root& root, const Coweight& w) const {
  return w - root.weight * pair_with_root(w, root.coeffs);
}

bool RootSystem::is_dominant(const Coweight& w) const {
  return std::all_of(w.labels.begin(), w.labels.end(), [](int v) { return v >= 0; });
}

Coweight RootSystem::dominant_conjugate(const Coweight& w) const {
  Coweight r = w;
  for (;;) {
    int i = 0;
    while (i < rank_ && r.labels[i] >= 0) ++i;
    if (i == rank_) return r;
    r = reflect(i, r);
  }
}

bool RootSystem::dominance_leq(const Coweight& nu, const Coweight& lambda) const {
  auto c = root_coordinates(lambda - nu);
  return c && std::all_of(c->begin(), c->end(), [](int v) { return v >= 0; });
}

std::vector<Coweight> RootSystem::adjoint_weights() const {
  std::vector<Coweight> out;
  for (const auto& r : roots_) out.push_back(r.weight);
  for (int i = 0; i < rank_; ++i) out.push_back(Coweight::zero(rank_));
  return out;
}

std::vector<Coweight> RootSystem::total_order_extension(std::vector<Coweight> weights) const {
  std::sort(weights.begin(), weights.end(), [&](const Coweight& a, const Coweight& b) {
    int ha = two_rho_pairing(a), hb = two_rho_pairing(b);
    if (ha != hb) return ha < hb;
    return a < b;
  });
  weights.erase(std::unique(weights.begin(), weights.end()), weights.end());
  return weights;
}

Coweight RootSystem::parse_coweight(const std::string& raw) const {
  std::string name;
  for (char ch : raw)
    if (!std::isspace(static_cast<unsigned char>(ch))) name.push_back(ch);
  if (name == "theta") return theta();
  if (name == "zero" || name == "0") return Coweight::zero(rank_);
  if (name == "rho") return weyl_vector();
  auto indexed = [&](const std::string& prefix) -> std::optional<int> {
    if (name.rfind(prefix, 0) != 0) return std::nullopt;
    std::string rest = name.substr(prefix.size());
    if (!rest.empty() && rest[0] == '_') rest = rest.substr(1);
    if (rest.empty() || !std::all_of(rest.begin(), rest.end(), ::isdigit)) return std::nullopt;
    int i = std::stoi(rest);
    if (i < 1 || i > rank_) throw std::invalid_argument("index out of range in '" + raw + "'");
    return i - 1;
  };
  if (auto i = indexed("omega")) return fundamental(*i);
  if (auto i = indexed("alpha")) return simple_root(*i);
  std::string body = name;
  if (!body.empty() && body.front() == '[' && body.back() == ']') body = body.substr(1, body.size() - 2);
  std::vector<int> labels;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      labels.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw std::invalid_argument("cannot resolve coweight '" + raw + "'");
    }
  }
  if (static_cast<int>(labels.size()) != rank_)
    throw std::invalid_argument("coweight '" + raw + "' needs " + std::to_string(rank_) + " Dynkin labels");
  return Coweight(labels);
}

}  // namespace mvf
