#include "mvf/poly.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <tuple>

namespace mvf {

std::int64_t monomial_count(int nvars, int degree) {
  if (degree < 0) return 0;
  if (nvars == 0) return degree == 0 ? 1 : 0;
  // C(degree + nvars - 1, nvars - 1), computed incrementally to stay exact.
  std::int64_t result = 1;
  for (int i = 1; i < nvars; ++i) result = result * (degree + i) / i;
  return result;
}

MonomialBasis::MonomialBasis(int nvars, int degree) : nvars_(nvars), degree_(degree) {
  if (nvars < 0 || nvars > 9) throw std::invalid_argument("MonomialBasis: between 0 and 9 variables supported");
  if (degree < 0 || degree > 127) throw std::invalid_argument("MonomialBasis: degree out of range");
  std::vector<std::uint8_t> current(nvars, 0);
  auto emit = [&] {
    index_.emplace(pack(current), count_++);
    exps_.insert(exps_.end(), current.begin(), current.end());
  };
  if (nvars == 0) {
    if (degree == 0) emit();
    return;
  }
  // Descending lexicographic enumeration.
  auto rec = [&](auto&& self, int var, int remaining) -> void {
    if (var == nvars - 1) {
      current[var] = static_cast<std::uint8_t>(remaining);
      emit();
      return;
    }
    for (int e = remaining; e >= 0; --e) {
      current[var] = static_cast<std::uint8_t>(e);
      self(self, var + 1, remaining - e);
    }
  };
  rec(rec, 0, degree);
}

std::uint64_t MonomialBasis::pack(std::span<const std::uint8_t> exps) {
  std::uint64_t key = 0;
  for (auto e : exps) key = (key << 7) | e;
  return key;
}

int MonomialBasis::index_of(std::span<const std::uint8_t> exps) const {
  if (static_cast<int>(exps.size()) != nvars_) return -1;
  auto it = index_.find(pack(exps));
  return it == index_.end() ? -1 : it->second;
}

namespace {

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

const MonomialBasis& monomials(int nvars, int degree) {
  static std::map<std::pair<int, int>, std::unique_ptr<MonomialBasis>> cache;
  std::lock_guard lock(cache_mutex());
  auto& slot = cache[{nvars, degree}];
  if (!slot) slot = std::make_unique<MonomialBasis>(nvars, degree);
  return *slot;
}

const std::vector<int>& product_table(int nvars, int d1, int d2) {
  static std::map<std::tuple<int, int, int>, std::unique_ptr<std::vector<int>>> cache;
  static std::mutex table_mutex;
  {
    std::lock_guard lock(table_mutex);
    auto it = cache.find({nvars, d1, d2});
    if (it != cache.end()) return *it->second;
  }
  const auto& a = monomials(nvars, d1);
  const auto& b = monomials(nvars, d2);
  const auto& c = monomials(nvars, d1 + d2);
  auto table = std::make_unique<std::vector<int>>(static_cast<std::size_t>(a.size()) * b.size());
  std::vector<std::uint8_t> e(nvars);
  for (int i = 0; i < a.size(); ++i) {
    auto ei = a.exponents(i);
    for (int j = 0; j < b.size(); ++j) {
      auto ej = b.exponents(j);
      for (int k = 0; k < nvars; ++k) e[k] = static_cast<std::uint8_t>(ei[k] + ej[k]);
      (*table)[static_cast<std::size_t>(i) * b.size() + j] = c.index_of(e);
    }
  }
  std::lock_guard lock(table_mutex);
  auto& slot = cache[{nvars, d1, d2}];
  if (!slot) slot = std::move(table);
  return *slot;
}

// ---------------------------------------------------------------------------

HomPoly HomPoly::zero(int nvars, int degree) {
  if (degree < 0) return HomPoly{nvars, degree, {}};
  return HomPoly{nvars, degree, std::vector<Rational>(monomials(nvars, degree).size())};
}

HomPoly HomPoly::monomial(int nvars, int degree, int index, const Rational& c) {
  HomPoly p = zero(nvars, degree);
  p.coeffs.at(index) = c;
  return p;
}

bool HomPoly::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& r) { return r.is_zero(); });
}

HomPoly operator*(const HomPoly& a, const HomPoly& b) {
  if (a.nvars != b.nvars) throw std::invalid_argument("HomPoly: variable count mismatch");
  if (a.degree < 0 || b.degree < 0) return HomPoly::zero(a.nvars, a.degree + b.degree);
  HomPoly out = HomPoly::zero(a.nvars, a.degree + b.degree);
  const auto& table = product_table(a.nvars, a.degree, b.degree);
  const std::size_t nb = b.coeffs.size();
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i].is_zero()) continue;
    for (std::size_t j = 0; j < nb; ++j) {
      if (b.coeffs[j].is_zero()) continue;
      out.coeffs[table[i * nb + j]] += a.coeffs[i] * b.coeffs[j];
    }
  }
  return out;
}

HomPoly operator+(const HomPoly& a, const HomPoly& b) {
  if (a.nvars != b.nvars || a.degree != b.degree) throw std::invalid_argument("HomPoly: shape mismatch in sum");
  HomPoly out = a;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] += b.coeffs[i];
  return out;
}

GradedPolySpace::GradedPolySpace(int num_vars, int degree_bound) : num_vars_(num_vars), degree_bound_(degree_bound) {
  if (num_vars < 1) throw std::invalid_argument("GradedPolySpace: need at least one variable");
  if (degree_bound < 0) throw std::invalid_argument("GradedPolySpace: negative degree bound");
}

const MonomialBasis& GradedPolySpace::basis(int degree) const {
  if (degree < 0 || degree > degree_bound_) throw std::out_of_range("GradedPolySpace: degree beyond bound");
  return monomials(num_vars_, degree);
}

// ---------------------------------------------------------------------------

bool LinearForm::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& r) { return r.is_zero(); });
}

int LinearForm::dependent_var() const {
  int best = -1;
  Rational best_abs(0);
  for (int i = 0; i < num_vars(); ++i) {
    Rational a = coeffs[i].abs();
    if (a > best_abs) {
      best_abs = a;
      best = i;
    }
  }
  if (best < 0) throw std::invalid_argument("LinearForm: zero form has no dependent variable");
  return best;
}

bool LinearForm::proportional_to(const LinearForm& other) const {
  if (num_vars() != other.num_vars()) return false;
  // a_i b_j == a_j b_i for all pairs, via a fixed pivot.
  int p = -1;
  for (int i = 0; i < num_vars(); ++i)
    if (!coeffs[i].is_zero()) {
      p = i;
      break;
    }
  if (p < 0) return other.is_zero();
  if (other.coeffs[p].is_zero()) return false;
  for (int i = 0; i < num_vars(); ++i)
    if (coeffs[i] * other.coeffs[p] != other.coeffs[i] * coeffs[p]) return false;
  return true;
}

HomPoly LinearForm::as_poly() const {
  HomPoly p = HomPoly::zero(num_vars(), 1);
  const auto& basis = monomials(num_vars(), 1);
  std::vector<std::uint8_t> e(num_vars(), 0);
  for (int i = 0; i < num_vars(); ++i) {
    e.assign(num_vars(), 0);
    e[i] = 1;
    p.coeffs[basis.index_of(e)] = coeffs[i];
  }
  return p;
}

HyperplaneRestriction::HyperplaneRestriction(LinearForm form) : form_(std::move(form)) {
  if (form_.is_zero()) throw std::invalid_argument("HyperplaneRestriction: zero form");
  dep_ = form_.dependent_var();
  const Rational& c = form_.coeffs[dep_];
  for (int k = 0; k < form_.num_vars(); ++k)
    if (k != dep_) substitution_.push_back(-form_.coeffs[k] / c);
}

HomPoly HyperplaneRestriction::restricted_variable(int var) const {
  const int n = restricted_vars();
  HomPoly p = HomPoly::zero(n, 1);
  const auto& basis = monomials(n, 1);
  std::vector<std::uint8_t> e(n, 0);
  for (int k = 0; k < n; ++k) {
    e.assign(n, 0);
    e[k] = 1;
    int idx = basis.index_of(e);
    if (var == dep_)
      p.coeffs[idx] = substitution_[k];
    else if (k == (var < dep_ ? var : var - 1))
      p.coeffs[idx] = 1;
  }
  return p;
}

const std::vector<SparseVec>& HyperplaneRestriction::matrix(int degree) const {
  std::lock_guard lock(mutex_);
  auto& slot = cache_[degree];
  if (slot) return *slot;
  const int n = full_vars();
  const int m = restricted_vars();
  const auto& full = monomials(n, degree);
  // Powers of the substituted dependent variable.
  std::vector<HomPoly> powers{HomPoly::monomial(m, 0, 0)};
  HomPoly sub = restricted_variable(dep_);
  for (int a = 1; a <= degree; ++a) powers.push_back(powers.back() * sub);
  auto out = std::make_unique<std::vector<SparseVec>>(full.size());
  std::vector<std::uint8_t> rest(m);
  for (int j = 0; j < full.size(); ++j) {
    auto e = full.exponents(j);
    int a = e[dep_];
    for (int k = 0, r = 0; k < n; ++k)
      if (k != dep_) rest[r++] = e[k];
    const auto& rest_basis = monomials(m, degree - a);
    HomPoly mono = HomPoly::monomial(m, degree - a, rest_basis.index_of(rest));
    (*out)[j] = sparse_from_dense((mono * powers[a]).coeffs);
  }
  slot = std::move(out);
  return *slot;
}

HomPoly HyperplaneRestriction::restrict(const HomPoly& p) const {
  if (p.nvars != full_vars()) throw std::invalid_argument("HyperplaneRestriction: variable count mismatch");
  if (p.degree < 0) return HomPoly::zero(restricted_vars(), p.degree);
  const auto& mat = matrix(p.degree);
  HomPoly out = HomPoly::zero(restricted_vars(), p.degree);
  for (std::size_t j = 0; j < p.coeffs.size(); ++j) {
    if (p.coeffs[j].is_zero()) continue;
    for (const auto& e : mat[j]) out.coeffs[e.col] += p.coeffs[j] * e.value;
  }
  return out;
}

ExactMatrix divisibility_conditions(const GradedPolySpace& space, int degree, const LinearForm& form) {
  if (form.is_zero()) throw std::invalid_argument("divisibility_conditions: zero linear form");
  if (form.num_vars() != space.num_vars())
    throw std::invalid_argument("divisibility_conditions: form and space disagree on variable count");
  space.basis(degree);  // bound check
  HyperplaneRestriction h(form);
  return ExactMatrix::from_columns(monomials(h.restricted_vars(), degree).size(), h.matrix(degree));
}

// ---------------------------------------------------------------------------

int PolynomialAmbient::dim(int degree) const { return static_cast<int>(monomial_count(nvars_, degree)); }

SparseVec PolynomialAmbient::mul_var(int var, int degree, const SparseVec& v) const {
  const auto& from = monomials(nvars_, degree);
  const auto& to = monomials(nvars_, degree + 1);
  std::vector<std::uint8_t> e(nvars_);
  SparseVec out;
  for (const auto& entry : v) {
    auto src = from.exponents(entry.col);
    std::copy(src.begin(), src.end(), e.begin());
    ++e[var];
    out.push_back({to.index_of(e), entry.value});
  }
  std::sort(out.begin(), out.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.col < b.col; });
  return out;
}

std::vector<int> graded_minimal_generators(const std::vector<std::vector<SparseVec>>& per_degree_bases,
                                           const GradedAmbient& ambient) {
  const int top = static_cast<int>(per_degree_bases.size()) - 1;
  std::vector<int> counts(per_degree_bases.size(), 0);
  std::vector<EchelonBasis> spans;
  for (int d = 0; d <= top; ++d) {
    spans.emplace_back(ambient.dim(d));
    for (const auto& v : per_degree_bases[d]) spans.back().insert(v);
  }
  for (int d = 0; d <= top; ++d) {
    if (d == 0) {
      counts[0] = spans[0].rank();
      continue;
    }
    EchelonBasis products(ambient.dim(d));
    for (const auto& b : spans[d - 1].rows()) {
      for (int var = 0; var < ambient.num_vars(); ++var) {
        SparseVec w = ambient.mul_var(var, d - 1, b);
        if (!spans[d].contains(w))
          throw std::domain_error("graded_minimal_generators: subspace in degree " + std::to_string(d - 1) +
                                  " is not closed under multiplication by variable " + std::to_string(var));
        products.insert(w);
      }
    }
    counts[d] = spans[d].rank() - products.rank();
  }
  return counts;
}

std::vector<int> graded_minimal_generators(const std::vector<std::vector<SparseVec>>& per_degree_bases, int vars) {
  return graded_minimal_generators(per_degree_bases, PolynomialAmbient(vars));
}

}  // namespace mvf
