#include "mvf/bmp.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "mvf/weights.hpp"

namespace mvf {

InsufficientDegreeBound::InsufficientDegreeBound(int vertex, int bound)
    : std::runtime_error("stalk generators reach the degree bound " + std::to_string(bound) + " at vertex " +
                         std::to_string(vertex) + "; rerun with a larger --degree-bound"),
      vertex_(vertex),
      bound_(bound) {}

SystemTooLarge::SystemTooLarge(std::int64_t estimate, std::int64_t cap)
    : std::runtime_error("estimated congruence system dimension " + std::to_string(estimate) + " exceeds the cap " +
                         std::to_string(cap) + "; raise --max-system to run anyway"),
      estimate_(estimate),
      cap_(cap) {}

std::vector<int> Stalk::profile() const {
  std::vector<int> out;
  for (int d : degrees) {
    if (d >= static_cast<int>(out.size())) out.resize(d + 1, 0);
    ++out[d];
  }
  return out;
}

const Stalk& StalkAssignment::at(int v) const {
  const auto& s = stalks_.at(v);
  if (!s) throw std::invalid_argument("no stalk assigned at vertex " + std::to_string(v));
  return *s;
}

namespace {

// a (sparse, degree da) times b (dense, degree db), both in nvars variables.
SparseVec times_poly(const SparseVec& a, int da, const HomPoly& b, int nvars) {
  if (a.empty() || b.degree < 0 || b.coeffs.empty()) return {};
  const auto& table = product_table(nvars, da, b.degree);
  const std::size_t nb = b.coeffs.size();
  std::vector<std::pair<int, Rational>> terms;
  for (const auto& e : a)
    for (std::size_t j = 0; j < nb; ++j)
      if (!b.coeffs[j].is_zero()) terms.emplace_back(table[e.col * nb + j], e.value * b.coeffs[j]);
  std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  SparseVec out;
  for (auto& [col, val] : terms) {
    if (!out.empty() && out.back().col == col)
      out.back().value += val;
    else
      out.push_back({col, std::move(val)});
  }
  std::erase_if(out, [](const SparseEntry& e) { return e.value.is_zero(); });
  return out;
}

SparseVec merge_terms(std::vector<std::pair<int, Rational>>& terms) {
  std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  SparseVec out;
  for (auto& [col, val] : terms) {
    if (!out.empty() && out.back().col == col)
      out.back().value += val;
    else
      out.push_back({col, std::move(val)});
  }
  std::erase_if(out, [](const SparseEntry& e) { return e.value.is_zero(); });
  return out;
}

// Multiplies a block (polynomials of degree d in n variables) by a linear
// polynomial given sparsely, appending to terms at the given target offset.
void mul_block_linear(const SparseVec& v, std::size_t begin, std::size_t end, int block_offset, int n, int d,
                      const SparseVec& linear, int target_offset, std::vector<std::pair<int, Rational>>& terms) {
  const auto& table = product_table(n, d, 1);
  for (std::size_t t = begin; t < end; ++t) {
    const int local = v[t].col - block_offset;
    for (const auto& l : linear)
      terms.emplace_back(target_offset + table[static_cast<std::size_t>(local) * n + l.col], v[t].value * l.value);
  }
}

}  // namespace

// ---------------------------------------------------------------------------

BoundaryAmbient::BoundaryAmbient(const MomentGraph& g, int x, const std::vector<std::vector<int>>& upper_degrees)
    : nv_(g.num_vars()), edges_(order_predecessors(g, x)), upper_degrees_(upper_degrees) {
  if (upper_degrees_.size() != edges_.size())
    throw std::invalid_argument("BoundaryAmbient: one degree list per upward edge required");
  for (int e : edges_) {
    restr_.push_back(std::make_unique<HyperplaneRestriction>(g.edge(e).form()));
    std::vector<SparseVec> vars;
    for (int v = 0; v < nv_; ++v) vars.push_back(sparse_from_dense(restr_.back()->restricted_variable(v).coeffs));
    restricted_vars_.push_back(std::move(vars));
  }
}

const BoundaryAmbient::Layout& BoundaryAmbient::layout(int degree) const {
  if (degree < 0) throw std::out_of_range("BoundaryAmbient: negative degree");
  if (degree >= static_cast<int>(layouts_.size())) layouts_.resize(degree + 1);
  auto& slot = layouts_[degree];
  if (!slot) {
    slot = std::make_unique<Layout>();
    for (std::size_t p = 0; p < edges_.size(); ++p) {
      std::vector<int> offs;
      for (int dj : upper_degrees_[p]) {
        if (degree - dj < 0) {
          offs.push_back(-1);
          continue;
        }
        offs.push_back(slot->dim);
        slot->dim += static_cast<int>(monomial_count(nv_ - 1, degree - dj));
      }
      slot->offsets.push_back(std::move(offs));
    }
  }
  return *slot;
}

int BoundaryAmbient::dim(int degree) const { return layout(degree).dim; }

int BoundaryAmbient::offset(int degree, int p, int j) const { return layout(degree).offsets[p][j]; }

SparseVec BoundaryAmbient::mul_var(int var, int degree, const SparseVec& v) const {
  const Layout& from = layout(degree);
  const Layout& to = layout(degree + 1);
  std::vector<std::pair<int, Rational>> terms;
  std::size_t t = 0;
  for (std::size_t p = 0; p < edges_.size(); ++p) {
    for (std::size_t j = 0; j < upper_degrees_[p].size(); ++j) {
      const int off = from.offsets[p][j];
      if (off < 0) continue;
      const int size = static_cast<int>(monomial_count(nv_ - 1, degree - upper_degrees_[p][j]));
      std::size_t begin = t;
      while (t < v.size() && v[t].col < off + size) ++t;
      if (begin == t) continue;
      mul_block_linear(v, begin, t, off, nv_ - 1, degree - upper_degrees_[p][j], restricted_vars_[p][var],
                       to.offsets[p][j], terms);
    }
  }
  return merge_terms(terms);
}

SparseVec BoundaryAmbient::flatten(int degree, const std::vector<std::vector<HomPoly>>& parts) const {
  const Layout& lay = layout(degree);
  SparseVec out;
  for (std::size_t p = 0; p < edges_.size(); ++p)
    for (std::size_t j = 0; j < upper_degrees_[p].size(); ++j) {
      const int off = lay.offsets[p][j];
      if (off < 0) continue;
      const auto& poly = parts[p][j];
      for (std::size_t k = 0; k < poly.coeffs.size(); ++k)
        if (!poly.coeffs[k].is_zero()) out.push_back({off + static_cast<int>(k), poly.coeffs[k]});
    }
  return out;
}

std::vector<std::vector<HomPoly>> BoundaryAmbient::unflatten(int degree, const SparseVec& v) const {
  const Layout& lay = layout(degree);
  std::vector<std::vector<HomPoly>> parts(edges_.size());
  for (std::size_t p = 0; p < edges_.size(); ++p)
    for (std::size_t j = 0; j < upper_degrees_[p].size(); ++j) {
      HomPoly poly = HomPoly::zero(nv_ - 1, degree - upper_degrees_[p][j]);
      const int off = lay.offsets[p][j];
      if (off >= 0)
        for (const auto& e : v)
          if (e.col >= off && e.col < off + static_cast<int>(poly.coeffs.size())) poly.coeffs[e.col - off] = e.value;
      parts[p].push_back(std::move(poly));
    }
  return parts;
}

SparseVec BoundaryAmbient::image_of(int degree, int gen_degree, int mono,
                                    const std::vector<std::vector<HomPoly>>& gen_boundary) const {
  const Layout& lay = layout(degree);
  const int md = degree - gen_degree;
  SparseVec out;
  for (std::size_t p = 0; p < edges_.size(); ++p) {
    const SparseVec& rm = restr_[p]->matrix(md)[mono];
    for (std::size_t j = 0; j < upper_degrees_[p].size(); ++j) {
      const int off = lay.offsets[p][j];
      if (off < 0) continue;
      sparse_append_shifted(out, times_poly(rm, md, gen_boundary[p][j], nv_ - 1), off);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

FreeAmbient::FreeAmbient(int nvars, std::vector<int> degrees) : nv_(nvars), degrees_(std::move(degrees)) {}

int FreeAmbient::offset(int degree, int gen) const {
  if (degree - degrees_[gen] < 0) return -1;
  int off = 0;
  for (int i = 0; i < gen; ++i) off += static_cast<int>(monomial_count(nv_, degree - degrees_[i]));
  return off;
}

int FreeAmbient::dim(int degree) const {
  int total = 0;
  for (int d : degrees_) total += static_cast<int>(monomial_count(nv_, degree - d));
  return total;
}

SparseVec FreeAmbient::mul_var(int var, int degree, const SparseVec& v) const {
  std::vector<std::pair<int, Rational>> terms;
  SparseVec unit{{var, Rational(1)}};
  std::size_t t = 0;
  for (std::size_t i = 0; i < degrees_.size(); ++i) {
    const int off = offset(degree, static_cast<int>(i));
    if (off < 0) continue;
    const int size = static_cast<int>(monomial_count(nv_, degree - degrees_[i]));
    std::size_t begin = t;
    while (t < v.size() && v[t].col < off + size) ++t;
    if (begin == t) continue;
    mul_block_linear(v, begin, t, off, nv_, degree - degrees_[i], unit, offset(degree + 1, static_cast<int>(i)), terms);
  }
  return merge_terms(terms);
}

std::vector<HomPoly> FreeAmbient::unflatten(int degree, const SparseVec& v) const {
  std::vector<HomPoly> out;
  for (std::size_t i = 0; i < degrees_.size(); ++i) {
    HomPoly poly = HomPoly::zero(nv_, degree - degrees_[i]);
    const int off = offset(degree, static_cast<int>(i));
    if (off >= 0)
      for (const auto& e : v)
        if (e.col >= off && e.col < off + static_cast<int>(poly.coeffs.size())) poly.coeffs[e.col - off] = e.value;
    out.push_back(std::move(poly));
  }
  return out;
}

SparseVec FreeAmbient::flatten(int degree, const std::vector<HomPoly>& parts) const {
  SparseVec out;
  for (std::size_t i = 0; i < degrees_.size(); ++i) {
    const int off = offset(degree, static_cast<int>(i));
    if (off < 0) continue;
    for (std::size_t k = 0; k < parts[i].coeffs.size(); ++k)
      if (!parts[i].coeffs[k].is_zero()) out.push_back({off + static_cast<int>(k), parts[i].coeffs[k]});
  }
  return out;
}

// ---------------------------------------------------------------------------

int GradedSectionSpace::offset(int degree, int vertex, int gen) const {
  int off = 0;
  for (int v : upper_set) {
    for (std::size_t i = 0; i < degrees[v].size(); ++i) {
      const int md = degree - degrees[v][i];
      if (v == vertex && static_cast<int>(i) == gen) return md < 0 ? -1 : off;
      off += static_cast<int>(monomial_count(num_vars, md));
    }
  }
  throw std::invalid_argument("GradedSectionSpace: vertex outside the upper set");
}

int GradedSectionSpace::dim(int degree) const {
  int total = 0;
  for (int v : upper_set)
    for (int d : degrees[v]) total += static_cast<int>(monomial_count(num_vars, degree - d));
  return total;
}

std::vector<HomPoly> GradedSectionSpace::values_at(int degree, const SparseVec& s, int vertex) const {
  std::vector<HomPoly> out;
  for (std::size_t i = 0; i < degrees.at(vertex).size(); ++i) {
    HomPoly poly = HomPoly::zero(num_vars, degree - degrees[vertex][i]);
    const int off = offset(degree, vertex, static_cast<int>(i));
    if (off >= 0)
      for (const auto& e : s)
        if (e.col >= off && e.col < off + static_cast<int>(poly.coeffs.size())) poly.coeffs[e.col - off] = e.value;
    out.push_back(std::move(poly));
  }
  return out;
}

GradedSectionSpace section_space(const MomentGraph& g, const std::vector<int>& upper_set,
                                 const StalkAssignment& stalks, int degree_bound) {
  GradedSectionSpace space;
  space.upper_set = upper_set;
  std::sort(space.upper_set.begin(), space.upper_set.end());
  space.upper_set.erase(std::unique(space.upper_set.begin(), space.upper_set.end()), space.upper_set.end());
  space.degree_bound = degree_bound;
  space.num_vars = g.num_vars();
  space.degrees.assign(g.num_vertices(), {});
  std::vector<char> in_u(g.num_vertices(), 0);
  for (int v : space.upper_set) {
    if (v < 0 || v >= g.num_vertices()) throw std::out_of_range("section_space: unknown vertex");
    if (!stalks.has(v)) throw std::invalid_argument("section_space: vertex " + std::to_string(v) + " has no stalk");
    in_u[v] = 1;
    space.degrees[v] = stalks.at(v).degrees;
  }
  const int nv = g.num_vars();

  std::vector<int> internal;
  for (int e = 0; e < g.num_edges(); ++e)
    if (in_u[g.edge(e).lower] && in_u[g.edge(e).upper]) internal.push_back(e);

  for (int d = 0; d <= degree_bound; ++d) {
    const int n = space.dim(d);
    std::vector<std::vector<std::pair<int, Rational>>> col_terms(n);
    int row_base = 0;
    for (int e : internal) {
      const auto& edge = g.edge(e);
      HyperplaneRestriction h(edge.form());
      const auto& upper_degrees = space.degrees[edge.upper];
      std::vector<int> block(upper_degrees.size(), -1);
      int rows = 0;
      for (std::size_t j = 0; j < upper_degrees.size(); ++j)
        if (d - upper_degrees[j] >= 0) {
          block[j] = rows;
          rows += static_cast<int>(monomial_count(nv - 1, d - upper_degrees[j]));
        }
      // upper endpoint: minus the restriction of each coordinate
      for (std::size_t j = 0; j < upper_degrees.size(); ++j) {
        if (block[j] < 0) continue;
        const int md = d - upper_degrees[j];
        const int off = space.offset(d, edge.upper, static_cast<int>(j));
        const auto& mat = h.matrix(md);
        for (int m = 0; m < static_cast<int>(mat.size()); ++m)
          for (const auto& t : mat[m]) col_terms[off + m].emplace_back(row_base + block[j] + t.col, -t.value);
      }
      // lower endpoint: restriction of the monomial times the generator's edge image
      const Stalk& low = stalks.at(edge.lower);
      auto preds = order_predecessors(g, edge.lower);
      const int p = static_cast<int>(std::find(preds.begin(), preds.end(), e) - preds.begin());
      for (int i = 0; i < low.rank(); ++i) {
        const int md = d - low.degrees[i];
        if (md < 0) continue;
        const int off = space.offset(d, edge.lower, i);
        const auto& mat = h.matrix(md);
        for (int m = 0; m < static_cast<int>(mat.size()); ++m)
          for (std::size_t j = 0; j < upper_degrees.size(); ++j) {
            if (block[j] < 0) continue;
            for (const auto& t : times_poly(mat[m], md, low.boundary[i][p][j], nv - 1))
              col_terms[off + m].emplace_back(row_base + block[j] + t.col, t.value);
          }
      }
      row_base += rows;
    }
    std::vector<SparseVec> columns;
    columns.reserve(n);
    for (auto& terms : col_terms) columns.push_back(merge_terms(terms));
    ExactMatrix system = ExactMatrix::from_columns(row_base, columns);
    std::vector<SparseVec> basis;
    for (const auto& v : nullspace_basis(system)) basis.push_back(sparse_from_dense(v));
    space.basis.push_back(std::move(basis));
  }
  return space;
}

BoundaryModule boundary_module(const MomentGraph& g, int x, const GradedSectionSpace& sections) {
  auto preds = order_predecessors(g, x);
  if (preds.empty()) {
    if (x == g.top()) throw std::invalid_argument("boundary_module: the top vertex has no boundary");
    throw std::logic_error("boundary_module: vertex " + std::to_string(x) + " has nothing above it (recursion order violated)");
  }
  BoundaryModule bm;
  bm.vertex = x;
  for (int e : preds) {
    const int y = g.edge(e).upper;
    if (!std::binary_search(sections.upper_set.begin(), sections.upper_set.end(), y))
      throw std::invalid_argument("boundary_module: sections do not cover the vertices above x");
    bm.upper_degrees.push_back(sections.degrees[y]);
  }
  BoundaryAmbient amb(g, x, bm.upper_degrees);
  for (int d = 0; d <= sections.degree_bound; ++d) {
    EchelonBasis image(amb.dim(d));
    std::vector<SparseVec> basis;
    for (const auto& s : sections.basis[d]) {
      std::vector<std::vector<HomPoly>> parts;
      for (int p = 0; p < amb.num_edges(); ++p) {
        std::vector<HomPoly> restricted;
        for (const auto& val : sections.values_at(d, s, g.edge(preds[p]).upper))
          restricted.push_back(amb.restriction(p).restrict(val));
        parts.push_back(std::move(restricted));
      }
      SparseVec flat = amb.flatten(d, parts);
      int before = image.rank();
      image.insert(flat);
      if (image.rank() > before) basis.push_back(std::move(flat));
    }
    bm.basis.push_back(std::move(basis));
  }
  return bm;
}

StalkRankResult stalk_rank(const MomentGraph& g, int x, const GradedSectionSpace& sections) {
  BoundaryModule bm = boundary_module(g, x, sections);
  BoundaryAmbient amb(g, x, bm.upper_degrees);
  StalkRankResult out;
  out.profile = graded_minimal_generators(bm.basis, amb);
  for (int c : out.profile) out.rank += c;
  if (!out.profile.empty() && out.profile.back() > 0) throw InsufficientDegreeBound(x, sections.degree_bound);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct Section {
  int degree = 0;
  std::vector<std::vector<HomPoly>> values;  // per vertex; empty means zero
};

}  // namespace

StalkAssignment bmp_stalks_at_bound(const MomentGraph& g, int degree_bound) {
  const int n = g.num_vertices();
  const int nv = g.num_vars();
  const int D = degree_bound;
  if (D < 0) throw std::invalid_argument("degree bound must be non-negative");
  StalkAssignment stalks(n);
  if (n == 0) return stalks;

  const int top = g.top();
  stalks.set(top, Stalk{{0}, {{}}});
  if (D == 0) throw InsufficientDegreeBound(top, D);
  std::vector<Section> sections;
  {
    Section s;
    s.values.resize(n);
    s.values[top].push_back(HomPoly::monomial(nv, 0, 0));
    sections.push_back(std::move(s));
  }

  for (int x = top - 1; x >= 0; --x) {
    auto preds = order_predecessors(g, x);
    if (preds.empty())
      throw std::logic_error("vertex " + g.vertex(x).to_string() + " has no upward edge; the order has several maxima");
    std::vector<std::vector<int>> upper_degrees;
    for (int e : preds) upper_degrees.push_back(stalks.at(g.edge(e).upper).degrees);
    BoundaryAmbient amb(g, x, upper_degrees);

    // Images of the section generators in the boundary at x.
    std::vector<std::vector<std::vector<HomPoly>>> images(sections.size());
    std::vector<SparseVec> flat(sections.size());
    for (std::size_t b = 0; b < sections.size(); ++b) {
      const int s = sections[b].degree;
      for (int p = 0; p < amb.num_edges(); ++p) {
        const int y = g.edge(preds[p]).upper;
        const auto& vals = sections[b].values[y];
        std::vector<HomPoly> parts;
        for (std::size_t j = 0; j < upper_degrees[p].size(); ++j)
          parts.push_back(vals.empty() ? HomPoly::zero(nv - 1, s - upper_degrees[p][j])
                                       : amb.restriction(p).restrict(vals[j]));
        images[b].push_back(std::move(parts));
      }
      flat[b] = amb.flatten(s, images[b]);
    }

    // Minimal generators of the boundary module, degree by degree.
    Stalk stalk;
    std::vector<SparseVec> prev_span;
    for (int e = 0; e <= D; ++e) {
      EchelonBasis span(amb.dim(e));
      std::vector<SparseVec> next_span;
      for (const auto& w : prev_span)
        for (int v = 0; v < nv; ++v) {
          SparseVec u = amb.mul_var(v, e - 1, w);
          const int before = span.rank();
          span.insert(u);
          if (span.rank() > before) next_span.push_back(std::move(u));
        }
      for (std::size_t b = 0; b < sections.size(); ++b) {
        if (sections[b].degree != e || flat[b].empty()) continue;
        const int before = span.rank();
        span.insert(flat[b]);
        if (span.rank() > before) {
          next_span.push_back(flat[b]);
          stalk.degrees.push_back(e);
          stalk.boundary.push_back(images[b]);
        }
      }
      prev_span = std::move(next_span);
    }
    if (!stalk.degrees.empty() && stalk.degrees.back() >= D) throw InsufficientDegreeBound(x, D);
    if (x == 0) {
      stalks.set(x, std::move(stalk));
      break;
    }

    // Extend sections across x: lift each boundary image to the new stalk,
    // and add generators of the kernel of the stalk-to-boundary map.
    FreeAmbient free(nv, stalk.degrees);
    std::vector<std::vector<HomPoly>> lifts(sections.size());
    std::vector<Section> added;
    std::vector<SparseVec> prev_kernel;
    for (int e = 0; e <= D; ++e) {
      const int a = amb.dim(e);
      const int f = free.dim(e);
      EchelonBasis t(a + f, a);
      std::vector<SparseVec> kernel;
      for (int i = 0; i < stalk.rank(); ++i) {
        const int md = e - stalk.degrees[i];
        if (md < 0) continue;
        const int off = free.offset(e, i);
        const int count = static_cast<int>(monomial_count(nv, md));
        for (int m = 0; m < count; ++m) {
          SparseVec col = amb.image_of(e, stalk.degrees[i], m, stalk.boundary[i]);
          col.push_back({a + off + m, Rational(1)});
          SparseVec r = t.insert(col);
          if (r.front().col >= a) {
            for (auto& entry : r) entry.col -= a;
            kernel.push_back(std::move(r));
          }
        }
      }
      for (std::size_t b = 0; b < sections.size(); ++b) {
        if (sections[b].degree != e) continue;
        SparseVec r = t.reduce(flat[b]);
        if (!r.empty() && r.front().col < a)
          throw std::logic_error("section image outside the boundary module at vertex " + std::to_string(x));
        for (auto& entry : r) {
          entry.col -= a;
          entry.value = -entry.value;
        }
        lifts[b] = free.unflatten(e, r);
      }
      EchelonBasis products(f);
      for (const auto& k : prev_kernel)
        for (int v = 0; v < nv; ++v) products.insert(free.mul_var(v, e - 1, k));
      for (const auto& k : kernel) {
        const int before = products.rank();
        products.insert(k);
        if (products.rank() > before) {
          Section s;
          s.degree = e;
          s.values.resize(n);
          s.values[x] = free.unflatten(e, k);
          added.push_back(std::move(s));
        }
      }
      prev_kernel = std::move(kernel);
    }
    for (std::size_t b = 0; b < sections.size(); ++b) sections[b].values[x] = std::move(lifts[b]);
    for (auto& s : added) sections.push_back(std::move(s));
    stalks.set(x, std::move(stalk));
  }
  return stalks;
}

int default_degree_bound(const Truncation& tr) {
  const int h = tr.rs.two_rho_pairing(tr.lambda);
  return std::max(1, (h + 1) / 2);
}

std::int64_t estimate_system_size(const Truncation& tr, const MomentGraph& g, int degree_bound) {
  WeightTable table = weight_table(tr.lambda, tr.rs);
  std::int64_t worst = 0;
  const std::int64_t per_rank = monomial_count(g.num_vars() - 1, degree_bound);
  for (int x = 0; x < g.num_vertices(); ++x) {
    std::int64_t total = 0;
    for (int e : order_predecessors(g, x)) {
      auto it = table.find(g.vertex(g.edge(e).upper));
      total += (it == table.end() ? 1 : it->second) * per_rank;
    }
    worst = std::max(worst, total);
  }
  return worst;
}

BmpResult bmp_stalks(const Truncation& tr, const MomentGraph& g, const BmpOptions& opts) {
  int d = opts.degree_bound.value_or(default_degree_bound(tr));
  for (int attempt = 0;; ++attempt) {
    const std::int64_t estimate = estimate_system_size(tr, g, d);
    if (estimate > opts.size_cap) throw SystemTooLarge(estimate, opts.size_cap);
    try {
      return BmpResult{bmp_stalks_at_bound(g, d), d};
    } catch (const InsufficientDegreeBound&) {
      if (!opts.escalate || attempt >= opts.max_escalations) throw;
      ++d;
    }
  }
}

// ---------------------------------------------------------------------------

std::int64_t MultiplicityMatrix::at(const Coweight& row, const Coweight& col) const {
  const int r = row_index(row), c = column_index(col);
  if (r < 0 || c < 0) throw std::out_of_range("MultiplicityMatrix: unknown index");
  return entries[r][c];
}

int MultiplicityMatrix::row_index(const Coweight& row) const {
  auto it = std::find(rows.begin(), rows.end(), row);
  return it == rows.end() ? -1 : static_cast<int>(it - rows.begin());
}

int MultiplicityMatrix::column_index(const Coweight& col) const {
  auto it = std::find(columns.begin(), columns.end(), col);
  return it == columns.end() ? -1 : static_cast<int>(it - columns.begin());
}

MultiplicityMatrix multiplicity_matrix(const Truncation& tr, const BmpOptions& opts, int threads) {
  const RootSystem& rs = tr.rs;
  MomentGraph g = build_graph(tr);
  MultiplicityMatrix mm;
  mm.columns = g.vertices();
  std::vector<Coweight> dominant;
  for (const auto& v : g.vertices())
    if (rs.is_dominant(v)) dominant.push_back(v);
  mm.rows = rs.total_order_extension(dominant);
  mm.entries.assign(mm.rows.size(), std::vector<std::int64_t>(mm.columns.size(), 0));
  std::vector<int> bounds(mm.rows.size(), 0);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t r = next++;
      if (r >= mm.rows.size()) return;
      try {
        Truncation sub{rs, mm.rows[r]};
        MomentGraph gs = build_graph(sub);
        BmpOptions o = opts;
        if (!opts.degree_bound) o.degree_bound = default_degree_bound(sub);
        BmpResult res = bmp_stalks(sub, gs, o);
        bounds[r] = res.degree_bound;
        for (int v = 0; v < gs.num_vertices(); ++v)
          mm.entries[r][mm.column_index(gs.vertex(v))] = res.stalks.at(v).rank();
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = mm.rows.size();
      }
    }
  };
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(mm.rows.size())));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  mm.degree_bound = bounds.empty() ? 0 : *std::max_element(bounds.begin(), bounds.end());
  return mm;
}

}  // namespace mvf
