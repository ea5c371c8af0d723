#include "hallforge/quiver.hpp"

#include <algorithm>
#include <functional>

#include "hallforge/errors.hpp"

namespace hallforge {

int MatrixRep::total_dim() const {
  int s = 0;
  for (int d : dims) s += d;
  return s;
}

MatrixRep zero_rep(const Backend& b, const std::vector<int>& dims, int q) {
  if (b.kind() == BackendKind::P1Torsion)
    throw CapabilityError("p1-torsion objects have no quiver realization; use the loop backend pointwise");
  if (dims.size() != b.vertex_count()) throw PreconditionError("dimension vector length mismatch");
  MatrixRep m;
  m.field = Field::get(q);
  m.dims = dims;
  for (auto& a : b.arrows()) {
    m.ends.emplace_back(a.src, a.tgt);
    m.maps.emplace_back(dims[a.tgt], dims[a.src]);
  }
  return m;
}

MatrixRep rep_from_integers(const Backend& b, const std::vector<int>& dims,
                            const std::vector<std::vector<std::vector<long long>>>& maps, int q) {
  MatrixRep m = zero_rep(b, dims, q);
  if (maps.size() != m.maps.size()) throw PreconditionError("one matrix per arrow expected");
  for (std::size_t a = 0; a < maps.size(); ++a) {
    Matrix& t = m.maps[a];
    if (static_cast<int>(maps[a].size()) != t.rows) throw PreconditionError("matrix row count mismatch");
    for (int i = 0; i < t.rows; ++i) {
      if (static_cast<int>(maps[a][i].size()) != t.cols)
        throw PreconditionError("matrix column count mismatch");
      for (int j = 0; j < t.cols; ++j) t(i, j) = m.field->from_int(maps[a][i][j]);
    }
  }
  return m;
}

std::vector<IndecLabel> positive_roots(const Backend& b, const DimVector& bound) {
  if (b.kind() != BackendKind::DynkinQuiver)
    throw CapabilityError("positive_roots requires a dynkin-quiver backend, got " + to_string(b.kind()));
  int n = static_cast<int>(b.vertex_count());
  if (static_cast<int>(bound.size()) != n) throw PreconditionError("bound length mismatch");
  std::vector<IndecLabel> out;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      bool ok = true;
      for (int k = i; k <= j; ++k) ok = ok && bound[k] >= 1;
      if (!ok) continue;
      DimVector d(n, 0);
      for (int k = i; k <= j; ++k) d[k] = 1;
      out.push_back(root_label(d));
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IndecLabel> indecomposables(const Backend& b, int max_size) {
  switch (b.kind()) {
    case BackendKind::DynkinQuiver: {
      auto all = positive_roots(b, DimVector(b.vertex_count(), 1));
      std::vector<IndecLabel> out;
      for (auto& l : all)
        if (l.size() <= max_size) out.push_back(l);
      return out;
    }
    case BackendKind::LoopNilpotent: {
      std::vector<IndecLabel> out;
      for (int d = 1; d <= max_size; ++d) out.push_back(block_label(d));
      return out;
    }
    case BackendKind::P1Torsion:
      throw CapabilityError("p1-torsion indecomposables form continuous families; list families instead");
  }
  return {};
}

namespace {

void partitions_into(const std::vector<IndecLabel>& labels, std::size_t from, DimVector rest,
                     std::vector<IndecLabel>& acc, std::vector<IsoClass>& out) {
  if (std::all_of(rest.begin(), rest.end(), [](int x) { return x == 0; })) {
    out.emplace_back(acc);
    return;
  }
  for (std::size_t i = from; i < labels.size(); ++i) {
    if (!leq(labels[i].dim, rest)) continue;
    DimVector r = rest;
    for (std::size_t k = 0; k < r.size(); ++k) r[k] -= labels[i].dim[k];
    acc.push_back(labels[i]);
    partitions_into(labels, i, r, acc, out);
    acc.pop_back();
  }
}

}  // namespace

std::vector<IsoClass> classes_of_dim(const Backend& b, const DimVector& d) {
  auto labels = indecomposables(b, total(d));
  std::vector<IsoClass> out;
  std::vector<IndecLabel> acc;
  partitions_into(labels, 0, d, acc, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IsoClass> classes_up_to(const Backend& b, int max_size) {
  std::vector<IsoClass> out;
  auto labels = indecomposables(b, max_size);
  std::function<void(std::size_t, int, std::vector<IndecLabel>&)> rec =
      [&](std::size_t from, int budget, std::vector<IndecLabel>& acc) {
        out.emplace_back(acc);
        for (std::size_t i = from; i < labels.size(); ++i) {
          if (labels[i].size() > budget) continue;
          acc.push_back(labels[i]);
          rec(i, budget - labels[i].size(), acc);
          acc.pop_back();
        }
      };
  std::vector<IndecLabel> acc;
  rec(0, max_size, acc);
  std::sort(out.begin(), out.end());
  return out;
}

MatrixRep realize(const Backend& b, const IndecLabel& l, int q) {
  b.validate(l);
  switch (b.kind()) {
    case BackendKind::DynkinQuiver: {
      MatrixRep m = zero_rep(b, l.dim, q);
      for (std::size_t a = 0; a < m.maps.size(); ++a)
        if (l.dim[m.ends[a].first] && l.dim[m.ends[a].second]) m.maps[a](0, 0) = 1;
      return m;
    }
    case BackendKind::LoopNilpotent: {
      int d = l.dim[0];
      MatrixRep m = zero_rep(b, {d}, q);
      for (int i = 0; i + 1 < d; ++i) m.maps[0](i, i + 1) = 1;
      return m;
    }
    case BackendKind::P1Torsion: break;
  }
  throw CapabilityError("p1-torsion objects have no quiver realization");
}

MatrixRep direct_sum(const MatrixRep& a, const MatrixRep& b) {
  if (a.q() != b.q() || a.ends != b.ends || a.dims.size() != b.dims.size())
    throw PreconditionError("direct sum of representations over different quivers or fields");
  MatrixRep m;
  m.field = a.field;
  m.ends = a.ends;
  for (std::size_t v = 0; v < a.dims.size(); ++v) m.dims.push_back(a.dims[v] + b.dims[v]);
  for (std::size_t k = 0; k < a.maps.size(); ++k) {
    auto [s, t] = a.ends[k];
    Matrix x(m.dims[t], m.dims[s]);
    for (int i = 0; i < a.maps[k].rows; ++i)
      for (int j = 0; j < a.maps[k].cols; ++j) x(i, j) = a.maps[k](i, j);
    for (int i = 0; i < b.maps[k].rows; ++i)
      for (int j = 0; j < b.maps[k].cols; ++j) x(a.dims[t] + i, a.dims[s] + j) = b.maps[k](i, j);
    m.maps.push_back(std::move(x));
  }
  return m;
}

MatrixRep realize_class(const Backend& b, const IsoClass& c, int q) {
  MatrixRep m = zero_rep(b, b.zero_dim(), q);
  for (auto& l : c.summands()) m = direct_sum(m, realize(b, l, q));
  return m;
}

int hom_dim(const MatrixRep& m, const MatrixRep& n) {
  if (m.q() != n.q() || m.ends != n.ends) throw PreconditionError("hom_dim across different quivers or fields");
  const Field& f = *m.field;
  std::size_t nv = m.dims.size();
  std::vector<int> offset(nv + 1, 0);
  for (std::size_t v = 0; v < nv; ++v) offset[v + 1] = offset[v] + n.dims[v] * m.dims[v];
  int unknowns = offset[nv];
  if (unknowns == 0) return 0;
  int eqs = 0;
  for (auto [s, t] : m.ends) eqs += n.dims[t] * m.dims[s];
  Matrix sys(eqs, unknowns);
  int row = 0;
  // phi_v is n_v x m_v; unknown (r, c) of phi_v at offset[v] + r * m_v + c.
  for (std::size_t a = 0; a < m.ends.size(); ++a) {
    auto [s, t] = m.ends[a];
    const Matrix& ma = m.maps[a];
    const Matrix& na = n.maps[a];
    for (int r = 0; r < n.dims[t]; ++r)
      for (int c = 0; c < m.dims[s]; ++c, ++row) {
        for (int k = 0; k < m.dims[t]; ++k) {
          int coef = ma(k, c);
          if (coef) {
            int& e = sys(row, offset[t] + r * m.dims[t] + k);
            e = f.add(e, coef);
          }
        }
        for (int k = 0; k < n.dims[s]; ++k) {
          int coef = na(r, k);
          if (coef) {
            int& e = sys(row, offset[s] + k * m.dims[s] + c);
            e = f.sub(e, coef);
          }
        }
      }
  }
  return unknowns - rank(f, sys);
}

IsoClass jordan_type(const MatrixRep& m) {
  if (m.dims.size() != 1 || m.maps.size() != 1) throw PreconditionError("jordan_type needs a loop representation");
  const Field& f = *m.field;
  int d = m.dims[0];
  std::vector<int> ranks{d};
  Matrix p = Matrix::identity(d);
  while (ranks.back() > 0) {
    p = multiply(f, p, m.maps[0]);
    int r = rank(f, p);
    if (r == ranks.back()) throw PreconditionError("loop representation is not nilpotent");
    ranks.push_back(r);
  }
  // blocks of size >= k: ranks[k-1] - ranks[k]
  std::vector<IndecLabel> parts;
  int kmax = static_cast<int>(ranks.size()) - 1;
  for (int k = 1; k <= kmax; ++k) {
    int ge_k = ranks[k - 1] - ranks[k];
    int ge_k1 = k < kmax ? ranks[k] - ranks[k + 1] : 0;
    for (int i = 0; i < ge_k - ge_k1; ++i) parts.push_back(block_label(k));
  }
  return IsoClass(parts);
}

namespace {

std::vector<std::vector<Rational>> invert(const std::vector<std::vector<int>>& h) {
  std::size_t n = h.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = h[i][j];
    a[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw InvariantViolation("Hom matrix of indecomposables is singular");
    std::swap(a[p], a[c]);
    Rational inv = 1 / a[c][c];
    for (auto& x : a[c]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational fct = a[r][c];
      for (std::size_t j = 0; j < 2 * n; ++j) a[r][j] -= fct * a[c][j];
    }
  }
  std::vector<std::vector<Rational>> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i].assign(a[i].begin() + n, a[i].end());
  return out;
}

}  // namespace

Classifier::Classifier(const Backend& b, int q) : backend_(&b), q_(q) {
  if (b.kind() == BackendKind::P1Torsion)
    throw CapabilityError("p1-torsion objects are classified pointwise through the loop backend");
}

const Classifier::System& Classifier::system_for(const std::vector<int>& dims) {
  auto it = systems_.find(dims);
  if (it != systems_.end()) return it->second;
  System s;
  for (auto& l : indecomposables(*backend_, total(dims)))
    if (leq(l.dim, dims)) s.labels.push_back(l);
  for (auto& l : s.labels) s.reps.push_back(realize(*backend_, l, q_));
  std::size_t n = s.labels.size();
  std::vector<std::vector<int>> h(n, std::vector<int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h[i][j] = hom_dim(s.reps[i], s.reps[j]);
  if (n) s.inverse = invert(h);
  return systems_.emplace(dims, std::move(s)).first->second;
}

IsoClass Classifier::classify(const MatrixRep& m) {
  if (m.q() != q_) throw PreconditionError("classifier field mismatch");
  const System& s = system_for(m.dims);
  std::size_t n = s.labels.size();
  std::vector<int> h(n);
  for (std::size_t i = 0; i < n; ++i) h[i] = hom_dim(s.reps[i], m);
  // h_I = sum_J Hom(I, J) mult_J, so mult = H^{-1} h.
  std::vector<std::pair<IndecLabel, int>> parts;
  for (std::size_t j = 0; j < n; ++j) {
    Rational x = 0;
    for (std::size_t i = 0; i < n; ++i) x += s.inverse[j][i] * h[i];
    if (x.get_den() != 1 || x < 0)
      throw InvariantViolation("Hom-multiplicity system has no nonnegative integer solution");
    if (x > 0) parts.emplace_back(s.labels[j], static_cast<int>(x.get_num().get_si()));
  }
  IsoClass c = IsoClass::from_parts(parts);
  if (dim_of(c, m.dims.size()) != m.dims)
    throw InvariantViolation("decomposition does not reproduce the dimension vector");
  return c;
}

IsoClass decompose(const Backend& b, const MatrixRep& m) {
  Classifier c(b, m.q());
  return c.classify(m);
}

}  // namespace hallforge
