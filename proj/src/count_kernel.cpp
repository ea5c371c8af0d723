#include "hallforge/count_kernel.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <unordered_map>

#include "hallforge/errors.hpp"

namespace hallforge {

std::uint64_t SubrepHistogram::total() const {
  std::uint64_t t = 0;
  for (auto& [k, v] : counts) t += v;
  return t;
}

std::uint64_t SubrepHistogram::at(const IsoClass& sub, const IsoClass& quot) const {
  auto it = counts.find({sub, quot});
  return it == counts.end() ? 0 : it->second;
}

void for_each_subspace(const Field& f, int d,
                       const std::function<void(const Matrix&, const std::vector<int>&)>& visit) {
  int q = f.order();
  for (int k = 0; k <= d; ++k) {
    // Pivot sets in lexicographic order.
    std::vector<int> piv(k);
    for (int i = 0; i < k; ++i) piv[i] = i;
    while (true) {
      std::vector<std::pair<int, int>> free;
      std::vector<bool> is_piv(d, false);
      for (int p : piv) is_piv[p] = true;
      for (int r = 0; r < k; ++r)
        for (int c = piv[r] + 1; c < d; ++c)
          if (!is_piv[c]) free.emplace_back(r, c);
      Matrix m(k, d);
      for (int r = 0; r < k; ++r) m(r, piv[r]) = 1;
      std::vector<int> digit(free.size(), 0);
      while (true) {
        visit(m, piv);
        std::size_t i = 0;
        while (i < digit.size() && digit[i] == q - 1) {
          digit[i] = 0;
          m(free[i].first, free[i].second) = 0;
          ++i;
        }
        if (i == digit.size()) break;
        ++digit[i];
        m(free[i].first, free[i].second) = digit[i];
      }
      int i = k - 1;
      while (i >= 0 && piv[i] == d - k + i) --i;
      if (i < 0) break;
      ++piv[i];
      for (int j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
    }
  }
}

std::uint64_t gaussian_binomial(int n, int k, int q) {
  if (k < 0 || k > n) return 0;
  // Recurrence [n,k] = [n-1,k-1] + q^k [n-1,k].
  std::vector<std::vector<std::uint64_t>> t(n + 1, std::vector<std::uint64_t>(n + 1, 0));
  for (int i = 0; i <= n; ++i) {
    t[i][0] = 1;
    std::uint64_t qk = 1;
    for (int j = 1; j <= i; ++j) {
      qk *= static_cast<std::uint64_t>(q);
      t[i][j] = t[i - 1][j - 1] + qk * (j <= i - 1 ? t[i - 1][j] : 0);
    }
  }
  return t[n][k];
}

std::uint64_t subspace_count(int q, int d) {
  std::uint64_t s = 0;
  for (int k = 0; k <= d; ++k) s += gaussian_binomial(d, k, q);
  return s;
}

namespace {

struct VertexSpace {
  Matrix basis;  // RREF rows
  std::vector<int> pivots;
};

// w in span(rows)? On success `coords` holds its coordinates.
bool in_span(const Field& f, const VertexSpace& u, std::vector<int>& w, std::vector<int>* coords) {
  if (coords) coords->assign(u.pivots.size(), 0);
  for (std::size_t r = 0; r < u.pivots.size(); ++r) {
    int c = w[u.pivots[r]];
    if (c == 0) continue;
    if (coords) (*coords)[r] = c;
    for (int j = 0; j < u.basis.cols; ++j)
      if (u.basis(static_cast<int>(r), j)) w[j] = f.sub(w[j], f.mul(c, u.basis(static_cast<int>(r), j)));
  }
  return std::all_of(w.begin(), w.end(), [](int x) { return x == 0; });
}

std::vector<int> apply(const Field& f, const Matrix& a, const std::vector<int>& v) {
  std::vector<int> out(a.rows, 0);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j)
      if (a(i, j) && v[j]) out[i] = f.add(out[i], f.mul(a(i, j), v[j]));
  return out;
}

std::vector<int> row_of(const Matrix& m, int r) {
  return std::vector<int>(m.data.begin() + static_cast<std::ptrdiff_t>(r) * m.cols,
                          m.data.begin() + static_cast<std::ptrdiff_t>(r + 1) * m.cols);
}

class Enumerator {
 public:
  Enumerator(const Backend& b, const MatrixRep& y, SubrepHistogram& out)
      : b_(b), y_(y), f_(*y.field), out_(out), chosen_(y.dims.size()) {
    if (b.kind() == BackendKind::DynkinQuiver) classifier_.emplace(b, y.q());
  }

  void run() { step(0); }

 private:
  void step(std::size_t v) {
    if (v == y_.dims.size()) {
      record();
      return;
    }
    for_each_subspace(f_, y_.dims[v], [&](const Matrix& basis, const std::vector<int>& piv) {
      chosen_[v] = VertexSpace{basis, piv};
      if (closed_at(v)) step(v + 1);
    });
  }

  // Arrows whose later endpoint is v map chosen sources into chosen targets.
  bool closed_at(std::size_t v) const {
    for (std::size_t a = 0; a < y_.ends.size(); ++a) {
      auto [s, t] = y_.ends[a];
      if (static_cast<std::size_t>(std::max(s, t)) != v) continue;
      const VertexSpace& us = chosen_[s];
      for (int r = 0; r < us.basis.rows; ++r) {
        auto w = apply(f_, y_.maps[a], row_of(us.basis, r));
        if (!in_span(f_, chosen_[t], w, nullptr)) return false;
      }
    }
    return true;
  }

  IsoClass classify(const MatrixRep& m) {
    if (b_.kind() == BackendKind::LoopNilpotent) return jordan_type(m);
    return classifier_->classify(m);
  }

  // Serialized (dims, maps) of a representation; identical strings mean
  // identical matrices, so classification is memoized on them.
  void encode(std::string& key, const std::vector<int>& dims, const std::vector<Matrix>& maps) const {
    key.clear();
    for (int d : dims) key.push_back(static_cast<char>(d));
    for (auto& m : maps)
      for (int x : m.data) key.push_back(static_cast<char>(x));
  }

  int class_id(const std::vector<int>& dims, std::vector<Matrix>& maps, std::string& key) {
    encode(key, dims, maps);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    MatrixRep m;
    m.field = y_.field;
    m.ends = y_.ends;
    m.dims = dims;
    m.maps = maps;
    IsoClass c = classify(m);
    auto [cit, inserted] = ids_.emplace(c, static_cast<int>(classes_.size()));
    if (inserted) classes_.push_back(c);
    memo_.emplace(key, cit->second);
    return cit->second;
  }

  void record() {
    std::size_t nv = y_.dims.size();
    sub_dims_.assign(nv, 0);
    quot_dims_.assign(nv, 0);
    for (std::size_t v = 0; v < nv; ++v) {
      sub_dims_[v] = chosen_[v].basis.rows;
      quot_dims_[v] = y_.dims[v] - chosen_[v].basis.rows;
      nonpiv_[v].clear();
      std::vector<bool> p(y_.dims[v], false);
      for (int c : chosen_[v].pivots) p[c] = true;
      for (int c = 0; c < y_.dims[v]; ++c)
        if (!p[c]) nonpiv_[v].push_back(c);
    }
    for (std::size_t a = 0; a < y_.ends.size(); ++a) {
      auto [s, t] = y_.ends[a];
      Matrix& ms = sub_maps_[a];
      ms = Matrix(sub_dims_[t], sub_dims_[s]);
      for (int c = 0; c < sub_dims_[s]; ++c) {
        auto w = apply(f_, y_.maps[a], row_of(chosen_[s].basis, c));
        in_span(f_, chosen_[t], w, &coords_);
        for (int r = 0; r < sub_dims_[t]; ++r) ms(r, c) = coords_[r];
      }
      // Quotient basis at v: standard vectors at non-pivot columns.
      Matrix& mq = quot_maps_[a];
      mq = Matrix(quot_dims_[t], quot_dims_[s]);
      for (int c = 0; c < quot_dims_[s]; ++c) {
        std::vector<int> e(y_.dims[s], 0);
        e[nonpiv_[s][c]] = 1;
        auto w = apply(f_, y_.maps[a], e);
        in_span(f_, chosen_[t], w, nullptr);  // reduces w modulo U_t
        for (int r = 0; r < quot_dims_[t]; ++r) mq(r, c) = w[nonpiv_[t][r]];
      }
    }
    int si = class_id(sub_dims_, sub_maps_, key_);
    int qi = class_id(quot_dims_, quot_maps_, key_);
    ++raw_[{si, qi}];
  }

 public:
  void flush() {
    for (auto& [k, v] : raw_) out_.counts[{classes_[k.first], classes_[k.second]}] += v;
    raw_.clear();
  }

 private:
  const Backend& b_;
  const MatrixRep& y_;
  const Field& f_;
  SubrepHistogram& out_;
  std::vector<VertexSpace> chosen_;
  std::optional<Classifier> classifier_;

  std::unordered_map<std::string, int> memo_;
  std::map<IsoClass, int> ids_;
  std::vector<IsoClass> classes_;
  std::map<std::pair<int, int>, std::uint64_t> raw_;
  std::vector<int> sub_dims_, quot_dims_, coords_;
  std::vector<std::vector<int>> nonpiv_ = std::vector<std::vector<int>>(y_.dims.size());
  std::vector<Matrix> sub_maps_ = std::vector<Matrix>(y_.ends.size());
  std::vector<Matrix> quot_maps_ = std::vector<Matrix>(y_.ends.size());
  std::string key_;
};

}  // namespace

SubrepHistogram enumerate_subreps(const Backend& b, const IsoClass& target, int q, const Bounds& bounds) {
  if (b.kind() == BackendKind::P1Torsion)
    throw CapabilityError("subrepresentation counting runs on quiver backends; p1 targets go pointwise");
  int dim = target.size();
  if (dim > bounds.max_dim) throw ResourceError("max_dim", bounds.max_dim, dim);
  if (q > bounds.max_q) throw ResourceError("max_q", bounds.max_q, q);
  DimVector d = b.dim(target);
  // Work estimate: product over vertices of the subspace counts.
  long double work = 1;
  for (int dv : d) work *= static_cast<long double>(subspace_count(q, dv));
  if (work > static_cast<long double>(bounds.max_work))
    throw ResourceError("max_work", static_cast<long long>(bounds.max_work),
                        work > 9e18L ? std::numeric_limits<long long>::max()
                                     : static_cast<long long>(work));
  MatrixRep y = realize_class(b, target, q);
  SubrepHistogram h;
  h.target = target;
  h.q = q;
  Enumerator e(b, y, h);
  e.run();
  e.flush();
  return h;
}

std::uint64_t count_points(const Backend& b, const IsoClass& sub, const IsoClass& quot,
                           const IsoClass& target, int q, const Bounds& bounds) {
  return enumerate_subreps(b, target, q, bounds).at(sub, quot);
}

}  // namespace hallforge
