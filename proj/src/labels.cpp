#include "hallforge/labels.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include "hallforge/errors.hpp"

namespace hallforge {

int total(const DimVector& d) { return std::accumulate(d.begin(), d.end(), 0); }

DimVector add(const DimVector& a, const DimVector& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (a.size() != b.size()) throw InvariantViolation("dimension vectors of different length");
  DimVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

bool leq(const DimVector& a, const DimVector& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

int IndecLabel::size() const { return total(dim); }

std::strong_ordering IndecLabel::operator<=>(const IndecLabel& o) const {
  bool lb = kind == LabelKind::LineBundle, olb = o.kind == LabelKind::LineBundle;
  if (lb != olb) return lb ? std::strong_ordering::greater : std::strong_ordering::less;
  if (auto c = size() <=> o.size(); c != 0) return c;
  // Equal size: support starting at an earlier vertex sorts first.
  if (auto c = o.dim <=> dim; c != 0) return c;
  if (auto c = point <=> o.point; c != 0) return c;
  return kind <=> o.kind;
}

IndecLabel root_label(DimVector d) { return IndecLabel{LabelKind::Root, std::move(d), {}}; }
IndecLabel block_label(int size) { return IndecLabel{LabelKind::Block, {size}, {}}; }
IndecLabel torsion_label(int degree, std::string point) {
  return IndecLabel{LabelKind::Torsion, {degree}, std::move(point)};
}

IsoClass::IsoClass(const std::vector<IndecLabel>& summands) {
  auto sorted = summands;
  std::sort(sorted.begin(), sorted.end());
  for (auto& l : sorted) {
    if (!parts_.empty() && parts_.back().first == l)
      ++parts_.back().second;
    else
      parts_.emplace_back(l, 1);
  }
}

IsoClass IsoClass::from_parts(std::vector<std::pair<IndecLabel, int>> parts) {
  std::vector<IndecLabel> s;
  for (auto& [l, m] : parts) {
    if (m < 0) throw PreconditionError("negative multiplicity");
    for (int i = 0; i < m; ++i) s.push_back(l);
  }
  return IsoClass(s);
}

std::vector<IndecLabel> IsoClass::summands() const {
  std::vector<IndecLabel> s;
  for (auto& [l, m] : parts_)
    for (int i = 0; i < m; ++i) s.push_back(l);
  return s;
}

int IsoClass::gamma() const {
  int g = 0;
  for (auto& p : parts_) g += p.second;
  return g;
}

int IsoClass::multiplicity(const IndecLabel& l) const {
  for (auto& [k, m] : parts_)
    if (k == l) return m;
  return 0;
}

int IsoClass::size() const {
  int s = 0;
  for (auto& [l, m] : parts_) s += m * l.size();
  return s;
}

IsoClass IsoClass::operator+(const IsoClass& o) const {
  auto s = summands();
  auto t = o.summands();
  s.insert(s.end(), t.begin(), t.end());
  return IsoClass(s);
}

std::strong_ordering IsoClass::operator<=>(const IsoClass& o) const {
  if (auto c = size() <=> o.size(); c != 0) return c;
  if (auto c = gamma() <=> o.gamma(); c != 0) return c;
  return parts_ <=> o.parts_;
}

std::vector<std::pair<IsoClass, IsoClass>> IsoClass::splittings() const {
  std::vector<std::pair<IsoClass, IsoClass>> out;
  std::vector<int> k(parts_.size(), 0);
  while (true) {
    std::vector<std::pair<IndecLabel, int>> a, b;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (k[i] > 0) a.emplace_back(parts_[i].first, k[i]);
      if (parts_[i].second - k[i] > 0) b.emplace_back(parts_[i].first, parts_[i].second - k[i]);
    }
    IsoClass ca, cb;
    ca.parts_ = std::move(a);
    cb.parts_ = std::move(b);
    out.emplace_back(std::move(ca), std::move(cb));
    std::size_t i = 0;
    while (i < parts_.size() && k[i] == parts_[i].second) k[i++] = 0;
    if (i == parts_.size()) break;
    ++k[i];
  }
  return out;
}

DimVector dim_of(const IsoClass& c, std::size_t vertex_count) {
  DimVector d(vertex_count, 0);
  for (auto& [l, m] : c.parts()) {
    if (l.dim.size() != vertex_count) throw InvariantViolation("label dimension length mismatch");
    for (std::size_t i = 0; i < vertex_count; ++i) d[i] += m * l.dim[i];
  }
  return d;
}

std::ostream& operator<<(std::ostream& os, const IndecLabel& l) {
  os << '(';
  for (std::size_t i = 0; i < l.dim.size(); ++i) os << (i ? "," : "") << l.dim[i];
  os << ')';
  if (!l.point.empty()) os << '@' << l.point;
  return os;
}

std::ostream& operator<<(std::ostream& os, const IsoClass& c) {
  os << '{';
  bool first = true;
  for (auto& [l, m] : c.parts()) {
    os << (first ? "" : " ") << l << 'x' << m;
    first = false;
  }
  return os << '}';
}

}  // namespace hallforge
