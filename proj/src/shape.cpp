#include "hallforge/shape.hpp"

#include <algorithm>
#include <functional>

#include "hallforge/errors.hpp"

namespace hallforge {

bool is_generic(const IndecLabel& l) { return l.kind == LabelKind::Torsion && l.point == kGenericPoint; }

IndecLabel generic_torsion(int degree) { return torsion_label(degree, kGenericPoint); }

bool Frame::names(int degree, const std::string& point) const {
  auto it = named.find(degree);
  return it != named.end() && it->second.count(point);
}

Frame Frame::unite(const Frame& o) const {
  Frame r = *this;
  for (auto& [d, pts] : o.named) r.named[d].insert(pts.begin(), pts.end());
  r.tidy();
  return r;
}

void Frame::tidy() {
  std::erase_if(named, [](const auto& kv) { return kv.second.empty(); });
}

bool Frame::operator==(const Frame& o) const {
  Frame a = *this, b = o;
  a.tidy();
  b.tidy();
  return a.named == b.named;
}

IsoClass shape_of(const IsoClass& concrete, const Frame& frame) {
  bool changed = false;
  std::vector<std::pair<IndecLabel, int>> parts;
  for (auto [l, m] : concrete.parts()) {
    if (l.kind == LabelKind::Torsion && !is_generic(l) && !frame.names(l.dim[0], l.point)) {
      l.point = kGenericPoint;
      changed = true;
    }
    parts.emplace_back(l, m);
  }
  return changed ? IsoClass::from_parts(parts) : concrete;
}

ShapeFunction refine(const ShapeFunction& f, const Frame& from, const Frame& to) {
  if (from == to) return f;
  ShapeFunction out;
  for (auto& [shape, value] : f) {
    // Generic summands of degree d may land on any point newly named at d.
    std::vector<std::pair<IndecLabel, int>> fixed;
    std::vector<std::pair<int, int>> generic;  // (degree, multiplicity)
    for (auto& [l, m] : shape.parts()) {
      if (is_generic(l))
        generic.emplace_back(l.dim[0], m);
      else
        fixed.emplace_back(l, m);
    }
    std::vector<std::vector<std::vector<std::pair<IndecLabel, int>>>> options;
    for (auto [d, m] : generic) {
      std::vector<std::string> fresh;
      auto it = to.named.find(d);
      if (it != to.named.end())
        for (auto& p : it->second)
          if (!from.names(d, p)) fresh.push_back(p);
      // Distribute m among fresh points and the remaining generic point.
      std::vector<std::vector<std::pair<IndecLabel, int>>> dists;
      std::vector<int> k(fresh.size(), 0);
      std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
        if (i == fresh.size()) {
          std::vector<std::pair<IndecLabel, int>> dist;
          for (std::size_t j = 0; j < fresh.size(); ++j)
            if (k[j]) dist.emplace_back(torsion_label(d, fresh[j]), k[j]);
          if (left) dist.emplace_back(generic_torsion(d), left);
          dists.push_back(std::move(dist));
          return;
        }
        for (int c = 0; c <= left; ++c) {
          k[i] = c;
          rec(i + 1, left - c);
        }
        k[i] = 0;
      };
      rec(0, m);
      options.push_back(std::move(dists));
    }
    std::vector<std::size_t> idx(options.size(), 0);
    while (true) {
      auto parts = fixed;
      for (std::size_t i = 0; i < options.size(); ++i)
        parts.insert(parts.end(), options[i][idx[i]].begin(), options[i][idx[i]].end());
      out[IsoClass::from_parts(parts)] += value;
      std::size_t i = 0;
      while (i < idx.size() && idx[i] + 1 == options[i].size()) idx[i++] = 0;
      if (i == idx.size()) break;
      ++idx[i];
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

namespace {

// Shape with the named label (d, x) identified with the generic point:
// returns (shape without x, combined generic count k).
std::pair<IsoClass, int> strip_point(const IsoClass& s, int d, const std::string& x, int* at_x) {
  std::vector<std::pair<IndecLabel, int>> rest;
  int k = 0;
  *at_x = 0;
  for (auto& [l, m] : s.parts()) {
    if (l.kind == LabelKind::Torsion && l.dim[0] == d && (l.point == x || l.point == kGenericPoint)) {
      k += m;
      if (l.point == x) *at_x = m;
    } else {
      rest.emplace_back(l, m);
    }
  }
  return {IsoClass::from_parts(rest), k};
}

}  // namespace

void coarsen(Frame& frame, ShapeFunction& f) {
  frame.tidy();
  std::vector<std::pair<int, std::string>> candidates;
  for (auto& [d, pts] : frame.named)
    for (auto& p : pts) candidates.emplace_back(d, p);
  for (auto& [d, x] : candidates) {
    // Mergeable iff every split of count k between x and generic is present
    // with the same value.
    std::map<std::pair<IsoClass, int>, std::map<int, Rational>> groups;
    for (auto& [s, v] : f) {
      int at_x = 0;
      auto key = strip_point(s, d, x, &at_x);
      groups[key][at_x] = v;
    }
    bool ok = true;
    for (auto& [key, splits] : groups) {
      if (static_cast<int>(splits.size()) != key.second + 1) {
        ok = false;
        break;
      }
      const Rational& v0 = splits.begin()->second;
      for (auto& [c, v] : splits)
        if (v != v0) ok = false;
      if (!ok) break;
    }
    if (!ok) continue;
    ShapeFunction merged;
    for (auto& [key, splits] : groups) {
      auto parts = key.first.parts();
      if (key.second) parts.emplace_back(generic_torsion(d), key.second);
      merged[IsoClass::from_parts(parts)] = splits.begin()->second;
    }
    f = std::move(merged);
    frame.named[d].erase(x);
  }
  frame.tidy();
}

std::vector<std::vector<IndecLabel>> coarsest_blocks(const ShapeFunction& f) {
  std::vector<IndecLabel> labels;
  for (auto& [s, v] : f)
    for (auto& [l, m] : s.parts()) labels.push_back(l);
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  std::map<IndecLabel, std::size_t> index;
  for (std::size_t i = 0; i < labels.size(); ++i) index[labels[i]] = i;

  std::vector<std::size_t> block(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) block[i] = i;
  std::size_t nblocks = labels.size();

  auto counts = [&](const IsoClass& s) {
    std::vector<int> c(nblocks, 0);
    for (auto& [l, m] : s.parts()) c[block[index[l]]] += m;
    return c;
  };

  bool merged = true;
  while (merged) {
    merged = false;
    std::map<std::vector<int>, Rational> g;
    for (auto& [s, v] : f) g[counts(s)] = v;
    for (std::size_t i = 0; i < nblocks && !merged; ++i) {
      for (std::size_t j = i + 1; j < nblocks && !merged; ++j) {
        bool gen = false;
        for (std::size_t k = 0; k < labels.size(); ++k)
          if ((block[k] == i || block[k] == j) && is_generic(labels[k])) gen = true;
        if (gen) continue;
        std::map<std::vector<int>, std::pair<int, Rational>> groups;  // key -> (present, value)
        bool ok = true;
        for (auto& [c, v] : g) {
          auto key = c;
          key[i] += key[j];
          key[j] = 0;
          auto [it, fresh] = groups.emplace(key, std::make_pair(0, v));
          if (it->second.second != v) ok = false;
          ++it->second.first;
        }
        for (auto& [key, pv] : groups)
          if (pv.first != key[i] + 1) ok = false;
        if (!ok) continue;
        for (auto& b : block)
          if (b == j) b = i;
        // Renumber blocks densely.
        for (auto& b : block)
          if (b > j) --b;
        --nblocks;
        merged = true;
      }
    }
  }
  std::vector<std::vector<IndecLabel>> out(nblocks);
  for (std::size_t k = 0; k < labels.size(); ++k) out[block[k]].push_back(labels[k]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hallforge
