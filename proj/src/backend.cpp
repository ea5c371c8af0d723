#include "hallforge/backend.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hallforge/errors.hpp"

namespace hallforge {

using nlohmann::json;

namespace {

bool is_ident(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::optional<int> parse_int(std::string_view s) {
  if (s.empty() || s.size() > 9) return std::nullopt;
  std::size_t i = s[0] == '-' ? 1 : 0;
  if (i == s.size()) return std::nullopt;
  int v = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
    v = v * 10 + (s[i] - '0');
  }
  return s[0] == '-' ? -v : v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

const json& require(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError("missing field '" + std::string(key) + "' at " + where);
  return *it;
}

std::string require_string(const json& j, const char* key, const std::string& where) {
  const json& v = require(j, key, where);
  if (!v.is_string())
    throw ParseError("field '" + std::string(key) + "' at " + where + " must be a string");
  return v.get<std::string>();
}

}  // namespace

std::string to_string(BackendKind k) {
  switch (k) {
    case BackendKind::DynkinQuiver: return "dynkin-quiver";
    case BackendKind::LoopNilpotent: return "loop-nilpotent";
    case BackendKind::P1Torsion: return "p1-torsion";
  }
  return "?";
}

Backend Backend::type_a(std::string name, int n, const std::vector<bool>& forward) {
  if (n < 1) throw PreconditionError("type A needs at least one vertex");
  Backend b;
  b.name_ = std::move(name);
  b.kind_ = BackendKind::DynkinQuiver;
  for (int i = 1; i <= n; ++i) b.vertices_.push_back(std::to_string(i));
  for (int i = 0; i + 1 < n; ++i) {
    bool fwd = forward.empty() || forward.at(i);
    b.arrows_.push_back(Arrow{"a" + std::to_string(i + 1), fwd ? i : i + 1, fwd ? i + 1 : i});
  }
  b.check_structure();
  return b;
}

Backend Backend::loop_nilpotent(std::string name) {
  Backend b;
  b.name_ = std::move(name);
  b.kind_ = BackendKind::LoopNilpotent;
  b.vertices_ = {"1"};
  b.arrows_ = {Arrow{"x", 0, 0}};
  return b;
}

Backend Backend::p1_torsion(std::string name) {
  Backend b;
  b.name_ = std::move(name);
  b.kind_ = BackendKind::P1Torsion;
  return b;
}

std::optional<int> Backend::vertex_index(std::string_view v) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (vertices_[i] == v) return static_cast<int>(i);
  return std::nullopt;
}

void Backend::check_structure() const {
  if (!is_ident(name_)) throw ParseError("backend name must be a nonempty identifier");
  std::set<std::string> seen(vertices_.begin(), vertices_.end());
  if (seen.size() != vertices_.size()) throw ParseError("duplicate vertex identifier");
  std::set<std::string> aids;
  for (auto& a : arrows_)
    if (!aids.insert(a.id).second) throw ParseError("duplicate arrow identifier '" + a.id + "'");
  switch (kind_) {
    case BackendKind::DynkinQuiver: {
      if (vertices_.empty()) throw ParseError("dynkin-quiver backend needs vertices");
      // Type A in listed order: exactly one arrow between consecutive vertices.
      if (arrows_.size() + 1 != vertices_.size())
        throw ParseError("only type A quivers are supported: expected " +
                         std::to_string(vertices_.size() - 1) + " arrows along the vertex path");
      std::vector<int> between(vertices_.size(), 0);
      for (auto& a : arrows_) {
        int lo = std::min(a.src, a.tgt), hi = std::max(a.src, a.tgt);
        if (hi != lo + 1)
          throw ParseError("arrow '" + a.id +
                           "' does not join consecutive vertices; only type A paths in "
                           "listed vertex order are supported");
        if (++between[lo] > 1) throw ParseError("multiple arrows between adjacent vertices");
      }
      break;
    }
    case BackendKind::LoopNilpotent:
      if (vertices_.size() != 1 || arrows_.size() != 1 || arrows_[0].src != arrows_[0].tgt)
        throw ParseError("loop-nilpotent backend must have one vertex and one loop");
      break;
    case BackendKind::P1Torsion:
      if (!vertices_.empty() || !arrows_.empty())
        throw ParseError("p1-torsion backend takes no vertices or arrows");
      break;
  }
  std::set<std::string> fam_names;
  for (auto& f : families_) {
    if (!is_ident(f.name) || !fam_names.insert(f.name).second)
      throw ParseError("family names must be unique identifiers: '" + f.name + "'");
    if (f.is_torsion()) {
      if (kind_ != BackendKind::P1Torsion)
        throw ParseError("family '" + f.name + "': torsion families need a p1-torsion backend");
      for (auto& p : f.points)
        if (!is_ident(p)) throw ParseError("family '" + f.name + "': bad point label '" + p + "'");
    } else {
      if (f.labels.empty()) throw ParseError("family '" + f.name + "' has no labels");
      for (auto& l : f.labels) (void)parse_label(l);
    }
  }
}

bool Backend::arrow_forward(int i) const {
  for (auto& a : arrows_)
    if (std::min(a.src, a.tgt) == i) return a.src == i;
  throw PreconditionError("no arrow at path position " + std::to_string(i));
}

std::size_t Backend::vertex_count() const {
  return kind_ == BackendKind::DynkinQuiver ? vertices_.size() : 1;
}

const FamilySpec* Backend::find_family(std::string_view name) const {
  for (auto& f : families_)
    if (f.name == name) return &f;
  return nullptr;
}

Backend Backend::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed backend JSON: ") + e.what(), e.byte ? e.byte - 1 : 0);
  }
  if (!j.is_object()) throw ParseError("backend definition must be a JSON object", 0);
  Backend b;
  b.name_ = require_string(j, "name", "/");
  std::string kind = require_string(j, "kind", "/");
  if (kind == "dynkin-quiver")
    b.kind_ = BackendKind::DynkinQuiver;
  else if (kind == "loop-nilpotent")
    b.kind_ = BackendKind::LoopNilpotent;
  else if (kind == "p1-torsion")
    b.kind_ = BackendKind::P1Torsion;
  else
    throw ParseError("unknown backend kind '" + kind + "' at /kind");

  if (j.contains("vertices")) {
    const json& vs = j["vertices"];
    if (!vs.is_array()) throw ParseError("/vertices must be an array");
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (!vs[i].is_string() || !is_ident(vs[i].get<std::string>()))
        throw ParseError("/vertices/" + std::to_string(i) + " must be an identifier string");
      b.vertices_.push_back(vs[i].get<std::string>());
    }
  }
  if (j.contains("arrows")) {
    const json& as = j["arrows"];
    if (!as.is_array()) throw ParseError("/arrows must be an array");
    for (std::size_t i = 0; i < as.size(); ++i) {
      std::string where = "/arrows/" + std::to_string(i);
      if (!as[i].is_object()) throw ParseError(where + " must be an object");
      Arrow a;
      a.id = require_string(as[i], "id", where);
      auto s = b.vertex_index(require_string(as[i], "src", where));
      auto t = b.vertex_index(require_string(as[i], "tgt", where));
      if (!s || !t) throw ParseError(where + " references an unknown vertex");
      a.src = *s;
      a.tgt = *t;
      b.arrows_.push_back(a);
    }
  }
  if (j.contains("families")) {
    const json& fs = j["families"];
    if (!fs.is_object()) throw ParseError("/families must be an object");
    for (auto it = fs.begin(); it != fs.end(); ++it) {
      std::string where = "/families/" + it.key();
      FamilySpec f;
      f.name = it.key();
      const json& v = it.value();
      if (!v.is_object()) throw ParseError(where + " must be an object");
      if (v.contains("labels")) {
        if (!v["labels"].is_array()) throw ParseError(where + "/labels must be an array");
        for (auto& l : v["labels"]) {
          if (!l.is_string()) throw ParseError(where + "/labels entries must be strings");
          f.labels.push_back(l.get<std::string>());
        }
      } else {
        const json& d = require(v, "degree", where);
        if (!d.is_number_integer() || d.get<int>() < 1)
          throw ParseError(where + "/degree must be a positive integer");
        f.degree = d.get<int>();
        const json& base = require(v, "base", where);
        std::string bk = require_string(base, "kind", where + "/base");
        if (bk != "finite" && bk != "cofinite")
          throw ParseError(where + "/base/kind must be 'finite' or 'cofinite'");
        f.cofinite = bk == "cofinite";
        if (base.contains("points")) {
          if (!base["points"].is_array()) throw ParseError(where + "/base/points must be an array");
          for (auto& p : base["points"]) {
            if (!p.is_string()) throw ParseError(where + "/base/points entries must be strings");
            f.points.push_back(p.get<std::string>());
          }
        }
        std::sort(f.points.begin(), f.points.end());
        f.points.erase(std::unique(f.points.begin(), f.points.end()), f.points.end());
      }
      b.families_.push_back(std::move(f));
    }
  }
  if (b.kind_ == BackendKind::LoopNilpotent && b.vertices_.empty()) {
    b.vertices_ = {"1"};
    b.arrows_ = {Arrow{"x", 0, 0}};
  }
  b.check_structure();
  return b;
}

Backend Backend::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read backend file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return from_json_text(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.offset);
  }
}

std::string Backend::to_json() const {
  json j;
  j["name"] = name_;
  j["kind"] = to_string(kind_);
  j["vertices"] = vertices_;
  json as = json::array();
  for (auto& a : arrows_)
    as.push_back({{"id", a.id}, {"src", vertices_[a.src]}, {"tgt", vertices_[a.tgt]}});
  j["arrows"] = as;
  if (!families_.empty()) {
    json fs = json::object();
    for (auto& f : families_) {
      if (f.is_torsion())
        fs[f.name] = {{"degree", f.degree},
                      {"base", {{"kind", f.cofinite ? "cofinite" : "finite"}, {"points", f.points}}}};
      else
        fs[f.name] = {{"labels", f.labels}};
    }
    j["families"] = fs;
  }
  return j.dump();
}

std::string Backend::structure_json() const {
  Backend bare = *this;
  bare.families_.clear();
  return bare.to_json();
}

void Backend::validate(const IndecLabel& l) const {
  auto fail = [&](const std::string& why) {
    throw PreconditionError("invalid label for backend '" + name_ + "': " + why);
  };
  switch (kind_) {
    case BackendKind::DynkinQuiver: {
      if (l.kind != LabelKind::Root) fail("expected a positive root");
      if (l.dim.size() != vertices_.size()) fail("dimension vector length");
      // Positive roots of A_n: indicator vectors of intervals.
      int first = -1, last = -1;
      for (int i = 0; i < static_cast<int>(l.dim.size()); ++i) {
        if (l.dim[i] < 0 || l.dim[i] > 1) fail("not a root");
        if (l.dim[i] == 1) {
          if (first < 0) first = i;
          else if (last != i - 1) fail("not a root");
          last = i;
        }
      }
      if (first < 0) fail("zero vector");
      break;
    }
    case BackendKind::LoopNilpotent:
      if (l.kind != LabelKind::Block || l.dim.size() != 1 || l.dim[0] < 1) fail("expected a block size");
      break;
    case BackendKind::P1Torsion:
      if (l.kind == LabelKind::Torsion) {
        if (l.dim.size() != 1 || l.dim[0] < 1 || l.point.empty()) fail("bad torsion label");
      } else if (l.kind != LabelKind::LineBundle || l.dim.size() != 1) {
        fail("expected a torsion sheaf or line bundle");
      }
      break;
  }
}

std::string Backend::label_name(const IndecLabel& l) const {
  switch (l.kind) {
    case LabelKind::Root: {
      int first = -1, last = -1;
      for (int i = 0; i < static_cast<int>(l.dim.size()); ++i)
        if (l.dim[i]) {
          if (first < 0) first = i;
          last = i;
        }
      if (first < 0) return "?";
      if (first == last) return "S" + vertices_[first];
      const std::string& a = vertices_[first];
      const std::string& b = vertices_[last];
      bool single = a.size() == 1 && b.size() == 1;
      return "P" + a + (single ? "" : "-") + b;
    }
    case LabelKind::Block: return "J" + std::to_string(l.dim.at(0));
    case LabelKind::Torsion: return "T" + std::to_string(l.dim.at(0)) + "@" + l.point;
    case LabelKind::LineBundle: return "O(" + std::to_string(l.dim.at(0)) + ")";
  }
  return "?";
}

IndecLabel Backend::parse_label(std::string_view raw) const {
  std::string_view s = trim(raw);
  auto bad = [&]() -> IndecLabel {
    throw ParseError("unknown indecomposable label '" + std::string(s) + "' for backend '" +
                     name_ + "'");
  };
  IndecLabel out;
  switch (kind_) {
    case BackendKind::DynkinQuiver: {
      auto interval = [&](int i, int j) {
        DimVector d(vertices_.size(), 0);
        for (int k = i; k <= j; ++k) d[k] = 1;
        return root_label(d);
      };
      if (s.size() > 1 && s[0] == 'S') {
        if (auto v = vertex_index(s.substr(1))) return interval(*v, *v);
        return bad();
      }
      if (s.size() > 2 && s[0] == 'P') {
        std::string_view rest = s.substr(1);
        auto dash = rest.find('-');
        if (dash != std::string_view::npos) {
          auto a = vertex_index(rest.substr(0, dash)), b = vertex_index(rest.substr(dash + 1));
          if (a && b && *a <= *b) return interval(*a, *b);
          return bad();
        }
        for (std::size_t cut = 1; cut < rest.size(); ++cut) {
          auto a = vertex_index(rest.substr(0, cut)), b = vertex_index(rest.substr(cut));
          if (a && b && *a < *b) return interval(*a, *b);
        }
        return bad();
      }
      if (s.size() > 2 && s.front() == '(' && s.back() == ')') {
        DimVector d;
        std::string_view body = s.substr(1, s.size() - 2);
        while (true) {
          auto comma = body.find(',');
          auto v = parse_int(trim(body.substr(0, comma)));
          if (!v) return bad();
          d.push_back(*v);
          if (comma == std::string_view::npos) break;
          body = body.substr(comma + 1);
        }
        out = root_label(d);
        try {
          validate(out);
        } catch (const PreconditionError&) {
          return bad();
        }
        return out;
      }
      return bad();
    }
    case BackendKind::LoopNilpotent: {
      std::string_view body = s;
      if (!body.empty() && body[0] == 'J') body.remove_prefix(1);
      else if (body.size() > 2 && body.front() == '(' && body.back() == ')')
        body = body.substr(1, body.size() - 2);
      auto v = parse_int(body);
      if (!v || *v < 1) return bad();
      return block_label(*v);
    }
    case BackendKind::P1Torsion: {
      if (s.size() > 3 && s.substr(0, 2) == "O(" && s.back() == ')') {
        auto v = parse_int(s.substr(2, s.size() - 3));
        if (!v) return bad();
        return IndecLabel{LabelKind::LineBundle, {*v}, {}};
      }
      auto at = s.find('@');
      if (s.size() > 3 && s[0] == 'T' && at != std::string_view::npos) {
        auto v = parse_int(s.substr(1, at - 1));
        std::string_view pt = s.substr(at + 1);
        if (!v || *v < 1 || !is_ident(pt)) return bad();
        return torsion_label(*v, std::string(pt));
      }
      return bad();
    }
  }
  return bad();
}

std::string Backend::class_name(const IsoClass& c) const {
  if (c.is_zero()) return "[0]";
  std::string out = "[";
  bool first = true;
  for (auto& l : c.summands()) {
    if (!first) out += "+";
    first = false;
    out += label_name(l);
  }
  return out + "]";
}

IsoClass Backend::parse_class(std::string_view raw) const {
  std::string_view s = trim(raw);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw ParseError("iso class must be written as [L1+L2+...]: '" + std::string(s) + "'");
  std::string_view body = trim(s.substr(1, s.size() - 2));
  if (body.empty() || body == "0") return IsoClass{};
  std::vector<IndecLabel> parts;
  // Split on '+' outside parentheses.
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= body.size(); ++i) {
    if (i < body.size() && body[i] == '(') ++depth;
    if (i < body.size() && body[i] == ')') --depth;
    if (i == body.size() || (body[i] == '+' && depth == 0)) {
      std::string_view tok = trim(body.substr(start, i - start));
      // Optional multiplicity prefix "2*L" or "2L" when the label is not numeric.
      int mult = 1;
      auto star = tok.find('*');
      if (star != std::string_view::npos) {
        auto m = parse_int(trim(tok.substr(0, star)));
        if (!m || *m < 1) throw ParseError("bad multiplicity in '" + std::string(tok) + "'");
        mult = *m;
        tok = trim(tok.substr(star + 1));
      }
      IndecLabel l = parse_label(tok);
      validate(l);
      for (int k = 0; k < mult; ++k) parts.push_back(l);
      start = i + 1;
    }
  }
  return IsoClass(parts);
}

}  // namespace hallforge
