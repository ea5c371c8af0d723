#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hallforge/labels.hpp"

namespace hallforge {

enum class BackendKind { DynkinQuiver, LoopNilpotent, P1Torsion };

std::string to_string(BackendKind k);

struct Arrow {
  std::string id;
  int src = 0;  // vertex index
  int tgt = 0;
  bool operator==(const Arrow&) const = default;
};

/// Named family declared in a backend file. Either an explicit label list or a
/// torsion family {degree, base}.
struct FamilySpec {
  std::string name;
  std::vector<std::string> labels;
  int degree = 0;
  bool cofinite = false;
  std::vector<std::string> points;
  bool is_torsion() const { return degree > 0; }
  bool operator==(const FamilySpec&) const = default;
};

class Backend {
 public:
  /// Type A_n with vertices "1".."n"; forward[i] orients the arrow between
  /// vertex i and i+1 as i -> i+1.
  static Backend type_a(std::string name, int n, const std::vector<bool>& forward = {});
  static Backend loop_nilpotent(std::string name = "loop");
  static Backend p1_torsion(std::string name = "p1");

  /// Parses and validates a backend definition; errors carry the byte offset
  /// or the JSON location of the offending field.
  static Backend from_json_text(const std::string& text);
  static Backend load(const std::string& path);

  /// Canonical compact JSON; equal backends serialize identically.
  std::string to_json() const;
  /// Like to_json but without declared families: the identity used by caches.
  std::string structure_json() const;

  const std::string& name() const { return name_; }
  BackendKind kind() const { return kind_; }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const std::vector<FamilySpec>& families() const { return families_; }
  const FamilySpec* find_family(std::string_view name) const;

  /// Length of dimension vectors (1 for the one-vertex kinds).
  std::size_t vertex_count() const;
  DimVector zero_dim() const { return DimVector(vertex_count(), 0); }
  DimVector dim(const IsoClass& c) const { return dim_of(c, vertex_count()); }

  /// For type A: true iff the arrow between path vertices i and i+1 points up.
  bool arrow_forward(int i) const;

  void validate(const IndecLabel& l) const;
  std::string label_name(const IndecLabel& l) const;
  IndecLabel parse_label(std::string_view text) const;
  /// "[S1+S1+P12]", zero object "[0]".
  std::string class_name(const IsoClass& c) const;
  IsoClass parse_class(std::string_view text) const;

  bool operator==(const Backend& o) const { return to_json() == o.to_json(); }

 private:
  std::string name_;
  BackendKind kind_ = BackendKind::DynkinQuiver;
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::vector<FamilySpec> families_;

  void check_structure() const;
  std::optional<int> vertex_index(std::string_view v) const;
};

}  // namespace hallforge
