#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace hallforge {

/// Dimension vector in canonical vertex order. For one-vertex kinds it has a
/// single entry (block size, torsion degree).
using DimVector = std::vector<int>;

int total(const DimVector& d);
DimVector add(const DimVector& a, const DimVector& b);
bool leq(const DimVector& a, const DimVector& b);

enum class LabelKind : std::uint8_t {
  Root,        // interval module of a type-A quiver; dim is the root
  Block,       // nilpotent Jordan block; dim = {size}
  Torsion,     // torsion sheaf S_x^[d] on P^1; dim = {d}, point = x
  LineBundle,  // O(n) on P^1; dim = {n}
};

/// Descriptor of one isomorphism class of indecomposable objects.
struct IndecLabel {
  LabelKind kind = LabelKind::Root;
  DimVector dim;
  std::string point;

  int size() const;  // total dimension / degree

  /// Canonical order: total dimension, then dimension entries with larger
  /// leading entries first (interval start), then point label; line bundles
  /// sort after torsion.
  std::strong_ordering operator<=>(const IndecLabel& o) const;
  bool operator==(const IndecLabel& o) const = default;
};

IndecLabel root_label(DimVector d);
IndecLabel block_label(int size);
IndecLabel torsion_label(int degree, std::string point);

/// Krull-Schmidt normal form: sorted (label, multiplicity) pairs.
class IsoClass {
 public:
  IsoClass() = default;
  explicit IsoClass(const std::vector<IndecLabel>& summands);
  static IsoClass from_parts(std::vector<std::pair<IndecLabel, int>> parts);

  const std::vector<std::pair<IndecLabel, int>>& parts() const { return parts_; }
  std::vector<IndecLabel> summands() const;

  /// Number of indecomposable summands counted with multiplicity.
  int gamma() const;
  bool is_zero() const { return parts_.empty(); }
  int multiplicity(const IndecLabel& l) const;
  int size() const;  // total dimension of the object

  /// Direct sum (multiset union).
  IsoClass operator+(const IsoClass& o) const;

  /// Ordered by (size, gamma, parts).
  std::strong_ordering operator<=>(const IsoClass& o) const;
  bool operator==(const IsoClass& o) const = default;

  /// Every ordered pair (A, B) of iso classes with A + B == *this.
  std::vector<std::pair<IsoClass, IsoClass>> splittings() const;

 private:
  std::vector<std::pair<IndecLabel, int>> parts_;
};

DimVector dim_of(const IsoClass& c, std::size_t vertex_count);

std::ostream& operator<<(std::ostream& os, const IndecLabel& l);
std::ostream& operator<<(std::ostream& os, const IsoClass& c);

}  // namespace hallforge
