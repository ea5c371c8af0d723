#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "hallforge/labels.hpp"
#include "hallforge/rational.hpp"

namespace hallforge {

// A shape is an IsoClass whose torsion summands may sit at the generic point
// "*": a summand T_d@* stands for T_d@x with x outside the frame's named
// points of degree d. Finite backends only ever use concrete shapes.

inline const std::string kGenericPoint = "*";

bool is_generic(const IndecLabel& l);
IndecLabel generic_torsion(int degree);

/// Named points per torsion degree. Points not named at degree d are
/// indistinguishable to every function carried with this frame.
struct Frame {
  std::map<int, std::set<std::string>> named;

  bool names(int degree, const std::string& point) const;
  Frame unite(const Frame& o) const;
  bool empty() const { return named.empty(); }
  void tidy();  // drops degrees without names
  bool operator==(const Frame& o) const;
};

/// Shape of a concrete iso class relative to a frame.
IsoClass shape_of(const IsoClass& concrete, const Frame& frame);

/// Nonzero values on shapes.
using ShapeFunction = std::map<IsoClass, Rational>;

/// Same function expressed over a finer frame (`to` must contain `from`).
ShapeFunction refine(const ShapeFunction& f, const Frame& from, const Frame& to);

/// Removes every named point the function does not distinguish from the
/// generic point; the result is the unique minimal frame.
void coarsen(Frame& frame, ShapeFunction& f);

/// Coarsest partition of the non-generic labels occurring in f such that f
/// depends only on the number of summands in each block. Generic labels stay
/// singleton blocks. Blocks and their members are in canonical order.
std::vector<std::vector<IndecLabel>> coarsest_blocks(const ShapeFunction& f);

}  // namespace hallforge
