#pragma once

#include <map>
#include <memory>
#include <vector>

#include "hallforge/backend.hpp"
#include "hallforge/linalg.hpp"
#include "hallforge/rational.hpp"

namespace hallforge {

/// Representation over GF(q): a space F_q^{dims[v]} per vertex and, per arrow
/// (in backend order), a dims[tgt] x dims[src] matrix acting on columns.
struct MatrixRep {
  std::shared_ptr<const Field> field;
  std::vector<int> dims;
  std::vector<std::pair<int, int>> ends;  // (src, tgt) per arrow
  std::vector<Matrix> maps;

  int q() const { return field->order(); }
  int total_dim() const;
  bool operator==(const MatrixRep& o) const {
    return q() == o.q() && dims == o.dims && ends == o.ends && maps == o.maps;
  }
};

/// Zero maps of the right shapes.
MatrixRep zero_rep(const Backend& b, const std::vector<int>& dims, int q);

/// Reduces integer matrices modulo the characteristic of GF(q).
MatrixRep rep_from_integers(const Backend& b, const std::vector<int>& dims,
                            const std::vector<std::vector<std::vector<long long>>>& maps, int q);

/// Indecomposables with dimension vector <= bound, canonical order. Dynkin only.
std::vector<IndecLabel> positive_roots(const Backend& b, const DimVector& bound);

/// Indecomposables of total size <= max_size (dynkin and loop backends).
std::vector<IndecLabel> indecomposables(const Backend& b, int max_size);

/// All iso classes with exactly this dimension vector.
std::vector<IsoClass> classes_of_dim(const Backend& b, const DimVector& d);
/// All iso classes of total size <= max_size, canonical order.
std::vector<IsoClass> classes_up_to(const Backend& b, int max_size);

MatrixRep realize(const Backend& b, const IndecLabel& l, int q);
MatrixRep realize_class(const Backend& b, const IsoClass& c, int q);

/// Block-diagonal direct sum.
MatrixRep direct_sum(const MatrixRep& a, const MatrixRep& b);

/// dim Hom(m, n): nullity of the intertwiner system phi_t m_a = n_a phi_s.
int hom_dim(const MatrixRep& m, const MatrixRep& n);

/// Krull-Schmidt decomposition via the Hom-multiplicity system.
IsoClass decompose(const Backend& b, const MatrixRep& m);

/// Jordan type of a nilpotent loop representation from ranks of powers.
IsoClass jordan_type(const MatrixRep& m);

/// Reusable decomposer: caches realizations and inverse Hom matrices per
/// dimension vector. Not thread-safe; use one per worker.
class Classifier {
 public:
  Classifier(const Backend& b, int q);
  IsoClass classify(const MatrixRep& m);

 private:
  struct System {
    std::vector<IndecLabel> labels;
    std::vector<MatrixRep> reps;
    std::vector<std::vector<Rational>> inverse;
  };
  const System& system_for(const std::vector<int>& dims);

  const Backend* backend_;
  int q_;
  std::map<std::vector<int>, System> systems_;
};

}  // namespace hallforge
