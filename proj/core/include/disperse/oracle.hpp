#pragma once

#include <cstdint>

#include "disperse/geometry.hpp"

namespace disperse {

struct OracleOptions {
  enum class Method {
    automatic,         ///< plane sweep for d == 2, branch and bound otherwise
    branch_and_bound,  ///< per-axis candidate pairs, depth first, with volume pruning
    plane_sweep,       ///< O(n^2) maximal-rectangle sweep; d == 2 only
  };

  Method method = Method::automatic;
  /// Upper limit on search nodes before ResourceLimit is thrown.
  std::uint64_t node_budget = 4'000'000'000ULL;
};

/// Largest empty open box. `scaled` is volume * n.
template <class T>
struct DispersionResult {
  T volume{};
  AxisBox<T> witness;
  double scaled = 0.0;
};

template <class T>
struct ToroidalDispersionResult {
  T volume{};
  ToroidalBox<T> witness;
  double scaled = 0.0;
};

/// Exact dispersion of a cube point set.
///
/// Every maximal empty box has each face supported either by a point
/// coordinate or by the cube boundary, so for every axis the search only
/// needs bounds from {0, 1} u {i-th coordinates of P}. Ties between equal
/// volumes go to the lexicographically smallest (lo_d, hi_d, ..., lo_1, hi_1).
///
/// T = Rational requires an exact set; T = double accepts either kind.
/// Throws PreconditionError for torus sets or d == 0, ResourceLimit when the
/// node budget runs out.
template <class T>
DispersionResult<T> largest_empty_box(const PointSet& set, const OracleOptions& options = {});

/// Supremum of volumes of empty toroidal boxes. Interval endpoints are point
/// coordinates; an interval (c,c) is the circle minus c and has length 1.
/// An empty set yields volume 1 with witness (0,0)^d.
template <class T>
ToroidalDispersionResult<T> largest_empty_toroidal_box(const PointSet& set,
                                                       const OracleOptions& options = {});

/// Widest empty slab: the widest gap (sentinels 0 and 1) on the best axis
/// times full extent elsewhere. Its volume is at least 1/(n+1).
template <class T>
AxisBox<T> trivial_slab(const PointSet& set);

extern template DispersionResult<Rational> largest_empty_box<Rational>(const PointSet&, const OracleOptions&);
extern template DispersionResult<double> largest_empty_box<double>(const PointSet&, const OracleOptions&);
extern template ToroidalDispersionResult<Rational> largest_empty_toroidal_box<Rational>(const PointSet&,
                                                                                        const OracleOptions&);
extern template ToroidalDispersionResult<double> largest_empty_toroidal_box<double>(const PointSet&,
                                                                                    const OracleOptions&);
extern template AxisBox<Rational> trivial_slab<Rational>(const PointSet&);
extern template AxisBox<double> trivial_slab<double>(const PointSet&);

}  // namespace disperse
