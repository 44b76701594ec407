#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "disperse/error.hpp"
#include "disperse/rational.hpp"

namespace disperse {

/// Interval endpoint semantics. Construction code works with [lo, hi);
/// dispersion is reported for open boxes, which have the same volume.
enum class Openness { half_open, open };

template <class T>
struct Interval {
  using value_type = T;
  T lo{};
  T hi{};
  Openness openness = Openness::half_open;

  T length() const { return hi - lo; }

  bool contains(const T& x) const {
    if (openness == Openness::open) return lo < x && x < hi;
    return lo <= x && x < hi;
  }

  bool operator==(const Interval&) const = default;
};

/// Product of per-axis intervals.
template <class T>
struct AxisBox {
  std::vector<Interval<T>> axes;

  std::size_t dimension() const { return axes.size(); }

  /// Open box (0,1)^d.
  static AxisBox unit(std::size_t dim) {
    return AxisBox{std::vector<Interval<T>>(dim, Interval<T>{T(0), T(1), Openness::open})};
  }

  bool operator==(const AxisBox&) const = default;
};

using ExactBox = AxisBox<Rational>;
using RealBox = AxisBox<double>;

/// Open interval on the circle R/Z. When a > b it wraps: (a,1] u [0,b).
/// When a == b it is the whole circle minus the single point a.
template <class T>
struct ToroidalInterval {
  using value_type = T;
  T a{};
  T b{};

  T length() const {
    if (a < b) return b - a;
    return T(1) - a + b;
  }

  /// x is taken modulo 1, so 1 and 0 denote the same point.
  bool contains(T x) const {
    if (x >= T(1)) x -= T(1);
    if (a < b) return a < x && x < b;
    if (a > b) return x > a || x < b;
    return x != a;
  }

  bool operator==(const ToroidalInterval&) const = default;
};

template <class T>
struct ToroidalBox {
  std::vector<ToroidalInterval<T>> axes;

  std::size_t dimension() const { return axes.size(); }

  bool operator==(const ToroidalBox&) const = default;
};

enum class CoordKind { exact, decimal };
enum class Space { cube, torus };

std::string to_string(CoordKind kind);
std::string to_string(Space space);

/// Immutable multiset of points in [0,1]^d. Exact sets keep both the rational
/// coordinates and their double images; decimal sets keep only doubles.
class PointSet {
 public:
  PointSet() = default;

  static PointSet from_exact(std::size_t dim, std::vector<Rational> flat,
                             Space space = Space::cube);
  static PointSet from_exact(const std::vector<std::vector<Rational>>& points,
                             std::size_t dim, Space space = Space::cube);
  static PointSet from_real(std::size_t dim, std::vector<double> flat,
                            Space space = Space::cube);
  static PointSet from_real(const std::vector<std::vector<double>>& points,
                            std::size_t dim, Space space = Space::cube);
  static PointSet empty(std::size_t dim, Space space = Space::cube,
                        CoordKind kind = CoordKind::exact);

  std::size_t dimension() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : real_.size() / dim_; }
  bool empty() const { return real_.empty(); }
  Space space() const { return space_; }
  CoordKind kind() const { return kind_; }
  bool is_exact() const { return kind_ == CoordKind::exact; }

  std::span<const double> real_point(std::size_t i) const {
    return {real_.data() + i * dim_, dim_};
  }
  /// Throws PreconditionError for decimal sets.
  std::span<const Rational> exact_point(std::size_t i) const;

  template <class T>
  std::span<const T> point(std::size_t i) const;

  std::span<const double> real_coords() const { return real_; }
  std::span<const Rational> exact_coords() const { return exact_; }

  /// Same coordinates, different ambient space.
  PointSet with_space(Space space) const;

  /// Removes repeated points (exact comparison when exact). Order is canonical
  /// (lexicographic) afterwards.
  PointSet deduplicated() const;

  /// Concatenation; both sets must agree in dimension, kind and space.
  static PointSet concat(const PointSet& a, const PointSet& b);

 private:
  std::size_t dim_ = 0;
  Space space_ = Space::cube;
  CoordKind kind_ = CoordKind::exact;
  std::vector<Rational> exact_;
  std::vector<double> real_;
};

template <>
inline std::span<const double> PointSet::point<double>(std::size_t i) const {
  return real_point(i);
}
template <>
inline std::span<const Rational> PointSet::point<Rational>(std::size_t i) const {
  return exact_point(i);
}

template <class T>
T box_volume(const AxisBox<T>& box) {
  T v(1);
  for (const auto& iv : box.axes) v *= iv.length();
  return v;
}

template <class T>
T box_volume(const ToroidalBox<T>& box) {
  T v(1);
  for (const auto& iv : box.axes) v *= iv.length();
  return v;
}

template <class T>
bool box_contains_point(const AxisBox<T>& box, std::span<const T> p) {
  if (box.dimension() != p.size())
    throw DimensionMismatch("box has dimension " + std::to_string(box.dimension()) +
                            ", point has " + std::to_string(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i)
    if (!box.axes[i].contains(p[i])) return false;
  return true;
}

template <class T>
bool box_contains_point(const ToroidalBox<T>& box, std::span<const T> p) {
  if (box.dimension() != p.size())
    throw DimensionMismatch("box has dimension " + std::to_string(box.dimension()) +
                            ", point has " + std::to_string(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i)
    if (!box.axes[i].contains(p[i])) return false;
  return true;
}

template <class Box>
bool box_is_empty_impl(const Box& box, const PointSet& set) {
  using T = typename std::decay_t<decltype(box.axes[0])>::value_type;
  if (box.dimension() != set.dimension() && !set.empty())
    throw DimensionMismatch("box has dimension " + std::to_string(box.dimension()) +
                            ", set has " + std::to_string(set.dimension()));
  for (std::size_t i = 0; i < set.size(); ++i)
    if (box_contains_point(box, set.template point<T>(i))) return false;
  return true;
}

bool box_is_empty(const ExactBox& box, const PointSet& set);
bool box_is_empty(const RealBox& box, const PointSet& set);
bool box_is_empty(const ToroidalBox<Rational>& box, const PointSet& set);
bool box_is_empty(const ToroidalBox<double>& box, const PointSet& set);

/// Per-axis containment: every axis of `inner` lies within `outer`'s closure.
template <class T>
bool box_within(const AxisBox<T>& inner, const AxisBox<T>& outer) {
  if (inner.dimension() != outer.dimension()) return false;
  for (std::size_t i = 0; i < inner.dimension(); ++i)
    if (inner.axes[i].lo < outer.axes[i].lo || inner.axes[i].hi > outer.axes[i].hi) return false;
  return true;
}

/// True when every side lies in [0,1].
template <class T>
bool inside_unit_cube(const AxisBox<T>& box) {
  for (const auto& iv : box.axes)
    if (iv.lo < T(0) || iv.hi > T(1) || iv.hi < iv.lo) return false;
  return true;
}

RealBox to_real(const ExactBox& box);
ToroidalBox<double> to_real(const ToroidalBox<Rational>& box);

}  // namespace disperse
