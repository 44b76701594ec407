#include "disperse/geometry.hpp"

#include <algorithm>
#include <numeric>

namespace disperse {

std::string to_string(CoordKind kind) {
  return kind == CoordKind::exact ? "rational" : "decimal";
}

std::string to_string(Space space) { return space == Space::cube ? "cube" : "torus"; }

namespace {

void check_flat(std::size_t dim, std::size_t flat_size) {
  if (dim == 0 && flat_size != 0) throw Error(ErrorCategory::invalid_argument, "dimension must be positive");
  if (dim != 0 && flat_size % dim != 0)
    throw DimensionMismatch("coordinate count " + std::to_string(flat_size) +
                            " is not a multiple of dimension " + std::to_string(dim));
}

template <class T>
void check_range(const std::vector<T>& flat) {
  for (std::size_t k = 0; k < flat.size(); ++k) {
    if (flat[k] < T(0) || flat[k] > T(1))
      throw Error(ErrorCategory::out_of_range, "coordinate #" + std::to_string(k) + " outside [0,1]");
  }
}

}  // namespace

PointSet PointSet::from_exact(std::size_t dim, std::vector<Rational> flat, Space space) {
  check_flat(dim, flat.size());
  check_range(flat);
  PointSet s;
  s.dim_ = dim;
  s.space_ = space;
  s.kind_ = CoordKind::exact;
  s.real_.reserve(flat.size());
  for (const auto& q : flat) s.real_.push_back(to_double(q));
  s.exact_ = std::move(flat);
  return s;
}

PointSet PointSet::from_exact(const std::vector<std::vector<Rational>>& points, std::size_t dim,
                              Space space) {
  std::vector<Rational> flat;
  flat.reserve(points.size() * dim);
  for (const auto& p : points) {
    if (p.size() != dim)
      throw DimensionMismatch("point of dimension " + std::to_string(p.size()) + " in a " +
                              std::to_string(dim) + "-dimensional set");
    flat.insert(flat.end(), p.begin(), p.end());
  }
  return from_exact(dim, std::move(flat), space);
}

PointSet PointSet::from_real(std::size_t dim, std::vector<double> flat, Space space) {
  check_flat(dim, flat.size());
  check_range(flat);
  PointSet s;
  s.dim_ = dim;
  s.space_ = space;
  s.kind_ = CoordKind::decimal;
  s.real_ = std::move(flat);
  return s;
}

PointSet PointSet::from_real(const std::vector<std::vector<double>>& points, std::size_t dim,
                             Space space) {
  std::vector<double> flat;
  flat.reserve(points.size() * dim);
  for (const auto& p : points) {
    if (p.size() != dim)
      throw DimensionMismatch("point of dimension " + std::to_string(p.size()) + " in a " +
                              std::to_string(dim) + "-dimensional set");
    flat.insert(flat.end(), p.begin(), p.end());
  }
  return from_real(dim, std::move(flat), space);
}

PointSet PointSet::empty(std::size_t dim, Space space, CoordKind kind) {
  PointSet s;
  s.dim_ = dim;
  s.space_ = space;
  s.kind_ = kind;
  return s;
}

std::span<const Rational> PointSet::exact_point(std::size_t i) const {
  if (!is_exact()) throw PreconditionError("point set has decimal coordinates");
  return {exact_.data() + i * dim_, dim_};
}

PointSet PointSet::with_space(Space space) const {
  PointSet s = *this;
  s.space_ = space;
  return s;
}

PointSet PointSet::deduplicated() const {
  std::vector<std::size_t> order(size());
  std::iota(order.begin(), order.end(), 0);
  PointSet out = PointSet::empty(dim_, space_, kind_);
  if (is_exact()) {
    auto less = [&](std::size_t x, std::size_t y) {
      auto px = exact_point(x), py = exact_point(y);
      return std::lexicographical_compare(px.begin(), px.end(), py.begin(), py.end());
    };
    std::sort(order.begin(), order.end(), less);
    for (std::size_t k = 0; k < order.size(); ++k) {
      auto p = exact_point(order[k]);
      if (k > 0 && std::ranges::equal(p, exact_point(order[k - 1]))) continue;
      out.exact_.insert(out.exact_.end(), p.begin(), p.end());
      auto r = real_point(order[k]);
      out.real_.insert(out.real_.end(), r.begin(), r.end());
    }
  } else {
    auto less = [&](std::size_t x, std::size_t y) {
      auto px = real_point(x), py = real_point(y);
      return std::lexicographical_compare(px.begin(), px.end(), py.begin(), py.end());
    };
    std::sort(order.begin(), order.end(), less);
    for (std::size_t k = 0; k < order.size(); ++k) {
      auto p = real_point(order[k]);
      if (k > 0 && std::ranges::equal(p, real_point(order[k - 1]))) continue;
      out.real_.insert(out.real_.end(), p.begin(), p.end());
    }
  }
  return out;
}

PointSet PointSet::concat(const PointSet& a, const PointSet& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (a.dim_ != b.dim_) throw DimensionMismatch("cannot concatenate sets of different dimension");
  if (a.kind_ != b.kind_ || a.space_ != b.space_)
    throw PreconditionError("cannot concatenate sets of different kind or space");
  PointSet out = a;
  out.exact_.insert(out.exact_.end(), b.exact_.begin(), b.exact_.end());
  out.real_.insert(out.real_.end(), b.real_.begin(), b.real_.end());
  return out;
}

bool box_is_empty(const ExactBox& box, const PointSet& set) { return box_is_empty_impl(box, set); }
bool box_is_empty(const RealBox& box, const PointSet& set) { return box_is_empty_impl(box, set); }
bool box_is_empty(const ToroidalBox<Rational>& box, const PointSet& set) {
  return box_is_empty_impl(box, set);
}
bool box_is_empty(const ToroidalBox<double>& box, const PointSet& set) {
  return box_is_empty_impl(box, set);
}

RealBox to_real(const ExactBox& box) {
  RealBox out;
  for (const auto& iv : box.axes)
    out.axes.push_back({to_double(iv.lo), to_double(iv.hi), iv.openness});
  return out;
}

ToroidalBox<double> to_real(const ToroidalBox<Rational>& box) {
  ToroidalBox<double> out;
  for (const auto& iv : box.axes) out.axes.push_back({to_double(iv.a), to_double(iv.b)});
  return out;
}

}  // namespace disperse
