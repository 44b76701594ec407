#include "disperse/toroidal.hpp"

#include <cmath>
#include <limits>

namespace disperse {

double torus_length(double a, double b) {
  if (a < b) return b - a;
  if (a > b) return 1.0 - a + b;
  return 1.0;
}

namespace {

bool inside_open(double x, double a, double b) {
  if (a < b) return a < x && x < b;
  if (a > b) return x > a || x < b;
  return x != a;
}

double frac(double x) {
  double f = x - std::floor(x);
  return f >= 1.0 ? 0.0 : f;
}

}  // namespace

double f_ab(double x, double a, double b) {
  double len = torus_length(a, b);
  if (!(len > 0.0)) throw PreconditionError("interval of zero length");
  if (!inside_open(x, a, b)) return 0.0;
  return std::log(std::max(torus_length(a, x), torus_length(x, b)) / len);
}

ShiftedUsualBox largest_usual_box_in_shifted(const ToroidalBox<double>& B, std::span<const double> x) {
  if (B.dimension() != x.size()) throw DimensionMismatch("shift dimension differs from box dimension");
  ShiftedUsualBox out;
  out.volume = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double a = B.axes[i].a, b = B.axes[i].b;
    const double lo = frac(a - x[i]);
    double side_lo, side_hi;
    if (inside_open(x[i], a, b)) {
      // B - x wraps through 0; keep the longer of its two pieces.
      double left = torus_length(a, x[i]), right = torus_length(x[i], b);
      if (left >= right) {
        side_lo = 1.0 - left;
        side_hi = 1.0;
      } else {
        side_lo = 0.0;
        side_hi = right;
      }
    } else {
      side_lo = lo;
      side_hi = std::min(1.0, lo + torus_length(a, b));
    }
    out.box.axes.push_back({side_lo, side_hi, Openness::open});
    out.volume *= side_hi - side_lo;
  }
  return out;
}

ShiftChoice best_shift(const ToroidalBox<double>& B0) {
  const std::size_t d = B0.dimension();
  if (d == 0) throw PreconditionError("dimension must be positive");
  const double vol = box_volume(B0);
  ShiftChoice out;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < d; ++r) {
    const double shift = static_cast<double>(r) / static_cast<double>(d);
    double sum = 0.0;
    for (const auto& iv : B0.axes) sum += f_ab(shift, iv.a, iv.b);
    out.sum_f.push_back(sum);
    if (sum > best) {
      best = sum;
      out.r = r;
    }
  }
  out.volume = vol * std::exp(best);
  return out;
}

double shift_guarantee(double box_volume, std::size_t d) {
  return box_volume * std::pow(2.0 / std::exp(1.0), static_cast<double>(d)) / 4.0;
}

ToroidalConstruction toroidal_construction(std::uint64_t n, std::size_t d, const ConstructionParams& params,
                                           std::uint64_t seed, const Stage1Options& options) {
  if (d == 0 || d != params.d) throw DimensionMismatch("dimension differs from the parameters");
  if (n % d != 0) throw PreconditionError("n must be divisible by d");
  ToroidalConstruction out;
  out.n_requested = n;
  Construction inner = hh_modified(n / d, params, seed, options);
  out.n_inner = inner.n_construction;

  const auto& P = inner.points;
  std::vector<Rational> flat;
  flat.reserve(P.size() * d * d);
  for (std::size_t r = 0; r < d; ++r) {
    const Rational shift{BigInt(r), BigInt(d)};
    for (std::size_t j = 0; j < P.size(); ++j)
      for (const auto& x : P.exact_point(j)) {
        Rational y = x + shift;
        if (y > 1) y -= 1;
        flat.push_back(std::move(y));
      }
  }
  out.points = PointSet::from_exact(d, std::move(flat), Space::torus).deduplicated();
  out.guarantee = to_double(inner.guarantee) * 4.0 * std::pow(std::exp(1.0) / 2.0, static_cast<double>(d));
  return out;
}

}  // namespace disperse
