#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "disperse/construction.hpp"

namespace disperse {

/// Length of the toroidal interval (a, b); (a, a) has length 1.
double torus_length(double a, double b);

/// log(max{len(a,x), len(x,b)} / len(a,b)) for x in (a,b), else 0.
double f_ab(double x, double a, double b);

struct ShiftedUsualBox {
  double volume = 0.0;
  RealBox box;  // in the coordinates of B - x
};

/// Largest usual box inside B - x, of volume vol(B) exp(sum_i f_(a_i,b_i)(x_i)).
ShiftedUsualBox largest_usual_box_in_shifted(const ToroidalBox<double>& B, std::span<const double> x);

struct ShiftChoice {
  std::size_t r = 0;
  double volume = 0.0;
  std::vector<double> sum_f;  // sum_i f_(a_i,b_i)(r/d) for each r
};

/// Evaluates the shifts B0 - r v, v = (1/d, ..., 1/d), r = 0..d-1, and keeps
/// the one containing the largest usual box (smallest r on ties).
ShiftChoice best_shift(const ToroidalBox<double>& B0);

/// vol(B0) (2/e)^d / 4.
double shift_guarantee(double box_volume, std::size_t d);

struct ToroidalConstruction {
  PointSet points;
  std::uint64_t n_requested = 0;
  std::uint64_t n_inner = 0;
  /// Every toroidal box of at least this volume meets the set.
  double guarantee = 0.0;
};

/// Union of P + r v mod 1, r = 0..d-1, with P the two-stage construction
/// for budget n/d (rounded down to a valid size).
ToroidalConstruction toroidal_construction(std::uint64_t n, std::size_t d, const ConstructionParams& params,
                                           std::uint64_t seed, const Stage1Options& options = {});

}  // namespace disperse
