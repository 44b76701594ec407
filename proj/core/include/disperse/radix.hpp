#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "disperse/geometry.hpp"

namespace disperse {

enum class Preset { paper, desk, toy, custom };

std::string to_string(Preset preset);
Preset parse_preset(const std::string& name);

/// Primes, block exponent s and the granule exponents of the two-stage
/// construction. With g = gamma = p_1 ... p_d:
///   anchor granule n / g^e_A, step granule n / g^e_D, window n / g^e_W,
///   domain [0, n g^e_X), |X| = ceil(sample_multiplier * g^s * ln g).
struct ConstructionParams {
  std::size_t d = 0;
  std::vector<std::uint64_t> primes;
  unsigned s = 0;
  unsigned e_A = 0;
  unsigned e_D = 0;
  unsigned e_W = 0;
  unsigned e_X = 0;
  double sample_multiplier = 0.0;
  Preset preset = Preset::custom;

  /// p_i = (d+i)-th prime, exponents (3, 4, 11, 3, 4), multiplier 900.
  static ConstructionParams paper(std::size_t d);
  /// First d primes, exponents (1, 2, 3, 1, 2).
  static ConstructionParams desk(std::size_t d);
  /// d = 1, p = 2, exponents (1, 3, 8, 1, 5). Small enough for exhaustive
  /// derandomization while satisfying the window-shrink inequality.
  static ConstructionParams toy();
  static ConstructionParams from_preset(Preset preset, std::size_t d);

  /// Throws Error{invalid_argument} on non-prime, repeated or unsorted
  /// primes, a dimension mismatch, or exponents out of order.
  void validate() const;

  BigInt gamma() const;
  BigInt gamma_pow(unsigned e) const;
  /// gamma^e when it fits in 64 bits, else ResourceLimit.
  std::uint64_t gamma_pow_u64(unsigned e) const;
  /// n must be a multiple of this (2 gamma^e_D).
  BigInt n_modulus() const;
  bool n_valid(const BigInt& n) const;
  void check_n(std::uint64_t n) const;
  /// Largest valid n not above `budget`; 0 if none.
  std::uint64_t round_down_n(std::uint64_t budget) const;

  std::uint64_t sample_count() const;

  /// 2d + 1 < p_1, as the translate argument states it.
  bool translate_claim_valid() const;
  /// 2d < p_1, which is what the digit argument appears to need.
  bool translate_claim_relaxed() const;
  /// prod (1 - 2/p_i) >= 1/4.
  bool shrink_volume_valid() const;
  /// Window-shrink property of type approximations: the accumulated
  /// rounding (g_A - 1) + k_max (g_D - 1) fits in half a window.
  bool shrink_condition_holds(std::uint64_t n) const;

  std::string describe() const;
};

bool is_prime(std::uint64_t p);
std::uint64_t nth_prime(std::size_t k);  // nth_prime(1) = 2

/// Base-p digit reversal r_p(x) in [0,1).
Rational digit_reverse(const BigInt& x, std::uint64_t p);
Rational digit_reverse(std::uint64_t x, std::uint64_t p);
/// Reverses the lowest `digits` base-p digits of x; result < p^digits.
std::uint64_t reverse_digits(std::uint64_t x, std::uint64_t p, unsigned digits);

std::vector<Rational> radix_point(std::uint64_t x, const ConstructionParams& params);

/// prod [a_i / p_i^k_i, (a_i + 1) / p_i^k_i).
struct CanonicalBox {
  std::vector<std::uint64_t> a;
  std::vector<unsigned> k;

  ExactBox box(const ConstructionParams& params) const;
  Rational volume(const ConstructionParams& params) const;
  bool operator==(const CanonicalBox&) const = default;
};

void check_canonical(const CanonicalBox& B, const ConstructionParams& params);

struct Progression {
  BigInt A;  // least element
  BigInt D;  // step, equal to 1 / vol(B)
};

/// r^{-1}(B) = {A + kD : k >= 0}, by the Chinese remainder theorem.
Progression canonical_preimage(const CanonicalBox& B, const ConstructionParams& params);

/// Whether r(x) lies in B.
bool radix_in_canonical(const BigInt& x, const CanonicalBox& B, const ConstructionParams& params);

/// beta = prod [a_i/p^k_i + b_i/p^(k_i+s), a_i/p^k_i + c_i/p^(k_i+s)), 0 <= b_i < c_i <= p_i^s.
struct GoodPair {
  CanonicalBox B;
  std::vector<std::uint64_t> b;
  std::vector<std::uint64_t> c;

  ExactBox beta(const ConstructionParams& params) const;
  Rational beta_volume(const ConstructionParams& params) const;
  bool operator==(const GoodPair&) const = default;
};

/// Offsets in range and 1/(4n) <= vol(beta) <= 1/n.
bool is_good_pair(const GoodPair& pair, std::uint64_t n, const ConstructionParams& params);

/// Whether r(x) lies in beta.
bool radix_in_beta(const BigInt& x, const GoodPair& pair, const ConstructionParams& params);

/// A gamma^s-periodic set of integers, stored as its residues in [0, period).
struct ResidueSet {
  std::uint64_t period = 0;
  std::vector<std::uint64_t> members;  // ascending

  bool contains(std::uint64_t k) const;
  bool operator==(const ResidueSet&) const = default;
  auto operator<=>(const ResidueSet&) const = default;
};

/// L_B(beta) = {k : r(A + kD) in beta}, tested directly for k in [0, gamma^s).
ResidueSet residue_set(const GoodPair& pair, const ConstructionParams& params);

struct BoxType {
  BigInt A;  // multiple of n / gamma^e_A
  BigInt D;  // multiple of n / gamma^e_D
  bool operator==(const BoxType&) const = default;
};

/// Floor-rounds A(B), D(B) to their granules. Requires n valid and
/// n / gamma^s <= D(B) <= 4n.
BoxType box_type(const CanonicalBox& B, std::uint64_t n, const ConstructionParams& params);

}  // namespace disperse
