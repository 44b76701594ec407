#include "disperse/radix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace disperse {

std::string to_string(Preset preset) {
  switch (preset) {
    case Preset::paper: return "paper";
    case Preset::desk: return "desk";
    case Preset::toy: return "toy";
    case Preset::custom: return "custom";
  }
  return "custom";
}

Preset parse_preset(const std::string& name) {
  if (name == "paper") return Preset::paper;
  if (name == "desk") return Preset::desk;
  if (name == "toy") return Preset::toy;
  throw Error(ErrorCategory::invalid_argument, "unknown preset '" + name + "' (expected paper, desk or toy)");
}

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

std::uint64_t nth_prime(std::size_t k) {
  if (k == 0) throw Error(ErrorCategory::invalid_argument, "primes are counted from 1");
  std::uint64_t p = 1;
  while (k > 0)
    if (is_prime(++p)) --k;
  return p;
}

ConstructionParams ConstructionParams::paper(std::size_t d) {
  if (d == 0) throw Error(ErrorCategory::invalid_argument, "dimension must be positive");
  ConstructionParams c;
  c.d = d;
  for (std::size_t i = 1; i <= d; ++i) c.primes.push_back(nth_prime(d + i));
  c.s = 3;
  c.e_A = 4;
  c.e_D = 11;
  c.e_W = 3;
  c.e_X = 4;
  c.sample_multiplier = 900.0;
  c.preset = Preset::paper;
  return c;
}

ConstructionParams ConstructionParams::desk(std::size_t d) {
  if (d == 0) throw Error(ErrorCategory::invalid_argument, "dimension must be positive");
  ConstructionParams c;
  c.d = d;
  for (std::size_t i = 1; i <= d; ++i) c.primes.push_back(nth_prime(i));
  c.s = 1;
  c.e_A = 2;
  c.e_D = 3;
  c.e_W = 1;
  c.e_X = 2;
  c.sample_multiplier = 60.0;
  c.preset = Preset::desk;
  return c;
}

ConstructionParams ConstructionParams::toy() {
  ConstructionParams c;
  c.d = 1;
  c.primes = {2};
  c.s = 1;
  c.e_A = 3;
  c.e_D = 8;
  c.e_W = 1;
  c.e_X = 5;
  c.sample_multiplier = 60.0;
  c.preset = Preset::toy;
  return c;
}

ConstructionParams ConstructionParams::from_preset(Preset preset, std::size_t d) {
  switch (preset) {
    case Preset::paper: return paper(d);
    case Preset::desk: return desk(d);
    case Preset::toy:
      if (d != 1) throw Error(ErrorCategory::invalid_argument, "the toy preset is one-dimensional");
      return toy();
    case Preset::custom: break;
  }
  throw Error(ErrorCategory::invalid_argument, "custom parameters have no preset");
}

void ConstructionParams::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCategory::invalid_argument, what); };
  if (d == 0) fail("dimension must be positive");
  if (primes.size() != d) fail("need exactly d primes");
  for (std::size_t i = 0; i < d; ++i) {
    if (!is_prime(primes[i])) fail(std::to_string(primes[i]) + " is not prime");
    if (i > 0 && primes[i] <= primes[i - 1]) fail("primes must be distinct and ascending");
  }
  if (s == 0) fail("s must be positive");
  if (e_D < e_A || e_D < s || e_D < e_W) fail("e_D must dominate e_A, e_W and s");
  if (!(sample_multiplier > 0.0)) fail("sample multiplier must be positive");
}

BigInt ConstructionParams::gamma() const {
  BigInt g = 1;
  for (auto p : primes) g *= p;
  return g;
}

BigInt ConstructionParams::gamma_pow(unsigned e) const { return pow(gamma(), e); }

std::uint64_t ConstructionParams::gamma_pow_u64(unsigned e) const {
  BigInt g = gamma_pow(e);
  if (g > std::numeric_limits<std::uint64_t>::max())
    throw ResourceLimit("gamma^" + std::to_string(e) + " exceeds 64 bits");
  return g.convert_to<std::uint64_t>();
}

BigInt ConstructionParams::n_modulus() const { return 2 * gamma_pow(e_D); }

bool ConstructionParams::n_valid(const BigInt& n) const { return n > 0 && n % n_modulus() == 0; }

void ConstructionParams::check_n(std::uint64_t n) const {
  if (!n_valid(BigInt(n)))
    throw PreconditionError("n = " + std::to_string(n) + " is not a positive multiple of 2 gamma^" +
                            std::to_string(e_D) + " = " + n_modulus().str());
}

std::uint64_t ConstructionParams::round_down_n(std::uint64_t budget) const {
  BigInt m = n_modulus();
  if (m > budget) return 0;
  std::uint64_t mm = m.convert_to<std::uint64_t>();
  return budget - budget % mm;
}

std::uint64_t ConstructionParams::sample_count() const {
  double g = gamma().convert_to<double>();
  double count = std::ceil(sample_multiplier * std::pow(g, s) * std::log(g));
  if (!(count < 1e15)) throw ResourceLimit("sample count too large");
  return static_cast<std::uint64_t>(count);
}

bool ConstructionParams::translate_claim_valid() const { return primes.front() > 2 * d + 1; }
bool ConstructionParams::translate_claim_relaxed() const { return primes.front() > 2 * d; }

bool ConstructionParams::shrink_volume_valid() const {
  Rational prod = 1;
  for (auto p : primes) prod *= Rational(p - 2, p);
  return prod >= Rational(1, 4);
}

bool ConstructionParams::shrink_condition_holds(std::uint64_t n) const {
  BigInt N = n;
  if (!n_valid(N)) return false;
  BigInt gA = N / gamma_pow(e_A), gD = N / gamma_pow(e_D), w = N / gamma_pow(e_W);
  BigInt dmin = N / gamma_pow(s);
  BigInt kmax = (N * gamma_pow(e_X) + w / 2 - 2) / dmin;
  return (gA - 1) + kmax * (gD - 1) <= w / 2;
}

std::string ConstructionParams::describe() const {
  std::ostringstream out;
  out << "d=" << d << " primes=";
  for (std::size_t i = 0; i < primes.size(); ++i) out << (i ? "," : "") << primes[i];
  out << " s=" << s << " e_A=" << e_A << " e_D=" << e_D << " e_W=" << e_W << " e_X=" << e_X
      << " multiplier=" << sample_multiplier << " preset=" << to_string(preset);
  return out.str();
}

Rational digit_reverse(const BigInt& x, std::uint64_t p) {
  if (x < 0) throw Error(ErrorCategory::invalid_argument, "digit reversal needs x >= 0");
  BigInt rest = x, num = 0, den = 1;
  while (rest > 0) {
    num = num * p + rest % p;
    den *= p;
    rest /= p;
  }
  return Rational(num, den);
}

Rational digit_reverse(std::uint64_t x, std::uint64_t p) { return digit_reverse(BigInt(x), p); }

std::uint64_t reverse_digits(std::uint64_t x, std::uint64_t p, unsigned digits) {
  std::uint64_t out = 0;
  for (unsigned j = 0; j < digits; ++j) {
    out = out * p + x % p;
    x /= p;
  }
  return out;
}

namespace {

BigInt reverse_digits_big(BigInt x, std::uint64_t p, unsigned digits) {
  BigInt out = 0;
  for (unsigned j = 0; j < digits; ++j) {
    out = out * p + x % p;
    x /= p;
  }
  return out;
}

BigInt mod_inverse(const BigInt& a, const BigInt& m) {
  BigInt r0 = m, r1 = a % m, t0 = 0, t1 = 1;
  while (r1 != 0) {
    BigInt q = r0 / r1;
    BigInt r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    BigInt t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (r0 != 1) throw Error(ErrorCategory::internal, "moduli are not coprime");
  t0 %= m;
  if (t0 < 0) t0 += m;
  return t0;
}

}  // namespace

std::vector<Rational> radix_point(std::uint64_t x, const ConstructionParams& params) {
  std::vector<Rational> out;
  out.reserve(params.d);
  for (auto p : params.primes) out.push_back(digit_reverse(x, p));
  return out;
}

void check_canonical(const CanonicalBox& B, const ConstructionParams& params) {
  if (B.a.size() != params.d || B.k.size() != params.d)
    throw DimensionMismatch("canonical box dimension differs from d");
  for (std::size_t i = 0; i < params.d; ++i)
    if (BigInt(B.a[i]) >= pow(BigInt(params.primes[i]), B.k[i]))
      throw Error(ErrorCategory::invalid_argument, "canonical box index out of range");
}

ExactBox CanonicalBox::box(const ConstructionParams& params) const {
  ExactBox out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    BigInt den = pow(BigInt(params.primes[i]), k[i]);
    out.axes.push_back({Rational(BigInt(a[i]), den), Rational(BigInt(a[i] + 1), den), Openness::half_open});
  }
  return out;
}

Rational CanonicalBox::volume(const ConstructionParams& params) const {
  BigInt den = 1;
  for (std::size_t i = 0; i < k.size(); ++i) den *= pow(BigInt(params.primes[i]), k[i]);
  return Rational(BigInt(1), den);
}

Progression canonical_preimage(const CanonicalBox& B, const ConstructionParams& params) {
  check_canonical(B, params);
  BigInt x = 0, M = 1;
  for (std::size_t i = 0; i < params.d; ++i) {
    BigInt m = pow(BigInt(params.primes[i]), B.k[i]);
    BigInt target = reverse_digits_big(BigInt(B.a[i]), params.primes[i], B.k[i]);
    BigInt diff = (target - x) % m;
    if (diff < 0) diff += m;
    BigInt t = diff * mod_inverse(M, m) % m;
    x += M * t;
    M *= m;
  }
  return {x, M};
}

bool radix_in_canonical(const BigInt& x, const CanonicalBox& B, const ConstructionParams& params) {
  for (std::size_t i = 0; i < params.d; ++i) {
    BigInt m = pow(BigInt(params.primes[i]), B.k[i]);
    if (reverse_digits_big(x % m, params.primes[i], B.k[i]) != B.a[i]) return false;
  }
  return true;
}

ExactBox GoodPair::beta(const ConstructionParams& params) const {
  ExactBox out;
  for (std::size_t i = 0; i < B.a.size(); ++i) {
    BigInt ps = pow(BigInt(params.primes[i]), params.s);
    BigInt den = pow(BigInt(params.primes[i]), B.k[i] + params.s);
    BigInt base = BigInt(B.a[i]) * ps;
    out.axes.push_back({Rational(base + b[i], den), Rational(base + c[i], den), Openness::half_open});
  }
  return out;
}

Rational GoodPair::beta_volume(const ConstructionParams& params) const {
  Rational v = B.volume(params);
  for (std::size_t i = 0; i < b.size(); ++i)
    v *= Rational(BigInt(c[i] - b[i]), pow(BigInt(params.primes[i]), params.s));
  return v;
}

bool is_good_pair(const GoodPair& pair, std::uint64_t n, const ConstructionParams& params) {
  check_canonical(pair.B, params);
  if (pair.b.size() != params.d || pair.c.size() != params.d) return false;
  for (std::size_t i = 0; i < params.d; ++i)
    if (!(pair.b[i] < pair.c[i] && pair.c[i] <= ipow(params.primes[i], params.s))) return false;
  Rational v = pair.beta_volume(params);
  return v >= Rational(1, 4 * n) && v <= Rational(1, n);
}

bool radix_in_beta(const BigInt& x, const GoodPair& pair, const ConstructionParams& params) {
  for (std::size_t i = 0; i < params.d; ++i) {
    const unsigned digits = pair.B.k[i] + params.s;
    BigInt m = pow(BigInt(params.primes[i]), digits);
    BigInt v = reverse_digits_big(x % m, params.primes[i], digits);
    BigInt base = BigInt(pair.B.a[i]) * pow(BigInt(params.primes[i]), params.s);
    if (v < base + pair.b[i] || v >= base + pair.c[i]) return false;
  }
  return true;
}

bool ResidueSet::contains(std::uint64_t k) const {
  return std::binary_search(members.begin(), members.end(), k % period);
}

ResidueSet residue_set(const GoodPair& pair, const ConstructionParams& params) {
  Progression pr = canonical_preimage(pair.B, params);
  ResidueSet L;
  L.period = params.gamma_pow_u64(params.s);
  for (std::uint64_t k = 0; k < L.period; ++k)
    if (radix_in_beta(pr.A + pr.D * k, pair, params)) L.members.push_back(k);
  return L;
}

BoxType box_type(const CanonicalBox& B, std::uint64_t n, const ConstructionParams& params) {
  params.check_n(n);
  Progression pr = canonical_preimage(B, params);
  BigInt N = n;
  if (pr.D * params.gamma_pow(params.s) < N || pr.D > 4 * N)
    throw Error(ErrorCategory::out_of_range, "canonical box volume outside [1/(4n), gamma^s/n]");
  BigInt gA = N / params.gamma_pow(params.e_A);
  BigInt gD = N / params.gamma_pow(params.e_D);
  return {pr.A / gA * gA, pr.D / gD * gD};
}

}  // namespace disperse
