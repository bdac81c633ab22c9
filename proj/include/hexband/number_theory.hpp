#pragma once

// Exact continued-fraction machinery for edge-length ratios.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hexband {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// p/q with p, q > 0, stored reduced.
struct ExactRational {
  BigInt p, q;
};

/// (P + √D)/Q with D > 0 non-square, Q != 0 and positive value.
struct QuadraticIrrational {
  BigInt P, Q, D;
};

struct NumericOnly {
  double x;
};

/// Infinite continued fraction given by a generator of partial quotients. Used for
/// explicitly constructed (e.g. Liouville-style) ratios with unbounded quotients.
struct GeneratedFraction {
  BigInt a0;
  std::function<BigInt(std::size_t)> partial;  // index 1, 2, ...
  bool unbounded = false;                       // caller asserts unbounded quotients
  std::string label;
};

/// A positive real ratio in one of its exact or numeric representations.
class RatioInput {
 public:
  using Variant = std::variant<ExactRational, QuadraticIrrational, NumericOnly, GeneratedFraction>;

  static RatioInput rational(BigInt p, BigInt q);
  static RatioInput quadratic(BigInt P, BigInt Q, BigInt D);
  static RatioInput numeric(double x);
  static RatioInput generated(GeneratedFraction g);
  static RatioInput golden_ratio() { return quadratic(1, 2, 5); }

  const Variant& value() const noexcept { return v_; }
  bool is_rational() const noexcept { return std::holds_alternative<ExactRational>(v_); }
  bool is_quadratic() const noexcept { return std::holds_alternative<QuadraticIrrational>(v_); }
  bool is_numeric() const noexcept { return std::holds_alternative<NumericOnly>(v_); }
  bool is_generated() const noexcept { return std::holds_alternative<GeneratedFraction>(v_); }
  bool is_exact() const noexcept { return !is_numeric(); }

  double to_double() const;
  /// 1/x, closed on every variant.
  RatioInput inverse() const;
  std::string to_string() const;

 private:
  explicit RatioInput(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

/// Element r + t·√s of a real quadratic field (s square-free, s = 1 when t = 0).
/// Used to reason exactly about lengths given as rationals or surds.
struct QuadraticNumber {
  BigRational r{0};
  BigRational t{0};
  BigInt s{1};

  static QuadraticNumber from_ratio(const RatioInput& in);  // throws for numeric/generated
  bool is_rational() const { return t == 0; }
  double to_double() const;
  /// x/y when both lie in the same field; nullopt when the fields differ.
  static std::optional<QuadraticNumber> divide(const QuadraticNumber& x, const QuadraticNumber& y);
  /// Back to a RatioInput (rational or quadratic irrational); value must be positive.
  RatioInput to_ratio() const;
};

struct ContinuedFraction {
  BigInt a0;
  std::vector<BigInt> partials;  // a_1, a_2, ...
  struct Period { std::size_t start; std::size_t length; };  // a_start .. a_{start+length-1} repeat
  std::optional<Period> period;
  bool terminates = false;          // rational input, expansion complete
  bool precision_exhausted = false; // numeric input ran out of trustworthy digits
  std::function<BigInt(std::size_t)> generator;  // generated inputs: a_i on demand

  /// a_i for i >= 1; extends periodic / generated tails. Throws when unavailable.
  BigInt term(std::size_t i) const;
  /// Number of partial quotients available (SIZE_MAX for periodic / generated).
  std::size_t available() const;
};

struct Convergent {
  BigInt p, q;
  int approach_sign = 0;  // sgn(θ - p/q); 0 when exact
  double quality = 0.0;   // q²|θ - p/q|
};

struct RatioClass {
  enum class Kind { Rational, BadlyApproximable, LastAdmissible, UnknownNumeric };
  Kind kind = Kind::UnknownNumeric;
  double gamma_lower = 0.0;           // tail estimate of liminf q²|θ - p/q| (BadlyApproximable)
  double gamma_all_convergents = 0.0; // min(1/2, min quality over every examined convergent)
  std::optional<std::pair<BigInt, BigInt>> reduced;  // (p, q) for Rational
  std::string certification = "heuristic";  // certified | by-construction | heuristic
  std::string note;
};

std::string to_string(RatioClass::Kind kind);

ContinuedFraction cf_expand(const RatioInput& input, std::size_t max_depth);

/// First n convergents p_0/q_0 = a0/1, p_1/q_1, ... (n >= 1).
std::vector<Convergent> convergents(const ContinuedFraction& cf, const RatioInput& theta,
                                    std::size_t n);

RatioClass classify_ratio(const RatioInput& input, std::size_t depth);

/// Estimate of γ: minimum convergent quality over the trailing window of the first
/// `depth` convergents (one full period for quadratic surds, the last half otherwise).
/// Restricted to convergents, which are the best approximations.
double approx_constant(const RatioInput& input, std::size_t depth);

/// Exact sign of θ·q - p (0 when equal).
int sign_of_theta_q_minus(const RatioInput& theta, const BigInt& q, const BigRational& p);
/// Nearest integer to θ·q (ties upward), computed exactly for exact inputs.
BigInt nearest_integer_multiple(const RatioInput& theta, const BigInt& q);

struct PredictedCenter {
  double k;
  BigInt q;
  enum class Family { OverB, OverA } family;  // q·π/b from θ = a/b, q·π/a from 1/θ
  int approach_sign;
};

std::string to_string(PredictedCenter::Family f);

/// Points k = q_nπ/b (and q_nπ/a) near which GC1 opens gaps for b = c geometry: convergents
/// of θ = a/b (resp. 1/θ) whose nearest-integer offset {θq} has the sign of α.
std::vector<PredictedCenter> predicted_gap_centers(const RatioInput& theta, double b,
                                                   double alpha, std::size_t count);

struct CommensurabilityWitness {
  double d;            // common unit
  long long p, q, r;   // a = p·d, b = q·d, c = r·d, gcd(p, q, r) = 1
  bool exact = false;  // derived in exact arithmetic rather than by reconstruction
};

/// Best rational approximation with denominator <= max_den (continued-fraction method).
ExactRational best_rational(double x, long long max_den);

/// Witness from float lengths via bounded-denominator reconstruction of b/a and c/a;
/// |ratio - p/q| <= tol·max(1, ratio) is accepted.
std::optional<CommensurabilityWitness> commensurability_witness(double a, double b, double c,
                                                                double tol = 1e-14,
                                                                long long max_den = 1000000);

/// Exact witness for lengths given as rationals or surds; nullopt when incommensurate.
std::optional<CommensurabilityWitness> commensurability_witness(const RatioInput& a,
                                                                const RatioInput& b,
                                                                const RatioInput& c);

}  // namespace hexband
