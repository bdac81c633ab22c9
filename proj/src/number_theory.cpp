#include "hexband/number_theory.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/integer.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "hexband/errors.hpp"

namespace hexband {

namespace mp = boost::multiprecision;
using BigFloat = mp::cpp_bin_float_100;

namespace {

int sgn(const BigInt& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

BigInt abs_big(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

BigInt isqrt(const BigInt& x) { return mp::sqrt(x); }

bool is_square(const BigInt& x) {
  if (x < 0) return false;
  const BigInt r = isqrt(x);
  return r * r == x;
}

/// Sign of X + Y·√D for D > 0.
int surd_sign(const BigInt& X, const BigInt& Y, const BigInt& D) {
  const int sx = sgn(X), sy = sgn(Y);
  if (sy == 0) return sx;
  if (sx == 0 || sx == sy) return sy;
  const BigInt x2 = X * X, y2d = Y * Y * D;
  if (x2 == y2d) return 0;
  // Opposite signs: the larger magnitude wins.
  return (y2d > x2) ? sy : sx;
}

/// floor((P + √D)/Q) in exact arithmetic, D non-square.
BigInt floor_surd(const BigInt& P, const BigInt& Q, const BigInt& D) {
  const BigInt s = isqrt(D);
  if (Q > 0) return floor_div(P + s, Q);
  return floor_div(-P - s - 1, -Q);
}

BigFloat surd_value(const QuadraticIrrational& v) {
  return (BigFloat(v.P) + mp::sqrt(BigFloat(v.D))) / BigFloat(v.Q);
}

BigFloat generated_value(const GeneratedFraction& g, std::size_t depth) {
  BigFloat x = 0;
  for (std::size_t i = depth; i >= 1; --i) {
    const BigFloat ai(g.partial(i));
    x = (i == depth) ? ai : ai + 1 / x;
  }
  return BigFloat(g.a0) + 1 / x;
}

BigFloat big_value(const RatioInput& in) {
  return std::visit(
      [](const auto& v) -> BigFloat {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ExactRational>) {
          return BigFloat(v.p) / BigFloat(v.q);
        } else if constexpr (std::is_same_v<T, QuadraticIrrational>) {
          return surd_value(v);
        } else if constexpr (std::is_same_v<T, NumericOnly>) {
          return BigFloat(v.x);
        } else {
          return generated_value(v, 60);
        }
      },
      in.value());
}

/// Squarefree decomposition D = f²·s by trial division.
std::pair<BigInt, BigInt> split_square(BigInt D) {
  BigInt f = 1;
  for (BigInt p = 2; p * p <= D && p < 1000000; ++p) {
    while (D % (p * p) == 0) {
      D /= p * p;
      f *= p;
    }
  }
  if (D > 1 && is_square(D)) {
    f *= isqrt(D);
    D = 1;
  }
  return {f, D};
}

BigInt lcm_big(const BigInt& a, const BigInt& b) { return a / mp::gcd(a, b) * b; }

QuadraticIrrational reduce_surd(BigInt P, BigInt Q, BigInt D) {
  const BigInt g = mp::gcd(abs_big(P), abs_big(Q));
  BigInt h = mp::gcd(g, D);
  while (h > 1 && D % (h * h) != 0) h = mp::gcd(h, D / h);
  if (h > 1) {
    P /= h;
    Q /= h;
    D /= h * h;
  }
  return {P, Q, D};
}

}  // namespace

// ---------------------------------------------------------------- RatioInput

RatioInput RatioInput::rational(BigInt p, BigInt q) {
  if (p <= 0 || q <= 0) throw DomainError("rational ratio must have positive numerator and denominator");
  const BigInt g = mp::gcd(p, q);
  return RatioInput(ExactRational{p / g, q / g});
}

RatioInput RatioInput::quadratic(BigInt P, BigInt Q, BigInt D) {
  if (Q == 0) throw DomainError("surd denominator must be nonzero");
  if (D <= 0 || is_square(D)) throw DomainError("surd radicand must be a positive non-square");
  if (surd_sign(P, 1, D) * sgn(Q) <= 0) throw DomainError("surd value must be positive");
  return RatioInput(QuadraticIrrational{std::move(P), std::move(Q), std::move(D)});
}

RatioInput RatioInput::numeric(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("ratio must be positive and finite");
  return RatioInput(NumericOnly{x});
}

RatioInput RatioInput::generated(GeneratedFraction g) {
  if (g.a0 < 0 || !g.partial) throw DomainError("generated fraction needs a0 >= 0 and a generator");
  if (g.a0 == 0 && g.partial(1) < 1) throw DomainError("generated fraction must be positive");
  return RatioInput(std::move(g));
}

double RatioInput::to_double() const {
  if (const auto* n = std::get_if<NumericOnly>(&v_)) return n->x;
  return static_cast<double>(big_value(*this));
}

RatioInput RatioInput::inverse() const {
  return std::visit(
      [](const auto& v) -> RatioInput {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ExactRational>) {
          return RatioInput::rational(v.q, v.p);
        } else if constexpr (std::is_same_v<T, QuadraticIrrational>) {
          // Q/(P+√D) = Q(√D - P)/(D - P²)
          const BigInt N = v.D - v.P * v.P;
          const BigInt D2 = v.Q * v.Q * v.D;
          const auto r = (v.Q > 0) ? reduce_surd(-v.Q * v.P, N, D2) : reduce_surd(v.Q * v.P, -N, D2);
          return RatioInput::quadratic(r.P, r.Q, r.D);
        } else if constexpr (std::is_same_v<T, NumericOnly>) {
          return RatioInput::numeric(1.0 / v.x);
        } else {
          GeneratedFraction g;
          g.unbounded = v.unbounded;
          g.label = "1/(" + v.label + ")";
          auto old = v.partial;
          if (v.a0 == 0) {
            g.a0 = old(1);
            g.partial = [old](std::size_t i) { return old(i + 1); };
          } else {
            const BigInt a0 = v.a0;
            g.a0 = 0;
            g.partial = [old, a0](std::size_t i) { return i == 1 ? a0 : old(i - 1); };
          }
          return RatioInput::generated(std::move(g));
        }
      },
      v_);
}

std::string RatioInput::to_string() const {
  std::ostringstream os;
  std::visit(
      [&os](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ExactRational>) {
          os << v.p << "/" << v.q;
        } else if constexpr (std::is_same_v<T, QuadraticIrrational>) {
          os << "(" << v.P << "+sqrt(" << v.D << "))/" << v.Q;
        } else if constexpr (std::is_same_v<T, NumericOnly>) {
          os.precision(17);
          os << v.x;
        } else {
          os << (v.label.empty() ? std::string("generated") : v.label);
        }
      },
      v_);
  return os.str();
}

// ---------------------------------------------------------- QuadraticNumber

QuadraticNumber QuadraticNumber::from_ratio(const RatioInput& in) {
  QuadraticNumber out;
  if (const auto* r = std::get_if<ExactRational>(&in.value())) {
    out.r = BigRational(r->p, r->q);
    return out;
  }
  if (const auto* s = std::get_if<QuadraticIrrational>(&in.value())) {
    const auto [f, core] = split_square(s->D);
    out.r = BigRational(s->P, s->Q);
    if (core == 1) {
      out.r += BigRational(f, s->Q);
    } else {
      out.t = BigRational(f, s->Q);
      out.s = core;
    }
    return out;
  }
  throw DomainError("exact arithmetic requires a rational or surd input");
}

double QuadraticNumber::to_double() const {
  BigFloat v = BigFloat(mp::numerator(r)) / BigFloat(mp::denominator(r));
  if (t != 0) v += BigFloat(mp::numerator(t)) / BigFloat(mp::denominator(t)) * mp::sqrt(BigFloat(s));
  return static_cast<double>(v);
}

std::optional<QuadraticNumber> QuadraticNumber::divide(const QuadraticNumber& x,
                                                       const QuadraticNumber& y) {
  if (y.r == 0 && y.t == 0) throw DomainError("division by zero");
  QuadraticNumber out;
  if (y.t == 0) {
    out.r = x.r / y.r;
    out.t = x.t / y.r;
    out.s = x.s;
  } else {
    if (x.t != 0 && x.s != y.s) return std::nullopt;
    const BigRational norm = y.r * y.r - y.t * y.t * BigRational(y.s);
    out.r = (x.r * y.r - x.t * y.t * BigRational(y.s)) / norm;
    out.t = (x.t * y.r - x.r * y.t) / norm;
    out.s = y.s;
  }
  if (out.t == 0) out.s = 1;
  return out;
}

RatioInput QuadraticNumber::to_ratio() const {
  if (t == 0) return RatioInput::rational(mp::numerator(r), mp::denominator(r));
  const BigInt L = lcm_big(mp::denominator(r), mp::denominator(t));
  const BigInt P = mp::numerator(r) * (L / mp::denominator(r));
  const BigInt T = mp::numerator(t) * (L / mp::denominator(t));
  const BigInt D = T * T * s;
  const auto red = (T > 0) ? reduce_surd(P, L, D) : reduce_surd(-P, -L, D);
  return RatioInput::quadratic(red.P, red.Q, red.D);
}

// --------------------------------------------------------- ContinuedFraction

BigInt ContinuedFraction::term(std::size_t i) const {
  if (i == 0) return a0;
  if (i - 1 < partials.size()) return partials[i - 1];
  if (period) return partials[period->start - 1 + (i - period->start) % period->length];
  if (generator) return generator(i);
  throw DomainError("continued fraction depth exhausted");
}

std::size_t ContinuedFraction::available() const {
  if (period || generator) return std::numeric_limits<std::size_t>::max();
  return partials.size();
}

std::string to_string(RatioClass::Kind kind) {
  switch (kind) {
    case RatioClass::Kind::Rational: return "Rational";
    case RatioClass::Kind::BadlyApproximable: return "BadlyApproximable";
    case RatioClass::Kind::LastAdmissible: return "LastAdmissible";
    case RatioClass::Kind::UnknownNumeric: return "UnknownNumeric";
  }
  return "UnknownNumeric";
}

std::string to_string(PredictedCenter::Family f) {
  return f == PredictedCenter::Family::OverB ? "q*pi/b" : "q*pi/a";
}

ContinuedFraction cf_expand(const RatioInput& input, std::size_t max_depth) {
  if (max_depth == 0) throw DomainError("max_depth must be positive");
  ContinuedFraction cf;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ExactRational>) {
          BigInt num = v.p, den = v.q;
          cf.a0 = num / den;
          BigInt rem = num % den;
          while (rem != 0) {
            num = den;
            den = rem;
            cf.partials.push_back(num / den);
            rem = num % den;
          }
          cf.terminates = true;
        } else if constexpr (std::is_same_v<T, QuadraticIrrational>) {
          BigInt P = v.P, Q = v.Q, D = v.D;
          if ((D - P * P) % Q != 0) {
            const BigInt aq = abs_big(Q);
            P *= aq;
            D *= Q * Q;
            Q *= aq;
          }
          cf.a0 = floor_surd(P, Q, D);
          std::map<std::pair<BigInt, BigInt>, std::size_t> seen;
          BigInt a = cf.a0;
          for (std::size_t i = 1; i <= max_depth; ++i) {
            P = a * Q - P;
            Q = (D - P * P) / Q;
            auto key = std::make_pair(P, Q);
            if (auto it = seen.find(key); it != seen.end()) {
              cf.period = ContinuedFraction::Period{it->second, i - it->second};
              break;
            }
            seen.emplace(std::move(key), i);
            a = floor_surd(P, Q, D);
            cf.partials.push_back(a);
          }
        } else if constexpr (std::is_same_v<T, NumericOnly>) {
          long double x = v.x;
          const long double fl = std::floor(x);
          cf.a0 = BigInt(static_cast<long long>(fl));
          long double frac = x - fl;
          long double q_prev = 0, q = 1;
          const long double eps = std::numeric_limits<double>::epsilon();
          while (cf.partials.size() < max_depth) {
            if (frac == 0) {
              cf.terminates = true;
              break;
            }
            // Digits are spent once the convergent error q^-2 drops to double resolution.
            if (q * q * eps * std::max<long double>(1, v.x) > 1e-3L) {
              cf.precision_exhausted = true;
              break;
            }
            x = 1 / frac;
            const long double ai = std::floor(x);
            if (ai > 1e15L) {
              cf.precision_exhausted = true;
              break;
            }
            cf.partials.push_back(BigInt(static_cast<long long>(ai)));
            frac = x - ai;
            const long double q_next = ai * q + q_prev;
            q_prev = q;
            q = q_next;
          }
        } else {
          cf.a0 = v.a0;
          for (std::size_t i = 1; i <= max_depth; ++i) cf.partials.push_back(v.partial(i));
          cf.generator = v.partial;
        }
      },
      input.value());
  return cf;
}

std::vector<Convergent> convergents(const ContinuedFraction& cf, const RatioInput& theta,
                                    std::size_t n) {
  if (n == 0) throw DomainError("need at least one convergent");
  if (n - 1 > cf.available()) throw DomainError("continued fraction depth exhausted");

  // Tail evaluation of the complete quotient x_{i+1}: |θ - p_i/q_i| = 1/(q_i(x_{i+1} q_i + q_{i-1})).
  constexpr std::size_t kTail = 48;
  const bool exact_tail = !theta.is_numeric();
  auto complete_quotient = [&](std::size_t i) -> std::optional<BigFloat> {
    const std::size_t last = std::min(cf.available(), i + kTail);
    if (i > last) return std::nullopt;
    BigFloat x = BigFloat(cf.term(last));
    for (std::size_t j = last; j-- > i;) x = BigFloat(cf.term(j)) + 1 / x;
    return x;
  };

  const long double theta_ld = theta.to_double();
  std::vector<Convergent> out;
  out.reserve(n);
  BigInt p_prev = 1, q_prev = 0, p = cf.a0, q = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) {
      const BigInt a = cf.term(i);
      BigInt p_next = a * p + p_prev, q_next = a * q + q_prev;
      p_prev = p;
      q_prev = q;
      p = std::move(p_next);
      q = std::move(q_next);
    }
    Convergent c{p, q, 0, 0.0};
    if (exact_tail) {
      const bool last_of_finite = cf.terminates && i == cf.partials.size();
      if (last_of_finite) {
        c.approach_sign = 0;
        c.quality = 0.0;
      } else {
        c.approach_sign = (i % 2 == 0) ? 1 : -1;
        const auto x = complete_quotient(i + 1);
        c.quality = static_cast<double>(1 / (*x + BigFloat(q_prev) / BigFloat(q)));
      }
    } else {
      const long double diff =
          theta_ld - static_cast<long double>(p) / static_cast<long double>(q);
      c.approach_sign = diff > 0 ? 1 : (diff < 0 ? -1 : 0);
      const long double qq = static_cast<long double>(q);
      c.quality = static_cast<double>(qq * qq * std::abs(diff));
    }
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

double trailing_min(const std::vector<Convergent>& cs, std::size_t window) {
  window = std::clamp<std::size_t>(window, 1, cs.size());
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = cs.size() - window; i < cs.size(); ++i) m = std::min(m, cs[i].quality);
  return m;
}

double all_min(const std::vector<Convergent>& cs) {
  double m = 0.5;
  for (const auto& c : cs) m = std::min(m, c.quality);
  return m;
}

std::size_t tail_window(const ContinuedFraction& cf, std::size_t depth) {
  if (cf.period) return 2 * cf.period->length;
  return std::max<std::size_t>(1, depth / 2);
}

std::size_t effective_depth(const ContinuedFraction& cf, std::size_t depth) {
  if (cf.period) depth = std::max(depth, cf.period->start + 2 * cf.period->length);
  return std::min(depth, cf.available() == std::numeric_limits<std::size_t>::max()
                             ? depth
                             : cf.available() + 1);
}

}  // namespace

RatioClass classify_ratio(const RatioInput& input, std::size_t depth) {
  if (depth == 0) throw DomainError("depth must be positive");
  RatioClass out;
  if (const auto* r = std::get_if<ExactRational>(&input.value())) {
    out.kind = RatioClass::Kind::Rational;
    out.reduced = std::make_pair(r->p, r->q);
    out.certification = "certified";
    out.note = "rational ratio: GC1 yields infinitely many gaps for any alpha != 0; GC2 at most finitely many";
    return out;
  }
  const ContinuedFraction cf = cf_expand(input, std::max<std::size_t>(depth, 64));
  const std::size_t n = effective_depth(cf, depth);
  const auto cs = convergents(cf, input, n);

  if (input.is_quadratic()) {
    out.kind = RatioClass::Kind::BadlyApproximable;
    out.gamma_lower = trailing_min(cs, tail_window(cf, n));
    out.gamma_all_convergents = all_min(cs);
    out.certification = "certified";
    out.note = "quadratic irrational: eventually periodic continued fraction, bounded partial quotients; "
               "gamma estimated over convergents only";
    return out;
  }

  const auto* gen = std::get_if<GeneratedFraction>(&input.value());
  if (gen && gen->unbounded) {
    out.kind = RatioClass::Kind::LastAdmissible;
    out.gamma_all_convergents = all_min(cs);
    out.certification = "by-construction";
    out.note = "generator asserts unbounded partial quotients";
    return out;
  }

  out.kind = RatioClass::Kind::UnknownNumeric;
  out.gamma_lower = trailing_min(cs, tail_window(cf, n));
  out.gamma_all_convergents = all_min(cs);
  BigInt largest = 0;
  for (const auto& a : cf.partials) largest = std::max(largest, a);
  std::ostringstream note;
  note << "finite-precision data cannot certify the class; examined " << cf.partials.size()
       << " partial quotients, largest " << largest;
  if (cf.terminates) note << "; expansion terminated (value is a dyadic rational in floating point)";
  if (cf.precision_exhausted) note << "; precision exhausted";
  note << (largest <= 10 ? "; quotients look bounded" : "; quotients look large");
  out.note = note.str();
  return out;
}

double approx_constant(const RatioInput& input, std::size_t depth) {
  if (input.is_rational()) throw DomainError("approximation constant is undefined for rational ratios");
  if (depth < 2) throw DomainError("depth must be at least 2");
  const ContinuedFraction cf = cf_expand(input, std::max<std::size_t>(depth, 64));
  const std::size_t n = effective_depth(cf, depth);
  const auto cs = convergents(cf, input, n);
  return trailing_min(cs, tail_window(cf, n));
}

int sign_of_theta_q_minus(const RatioInput& theta, const BigInt& q, const BigRational& p) {
  const BigInt pn = mp::numerator(p), pd = mp::denominator(p);
  return std::visit(
      [&](const auto& v) -> int {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ExactRational>) {
          return sgn(v.p * q * pd - pn * v.q);
        } else if constexpr (std::is_same_v<T, QuadraticIrrational>) {
          return surd_sign(pd * q * v.P - pn * v.Q, pd * q, v.D) * sgn(v.Q);
        } else {
          const BigFloat diff = big_value(theta) * BigFloat(q) - BigFloat(pn) / BigFloat(pd);
          return diff > 0 ? 1 : (diff < 0 ? -1 : 0);
        }
      },
      theta.value());
}

BigInt nearest_integer_multiple(const RatioInput& theta, const BigInt& q) {
  BigInt n(mp::floor(big_value(theta) * BigFloat(q) + BigFloat(0.5)));
  const BigRational half(1, 2);
  while (sign_of_theta_q_minus(theta, q, BigRational(n) + half) >= 0) n += 1;
  while (sign_of_theta_q_minus(theta, q, BigRational(n) - half) < 0) n -= 1;
  return n;
}

std::vector<PredictedCenter> predicted_gap_centers(const RatioInput& theta, double b,
                                                   double alpha, std::size_t count) {
  if (theta.is_rational()) {
    throw RationalRatioError("a/b is rational: gaps sit at commensurability points; "
                             "use the flat-band / rational machinery");
  }
  if (!(b > 0.0)) throw DomainError("b must be positive");
  if (alpha == 0.0) throw DomainError("predicted gap centres need alpha != 0");
  const int want = alpha > 0 ? 1 : -1;
  const double a = theta.to_double() * b;

  std::vector<PredictedCenter> out;
  auto collect = [&](const RatioInput& ratio, double length, PredictedCenter::Family family) {
    const std::size_t depth = 4 * count + 40;
    const ContinuedFraction cf = cf_expand(ratio, depth);
    const std::size_t n = std::min(depth, cf.available() == std::numeric_limits<std::size_t>::max()
                                              ? depth
                                              : cf.available() + 1);
    const auto cs = convergents(cf, ratio, n);
    std::size_t found = 0;
    BigInt last_q = 0;
    for (const auto& c : cs) {
      if (found == count) break;
      if (c.q == last_q) continue;
      if (nearest_integer_multiple(ratio, c.q) != c.p) continue;
      const int s = sign_of_theta_q_minus(ratio, c.q, BigRational(c.p));
      if (s != want) continue;
      last_q = c.q;
      out.push_back({static_cast<double>(c.q) * std::numbers::pi / length, c.q, family, s});
      ++found;
    }
  };
  collect(theta, b, PredictedCenter::Family::OverB);
  collect(theta.inverse(), a, PredictedCenter::Family::OverA);
  return out;
}

ExactRational best_rational(double x, long long max_den) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("best_rational expects a positive finite value");
  if (max_den < 1) throw DomainError("denominator cap must be >= 1");
  // Exact value of the double: mantissa · 2^exp.
  int exp = 0;
  const double mant = std::frexp(x, &exp);
  const auto m = static_cast<long long>(std::ldexp(mant, 53));
  exp -= 53;
  BigRational exact = exp >= 0 ? BigRational(BigInt(m) << exp) : BigRational(BigInt(m), BigInt(1) << -exp);

  const BigInt cap = max_den;
  if (mp::denominator(exact) <= cap) return {mp::numerator(exact), mp::denominator(exact)};

  // Limit-denominator walk over convergents and the final semiconvergent.
  BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  BigInt n = mp::numerator(exact), d = mp::denominator(exact);
  while (true) {
    const BigInt a = n / d;
    const BigInt q2 = q0 + a * q1;
    if (q2 > cap) break;
    const BigInt p2 = p0 + a * p1;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    const BigInt rem = n - a * d;
    n = d;
    d = rem;
    if (d == 0) break;
  }
  const BigInt k = (cap - q0) / q1;
  const BigRational bound1(p0 + k * p1, q0 + k * q1);
  const BigRational bound2(p1, q1);
  const BigRational e1 = mp::abs(bound1 - exact), e2 = mp::abs(bound2 - exact);
  const BigRational& best = (e2 <= e1) ? bound2 : bound1;
  return {mp::numerator(best), mp::denominator(best)};
}

namespace {

std::optional<CommensurabilityWitness> witness_from_ratios(double a, const ExactRational& rb,
                                                           const ExactRational& rc, bool exact) {
  const BigInt m = lcm_big(rb.q, rc.q);
  BigInt P = m, Q = rb.p * (m / rb.q), R = rc.p * (m / rc.q);
  const BigInt g = mp::gcd(mp::gcd(P, Q), R);
  P /= g;
  Q /= g;
  R /= g;
  const BigInt limit = std::numeric_limits<long long>::max();
  if (P > limit || Q > limit || R > limit) return std::nullopt;
  CommensurabilityWitness w;
  w.p = static_cast<long long>(P);
  w.q = static_cast<long long>(Q);
  w.r = static_cast<long long>(R);
  w.d = a / static_cast<double>(w.p);
  w.exact = exact;
  return w;
}

}  // namespace

std::optional<CommensurabilityWitness> commensurability_witness(double a, double b, double c,
                                                                double tol, long long max_den) {
  for (double v : {a, b, c}) {
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("lengths must be positive and finite");
  }
  auto reconstruct = [&](double ratio) -> std::optional<ExactRational> {
    const ExactRational r = best_rational(ratio, max_den);
    const double approx = static_cast<double>(BigFloat(r.p) / BigFloat(r.q));
    if (std::abs(ratio - approx) <= tol * std::max(1.0, ratio)) return r;
    return std::nullopt;
  };
  const auto rb = reconstruct(b / a);
  const auto rc = reconstruct(c / a);
  if (!rb || !rc) return std::nullopt;
  return witness_from_ratios(a, *rb, *rc, false);
}

std::optional<CommensurabilityWitness> commensurability_witness(const RatioInput& a,
                                                                const RatioInput& b,
                                                                const RatioInput& c) {
  const bool all_exact_field = [&] {
    for (const RatioInput* x : {&a, &b, &c}) {
      if (!x->is_rational() && !x->is_quadratic()) return false;
    }
    return true;
  }();
  if (!all_exact_field) return commensurability_witness(a.to_double(), b.to_double(), c.to_double());

  const auto qa = QuadraticNumber::from_ratio(a);
  const auto qb = QuadraticNumber::from_ratio(b);
  const auto qc = QuadraticNumber::from_ratio(c);
  const auto lb = QuadraticNumber::divide(qb, qa);
  const auto lc = QuadraticNumber::divide(qc, qa);
  if (!lb || !lc || !lb->is_rational() || !lc->is_rational()) return std::nullopt;
  const ExactRational rb{mp::numerator(lb->r), mp::denominator(lb->r)};
  const ExactRational rc{mp::numerator(lc->r), mp::denominator(lc->r)};
  return witness_from_ratios(qa.to_double(), rb, rc, true);
}

}  // namespace hexband
