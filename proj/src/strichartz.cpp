#include "htwave/strichartz.hpp"

#include "htwave/error.hpp"

#include <numeric>

namespace htwave::strichartz {

namespace {

std::int64_t narrow(__int128 v) {
  require(v <= INT64_MAX && v >= -INT64_MAX, ErrorCode::OutOfRange, "rational arithmetic overflow");
  return static_cast<std::int64_t>(v);
}

Rational make(__int128 num, __int128 den) {
  require(den != 0, ErrorCode::InvalidArgument, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 a = num < 0 ? -num : num, b = den;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  return Rational(narrow(num), narrow(den));
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
  require(den != 0, ErrorCode::InvalidArgument, "zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  const std::int64_t g = std::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

std::string Rational::str() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& text) {
  const std::string bad = "expected an integer, a fraction a/b or a terminating decimal, got '" + text + "'";
  require(!text.empty(), ErrorCode::InvalidArgument, bad);
  try {
    std::size_t used = 0;
    if (const auto slash = text.find('/'); slash != std::string::npos) {
      const std::string a = text.substr(0, slash), b = text.substr(slash + 1);
      const long long n = std::stoll(a, &used);
      require(used == a.size(), ErrorCode::InvalidArgument, bad);
      const long long d = std::stoll(b, &used);
      require(used == b.size(), ErrorCode::InvalidArgument, bad);
      return Rational(n, d);
    }
    if (const auto dot = text.find('.'); dot != std::string::npos) {
      const std::string whole = text.substr(0, dot), frac = text.substr(dot + 1);
      require(!frac.empty() && frac.size() <= 15 && frac.find_first_not_of("0123456789") == std::string::npos,
              ErrorCode::InvalidArgument, bad);
      const bool negative = !whole.empty() && whole[0] == '-';
      const long long w = whole.empty() || whole == "-" ? 0 : std::stoll(whole, &used);
      if (!whole.empty() && whole != "-") require(used == whole.size(), ErrorCode::InvalidArgument, bad);
      std::int64_t scale = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
      const std::int64_t f = std::stoll(frac);
      const Rational mag = Rational(negative ? -w : w) + Rational(f, scale);
      return negative ? -mag : mag;
    }
    const long long n = std::stoll(text, &used);
    require(used == text.size(), ErrorCode::InvalidArgument, bad);
    return Rational(n);
  } catch (const Error&) {
    throw;
  } catch (...) {
    fail(ErrorCode::InvalidArgument, bad);
  }
}

Rational operator+(const Rational& a, const Rational& b) {
  return make(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
              static_cast<__int128>(a.den_) * b.den_);
}
Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
Rational operator*(const Rational& a, const Rational& b) {
  return make(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
}
Rational operator/(const Rational& a, const Rational& b) {
  require(b.num_ != 0, ErrorCode::InvalidArgument, "division by zero");
  return make(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
}
bool operator<(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
}

ExtRational ExtRational::parse(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "oo") return inf();
  return of(Rational::parse(text));
}

Rational ExtRational::reciprocal() const { return infinite ? Rational(0) : Rational(1) / value; }

ExtRational ExtRational::from_reciprocal(const Rational& inv) {
  return inv == Rational(0) ? inf() : of(Rational(1) / inv);
}

std::string ExtRational::str() const { return infinite ? "inf" : value.str(); }

namespace {

void check_dims(int d, int p) {
  require(d >= 1 && p >= 1, ErrorCode::DimensionMismatch, "d and p must be positive");
}

void check_range(const ExtRational& e, const char* name) {
  require(e.infinite || Rational(2) <= e.value, ErrorCode::NotAdmissible,
          std::string(name) + " = " + e.str() + " lies outside [2, inf]");
}

}  // namespace

AdmissiblePair check_admissible(const ExtRational& q, const ExtRational& r, int d, int p) {
  check_dims(d, p);
  const int N = 2 * d + 2 * p;
  if (q == ExtRational::of(2) && r.infinite && p == 2)
    fail(ErrorCode::ExcludedEndpoint, "(q, r, p) = (2, inf, 2) is the excluded endpoint");
  check_range(q, "q");
  check_range(r, "r");
  const Rational gap = Rational(1, 2) - r.reciprocal();
  const Rational lhs = Rational(2) * q.reciprocal();
  const Rational rhs = Rational(p) * gap;
  require(lhs == rhs, ErrorCode::NotAdmissible,
          "2/q = p(1/2 - 1/r) fails: 2/q = " + lhs.str() + ", p(1/2 - 1/r) = " + rhs.str());
  return {q, r, -(Rational(N) - Rational(p, 2)) * gap, p, N};
}

AdmissiblePair admissible_from_r(const ExtRational& r, int d, int p) {
  check_dims(d, p);
  check_range(r, "r");
  const Rational two_over_q = Rational(p) * (Rational(1, 2) - r.reciprocal());
  const ExtRational q = ExtRational::from_reciprocal(two_over_q / Rational(2));
  return check_admissible(q, r, d, p);
}

AdmissiblePair admissible_from_q(const ExtRational& q, int d, int p) {
  check_dims(d, p);
  check_range(q, "q");
  const Rational inv_r = Rational(1, 2) - Rational(2) * q.reciprocal() / Rational(p);
  require(Rational(0) <= inv_r, ErrorCode::NotAdmissible, "no r in [2, inf] pairs with q = " + q.str());
  return check_admissible(q, ExtRational::from_reciprocal(inv_r), d, p);
}

LebesgueLine lebesgue_line(const ExtRational& q, int d, int p) {
  check_dims(d, p);
  const int N = 2 * d + 2 * p;
  LebesgueLine line;
  line.q = q;
  line.q_min = Rational(2 * N - p, p);
  require(q.infinite || line.q_min <= q.value, ErrorCode::OutOfRange,
          "q = " + q.str() + " is below (2N - p)/p = " + line.q_min.str());
  // N/r = N/2 - 1 - 1/q
  const Rational n_over_r = Rational(N, 2) - Rational(1) - q.reciprocal();
  require(Rational(0) < n_over_r, ErrorCode::OutOfRange, "no finite r solves the relation");
  line.r = ExtRational::of(Rational(N) / n_over_r);
  return line;
}

ExtRational lebesgue_q_from_r(const ExtRational& r, int d, int p) {
  check_dims(d, p);
  const int N = 2 * d + 2 * p;
  const Rational inv_q = Rational(N, 2) - Rational(1) - Rational(N) * r.reciprocal();
  require(Rational(0) <= inv_q, ErrorCode::OutOfRange, "no q solves the relation for r = " + r.str());
  return ExtRational::from_reciprocal(inv_q);
}

ExtRational dual_exponent(const ExtRational& q) {
  const Rational inv = Rational(1) - q.reciprocal();
  return ExtRational::from_reciprocal(inv);
}

}  // namespace htwave::strichartz
