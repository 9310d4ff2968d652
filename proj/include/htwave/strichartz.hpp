#pragma once

#include <cstdint>
#include <string>

namespace htwave::strichartz {

// Exact rational with positive denominator in lowest terms.
class Rational {
 public:
  Rational(std::int64_t num = 0, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  // Accepts "7", "-3", "14/3" and terminating decimals such as "2.5".
  static Rational parse(const std::string& text);

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }
  friend bool operator==(const Rational& a, const Rational& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator<=(const Rational& a, const Rational& b) { return a < b || a == b; }

 private:
  std::int64_t num_;
  std::int64_t den_;
};

// Rational or +infinity.
struct ExtRational {
  bool infinite = false;
  Rational value;

  static ExtRational inf() { return {true, Rational(0)}; }
  static ExtRational of(Rational v) { return {false, v}; }
  static ExtRational parse(const std::string& text);  // also "inf"
  Rational reciprocal() const;                        // 1/inf = 0
  static ExtRational from_reciprocal(const Rational& inv);  // 1/0 = inf
  std::string str() const;
  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    return a.infinite == b.infinite && (a.infinite || a.value == b.value);
  }
};

struct AdmissiblePair {
  ExtRational q;
  ExtRational r;
  Rational rho;
  int p = 1;
  int N = 4;
};

// Checks 2/q = p(1/2 - 1/r) exactly and returns rho = -(N - p/2)(1/2 - 1/r).
// ExcludedEndpoint for (2, inf, 2); NotAdmissible naming the violated relation
// or range otherwise.
AdmissiblePair check_admissible(const ExtRational& q, const ExtRational& r, int d, int p);

// The admissible partner of r (resp. q) under 2/q = p(1/2 - 1/r).
AdmissiblePair admissible_from_r(const ExtRational& r, int d, int p);
AdmissiblePair admissible_from_q(const ExtRational& q, int d, int p);

struct LebesgueLine {
  ExtRational q;
  ExtRational r;
  Rational q_min;  // (2N - p) / p
  bool valid = true;
};

// r with 1/q + N/r = N/2 - 1; OutOfRange if q < (2N - p)/p.
LebesgueLine lebesgue_line(const ExtRational& q, int d, int p);

// Inverse of lebesgue_line: q with 1/q = N/2 - 1 - N/r.
ExtRational lebesgue_q_from_r(const ExtRational& r, int d, int p);

// q' with 1/q + 1/q' = 1.
ExtRational dual_exponent(const ExtRational& q);

}  // namespace htwave::strichartz
