#include "htwave/laguerre.hpp"

#include "htwave/error.hpp"
#include "htwave/io.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

namespace htwave::laguerre {

namespace {

void check_order(LaguerreOrder order) {
  require(order.m >= 0 && order.gamma >= 0, ErrorCode::InvalidArgument,
          "Laguerre degree and type must be nonnegative");
}

}  // namespace

double laguerre_polynomial(LaguerreOrder order, double tau) {
  check_order(order);
  if (order.m == 0) return 1.0;
  const double g = order.gamma;
  double prev = 1.0;
  double cur = 1.0 + g - tau;
  for (int n = 2; n <= order.m; ++n) {
    const double next = ((2.0 * n - 1.0 + g - tau) * cur - (n - 1.0 + g) * prev) / n;
    prev = cur;
    cur = next;
  }
  return cur;
}

double laguerre_function(LaguerreOrder order, double tau) {
  if (tau < 600.0) return laguerre_polynomial(order, tau) * std::exp(-0.5 * tau);
  std::vector<double> seq;
  laguerre_function_sequence(order.m, order.gamma, tau, seq);
  return seq[order.m];
}

void laguerre_function_sequence(int m_max, int gamma, double tau, std::vector<double>& out) {
  require(m_max >= 0 && gamma >= 0, ErrorCode::InvalidArgument, "Laguerre degree and type must be nonnegative");
  out.resize(static_cast<std::size_t>(m_max) + 1);
  const double g = gamma;
  // Work with scaled values v_n = L_n * e^{-tau/2} * 2^{-shift}.
  double log_scale = -0.5 * tau;
  constexpr double kBig = 1e250;
  if (log_scale > -600.0) {
    const double s = std::exp(log_scale);
    double prev = s;
    out[0] = prev;
    if (m_max == 0) return;
    double cur = (1.0 + g - tau) * s;
    out[1] = cur;
    for (int n = 2; n <= m_max; ++n) {
      const double next = ((2.0 * n - 1.0 + g - tau) * cur - (n - 1.0 + g) * prev) / n;
      prev = cur;
      cur = next;
      out[n] = cur;
    }
    return;
  }
  // Large tau: run unscaled with renormalization, tracking the log scale.
  std::vector<double> logs(out.size(), 0.0);
  double prev = 1.0;
  double cur = 1.0 + g - tau;
  double running = 0.0;
  out[0] = prev;
  logs[0] = 0.0;
  if (m_max >= 1) {
    out[1] = cur;
    logs[1] = 0.0;
  }
  for (int n = 2; n <= m_max; ++n) {
    double next = ((2.0 * n - 1.0 + g - tau) * cur - (n - 1.0 + g) * prev) / n;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kBig) {
      cur /= kBig;
      prev /= kBig;
      running += std::log(kBig);
    }
    out[n] = cur;
    logs[n] = running;
  }
  for (int n = 0; n <= m_max; ++n) {
    const double mag = std::abs(out[n]);
    if (mag == 0.0) continue;
    const double total = std::log(mag) + logs[n] + log_scale;
    out[n] = total < -745.0 ? 0.0 : std::copysign(std::exp(total), out[n]);
  }
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double value = 1.0;
  for (int i = 1; i <= k; ++i) value = value * (n - k + i) / i;
  return value < 9e15 ? std::round(value) : value;
}

double tau_log_derivative(LaguerreOrder order, int k, double tau) {
  check_order(order);
  require(k >= 0, ErrorCode::InvalidArgument, "derivative order must be nonnegative");
  require(tau >= 0.0, ErrorCode::InvalidArgument, "tau must be nonnegative");

  // Terms c * tau^a * L_n^(b)(tau) * e^{-tau/2}, keyed by (a, n, b).
  using Key = std::tuple<int, int, int>;
  std::map<Key, double> terms{{{0, order.m, order.gamma}, 1.0}};
  for (int step = 0; step < k; ++step) {
    std::map<Key, double> next;
    for (const auto& [key, c] : terms) {
      const auto [a, n, b] = key;
      if (a > 0) next[{a, n, b}] += a * c;
      next[{a + 1, n, b}] += -0.5 * c;
      if (n > 0) next[{a + 1, n - 1, b + 1}] += -c;
    }
    terms = std::move(next);
  }

  const double damp = std::exp(-0.5 * tau);
  double sum = 0.0;
  for (const auto& [key, c] : terms) {
    const auto [a, n, b] = key;
    if (c == 0.0) continue;
    sum += c * std::pow(tau, a) * laguerre_polynomial({n, b}, tau);
  }
  return sum * damp;
}

std::vector<GrowthRow> laguerre_growth_check(int gamma, int k, int m_max, GrowthOptions options) {
  require(gamma >= 0, ErrorCode::InvalidArgument, "gamma must be nonnegative");
  require(k >= 0 && k <= gamma + 1, ErrorCode::InvalidArgument, "derivative order must lie in [0, gamma + 1]");
  require(m_max >= 10, ErrorCode::InvalidArgument, "growth check needs m_max >= 10");
  const int n_points = options.n_points > 0 ? options.n_points : 40 * m_max;
  require(n_points >= 20 * m_max, ErrorCode::GridTooCoarse,
          "tau grid step exceeds tau_max / (20 m_max); use at least " + std::to_string(20 * m_max) + " points");

  const int d = gamma + 1;
  std::vector<GrowthRow> rows(static_cast<std::size_t>(m_max) + 1);
  for (int m = 0; m <= m_max; ++m) {
    const double tau_max = options.tau_max > 0.0 ? options.tau_max : 8.0 * (2.0 * m + d);
    double sup = 0.0;
    for (int i = 0; i <= n_points; ++i) {
      const double tau = tau_max * i / n_points;
      const double v = k == 0 ? laguerre_function({m, gamma}, tau) : tau_log_derivative({m, gamma}, k, tau);
      sup = std::max(sup, std::abs(v));
    }
    rows[m] = {m, sup, sup / std::pow(2.0 * m + d, gamma + 0.75)};
  }
  return rows;
}

GrowthSummary summarize(const std::vector<GrowthRow>& rows) {
  GrowthSummary s;
  if (rows.empty()) return s;
  const int m_max = rows.back().m;
  const int half = m_max / 2;
  for (const auto& row : rows) {
    if (row.m >= 1 && row.m <= half) s.early_max = std::max(s.early_max, row.bound_ratio);
    if (row.m >= half) s.late_max = std::max(s.late_max, row.bound_ratio);
  }
  return s;
}

std::string growth_csv(const std::vector<GrowthRow>& rows) {
  std::ostringstream out;
  out << "m,sup_value,bound_ratio\n";
  for (const auto& row : rows) out << row.m << ',' << io::fmt(row.sup_value) << ',' << io::fmt(row.bound_ratio) << '\n';
  return out.str();
}

}  // namespace htwave::laguerre
