#pragma once

#include <optional>
#include <string>
#include <vector>

namespace htwave::io {

// Shortest text that is stable across platforms: printf %.17g.
std::string fmt(double value);

// Grid flag syntax min:max:count:spacing with spacing in {log, linear}.
struct GridSpec {
  double min = 0.0;
  double max = 0.0;
  int count = 0;
  bool log = false;

  std::vector<double> values() const;
  std::string str() const;
  static GridSpec parse(const std::string& text);
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;  // natural-log intercept
};

// Standalone log-log chart of (x, y) with an optional fitted power law.
std::string svg_loglog(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                       const std::vector<double>& x, const std::vector<double>& y,
                       std::optional<LineFit> fit = std::nullopt);

void write_file(const std::string& path, const std::string& content);

}  // namespace htwave::io
