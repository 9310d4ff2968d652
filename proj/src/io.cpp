#include "htwave/io.hpp"

#include "htwave/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace htwave::io {

std::string fmt(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::vector<double> GridSpec::values() const {
  std::vector<double> out(static_cast<std::size_t>(count));
  if (count == 1) {
    out[0] = min;
    return out;
  }
  for (int i = 0; i < count; ++i) {
    const double f = static_cast<double>(i) / (count - 1);
    out[i] = log ? std::exp(std::log(min) + f * (std::log(max) - std::log(min))) : min + f * (max - min);
  }
  out.front() = min;
  out.back() = max;
  return out;
}

std::string GridSpec::str() const {
  return fmt(min) + ":" + fmt(max) + ":" + std::to_string(count) + ":" + (log ? "log" : "linear");
}

GridSpec GridSpec::parse(const std::string& text) {
  const std::string expected = "expected min:max:count:spacing with spacing log or linear, got '" + text + "'";
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  require(parts.size() == 4, ErrorCode::InvalidArgument, expected);
  GridSpec spec;
  try {
    std::size_t used = 0;
    spec.min = std::stod(parts[0], &used);
    require(used == parts[0].size(), ErrorCode::InvalidArgument, expected);
    spec.max = std::stod(parts[1], &used);
    require(used == parts[1].size(), ErrorCode::InvalidArgument, expected);
    spec.count = std::stoi(parts[2], &used);
    require(used == parts[2].size(), ErrorCode::InvalidArgument, expected);
  } catch (const Error&) {
    throw;
  } catch (...) {
    fail(ErrorCode::InvalidArgument, expected);
  }
  require(parts[3] == "log" || parts[3] == "linear", ErrorCode::InvalidArgument, expected);
  spec.log = parts[3] == "log";
  require(spec.count >= 1, ErrorCode::InvalidArgument, "grid count must be at least 1");
  require(spec.count == 1 || spec.max > spec.min, ErrorCode::InvalidArgument, "grid needs max > min");
  require(!spec.log || spec.min > 0.0, ErrorCode::InvalidArgument, "log grid needs min > 0");
  return spec;
}

std::string svg_loglog(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                       const std::vector<double>& x, const std::vector<double>& y, std::optional<LineFit> fit) {
  constexpr double W = 640, H = 440, L = 70, R = 20, T = 40, B = 60;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    if (x[i] > 0 && y[i] > 0) {
      lx.push_back(std::log10(x[i]));
      ly.push_back(std::log10(y[i]));
    }
  }
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (!lx.empty()) {
    x0 = *std::min_element(lx.begin(), lx.end());
    x1 = *std::max_element(lx.begin(), lx.end());
    y0 = *std::min_element(ly.begin(), ly.end());
    y1 = *std::max_element(ly.begin(), ly.end());
  }
  if (x1 - x0 < 1e-12) x1 = x0 + 1;
  if (y1 - y0 < 1e-12) y1 = y0 + 1;
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;
  auto px = [&](double v) { return L + (v - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double v) { return H - B - (v - y0) / (y1 - y0) * (H - T - B); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << title << "</text>\n";
  out << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double vx = x0 + i * (x1 - x0) / 4;
    const double vy = y0 + i * (y1 - y0) / 4;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", vx);
    out << "<text x=\"" << px(vx) << "\" y=\"" << H - B + 18 << "\" text-anchor=\"middle\" font-size=\"11\">" << buf
        << "</text>\n";
    std::snprintf(buf, sizeof buf, "%.2f", vy);
    out << "<text x=\"" << L - 6 << "\" y=\"" << py(vy) + 4 << "\" text-anchor=\"end\" font-size=\"11\">" << buf
        << "</text>\n";
  }
  out << "<text x=\"" << W / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\" font-size=\"13\">log10 " << xlabel
      << "</text>\n";
  out << "<text x=\"18\" y=\"" << H / 2 << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
      << H / 2 << ")\">log10 " << ylabel << "</text>\n";
  for (std::size_t i = 0; i < lx.size(); ++i)
    out << "<circle cx=\"" << px(lx[i]) << "\" cy=\"" << py(ly[i]) << "\" r=\"3\" fill=\"steelblue\"/>\n";
  if (fit) {
    const double ln10 = std::log(10.0);
    auto line = [&](double lgx) { return (fit->intercept + fit->slope * lgx * ln10) / ln10; };
    out << "<line x1=\"" << px(x0) << "\" y1=\"" << py(line(x0)) << "\" x2=\"" << px(x1) << "\" y2=\""
        << py(line(x1)) << "\" stroke=\"firebrick\" stroke-dasharray=\"6 4\"/>\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "slope %.4f", fit->slope);
    out << "<text x=\"" << W - R - 4 << "\" y=\"" << T + 14 << "\" text-anchor=\"end\" font-size=\"12\" "
        << "fill=\"firebrick\">" << buf << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  require(static_cast<bool>(file), ErrorCode::InvalidArgument, "cannot open '" + path + "' for writing");
  file << content;
}

}  // namespace htwave::io
