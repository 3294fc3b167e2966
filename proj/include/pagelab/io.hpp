// Copyright 2026 The pagelab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Serialization of Page-curve results and the plain-text amplitude format.

#include "pagelab/page_lab.hpp"

#include <json.hpp>

#include <bit>
#include <charconv>
#include <cstdio>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

namespace pagelab {

/// Shortest round-trip decimal form; -0 prints as 0.
inline std::string format_double(double x) {
  x += 0.0;
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline std::string log_base_name(LogBase base) { return base == LogBase::two ? "2" : "e"; }

inline const char* ensemble_name(Ensemble e) { return e == Ensemble::haar_pure ? "haar_pure" : "classical_flat_dirichlet"; }

inline constexpr const char* kCsvHeader =
    "n_a,mean_entropy,entropy_se,mean_purity,purity_se,lubkin_purity,semiclassical_entropy";

inline std::string to_csv(const PageCurveResult& r) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& p : r.points) {
    out += std::to_string(p.n_a);
    for (double v : {p.mean_entropy.mean, p.mean_entropy.std_error, p.mean_purity.mean, p.mean_purity.std_error,
                     p.analytic_purity, p.semiclassical_entropy}) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

inline nlohmann::ordered_json order_to_json(EntropyOrder order) {
  if (order.is_von_neumann()) return "von_neumann";
  if (std::isinf(order.q())) return "inf";
  return order.q();
}

/// Full document: configuration (minus the worker count, which never changes
/// the numbers) and every point with variances and counts.
inline nlohmann::ordered_json to_json(const PageCurveResult& r) {
  nlohmann::ordered_json doc;
  doc["ensemble"] = ensemble_name(r.ensemble);
  doc["config"] = {
      {"n_qubits", r.config.n_qubits},
      {"entropy_order", order_to_json(r.config.order)},
      {"log_base", log_base_name(r.config.base)},
      {"samples_per_point", r.config.samples_per_point},
      {"seed", r.config.seed},
      {"subsystem", r.config.random_subsets ? "random_subset" : "prefix"},
  };
  doc["columns"] = {"n_a", "mean_entropy", "entropy_se", "mean_purity", "purity_se", "lubkin_purity", "semiclassical_entropy"};
  auto& points = doc["points"] = nlohmann::ordered_json::array();
  for (const auto& p : r.points) {
    points.push_back({
        {"n_a", p.n_a},
        {"mean_entropy", p.mean_entropy.mean},
        {"entropy_se", p.mean_entropy.std_error},
        {"entropy_variance", p.mean_entropy.variance},
        {"mean_purity", p.mean_purity.mean},
        {"purity_se", p.mean_purity.std_error},
        {"purity_variance", p.mean_purity.variance},
        {"lubkin_purity", p.analytic_purity},
        {"semiclassical_entropy", p.semiclassical_entropy},
        {"count", p.mean_entropy.count},
    });
  }
  return doc;
}

namespace detail {

inline std::string fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v + 0.0);
  return buf;
}

}  // namespace detail

/// Static, self-contained SVG: estimated curve with +-3 SE bars, the
/// semiclassical line, and -log of the analytic purity as a reference.
inline std::string to_svg(const PageCurveResult& r) {
  constexpr double kWidth = 720.0;
  constexpr double kHeight = 480.0;
  constexpr double kLeft = 80.0;
  constexpr double kRight = 30.0;
  constexpr double kTop = 50.0;
  constexpr double kBottom = 70.0;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const int n = r.config.n_qubits;
  const double y_max = std::max(semiclassical_curve(n, n, r.config.base), 1e-9) * 1.05;
  const auto px = [&](double x) { return detail::fixed(kLeft + plot_w * x / n); };
  const auto py = [&](double y) { return detail::fixed(kTop + plot_h * (1.0 - y / y_max)); };
  const std::string unit = r.config.base == LogBase::two ? "bits" : "nats";

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" viewBox=\"0 0 "
    << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << kWidth / 2 << "\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">Page Curve</text>\n";

  // Axes and ticks.
  s << "<g stroke=\"black\" fill=\"none\"><line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(n) << "\" y2=\"" << py(0)
    << "\"/><line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(0) << "\" y2=\"" << detail::fixed(kTop) << "\"/></g>\n";
  for (int k = 0; k <= n; ++k) {
    s << "<line x1=\"" << px(k) << "\" y1=\"" << py(0) << "\" x2=\"" << px(k) << "\" y2=\"" << detail::fixed(kTop + plot_h + 5)
      << "\" stroke=\"black\"/><text x=\"" << px(k) << "\" y=\"" << detail::fixed(kTop + plot_h + 20)
      << "\" text-anchor=\"middle\">" << k << "</text>\n";
  }
  const int y_ticks = 5;
  for (int k = 0; k <= y_ticks; ++k) {
    const double v = y_max / 1.05 * k / y_ticks;
    s << "<line x1=\"" << detail::fixed(kLeft - 5) << "\" y1=\"" << py(v) << "\" x2=\"" << px(0) << "\" y2=\"" << py(v)
      << "\" stroke=\"black\"/><text x=\"" << detail::fixed(kLeft - 8) << "\" y=\"" << detail::fixed(kTop + plot_h * (1.0 - v / y_max) + 4)
      << "\" text-anchor=\"end\">" << detail::fixed(v) << "</text>\n";
  }
  s << "<text x=\"" << detail::fixed(kLeft + plot_w / 2) << "\" y=\"" << detail::fixed(kHeight - 20)
    << "\" text-anchor=\"middle\">Logarithm of Subsystem Dimension (qubits in A)</text>\n";
  s << "<text transform=\"translate(22," << detail::fixed(kTop + plot_h / 2) << ") rotate(-90)\" text-anchor=\"middle\">Subsystem Entropy ("
    << unit << ")</text>\n";

  // Semiclassical reference.
  s << "<line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(n) << "\" y2=\"" << py(r.points.back().semiclassical_entropy)
    << "\" stroke=\"#1f4fd1\" stroke-width=\"2\"/>\n";

  // -log of the analytic purity.
  s << "<polyline fill=\"none\" stroke=\"#2a9d3a\" stroke-width=\"1.5\" stroke-dasharray=\"3,3\" points=\"";
  for (const auto& p : r.points) s << px(p.n_a) << ',' << py(-log_in(r.config.base, p.analytic_purity)) << ' ';
  s << "\"/>\n";

  // Estimated curve with error bars.
  s << "<polyline fill=\"none\" stroke=\"#d1291f\" stroke-width=\"2\" stroke-dasharray=\"8,4\" points=\"";
  for (const auto& p : r.points) s << px(p.n_a) << ',' << py(p.mean_entropy.mean) << ' ';
  s << "\"/>\n<g stroke=\"#d1291f\" fill=\"#d1291f\">\n";
  for (const auto& p : r.points) {
    const double lo = p.mean_entropy.mean - 3.0 * p.mean_entropy.std_error;
    const double hi = p.mean_entropy.mean + 3.0 * p.mean_entropy.std_error;
    s << "<line x1=\"" << px(p.n_a) << "\" y1=\"" << py(lo) << "\" x2=\"" << px(p.n_a) << "\" y2=\"" << py(hi) << "\"/>"
      << "<circle cx=\"" << px(p.n_a) << "\" cy=\"" << py(p.mean_entropy.mean) << "\" r=\"3\"/>\n";
  }
  s << "</g>\n";

  // Legend.
  const double lx = kLeft + 15;
  const double ly = kTop + 10;
  s << "<g font-size=\"11\">"
    << "<line x1=\"" << detail::fixed(lx) << "\" y1=\"" << detail::fixed(ly) << "\" x2=\"" << detail::fixed(lx + 25) << "\" y2=\""
    << detail::fixed(ly) << "\" stroke=\"#1f4fd1\" stroke-width=\"2\"/><text x=\"" << detail::fixed(lx + 32) << "\" y=\""
    << detail::fixed(ly + 4) << "\">Semiclassical Curve</text>"
    << "<line x1=\"" << detail::fixed(lx) << "\" y1=\"" << detail::fixed(ly + 18) << "\" x2=\"" << detail::fixed(lx + 25) << "\" y2=\""
    << detail::fixed(ly + 18) << "\" stroke=\"#d1291f\" stroke-width=\"2\" stroke-dasharray=\"8,4\"/><text x=\"" << detail::fixed(lx + 32)
    << "\" y=\"" << detail::fixed(ly + 22) << "\">Page Curve (Monte Carlo, +/-3 SE)</text>"
    << "<line x1=\"" << detail::fixed(lx) << "\" y1=\"" << detail::fixed(ly + 36) << "\" x2=\"" << detail::fixed(lx + 25) << "\" y2=\""
    << detail::fixed(ly + 36) << "\" stroke=\"#2a9d3a\" stroke-width=\"1.5\" stroke-dasharray=\"3,3\"/><text x=\"" << detail::fixed(lx + 32)
    << "\" y=\"" << detail::fixed(ly + 40) << "\">-log of analytic mean purity</text></g>\n";
  s << "</svg>\n";
  return s.str();
}

struct StateFile {
  PureState state;
  double input_norm = 1.0;  ///< norm of the amplitudes as written, before normalization
};

/// Reads one "re im" amplitude per line in computational-basis order. Blank
/// lines and '#' comments are ignored. The amplitude count must be 2^n, n >= 1.
inline StateFile read_state(std::istream& in) {
  std::vector<Complex> amps;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string re_text;
    std::string im_text;
    std::string extra;
    if (!(fields >> re_text)) continue;
    if (!(fields >> im_text) || (fields >> extra)) {
      throw ValidationError("state file line " + std::to_string(line_no) + ": expected exactly two numbers \"re im\"");
    }
    try {
      std::size_t used_re = 0;
      std::size_t used_im = 0;
      const double re = std::stod(re_text, &used_re);
      const double im = std::stod(im_text, &used_im);
      if (used_re != re_text.size() || used_im != im_text.size()) throw std::invalid_argument("trailing characters");
      amps.emplace_back(re, im);
    } catch (const std::exception&) {
      throw ValidationError("state file line " + std::to_string(line_no) + ": cannot parse amplitude");
    }
  }
  if (amps.size() < 2 || !is_power_of_two(amps.size())) {
    throw ValidationError("state file: amplitude count " + std::to_string(amps.size()) + " is not a power of two >= 2");
  }
  const int n = std::countr_zero(amps.size());
  ComplexVector v = Eigen::Map<ComplexVector>(amps.data(), static_cast<Eigen::Index>(amps.size()));
  const double norm = v.norm();
  return {PureState::normalized(n, std::move(v)), norm};
}

}  // namespace pagelab
