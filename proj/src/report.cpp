#include "bloch/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace bloch {

namespace {

std::string number_cell(double v) {
  if (std::isnan(v)) return {};
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_for_write(const std::string& path) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

// Outline of a tent: right edge from the vertex inward, then the left edge back.
std::vector<Complex> tent_outline(const TentRegion& t) {
  constexpr int kSteps = 400;
  std::vector<Complex> right, left;
  for (int i = kSteps; i >= 0; --i) {
    const double r = static_cast<double>(i) / kSteps;
    const double half = t.half_angle_at(r);
    if (half < 0.0) continue;
    const double h = std::min(half, std::numbers::pi);
    right.push_back(std::polar(r, t.vertex.theta() - h));
    left.push_back(std::polar(r, t.vertex.theta() + h));
  }
  std::vector<Complex> out(right.begin(), right.end());
  out.insert(out.end(), left.rbegin(), left.rend());
  return out;
}

}  // namespace

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {
      "experiment_id", "key",   "function",       "eps",   "p",
      "alpha",         "beta",  "zeta",           "value", "error_estimate",
      "flags",         "spec_fingerprint"};
  return cols;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

void write_csv(std::ostream& out, const std::vector<CsvRow>& rows) {
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const CsvRow& r : rows) {
    out << csv_escape(r.experiment_id) << ',' << csv_escape(r.key) << ','
        << csv_escape(r.function) << ',' << number_cell(r.eps) << ',' << number_cell(r.p) << ','
        << number_cell(r.alpha) << ',' << number_cell(r.beta) << ',' << number_cell(r.zeta) << ','
        << number_cell(r.value) << ',' << number_cell(r.error_estimate) << ','
        << csv_escape(r.flags) << ',' << csv_escape(r.spec_fingerprint) << '\n';
  }
}

void write_csv(const std::string& path, const std::vector<CsvRow>& rows) {
  auto out = open_for_write(path);
  write_csv(out, rows);
}

void write_region_svg(std::ostream& out, const Region& region, const SvgOptions& opt) {
  const int n = opt.size;
  if (n < 8) throw std::invalid_argument("svg size must be at least 8");
  const double half = 0.5 * n;
  // pixel (x, y) has centre ((x + 0.5 - half) / half, (half - y - 0.5) / half)
  std::vector<std::vector<std::pair<int, int>>> runs(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic, 8)
  for (int y = 0; y < n; ++y) {
    const double im = (half - y - 0.5) / half;
    int start = -1;
    for (int x = 0; x <= n; ++x) {
      bool in = false;
      if (x < n) {
        const Complex z{(x + 0.5 - half) / half, im};
        in = std::norm(z) < 1.0 && region.contains(z);
      }
      if (in && start < 0) start = x;
      if (!in && start >= 0) {
        runs[static_cast<std::size_t>(y)].emplace_back(start, x - start);
        start = -1;
      }
    }
  }

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << n << "\" height=\"" << n
      << "\" viewBox=\"0 0 " << n << ' ' << n << "\">\n";
  out << "<rect width=\"" << n << "\" height=\"" << n << "\" fill=\"white\"/>\n";
  out << "<g fill=\"" << opt.fill << "\" shape-rendering=\"crispEdges\">\n";
  for (int y = 0; y < n; ++y) {
    for (const auto& [x, w] : runs[static_cast<std::size_t>(y)]) {
      out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << w << "\" height=\"1\"/>\n";
    }
  }
  out << "</g>\n";
  out << "<circle cx=\"" << half << "\" cy=\"" << half << "\" r=\"" << half - 0.5
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  char buf[64];
  for (const TentRegion& t : opt.tents) {
    out << "<polyline fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.5\" points=\"";
    for (Complex z : tent_outline(t)) {
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", half + half * z.real(), half - half * z.imag());
      out << buf;
    }
    out << "\"/>\n";
  }
  out << "</svg>\n";
}

void write_region_svg(const std::string& path, const Region& region, const SvgOptions& opt) {
  auto out = open_for_write(path);
  write_region_svg(out, region, opt);
}

}  // namespace bloch
