#pragma once

// CSV results and SVG level-set pictures.

#include <cmath>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "bloch/hypgeo.hpp"
#include "bloch/region.hpp"

namespace bloch {

inline constexpr double kNoValue = std::numeric_limits<double>::quiet_NaN();

/// One result line. NaN numbers are written as empty cells.
struct CsvRow {
  std::string experiment_id;
  std::string key;       // what `value` is, e.g. "I(w_m)" or "hardy_norm"
  std::string function;  // compact descriptor
  double eps = kNoValue;
  double p = kNoValue;
  double alpha = kNoValue;
  double beta = kNoValue;
  double zeta = kNoValue;  // vertex angle, or a probe/parameter coordinate
  double value = kNoValue;
  double error_estimate = kNoValue;
  std::string flags;
  std::string spec_fingerprint;
};

/// experiment_id,key,function,eps,p,alpha,beta,zeta,value,error_estimate,flags,spec_fingerprint
const std::vector<std::string>& csv_columns();
std::string csv_escape(const std::string& s);
void write_csv(std::ostream& out, const std::vector<CsvRow>& rows);
/// Writes to `path`, creating parent directories.
void write_csv(const std::string& path, const std::vector<CsvRow>& rows);

struct SvgOptions {
  int size = 1024;
  std::string fill = "#1f4e8c";
  std::vector<TentRegion> tents;  // outlined as polylines
};

/// Raster of the membership mask on the pixel centres inside the unit disk,
/// written as one rect per horizontal run.
void write_region_svg(std::ostream& out, const Region& region, const SvgOptions& opt = {});
void write_region_svg(const std::string& path, const Region& region, const SvgOptions& opt = {});

}  // namespace bloch
