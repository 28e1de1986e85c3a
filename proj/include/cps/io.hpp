#pragma once

#include <iosfwd>
#include <string>

#include "cps/euclid.hpp"
#include "cps/pointset.hpp"
#include "cps/residue.hpp"
#include "cps/spectrum.hpp"

namespace cps {

// Shortest round-trip decimal form; used for every number written to CSV
// or JSON so identical inputs yield byte-identical files.
std::string format_double(double v);

// Scheme definition file: { "d": int, "n": int, "basis": row-major list }.
EuclideanScheme read_scheme_json(const std::string& path);
std::string scheme_to_json(const EuclideanScheme& scheme);

// Window file: { "lower": real, "upper": real,
//                "closure": "half_open_right" | "closed" }.
IntervalWindow read_window_json(const std::string& path);
std::string window_to_json(const IntervalWindow& window);

// Residue scheme config: { "kind": "squarefree" | "period_doubling",
//                          "prime_bound": int | null, "depth": int | null }.
ResidueScheme read_residue_config_json(const std::string& path);

std::string points_to_csv(const PointSet& ps);                       // header x,weight
std::string autocorrelation_to_csv(const AutocorrelationEstimate& ac);  // header z,eta
std::string points_to_json(const PointSet& ps);
std::string autocorrelation_to_json(const AutocorrelationEstimate& ac);

// header label,frequency,intensity; with_log adds log10_intensity for
// log-scale plot data.
std::string spectrum_to_csv(const Spectrum& spectrum, bool with_log = false);
std::string spectrum_to_json(const Spectrum& spectrum);

std::string comparison_to_json(const ComparisonReport& report);
std::string comparison_to_csv(const ComparisonReport& report);

// Whole-file write that removes the partial file if the stream fails.
void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace cps
