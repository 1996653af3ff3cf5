#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "pointspec/config.hpp"

namespace pointspec {

// JSON document shape:
//   { "dim": m, "sqrt_base": d, "points": [["x","y"],...], "form": ["1","2"]? }
// Coordinates are canonical scalar strings, never JSON numbers, so parsing is
// lossless.  "sqrt_base" defaults to 1 and "form" to all-ones.
nlohmann::json config_to_json(const PointConfiguration& p);
PointConfiguration config_from_json(const nlohmann::json& j);
PointConfiguration config_from_json_text(const std::string& text);
PointConfiguration load_config(const std::string& path);

// Spectrum CSV: header "value,approx", one canonical string + double per line.
std::string spectrum_to_csv(const Spectrum& s);
Spectrum spectrum_from_csv(const std::string& text, SpectrumKind kind, long sqrt_base);
Spectrum load_spectrum(const std::string& path, SpectrumKind kind, long sqrt_base);

// Histogram CSV: header "bin_lower,count".
std::string histogram_to_csv(const Histogram& h);

nlohmann::json spectrum_to_json(const Spectrum& s);

}  // namespace pointspec
