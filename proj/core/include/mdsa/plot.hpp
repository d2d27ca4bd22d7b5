#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

#include "mdsa/harness.hpp"

namespace mdsa {

// Static SVG of recovery percent against decoding ratio: one polyline with
// error bars and one marker per point for each curve, plus a legend entry per
// curve. Output depends only on the inputs. Throws ParameterError for an
// empty curve set.
void write_svg_plot(std::ostream& out, std::span<const SweepCurve> curves,
                    const std::string& title = {});

// IoError carries the path.
void save_svg_plot(const std::filesystem::path& path, std::span<const SweepCurve> curves,
                   const std::string& title = {});

// "mdsa n=50 M=5"
std::string curve_label(const SweepCurve& c);

}  // namespace mdsa
