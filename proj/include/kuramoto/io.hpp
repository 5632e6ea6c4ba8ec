#pragma once

#include <string>
#include <vector>

#include "kuramoto/grid_density.hpp"
#include "kuramoto/quantile_field.hpp"
#include "kuramoto/types.hpp"

namespace kuramoto {

/// Shortest round-trip-exact decimal form of a double ("%.17g").
std::string format_double(double x);

/// Named columns of equal length written as CSV with a header line.
void write_series_csv(const std::string& path, const std::vector<std::string>& names,
                      const std::vector<std::vector<double>>& columns);

// Grid/ensemble/field serialization: CSV with one row per node or atom plus
// a JSON sidecar `<path minus extension>.meta.json` carrying grid metadata.

void write_grid_density_csv(const GridDensity& f, const std::string& path);
GridDensity read_grid_density_csv(const std::string& path);

void write_ensemble_csv(const PhaseEnsemble& e, const std::string& path, bool wrap_theta = true);
PhaseEnsemble read_ensemble_csv(const std::string& path);

void write_quantile_field_csv(const QuantileField& q, const std::string& path);
QuantileField read_quantile_field_csv(const std::string& path);

std::string sidecar_path(const std::string& csv_path);

} // namespace kuramoto
