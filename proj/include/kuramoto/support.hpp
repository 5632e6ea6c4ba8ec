#pragma once

#include "kuramoto/grid_density.hpp"
#include "kuramoto/quantile_field.hpp"
#include "kuramoto/types.hpp"

namespace kuramoto {

/// Bounding box of the atoms; throws EmptyMeasure when there are none.
SupportBox support_box(const EmpiricalMeasure& m);

/// Bounding box over grid cells whose value exceeds mass_floor * peak
/// (relative threshold keeps floating-point tails from inflating the box);
/// spans cell edges in both variables for grid laws, node positions in Omega
/// for atomic laws.
SupportBox support_box(const GridDensity& f, double mass_floor = 1e-12);

/// Theta extremes are the extrapolated endpoint quantiles
/// max_k phi(g(Omega_k), Omega_k) and min_k phi(0, Omega_k).
SupportBox support_box(const QuantileField& q);

} // namespace kuramoto
