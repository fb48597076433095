#ifndef HUBFLOW_RENEWABLES_HPP
#define HUBFLOW_RENEWABLES_HPP

#include "hubflow/model.hpp"

namespace hubflow {

/// Turbine availability cap per step:
///   limit_t = coefficient * v_t^3   for cut_in <= v_t <= cut_off
///   limit_t = 0                     otherwise
/// Throws std::invalid_argument on negative wind speeds.
Series wind_power_limit_kw(double coefficient_kw_s3_per_m3, double cut_in_m_per_s,
                           double cut_off_m_per_s, const Series& wind_speed_m_per_s);

/// Collector inlet cap per step: limit_t = area * irradiance_t / 1000.
/// This bounds the radiation entering the process; conversion efficiency
/// applies downstream. Throws std::invalid_argument on negative values.
Series solar_inlet_limit_kw(double area_m2, const Series& irradiance_w_per_m2);

}  // namespace hubflow

#endif
