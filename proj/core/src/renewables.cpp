#include "hubflow/renewables.hpp"

#include <stdexcept>

namespace hubflow {

Series wind_power_limit_kw(double coefficient_kw_s3_per_m3, double cut_in_m_per_s,
                           double cut_off_m_per_s, const Series& wind_speed_m_per_s) {
    if (coefficient_kw_s3_per_m3 < 0.0)
        throw std::invalid_argument("wind_power_limit_kw: negative coefficient");
    if (cut_in_m_per_s < 0.0 || cut_off_m_per_s < cut_in_m_per_s)
        throw std::invalid_argument("wind_power_limit_kw: bad cut-in/cut-off range");
    Series limit(wind_speed_m_per_s.size(), 0.0);
    for (std::size_t t = 0; t < wind_speed_m_per_s.size(); ++t) {
        const double v = wind_speed_m_per_s[t];
        if (v < 0.0)
            throw std::invalid_argument("wind_power_limit_kw: negative wind speed at step " +
                                        std::to_string(t));
        if (v >= cut_in_m_per_s && v <= cut_off_m_per_s)
            limit[t] = coefficient_kw_s3_per_m3 * v * v * v;
    }
    return limit;
}

Series solar_inlet_limit_kw(double area_m2, const Series& irradiance_w_per_m2) {
    if (area_m2 < 0.0) throw std::invalid_argument("solar_inlet_limit_kw: negative area");
    Series limit(irradiance_w_per_m2.size(), 0.0);
    for (std::size_t t = 0; t < irradiance_w_per_m2.size(); ++t) {
        const double g = irradiance_w_per_m2[t];
        if (g < 0.0)
            throw std::invalid_argument("solar_inlet_limit_kw: negative irradiance at step " +
                                        std::to_string(t));
        limit[t] = area_m2 * g / 1000.0;
    }
    return limit;
}

}  // namespace hubflow
