#include "femtosim/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "femtosim/units.hpp"

namespace femtosim {

void ChannelParams::validate() const {
    if (!(pathloss_exponent >= 2.0 && pathloss_exponent <= 6.0))
        throw std::invalid_argument("channel.pathloss_exponent must be in [2, 6]");
    if (!(shadow_sigma_db >= 0.0))
        throw std::invalid_argument("channel.shadow_sigma_db must be >= 0");
    if (!(reference_distance > 0.0))
        throw std::invalid_argument("channel.reference_distance must be > 0");
}

double q_function(double x) {
    return 0.5 * std::erfc(x / std::sqrt(2.0));
}

double path_loss_db(double distance_m, const ChannelParams& params) {
    if (distance_m < params.reference_distance)
        throw std::domain_error("path_loss_db: distance below reference distance");
    return 10.0 * params.pathloss_exponent *
           std::log10(distance_m / params.reference_distance);
}

double shadowing_sample(Rng& rng, double sigma_db) {
    if (sigma_db < 0.0)
        throw std::invalid_argument("shadowing_sample: sigma_db must be >= 0");
    return sigma_db * standard_normal(rng);
}

double composite_interference(std::span<const double> gains_db,
                              std::span<const int> activity) {
    if (gains_db.size() != activity.size())
        throw std::invalid_argument("composite_interference: length mismatch");
    double total = 0.0;
    for (std::size_t k = 0; k < gains_db.size(); ++k) {
        if (activity[k]) total += db_to_linear(gains_db[k]);
    }
    return total;
}

std::optional<double> sir_linear(double signal,
                                 std::span<const double> interferers) {
    if (signal < 0.0)
        throw std::invalid_argument("sir_linear: negative signal power");
    double total = 0.0;
    for (double i : interferers) total += i;
    if (total <= 0.0) return std::nullopt;
    return signal / total;
}

} // namespace femtosim
