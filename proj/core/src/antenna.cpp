#include "femtosim/antenna.hpp"

#include <cmath>
#include <stdexcept>

#include "femtosim/units.hpp"

namespace femtosim {

double SectorConfig::sector_width_rad() const { return kTwoPi / n_sectors; }

void SectorConfig::validate() const {
    if (n_sectors < 1 || n_sectors > 12)
        throw std::invalid_argument(
            "sector config: n_sectors must be in [1, 12]");
    if (!std::isfinite(alignment_rad))
        throw std::invalid_argument("sector config: alignment must be finite");
    if (std::isnan(out_of_sector_rejection_db) || out_of_sector_rejection_db < 0.0)
        throw std::invalid_argument("sector config: rejection must be >= 0");
}

namespace {

double wrap_angle(double angle) {
    double a = std::fmod(angle, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    // fmod can round back up to 2*pi for tiny negative inputs
    if (a >= kTwoPi) a = 0.0;
    return a;
}

} // namespace

int sector_of_angle(double angle_rad, const SectorConfig& config) {
    if (!std::isfinite(angle_rad))
        throw std::invalid_argument("sector_of_angle: angle must be finite");
    if (config.n_sectors == 1) return 0;
    const double relative = wrap_angle(angle_rad - config.alignment_rad);
    int id = static_cast<int>(relative / config.sector_width_rad());
    if (id >= config.n_sectors) id = config.n_sectors - 1;
    return id;
}

double gain_db(double angle_rad, const SectorConfig& config) {
    if (sector_of_angle(angle_rad, config) == 0) return config.in_sector_gain_db;
    return config.in_sector_gain_db - config.out_of_sector_rejection_db;
}

double interference_reduction_factor(const SectorConfig& config) {
    return static_cast<double>(config.n_sectors);
}

std::vector<double> partition_interference(std::span<const double> samples_linear,
                                           std::span<const double> angles_rad,
                                           const SectorConfig& config) {
    if (samples_linear.size() != angles_rad.size())
        throw std::invalid_argument("partition_interference: length mismatch");
    std::vector<double> buckets(static_cast<std::size_t>(config.n_sectors), 0.0);
    for (std::size_t i = 0; i < samples_linear.size(); ++i)
        buckets[static_cast<std::size_t>(sector_of_angle(angles_rad[i], config))] +=
            samples_linear[i];
    return buckets;
}

} // namespace femtosim
