#pragma once

#include <span>
#include <vector>

// Idealized sector antennas. The default pattern is a brick wall: full gain
// inside the boresight sector, perfect rejection outside. A finite
// out-of-sector rejection (dB) can be configured for sensitivity studies.

namespace femtosim {

struct SectorConfig {
    int n_sectors = 1;          // 1 = omni, 3 = 120deg, 4 = 90deg
    double alignment_rad = 0.0; // rotation of the sector grid
    double in_sector_gain_db = 0.0;
    // +inf means ideal rejection; gain outside the boresight sector is
    // in_sector_gain_db - out_of_sector_rejection_db.
    double out_of_sector_rejection_db = 1.0 / 0.0;

    double sector_width_rad() const;
    void validate() const;
};

/// Sector id in [0, n_sectors) for an angle measured from the config
/// alignment. Bins are half-open, lower edge inclusive.
int sector_of_angle(double angle_rad, const SectorConfig& config);

/// Antenna gain in dB toward the given angle. Boresight sector is sector 0.
double gain_db(double angle_rad, const SectorConfig& config);

/// Divisor applied to cross-tier interference power under ideal sectors:
/// equals n_sectors.
double interference_reduction_factor(const SectorConfig& config);

/// Per-sector interference totals. Every sample lands in exactly one sector;
/// the bucket totals sum to the unpartitioned total.
std::vector<double> partition_interference(std::span<const double> samples_linear,
                                           std::span<const double> angles_rad,
                                           const SectorConfig& config);

} // namespace femtosim
