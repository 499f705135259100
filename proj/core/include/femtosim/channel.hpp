#pragma once

#include <optional>
#include <span>
#include <vector>

#include "femtosim/random.hpp"

// Propagation and statistics primitives: log-distance path loss, log-normal
// shadowing in the dB domain, composite interference gain and SIR.

namespace femtosim {

struct ChannelParams {
    double pathloss_exponent = 4.0; // in [2, 6]
    double shadow_sigma_db = 4.0;   // >= 0
    double reference_distance = 1.0; // meters, > 0

    void validate() const;
};

/// Gaussian tail probability Q(x) = P[N(0,1) > x], via the complementary
/// error function (absolute error well below the 1e-9 target).
double q_function(double x);

/// Log-distance path loss in dB: 10 * n * log10(d / d_ref).
/// Rejects d < reference_distance.
double path_loss_db(double distance_m, const ChannelParams& params);

/// Zero-mean normal offset in dB with standard deviation sigma_db.
double shadowing_sample(Rng& rng, double sigma_db);

/// Sum of linearized gains over the sources whose activity indicator is 1.
/// gains_db and activity must have equal length.
double composite_interference(std::span<const double> gains_db,
                              std::span<const int> activity);

/// signal / sum(interferers), both in the linear domain. Returns nullopt
/// when the total interference is zero (interference-free condition).
std::optional<double> sir_linear(double signal,
                                 std::span<const double> interferers);

} // namespace femtosim
