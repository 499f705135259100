#pragma once

#include <cstdint>
#include <vector>

#include "femtosim/antenna.hpp"
#include "femtosim/random.hpp"

// Two-tier cell geometry: one macrocell disc, seeded femto BS sites inside
// it, and the six first-tier co-channel macro centers at reuse distance
// D = sqrt(3 N) * R.

namespace femtosim {

struct Point2D {
    double x = 0.0; // meters
    double y = 0.0; // meters
};

double distance(const Point2D& a, const Point2D& b);

struct LayoutConfig {
    int n_femto = 24;
    double macro_radius_m = 1000.0;
    double femto_radius_m = 216.5; // 125 * 1.732
    double min_site_separation_m = 100.0;
    int cluster_size = 7;
    int max_placement_attempts = 10000;

    void validate() const;
};

struct NetworkLayout {
    Point2D macro_center{};
    double macro_radius_m = 1000.0;
    double femto_radius_m = 216.5;
    int cluster_size = 7;
    std::vector<Point2D> femto_sites;
    std::vector<Point2D> cochannel_centers; // exactly 6 first-tier neighbors
    std::uint64_t seed = 0;

    void validate() const;
};

/// Co-channel reuse ratio Q = sqrt(3 N) for cluster size N >= 1.
double reuse_ratio(int cluster_size);

/// Deterministic layout for a given (config, seed): femto sites uniform in
/// the macro disc with the configured minimum pairwise separation, and the
/// six hexagonal first-tier co-channel centers. Throws if the separation
/// cannot be met within the attempt budget.
NetworkLayout build_layout(const LayoutConfig& config, std::uint64_t seed);

/// n points uniform over the disc (center, radius); the radial CDF is
/// (r / R)^2.
std::vector<Point2D> drop_users(int n, const Point2D& center, double radius_m,
                                std::uint64_t seed);

/// Uniform point in a disc drawn from an existing stream.
Point2D uniform_in_disc(Rng& rng, const Point2D& center, double radius_m);

/// Sector id of `user` as seen from `bs`. Rejects coincident points.
int sector_index(const Point2D& bs, const Point2D& user,
                 const SectorConfig& sectors);

} // namespace femtosim
