#include "femtosim/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "femtosim/units.hpp"

namespace femtosim {

double distance(const Point2D& a, const Point2D& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

void LayoutConfig::validate() const {
    if (n_femto < 0)
        throw std::invalid_argument("layout.n_femto must be >= 0");
    if (!(macro_radius_m > 0.0))
        throw std::invalid_argument("layout.macro_radius_m must be > 0");
    if (!(femto_radius_m > 0.0))
        throw std::invalid_argument("layout.femto_radius_m must be > 0");
    if (femto_radius_m >= macro_radius_m)
        throw std::invalid_argument(
            "layout.femto_radius_m must be < layout.macro_radius_m");
    if (min_site_separation_m < 0.0)
        throw std::invalid_argument(
            "layout.min_site_separation_m must be >= 0");
    if (cluster_size < 1)
        throw std::invalid_argument("layout.cluster_size must be >= 1");
    if (max_placement_attempts < 1)
        throw std::invalid_argument(
            "layout.max_placement_attempts must be >= 1");
}

void NetworkLayout::validate() const {
    if (!(macro_radius_m > 0.0))
        throw std::invalid_argument("layout.macro_radius_m must be > 0");
    if (!(femto_radius_m > 0.0) || femto_radius_m >= macro_radius_m)
        throw std::invalid_argument(
            "layout.femto_radius_m must be in (0, macro_radius_m)");
    if (cochannel_centers.size() != 6)
        throw std::invalid_argument(
            "layout.cochannel_centers must hold exactly 6 sites");
    for (const Point2D& p : femto_sites) {
        if (distance(p, macro_center) > macro_radius_m)
            throw std::invalid_argument(
                "layout.femto_sites must lie inside the macro disc");
    }
    const double q = reuse_ratio(cluster_size);
    const double d = q * macro_radius_m;
    for (const Point2D& c : cochannel_centers) {
        if (std::abs(distance(c, macro_center) - d) > 1e-6 * d)
            throw std::invalid_argument(
                "layout.cochannel_centers must sit at reuse distance");
    }
}

double reuse_ratio(int cluster_size) {
    if (cluster_size < 1)
        throw std::invalid_argument("layout.cluster_size must be >= 1");
    return std::sqrt(3.0 * static_cast<double>(cluster_size));
}

Point2D uniform_in_disc(Rng& rng, const Point2D& center, double radius_m) {
    const double u = uniform01(rng);
    const double v = uniform01(rng);
    const double r = radius_m * std::sqrt(u);
    const double theta = kTwoPi * v;
    return {center.x + r * std::cos(theta), center.y + r * std::sin(theta)};
}

NetworkLayout build_layout(const LayoutConfig& config, std::uint64_t seed) {
    config.validate();

    NetworkLayout layout;
    layout.macro_center = {0.0, 0.0};
    layout.macro_radius_m = config.macro_radius_m;
    layout.femto_radius_m = config.femto_radius_m;
    layout.cluster_size = config.cluster_size;
    layout.seed = seed;

    Rng rng = make_stream(seed, 0x4c41594f55540001ULL, 0);
    layout.femto_sites.reserve(static_cast<std::size_t>(config.n_femto));
    int attempts = 0;
    while (layout.femto_sites.size() <
           static_cast<std::size_t>(config.n_femto)) {
        if (attempts++ >= config.max_placement_attempts)
            throw std::runtime_error(
                "layout: could not place " + std::to_string(config.n_femto) +
                " femto sites with min separation " +
                std::to_string(config.min_site_separation_m) + " m in " +
                std::to_string(config.max_placement_attempts) + " attempts");
        const Point2D candidate =
            uniform_in_disc(rng, layout.macro_center, config.macro_radius_m);
        bool ok = true;
        for (const Point2D& placed : layout.femto_sites) {
            if (distance(candidate, placed) < config.min_site_separation_m) {
                ok = false;
                break;
            }
        }
        if (ok)
            layout.femto_sites.push_back(candidate);
    }

    const double d = reuse_ratio(config.cluster_size) * config.macro_radius_m;
    layout.cochannel_centers.reserve(6);
    for (int k = 0; k < 6; ++k) {
        const double theta = static_cast<double>(k) * kPi / 3.0;
        layout.cochannel_centers.push_back(
            {d * std::cos(theta), d * std::sin(theta)});
    }

    layout.validate();
    return layout;
}

std::vector<Point2D> drop_users(int n, const Point2D& center, double radius_m,
                                std::uint64_t seed) {
    if (n < 0)
        throw std::invalid_argument("drop_users: n must be >= 0");
    if (!(radius_m > 0.0))
        throw std::invalid_argument("drop_users: radius_m must be > 0");
    Rng rng = make_stream(seed, 0x5553455244524f50ULL, 0);
    std::vector<Point2D> users;
    users.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        users.push_back(uniform_in_disc(rng, center, radius_m));
    return users;
}

int sector_index(const Point2D& bs, const Point2D& user,
                 const SectorConfig& sectors) {
    const double dx = user.x - bs.x;
    const double dy = user.y - bs.y;
    if (dx == 0.0 && dy == 0.0)
        throw std::invalid_argument(
            "sector_index: user coincides with base station");
    return sector_of_angle(std::atan2(dy, dx), sectors);
}

} // namespace femtosim
