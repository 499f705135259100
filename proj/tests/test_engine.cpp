#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "femtosim/engine.hpp"

using namespace femtosim;

namespace {

Scenario fast_scenario(long trials = 3000) {
    Scenario sc;
    sc.engine.trials = trials;
    return sc;
}

} // namespace

TEST_CASE("identical scenarios give identical estimates") {
    const Scenario sc = fast_scenario();
    const OutageEstimate a = estimate_macro_outage(sc);
    const OutageEstimate b = estimate_macro_outage(sc);
    CHECK(a.p_hat == b.p_hat);
    CHECK(a.mean_cross_tier_ratio == b.mean_cross_tier_ratio);
    const OutageEstimate fa = estimate_femto_outage(sc);
    const OutageEstimate fb = estimate_femto_outage(sc);
    CHECK(fa.p_hat == fb.p_hat);
    CHECK(a.std_error ==
          doctest::Approx(std::sqrt(a.p_hat * (1.0 - a.p_hat) / a.trials)));
}

TEST_CASE("an interference-free scenario never drops a user") {
    Scenario sc = fast_scenario(2000);
    sc.layout.n_femto = 0;
    sc.engine.n_macro_interferers = 0;
    sc.engine.macro_in_cell_mean = 0.0;
    sc.engine.macro_out_rel_mean = 0.0;
    sc.engine.macro_out_rel_sd = 0.0;
    const OutageEstimate est = estimate_macro_outage(sc);
    CHECK(est.p_hat == 0.0);
    CHECK(est.std_error == 0.0);
}

TEST_CASE("doubling femto sectors exactly halves the cross-tier term") {
    Scenario omni = fast_scenario(2000);
    Scenario two = omni;
    two.femto_sectors.n_sectors = 2;
    const OutageEstimate a = estimate_macro_outage(omni);
    const OutageEstimate b = estimate_macro_outage(two);
    CHECK(b.mean_cross_tier_ratio ==
          doctest::Approx(a.mean_cross_tier_ratio / 2.0).epsilon(1e-12));
    CHECK(b.p_hat <= a.p_hat);
}

TEST_CASE("sector upgrades can only remove macro outage events") {
    const Scenario omni = fast_scenario();
    Scenario deg120 = omni;
    deg120.femto_sectors.n_sectors = 3;
    Scenario deg90 = omni;
    deg90.femto_sectors.n_sectors = 4;
    const double p1 = estimate_macro_outage(omni).p_hat;
    const double p3 = estimate_macro_outage(deg120).p_hat;
    const double p4 = estimate_macro_outage(deg90).p_hat;
    CHECK(p3 <= p1);
    CHECK(p4 <= p3);
    CHECK(p1 > p4); // the gap is material at these settings
}

TEST_CASE("cognitive power control never increases outage") {
    Scenario off = fast_scenario();
    Scenario on = off;
    on.engine.cpc_enabled = true;
    CHECK(estimate_macro_outage(on).p_hat <=
          estimate_macro_outage(off).p_hat);
    CHECK(estimate_femto_outage(on).p_hat <=
          estimate_femto_outage(off).p_hat);
}

TEST_CASE("macro outage is monotone in the femto count") {
    double prev = -1.0;
    for (int count : {1, 6, 12, 24}) {
        Scenario sc = fast_scenario(2000);
        sc.layout.n_femto = count;
        const double p = estimate_macro_outage(sc).p_hat;
        CHECK(p >= prev);
        prev = p;
    }
}

TEST_CASE("femto outage is monotone in the macro interferer count") {
    Scenario low = fast_scenario(2000);
    low.engine.n_macro_interferers = 25;
    Scenario high = low;
    high.engine.n_macro_interferers = 50;
    const double p25 = estimate_femto_outage(low).p_hat;
    const double p50 = estimate_femto_outage(high).p_hat;
    CHECK(p50 >= p25);
    CHECK(p50 > 0.9); // saturates near one at 50 interferers
}

TEST_CASE("sweep labels its axis points and keeps tier pairs") {
    const Scenario sc = fast_scenario(1500);
    const std::vector<double> modes = {1.0, 3.0, 4.0};
    const SimReport report = sweep(sc, SweepAxis::sector_mode, modes);
    REQUIRE(report.sweep_points.size() == 6);
    CHECK(report.sweep_points[0].label == "omni");
    CHECK(report.sweep_points[0].tier == "macro");
    CHECK(report.sweep_points[1].tier == "femto");
    CHECK(report.sweep_points[2].label == "120deg");
    CHECK(report.sweep_points[4].label == "90deg");
    // Macro rows decrease with sector upgrades.
    CHECK(report.sweep_points[0].estimate.p_hat >=
          report.sweep_points[2].estimate.p_hat);
    CHECK(report.sweep_points[2].estimate.p_hat >=
          report.sweep_points[4].estimate.p_hat);

    CHECK(parse_sweep_axis("cpc_on_off") == SweepAxis::cpc_on_off);
    CHECK(sweep_axis_name(SweepAxis::femto_count) == "femto_count");
    CHECK_THROWS_AS(parse_sweep_axis("bogus"), std::invalid_argument);
    CHECK_THROWS_AS(sweep(sc, SweepAxis::femto_count, std::vector<double>{}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        sweep(sc, SweepAxis::sector_mode, std::vector<double>{2.5}),
        std::invalid_argument);
}

TEST_CASE("capacity comparison tracks the per-tier control error penalty") {
    const Scenario sc = fast_scenario();
    const SimReport report = capacity_comparison(sc);
    REQUIRE(report.capacity_points.size() == 20);
    double prev_perfect = 1e18;
    double prev_imperfect = 1e18;
    double macro_imp_at7 = 0.0;
    double femto_imp_at7 = 0.0;
    for (const CapacityPoint& pt : report.capacity_points) {
        CHECK(pt.perfect_channels >= 1.0);
        CHECK(pt.imperfect_channels >= 1.0);
        if (pt.tier == "macro") {
            CHECK(pt.perfect_channels < prev_perfect);
            CHECK(pt.imperfect_channels < prev_imperfect);
            prev_perfect = pt.perfect_channels;
            prev_imperfect = pt.imperfect_channels;
        }
        if (pt.ebio_db == 7.0)
            (pt.tier == "macro" ? macro_imp_at7 : femto_imp_at7) =
                pt.imperfect_channels;
    }
    // The tiers differ only in the control error default (1 vs 2 dB), so
    // their usable channel margins sit in an exact 1 dB ratio.
    CHECK(femto_imp_at7 < macro_imp_at7);
    CHECK(femto_imp_at7 - 1.0 ==
          doctest::Approx((macro_imp_at7 - 1.0) * db_to_linear(-1.0))
              .epsilon(1e-12));
}

TEST_CASE("density tradeoff shrinks admission as femtos light up") {
    Scenario sc = fast_scenario(1200);
    const std::vector<double> densities = {0.0, 0.5, 1.0};
    const SimReport report = density_tradeoff(sc, densities);
    REQUIRE(report.density_points.size() == 3);
    CHECK(report.density_points[0].femto_density == 0.0);
    CHECK(report.density_points[0].max_macro_users >=
          report.density_points[1].max_macro_users);
    CHECK(report.density_points[1].max_macro_users >=
          report.density_points[2].max_macro_users);
}

TEST_CASE("a stronger despread signal admits at least as many macro users") {
    Scenario weak = fast_scenario(1200);
    Scenario strong = weak;
    strong.engine.received_power_factor = 2.0;
    const std::vector<double> density = {0.5};
    const int weak_users =
        density_tradeoff(weak, density).density_points[0].max_macro_users;
    const int strong_users =
        density_tradeoff(strong, density).density_points[0].max_macro_users;
    CHECK(strong_users >= weak_users);
}

TEST_CASE("engine validation rejects degenerate settings") {
    Scenario sc;
    sc.engine.trials = 0;
    CHECK_THROWS_AS(estimate_macro_outage(sc), std::invalid_argument);
    sc = Scenario{};
    sc.engine.phi_macro = 1.5;
    CHECK_THROWS_AS(sc.validate(), std::invalid_argument);
    sc = Scenario{};
    sc.layout.n_femto = 5000; // beyond the per-trial entity budget
    CHECK_THROWS_AS(sc.validate(), std::invalid_argument);
    sc = Scenario{};
    CHECK_THROWS_AS(estimate_femto_outage([&] {
                        Scenario s;
                        s.layout.n_femto = 0;
                        return s;
                    }()),
                    std::invalid_argument);
}

TEST_CASE("enumeration oracle: activity-only toy matches the estimator") {
    // Two femto interferers, each transmitting with probability one half,
    // no other interference, shadowing off. With a sky-high SIR target the
    // user drops exactly when at least one femto transmits; with a rock
    // bottom target it never drops. Both outage levels enumerate exactly.
    Scenario toy;
    toy.layout.n_femto = 2;
    toy.channel.shadow_sigma_db = 0.0;
    toy.engine.n_macro_interferers = 0;
    toy.engine.macro_in_cell_mean = 0.0;
    toy.engine.macro_out_rel_mean = 0.0;
    toy.engine.macro_out_rel_sd = 0.0;
    toy.engine.femto_activity = 0.5;
    toy.engine.trials = 20000;

    double p_enum = 0.0;
    for (int pattern = 0; pattern < 4; ++pattern)
        if (pattern != 0)
            p_enum += 0.25;

    toy.engine.gamma_macro_db = 2000.0; // any interference is fatal
    const OutageEstimate hot = estimate_macro_outage(toy);
    const double se = std::sqrt(p_enum * (1.0 - p_enum) / toy.engine.trials);
    CHECK(std::fabs(hot.p_hat - p_enum) <= 3.0 * se);

    toy.engine.gamma_macro_db = -2000.0; // any signal survives
    CHECK(estimate_macro_outage(toy).p_hat == 0.0);
}
