#include "femtosim/power.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "femtosim/units.hpp"

namespace femtosim {

void PowerPolicy::validate() const {
    if (!std::isfinite(p_max_femto_dbm))
        throw std::invalid_argument("power.p_max_femto_dbm must be finite");
    if (!std::isfinite(p_ue_max_dbm))
        throw std::invalid_argument("power.p_ue_max_dbm must be finite");
    if (!std::isfinite(p_interference_max_dbm))
        throw std::invalid_argument(
            "power.p_interference_max_dbm must be finite");
    if (!(cpc_threshold_m > 0.0))
        throw std::invalid_argument("power.cpc_threshold_m must be > 0");
    if (cpc_step_down_mw < 0.0)
        throw std::invalid_argument("power.cpc_step_down_mw must be >= 0");
    if (cpc_step_up_mw < 0.0)
        throw std::invalid_argument("power.cpc_step_up_mw must be >= 0");
}

double PowerPolicy::p_max_femto_mw() const {
    return dbm_to_mw(p_max_femto_dbm);
}

void LinkBudgetInputs::validate() const {
    if (!std::isfinite(p_macro_dbm))
        throw std::invalid_argument("link.p_macro_dbm must be finite");
    if (!std::isfinite(antenna_gain_db))
        throw std::invalid_argument("link.antenna_gain_db must be finite");
    if (loss_macro_db < 0.0)
        throw std::invalid_argument("link.loss_macro_db must be >= 0");
    if (loss_femto_db < 0.0)
        throw std::invalid_argument("link.loss_femto_db must be >= 0");
    if (loss_macro_measured_db < 0.0)
        throw std::invalid_argument(
            "link.loss_macro_measured_db must be >= 0");
}

double femto_downlink_power(const LinkBudgetInputs& inputs,
                            const PowerPolicy& policy) {
    inputs.validate();
    policy.validate();
    const double budget = inputs.p_macro_dbm + inputs.antenna_gain_db -
                          inputs.loss_macro_db + inputs.loss_femto_db;
    return std::min(budget, policy.p_max_femto_dbm);
}

double femto_uplink_power(const LinkBudgetInputs& inputs,
                          const PowerPolicy& policy) {
    inputs.validate();
    policy.validate();
    if (inputs.n_femto < 1)
        throw std::invalid_argument("link.n_femto must be >= 1");
    const double budget = policy.p_interference_max_dbm -
                          10.0 * std::log10(
                                     static_cast<double>(inputs.n_femto)) +
                          inputs.loss_macro_measured_db;
    return std::min(budget, policy.p_ue_max_dbm);
}

double cpc_adjust(double current_mw, double distance_to_macro_user_m,
                  const PowerPolicy& policy) {
    policy.validate();
    if (current_mw < 0.0)
        throw std::invalid_argument("cpc_adjust: current_mw must be >= 0");
    if (distance_to_macro_user_m < 0.0)
        throw std::invalid_argument("cpc_adjust: distance must be >= 0");
    const double ceiling = policy.p_max_femto_mw();
    double next;
    if (distance_to_macro_user_m < policy.cpc_threshold_m)
        next = std::max(current_mw - policy.cpc_step_down_mw, 0.0);
    else
        next = std::min(current_mw + policy.cpc_step_up_mw, ceiling);
    return std::clamp(next, 0.0, ceiling);
}

} // namespace femtosim
