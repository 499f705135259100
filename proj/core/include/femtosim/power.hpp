#pragma once

// Femto downlink/uplink power budgets (dB domain) and the distance-triggered
// cognitive power control step rule (mW domain).

namespace femtosim {

struct PowerPolicy {
    double p_max_femto_dbm = 20.97;         // ~125 mW transmit ceiling
    double p_ue_max_dbm = 23.0;             // handset ceiling
    double p_interference_max_dbm = -100.0; // tolerable aggregate at macro BS
    double cpc_threshold_m = 200.0;
    double cpc_step_down_mw = 25.0;
    double cpc_step_up_mw = 20.0;

    void validate() const;
    double p_max_femto_mw() const;
};

struct LinkBudgetInputs {
    double p_macro_dbm = 43.0;
    double antenna_gain_db = 0.0;        // G(theta) toward the macro BS
    double loss_macro_db = 0.0;          // macro BS to femto BS path loss
    double loss_femto_db = 0.0;          // femto BS to its user path loss
    double loss_macro_measured_db = 0.0; // measured femto user to macro BS
    int n_femto = 1;

    void validate() const;
};

/// Downlink transmit budget for a femto BS:
/// min(p_macro + G - L_macro + L_femto, p_max) in dBm. Nonincreasing in
/// L_macro.
double femto_downlink_power(const LinkBudgetInputs& inputs,
                            const PowerPolicy& policy);

/// Uplink budget per femto user so that n_femto of them together stay under
/// the interference ceiling at the macro BS:
/// min(p_interference_max - 10*log10(n_femto) + L_macro_measured, p_ue_max)
/// in dBm. Nonincreasing in n_femto. Rejects n_femto < 1.
double femto_uplink_power(const LinkBudgetInputs& inputs,
                          const PowerPolicy& policy);

/// One cognitive power control step: below the distance threshold step down,
/// otherwise step up. The result is always inside [0, p_max].
double cpc_adjust(double current_mw, double distance_to_macro_user_m,
                  const PowerPolicy& policy);

} // namespace femtosim
