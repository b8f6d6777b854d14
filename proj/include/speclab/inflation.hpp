#pragma once

#include "speclab/limit.hpp"

#include <vector>

namespace speclab {

// Supercritical scaling frame: concentrated data phi^h(x) = h^(s - n/2) a0(x/h)
// tie the small-dispersion parameter to h through eps = h^(sigma (s_c - s)).
struct ScalingParams {
    int n = 1;
    int sigma = 3;
    double s = 0.1;

    double critical_index() const { return 0.5 * n - 1.0 / sigma; }
    double eps_of(double h) const;
    // Growth exponent of the ledger norm ||psi^h(t^h)||_{H^k-dot} in h.
    double predicted_exponent(double k) const;
    // Orders above this lose boundedness: s / (1 + sigma (s_c - s)).
    double blowup_threshold() const;
};

// Requires s_c > 0 and 0 < s < s_c.
void validate(const ScalingParams& p);

// phi^h on the concentrated grid (same point count, box h L); the optional
// damping multiplies by 1/|log h| (needs h < 1).
Field make_datum(const ScalingParams& p, const Field& a0, double h, bool log_damping);

// ||phi^h||_{H^s}, evaluated from the a0 spectrum without a fine grid:
// h^(2s) sum (1 + (eta/h)^2)^s |a0hat(eta)|^2 with Plancherel weights.
double datum_sobolev_norm(const ScalingParams& p, const Field& a0, double h,
                          bool log_damping);

// Earliest sampled time where min over k of || |v|^k a ||^2 reaches the given
// fraction of its maximum over the trajectory.
double find_tau(const LimitTrajectory& traj, const std::vector<double>& k_list,
                double fraction = 0.25);

struct InflationConfig {
    ScalingParams params;
    std::vector<double> h_list;
    std::vector<double> k_list;  // include 0 as the conserved control
    double tau = 0.2;            // observation time in the slow frame
    bool log_damping = false;
};

struct InflationRow {
    double h, eps, t_h;                // t_h = h^2 eps tau
    double datum_norm;                 // ||phi^h||_{H^s}
    std::vector<double> ledger_norms;  // ||psi^h(t_h)||_{H^k-dot} per k
};

struct InflationFit {
    double k, slope, predicted;
};

struct InflationReport {
    std::vector<InflationRow> rows;
    std::vector<InflationFit> fits;  // log-log slope of the ledger norm in h
    double datum_slope = 0.0;        // log-log slope of ||phi^h||_{H^s} in h
};

// Runs the slow-frame solver per h on a0's grid and converts the observed
// norms through the exact scaling ledger ||psi^h||_{H^k-dot} =
// h^(s-k) eps^(-k) || |eps D|^k u^eps(tau) ||.
InflationReport run_inflation(const InflationConfig& cfg, const Field& a0);

// Solves both frames (concentrated psi on the box-h L grid, slow u on a0's
// grid) and returns the max pointwise relative mismatch after the frame map.
// The two discretizations are step-for-step conjugate, so this is fp noise.
double frame_map_check(const ScalingParams& p, const Field& a0, double h, double tau);

}  // namespace speclab
