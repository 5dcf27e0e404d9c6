#pragma once

#include "tsteer/trajectory.hpp"

namespace tsteer {

struct VorticityOptions {
    double cfl = 0.4;
    double dt_max = 0.05;
    double dt_min = 1e-9;           // CflViolation below this
    double blowup_norm = 1e6;       // BlowupDetected above this
    int snapshot_stride = 0;        // 0: start and end only
    std::vector<double> breakpoints;  // forcing jump times; steps land on them
    bool fixed_dt = false;          // disable adaptivity (order studies)
    double dt_fixed = 0.0;
};

// Pseudo-spectral 2/3-dealiased solver for
//   dw/dt - nu lap w + (Ups(w, aleph(t)) . grad) w = h + extra,
// advanced with integrating-factor RK4; the factor carries both the viscous
// symbol and the prescribed mean-velocity translation, so stiff rigid
// translations cost nothing.
TrajectoryRecord solve_vorticity(const ScalarField& w0, const Forcing* h, const MeanVelocityProgram& aleph,
                                 const Forcing* extra, double nu, double T, const VorticityOptions& opt = {});

}  // namespace tsteer
