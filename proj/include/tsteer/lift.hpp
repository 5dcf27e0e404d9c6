#pragma once

#include <functional>
#include <string>

#include "tsteer/schedule.hpp"
#include "tsteer/trajectory.hpp"

namespace tsteer {

// Geometry of the velocity lift: the support square of the vorticity control
// and the auxiliary 1-D profile used to close the line integrals.
struct LiftSpec {
    Vec2 p;        // bottom-left corner of the support square
    double L = 0;  // side length
    double d = 0;  // clearance to the control region boundary

    double rho(double x1) const;
    double rho_prime(double x1) const;
    double chi_bar(Vec2 x) const;  // phantom cutoff, 1 on the active strips

    // Smallest axis-aligned square containing the covering rectangle; the
    // margin is half the rectangle-to-omega distance.
    static LiftSpec from_covering(const CoveringSpec& cov);
};

// Velocity force with curl xi = eta and support inside the control region,
// built from spectral antiderivatives of one vorticity snapshot.
// SupportViolation if eta is detected outside the support square.
VectorField2 lift_snapshot(const ScalarField& eta, const LiftSpec& spec);

// Integral of the lifted force over the torus, without forming the 2-D fields.
Vec2 lift_mean(const ScalarField& eta, const LiftSpec& spec);

// One graph section of a cut curve: x1 + upsilon(x2) = 0 over x2 in [a, b]
// (graph over the x2 axis) or x2 + upsilon(x1) = 0 over x1 in [a, b].
struct CutSection {
    bool over_x2 = true;  // true: vertical-ish graph over the x2 axis
    double a = 0, b = 0;
    std::function<double(double)> upsilon;
    std::function<double(double)> upsilon_prime;
    int sign = +1;
};

// A cut curve described by finitely many alternating graph sections with
// slope +-1 junction straights. The generator rebuilds the sections for a
// perturbation parameter (rescaling the free straight portion).
struct CutCurveSpec {
    std::function<std::vector<CutSection>(double)> generator;
    double bump_halfwidth = 0.2;  // l/2
    std::string name;

    static CutCurveSpec straight_vertical(double c, double halfwidth);
    static CutCurveSpec straight_horizontal(double c, double halfwidth);
    // four-section staircase winding once vertically; exercises junctions
    static CutCurveSpec staircase_vertical(double c, double halfwidth);
};

// Curl-free field supported in the tube around the cut.
Vec2 cut_field_point(const CutCurveSpec& cut, const std::vector<CutSection>& sections, Vec2 x);
VectorField2 sample_cut_field(const CutCurveSpec& cut, const std::vector<CutSection>& sections, GridSpec g);
Vec2 cut_field_average(const CutCurveSpec& cut, const std::vector<CutSection>& sections);
bool cut_tube_contains(const CutCurveSpec& cut, const std::vector<CutSection>& sections, Vec2 x, double slack);

struct CutFields {
    VectorField2 lambda, sigma;
    Vec2 lambda_avg, sigma_avg;
    std::vector<CutSection> lambda_sections, sigma_sections;
    int attempts = 0;
};

// Builds both fields, perturbing until |det[avg L, avg S]| clears the floor;
// DependentAverages after eight attempts.
CutFields build_cut_fields(const CutCurveSpec& c1, const CutCurveSpec& c2, GridSpec g, double det_floor = 0.1);

// The prescribed velocity-average path: the initial mean until T_sigma, then
// the scaled return profile plus a smooth blend toward the target mean.
class AverageProgram {
  public:
    AverageProgram(Vec2 u0_mean, Vec2 u1_mean, double sigma, const ReturnProfile& profile, double T_ctrl);

    double sigma() const { return sigma_; }
    double T_sigma() const { return T_sigma_; }
    Vec2 aleph(double t) const;
    Vec2 blend(double tau) const;  // U on the reference clock

    MeanVelocityProgram as_mean_program() const;

  private:
    Vec2 u0_, u1_;
    double sigma_, T_ctrl_, T_sigma_;
    const ReturnProfile* profile_;
};

// Coefficients of the two curl-free mean-force channels on a uniform series
// grid: gamma = dA/dt - B where A expands aleph and B expands the mean of the
// remaining force in the (avg Lambda, avg Sigma) basis.
struct MeanForceSeries {
    std::vector<double> times;
    std::vector<double> g4, g5;
    std::vector<Vec2> a_coeff, b_coeff;
    Vec2 lambda_avg, sigma_avg;

    // trapezoid integral of (gamma4 * lambda_avg + gamma5 * sigma_avg +
    // mean(xi_hat + f)) up to node k; telescopes against the A coefficients
    Vec2 mean_balance(int node) const;
};

MeanForceSeries mean_force_controls(const std::vector<double>& times, const std::vector<Vec2>& xi_plus_f_mean,
                                    Vec2 lambda_avg, Vec2 sigma_avg, const AverageProgram& program);

}  // namespace tsteer
