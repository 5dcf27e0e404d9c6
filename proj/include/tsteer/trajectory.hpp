#pragma once

#include <functional>
#include <vector>

#include "tsteer/field.hpp"

namespace tsteer {

// Prescribed velocity average: value and the exact displacement of the mean
// velocity over an interval (integral of aleph / (4 pi^2)).
struct MeanVelocityProgram {
    std::function<Vec2(double)> value;
    std::function<Vec2(double, double)> mean_displacement;

    static MeanVelocityProgram zero() {
        return {[](double) { return Vec2{0.0, 0.0}; }, [](double, double) { return Vec2{0.0, 0.0}; }};
    }
    static MeanVelocityProgram constant(Vec2 aleph) {
        Vec2 c = aleph * (1.0 / (4.0 * kPi * kPi));
        return {[aleph](double) { return aleph; }, [c](double a, double b) { return c * (b - a); }};
    }
};

// Time-dependent forcing: grid evaluation (physical samples) plus an optional
// pointwise evaluator; breakpoints list jump times so steps can align.
struct Forcing {
    std::function<void(double, std::vector<double>&)> eval_grid;
    std::function<double(Vec2, double)> eval_point;  // may be empty
    std::vector<double> breakpoints;

    bool empty() const { return !eval_grid && !eval_point; }
};

struct TrajectoryRecord {
    std::vector<double> times;
    std::vector<ScalarField> snapshots;

    std::vector<double> diag_times;
    std::vector<double> norm_h0;
    std::vector<double> norm_h1;
    std::vector<double> field_mean;

    const ScalarField& final_state() const { return snapshots.back(); }
};

}  // namespace tsteer
