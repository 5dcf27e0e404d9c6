#pragma once

#include "tsteer/covering.hpp"
#include "tsteer/field.hpp"

namespace tsteer {

// The 1-D reference cutoff: supported in (0, l_K), identically 1 exactly on
// [l_K - S, S] with S = 2*pi/sqrt(K), and summing to 1 over the sqrt(K)
// translates by S.
class ReferenceCutoff {
  public:
    explicit ReferenceCutoff(const CoveringSpec& cov);

    double operator()(double s) const;  // s arbitrary, evaluated mod 2*pi
    double rise_width() const { return rise_; }
    double support_end() const { return l_K_; }
    double plateau_lo() const { return rise_; }
    double plateau_hi() const { return S_; }

    // The compactly supported ramp used by the piecewise recipe.
    double mu_hat(double s) const;

  private:
    double l_K_, S_, rise_, fall_lo_, fall_hi_;
};

// All control cutoffs: the translated partition of unity, chi, the mass-one
// bump chi_tilde and its two shifted copies.
class CutoffBundle {
  public:
    CutoffBundle(const CoveringSpec& cov, GridSpec grid);

    const CoveringSpec& covering() const { return cov_; }
    const GridSpec& grid() const { return grid_; }
    const ReferenceCutoff& reference() const { return mu1d_; }

    double mu(Vec2 x) const { return mu1d_(x.x) * mu1d_(x.y); }
    double chi(Vec2 x) const { return mu({x.x - cov_.p_K.x, x.y - cov_.p_K.y}); }
    double mu_member(int l, Vec2 x) const {
        Vec2 c = cov_.corner(l);
        return mu({x.x - c.x, x.y - c.y});
    }

    // Pointwise evaluators share one normalization (the true bump mass), so
    // the shifted copies are exact translates of chi_tilde.
    double chi_tilde(Vec2 x) const { return raw_bump(x) / z_true_; }
    double chi_tilde_right(Vec2 x) const { return raw_bump({x.x - cov_.shift(), x.y}) / z_true_; }
    double chi_tilde_diag(Vec2 x) const {
        return raw_bump({x.x - cov_.shift(), x.y - cov_.shift()}) / z_true_;
    }
    // chi_tilde_l: the diagonal shift when l is a multiple of sqrt(K), else the right shift.
    double chi_tilde_member(int l, Vec2 x) const {
        return l % cov_.sqrtK == 0 ? chi_tilde_diag(x) : chi_tilde_right(x);
    }

    // Grid fields are rescaled per copy so each has grid integral exactly 1;
    // the average-free bookkeeping of the control relies on that.
    const ScalarField& chi_grid() const { return chi_grid_; }
    const ScalarField& chi_tilde_grid() const { return chi_tilde_grid_; }
    const ScalarField& chi_tilde_right_grid() const { return chi_tilde_right_grid_; }
    const ScalarField& chi_tilde_diag_grid() const { return chi_tilde_diag_grid_; }
    const ScalarField& chi_tilde_member_grid(int l) const {
        return l % cov_.sqrtK == 0 ? chi_tilde_diag_grid_ : chi_tilde_right_grid_;
    }

    // Spectral decay of the 1-D reference cutoff on a fine validation grid:
    // |coef(k_check)| / peak with k_check = n_val/3.
    double smoothness_defect(int n_val = 2048) const;

  private:
    double raw_bump(Vec2 x) const;

    CoveringSpec cov_;
    GridSpec grid_;
    ReferenceCutoff mu1d_;
    double bump_width_;
    double z_true_ = 1.0;
    ScalarField chi_grid_, chi_tilde_grid_, chi_tilde_right_grid_, chi_tilde_diag_grid_;
};

CutoffBundle build_partition(const CoveringSpec& cov, GridSpec grid);

}  // namespace tsteer
