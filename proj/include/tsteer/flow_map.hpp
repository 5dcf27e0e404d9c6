#pragma once

#include <vector>

#include "tsteer/observable.hpp"

namespace tsteer {

// Flow of the composite drift, classical 4th-order stepping at fixed step
// h_flow on the observable segment [T_b, 1]; exact translation elsewhere.
Vec2 flow_U(Vec2 x, double s, double t, const CompositeDrift& drift, double h_flow);

struct FlowTableOptions {
    bool align_kinks = true;  // place integration/interp nodes on the drift kink grid
    int uniform_pieces = 64;  // piece count when not kink-aligned
    int nodes_per_piece = 2;  // sub-intervals per piece; interp degree equals this
};

// Backward flow of the observable drift baked on the grid:
// stores G(z, tau) = U(z, 1, tau) - z for tau in [T_b, 1], piecewise
// polynomial in tau between stored nodes.
class FlowTable {
  public:
    FlowTable(GridSpec g, const ReturnProfile& profile, const ObservableSpec& obs, FlowTableOptions opt = {});

    const GridSpec& grid() const { return grid_; }
    double t_lo() const { return Tb_; }
    const std::vector<double>& piece_edges() const { return edges_; }
    const FlowTableOptions& options() const { return opt_; }

    // stored nodes, for consumers that precompute their own per-node data
    const std::vector<double>& node_taus() const { return node_taus_; }
    const std::vector<double>& node_gx(int node) const { return gx_[node]; }
    const std::vector<double>& node_gy(int node) const { return gy_[node]; }

    // interpolation stencil over the stored nodes at time tau
    struct TauStencil {
        int first_node = 0;
        int count = 0;
        double w[8] = {};
    };
    TauStencil stencil(double tau) const;

    // tau-interpolated displacement on the whole grid.
    void displacement_grid(double tau, std::vector<double>& g1, std::vector<double>& g2) const;

    // Pointwise displacement: cubic interpolation in z, same tau interpolation.
    Vec2 displacement_point(Vec2 z, double tau) const;

    Vec2 map_point(Vec2 z, double tau) const {
        Vec2 d = displacement_point(z, tau);
        return {wrap_2pi(z.x + d.x), wrap_2pi(z.y + d.y)};
    }

  private:
    GridSpec grid_;
    double Tb_;
    FlowTableOptions opt_;
    std::vector<double> edges_;                // piece boundaries, ascending
    std::vector<double> node_taus_;            // stored node times, ascending
    std::vector<int> piece_first_node_;        // per piece, index of its lowest node
    std::vector<std::vector<double>> gx_, gy_; // per node, grid displacement components
};

// Composite flow map: Xi(x, t) = U(Y(x, t, 0), 1, tau_bar(t)), defined on the
// control windows.
class XiMap {
  public:
    XiMap(const ReturnProfile& profile, const FlowTable& table) : profile_(&profile), table_(&table) {}

    // Throws InactiveTime when t lies outside every window.
    Vec2 operator()(Vec2 x, double t) const;

    const FlowTable& table() const { return *table_; }
    const ReturnProfile& profile() const { return *profile_; }

  private:
    const ReturnProfile* profile_;
    const FlowTable* table_;
};

}  // namespace tsteer
