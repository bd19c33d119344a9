#ifndef RECOBS_OBSERVABLES_HPP
#define RECOBS_OBSERVABLES_HPP

#include <string>
#include <vector>

#include "recobs/dynamics.hpp"
#include "recobs/vecn.hpp"

namespace recobs {

// Bundled observables f : X -> R^N.
//
//   identity          interval -> R^1 or torus2 -> R^2, coordinates as-is
//   projection        skew -> T^1, (w,y) -> y, compared in the torus metric
//   circle_embedding  interval -> R^2, x -> (cos 2 pi x, sin 2 pi x)
//   smooth_* table    torus2 coordinates read as a point of [0,1)^2 in R^2:
//     smooth_constant (x,y) -> (1/2, 1/2)      rank 0
//     smooth_shear    (x,y) -> (x, 2x)         rank 1
//     smooth_identity (x,y) -> (x, y)          rank 2
//     smooth_parabola (x,y) -> (x, x^2)        rank 1
enum class ObservableKind {
    identity,
    projection,
    circle_embedding,
    smooth_constant,
    smooth_shear,
    smooth_identity,
    smooth_parabola,
};

std::string to_string(ObservableKind k);

class Observable {
public:
    explicit Observable(ObservableKind kind);

    ObservableKind kind() const { return kind_; }
    MetricKind metric() const { return metric_; }
    // Declared Lipschitz bound, not estimated. Positive by construction
    // (the constant map uses 1, a valid bound).
    double lipschitz() const { return lipschitz_; }
    bool is_smooth_map() const;

    // f(s). Throws PhaseSpaceError when the state is outside the domain.
    VecN evaluate(const SystemState& s) const;

    // Target dimension N for states of the given system.
    int target_dim(SystemKind system) const;

private:
    ObservableKind kind_;
    MetricKind metric_;
    double lipschitz_;
};

// Distance between two observation values in the observable's target metric.
double obs_distance(const Observable& obs, const VecN& a, const VecN& b);

// Smooth maps as plain functions of a point in R^2, for differentiation.
VecN smooth_map_value(ObservableKind kind, double x, double y);

// Numerical rank of d_x f for the smooth-map table: singular values of the
// central-difference Jacobian, counted above tol * sigma_max, with rank 0
// when sigma_max falls below an absolute floor. Defaults: h = 1e-5,
// tol = 1e-6, floor = 1e-9, separating genuine zero singular values from
// O(h^2) truncation noise for the bundled maps.
int jacobian_rank(const Observable& obs, double x, double y, double h = 1e-5,
                  double tol = 1e-6);

// Per-point rank over a rectangle grid, row-major with x fastest.
struct RankField {
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    int nx = 0, ny = 0;
    double h = 1e-5;
    double tol = 1e-6;
    std::vector<int> rank;  // nx * ny entries

    double grid_x(int i) const;
    double grid_y(int j) const;
};

RankField rank_field(const Observable& obs, double x0, double x1, double y0, double y1,
                     int nx, int ny, double h = 1e-5, double tol = 1e-6);

}  // namespace recobs

#endif
