#include "recobs/observables.hpp"

#include <cmath>

namespace recobs {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kSqrt5 = 2.2360679774997896964091736687747;
// Absolute floor under which the largest singular value counts as zero.
constexpr double kRankFloor = 1e-9;

[[noreturn]] void domain_mismatch(ObservableKind k) {
    throw PhaseSpaceError("state outside the domain of observable '" + to_string(k) + "'");
}

// Largest-first singular values of a 2x2 matrix via the eigenvalues of A^T A.
void singular_values_2x2(const double a[2][2], double out[2]) {
    double g00 = a[0][0] * a[0][0] + a[1][0] * a[1][0];
    double g11 = a[0][1] * a[0][1] + a[1][1] * a[1][1];
    double g01 = a[0][0] * a[0][1] + a[1][0] * a[1][1];
    double tr = g00 + g11;
    double disc = std::sqrt(std::fmax(0.0, (g00 - g11) * (g00 - g11) + 4.0 * g01 * g01));
    double l0 = 0.5 * (tr + disc);
    double l1 = 0.5 * (tr - disc);
    out[0] = std::sqrt(std::fmax(0.0, l0));
    out[1] = std::sqrt(std::fmax(0.0, l1));
}

}  // namespace

std::string to_string(ObservableKind k) {
    switch (k) {
        case ObservableKind::identity: return "identity";
        case ObservableKind::projection: return "projection";
        case ObservableKind::circle_embedding: return "circle_embedding";
        case ObservableKind::smooth_constant: return "smooth_constant";
        case ObservableKind::smooth_shear: return "smooth_shear";
        case ObservableKind::smooth_identity: return "smooth_identity";
        case ObservableKind::smooth_parabola: return "smooth_parabola";
    }
    return "?";
}

Observable::Observable(ObservableKind kind) : kind_(kind) {
    switch (kind) {
        case ObservableKind::identity:
            metric_ = MetricKind::euclidean;
            lipschitz_ = 1.0;
            break;
        case ObservableKind::projection:
            metric_ = MetricKind::torus;  // range is T^1
            lipschitz_ = 1.0;
            break;
        case ObservableKind::circle_embedding:
            metric_ = MetricKind::euclidean;
            lipschitz_ = kTwoPi;
            break;
        case ObservableKind::smooth_constant:
            metric_ = MetricKind::euclidean;
            lipschitz_ = 1.0;  // any positive constant bounds a constant map
            break;
        case ObservableKind::smooth_shear:
            metric_ = MetricKind::euclidean;
            lipschitz_ = kSqrt5;  // operator norm of [[1,0],[2,0]]
            break;
        case ObservableKind::smooth_identity:
            metric_ = MetricKind::euclidean;
            lipschitz_ = 1.0;
            break;
        case ObservableKind::smooth_parabola:
            metric_ = MetricKind::euclidean;
            lipschitz_ = kSqrt5;  // sup over [0,1]^2 of ||[[1,0],[2x,0]]||
            break;
    }
}

bool Observable::is_smooth_map() const {
    switch (kind_) {
        case ObservableKind::smooth_constant:
        case ObservableKind::smooth_shear:
        case ObservableKind::smooth_identity:
        case ObservableKind::smooth_parabola:
            return true;
        default:
            return false;
    }
}

VecN smooth_map_value(ObservableKind kind, double x, double y) {
    switch (kind) {
        case ObservableKind::smooth_constant: return VecN{0.5, 0.5};
        case ObservableKind::smooth_shear: return VecN{x, 2.0 * x};
        case ObservableKind::smooth_identity: return VecN{x, y};
        case ObservableKind::smooth_parabola: return VecN{x, x * x};
        default: throw ArgumentError("smooth_map_value: not a smooth-map kind");
    }
}

VecN Observable::evaluate(const SystemState& s) const {
    switch (kind_) {
        case ObservableKind::identity: {
            if (const auto* p = std::get_if<IntervalPoint>(&s)) return VecN{p->x};
            if (const auto* t = std::get_if<TorusPoint>(&s)) return VecN{t->x, t->y};
            domain_mismatch(kind_);
        }
        case ObservableKind::projection: {
            if (const auto* p = std::get_if<SkewPoint>(&s)) return VecN{p->y};
            domain_mismatch(kind_);
        }
        case ObservableKind::circle_embedding: {
            if (const auto* p = std::get_if<IntervalPoint>(&s))
                return VecN{std::cos(kTwoPi * p->x), std::sin(kTwoPi * p->x)};
            domain_mismatch(kind_);
        }
        default: {
            if (const auto* t = std::get_if<TorusPoint>(&s))
                return smooth_map_value(kind_, t->x, t->y);
            domain_mismatch(kind_);
        }
    }
}

int Observable::target_dim(SystemKind system) const {
    switch (kind_) {
        case ObservableKind::identity:
            return (system == SystemKind::cat) ? 2 : 1;
        case ObservableKind::projection:
            return 1;
        default:
            return 2;
    }
}

double obs_distance(const Observable& obs, const VecN& a, const VecN& b) {
    return metric_dist(obs.metric(), a, b);
}

int jacobian_rank(const Observable& obs, double x, double y, double h, double tol) {
    if (!obs.is_smooth_map())
        throw ArgumentError("jacobian_rank: observable is not in the smooth-map table");
    if (!(h > 0.0)) throw ArgumentError("jacobian_rank: h must be > 0");
    if (!(tol > 0.0 && tol < 1.0)) throw ArgumentError("jacobian_rank: tol must be in (0,1)");

    VecN fxp = smooth_map_value(obs.kind(), x + h, y);
    VecN fxm = smooth_map_value(obs.kind(), x - h, y);
    VecN fyp = smooth_map_value(obs.kind(), x, y + h);
    VecN fym = smooth_map_value(obs.kind(), x, y - h);
    double jac[2][2];
    for (int r = 0; r < 2; ++r) {
        jac[r][0] = (fxp[r] - fxm[r]) / (2.0 * h);
        jac[r][1] = (fyp[r] - fym[r]) / (2.0 * h);
    }
    double sv[2];
    singular_values_2x2(jac, sv);
    if (sv[0] < kRankFloor) return 0;
    int rank = 1;
    if (sv[1] > tol * sv[0]) rank = 2;
    return rank;
}

double RankField::grid_x(int i) const {
    return nx < 2 ? x0 : x0 + (x1 - x0) * static_cast<double>(i) / (nx - 1);
}

double RankField::grid_y(int j) const {
    return ny < 2 ? y0 : y0 + (y1 - y0) * static_cast<double>(j) / (ny - 1);
}

RankField rank_field(const Observable& obs, double x0, double x1, double y0, double y1,
                     int nx, int ny, double h, double tol) {
    if (nx < 1 || ny < 1) throw ArgumentError("rank_field: grid must be at least 1x1");
    RankField f;
    f.x0 = x0;
    f.x1 = x1;
    f.y0 = y0;
    f.y1 = y1;
    f.nx = nx;
    f.ny = ny;
    f.h = h;
    f.tol = tol;
    f.rank.reserve(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            f.rank.push_back(jacobian_rank(obs, f.grid_x(i), f.grid_y(j), h, tol));
    return f;
}

}  // namespace recobs
