#ifndef RECOBS_DIMENSION_HPP
#define RECOBS_DIMENSION_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "recobs/cloud.hpp"

namespace recobs {

// Scaling estimate of log ball-mass against log r at one probe point.
struct DimEstimate {
    double slope = 0.0;    // OLS point estimate
    double lower = 0.0;    // min adjacent-pair slope
    double upper = 0.0;    // max adjacent-pair slope
    std::size_t n_radii = 0;  // usable radii that entered the regression
    std::size_t min_count = 0;  // statistical floor applied
    bool flagged = false;  // slope fell outside the plausible band [-0.5, N+0.5]
};

// Default statistical floor: below ~50 points per ball, log-mass noise
// dominates the slope regression.
inline constexpr std::size_t kDefaultMinCount = 50;

// Regression over the radii whose ball count reaches min_count; smaller
// radii are statistically void and dropped. Throws InsufficientDataError
// (carrying the largest usable radius) when fewer than 3 radii survive.
DimEstimate local_dimension(const PointCloud& cloud, const VecN& y,
                            const std::vector<double>& radii,
                            std::size_t min_count = kDefaultMinCount);

// Finite-sample ess-sup surrogates over probe points drawn from the cloud:
// 95th percentile of per-probe lower proxies (Hausdorff side) and of upper
// proxies (packing side). The percentile stands in for the essential
// supremum; the max itself is an extreme-value statistic with unbounded
// variance. Requires >= 30 probes.
struct MeasureDimensions {
    double hausdorff = 0.0;
    double packing = 0.0;
};

MeasureDimensions measure_dimension(const PointCloud& cloud, const std::vector<VecN>& probes,
                                    const std::vector<double>& radii,
                                    std::size_t min_count = kDefaultMinCount);

// Greedy maximal r-separated subset, scanned in input order: selected points
// are pairwise >= r apart (their r/2 balls are disjoint) and every input
// point lies strictly within r of some selected point.
std::vector<std::size_t> maximal_separated_set(const std::vector<VecN>& points,
                                               MetricKind metric, double r);

// Ball-mass growth ratio mass(eta*r)/mass(r) and whether it satisfies the
// weak diametric regularity bound ratio <= r^-eps.
struct WdrResult {
    double ratio = 0.0;
    bool satisfied = false;
};

WdrResult wdr_ratio(const PointCloud& cloud, const VecN& y, double r, double eta,
                    double eps);

}  // namespace recobs

#endif
