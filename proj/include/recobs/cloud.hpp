#ifndef RECOBS_CLOUD_HPP
#define RECOBS_CLOUD_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "recobs/dynamics.hpp"
#include "recobs/observables.hpp"

namespace recobs {

enum class SampleMode { iid, orbit };

std::string to_string(SampleMode m);

struct CloudProvenance {
    std::string system;
    std::string observable;
    std::uint64_t seed = 0;
    SampleMode mode = SampleMode::iid;
};

// Empirical pushforward measure: M sample values of f in R^N (N <= 3) or
// T^1, behind a uniform-grid index for fixed-radius counting queries.
// Immutable after construction; queries are const and thread-safe.
class PointCloud {
public:
    using Provenance = CloudProvenance;

    // min_query_radius ties the grid cell edge to the smallest radius the
    // cloud will be queried at; the cell count per axis is capped so the
    // bucket array stays small at M up to 10^7.
    PointCloud(std::vector<VecN> points, MetricKind metric, double min_query_radius,
               Provenance prov = Provenance{});

    std::size_t size() const { return count_; }
    int dim() const { return dim_; }
    MetricKind metric() const { return metric_; }
    const Provenance& provenance() const { return prov_; }

    VecN point(std::size_t i) const;
    double dist(const VecN& a, const VecN& b) const;

    // Number of points strictly inside B(y, r), via the grid. Cells whose
    // distance envelope lies entirely inside (or outside) the ball are
    // settled wholesale; only boundary cells are checked point by point.
    std::size_t count_within(const VecN& y, double r) const;
    // Same by brute force; the audit partner of count_within.
    std::size_t count_within_scan(const VecN& y, double r) const;

    // Per-radius counts over a strictly decreasing grid in one pass. Whole
    // cells are binned against the radius ladder when their envelope does
    // not straddle a boundary.
    std::vector<std::size_t> profile_counts(const VecN& y,
                                            const std::vector<double>& radii) const;

    // Distances of all points strictly inside B(y, r_max), unsorted.
    std::vector<double> gather_distances(const VecN& y, double r_max) const;

private:
    struct DistEnvelope {
        double lo = 0.0;  // infimum of dist(y, .) over the cell closure
        double hi = 0.0;  // supremum
    };

    std::size_t cell_of(const double* q) const;
    void build_grid();
    // Visits every cell whose envelope reaches under r_max. `cell` receives
    // the bucket range and the envelope.
    template <typename CellFn>
    void visit_cells(const VecN& y, double r_max, CellFn&& cell) const;
    DistEnvelope envelope(const VecN& y, const int* cell_idx) const;

    std::vector<double> coords_;  // count_ * dim_, row-major
    std::size_t count_ = 0;
    int dim_ = 1;
    MetricKind metric_ = MetricKind::euclidean;
    Provenance prov_;

    double lo_[kMaxObsDim] = {0, 0, 0};
    double cell_ = 1.0;
    int gdim_[kMaxObsDim] = {1, 1, 1};
    std::vector<std::uint32_t> bucket_start_;  // prefix sums, one per cell + 1
    std::vector<std::uint32_t> order_;         // point ids grouped by cell
};

// Ball mass: count_within / M.
double ball_mass(const PointCloud& cloud, const VecN& y, double r);

// Counts and fractions over a decreasing radius grid, one gather per call.
struct MassProfile {
    VecN center;
    std::vector<double> radii;        // strictly decreasing
    std::vector<std::size_t> counts;  // same length, non-increasing
    std::size_t cloud_size = 0;

    double fraction(std::size_t i) const {
        return static_cast<double>(counts[i]) / static_cast<double>(cloud_size);
    }
};

MassProfile mass_profile(const PointCloud& cloud, const VecN& y,
                         const std::vector<double>& radii);

// Orbit-mode clouds discard this many leading steps.
inline constexpr std::size_t kOrbitBurnIn = 1000;

// Empirical pushforward of the invariant measure through f. iid mode maps
// independent invariant samples; orbit mode maps one orbit after burn-in.
PointCloud pushforward_cloud(const SystemSpec& spec, const Observable& obs, std::size_t M,
                             std::uint64_t seed, SampleMode mode,
                             double min_query_radius = 0x1p-14);

// CSV round trip: one point per row, header x0[,x1[,x2]].
void export_cloud_csv(const PointCloud& cloud, const std::filesystem::path& path);
PointCloud import_cloud_csv(const std::filesystem::path& path, MetricKind metric,
                            double min_query_radius = 0x1p-14);

}  // namespace recobs

#endif
