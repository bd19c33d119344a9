#include "recobs/cloud.hpp"

#include <algorithm>
#include <cmath>

#include "recobs/csvio.hpp"

namespace recobs {

namespace {

// Cell-count caps per axis keep the bucket array near or below the point
// count for N <= 3.
int cells_cap(int dim) {
    switch (dim) {
        case 1: return 1 << 16;
        case 2: return 1 << 11;
        default: return 1 << 7;
    }
}

}  // namespace

std::string to_string(SampleMode m) { return m == SampleMode::iid ? "iid" : "orbit"; }

PointCloud::PointCloud(std::vector<VecN> points, MetricKind metric, double min_query_radius,
                       Provenance prov)
    : metric_(metric), prov_(std::move(prov)) {
    if (points.empty()) throw ArgumentError("PointCloud: needs at least one point");
    if (!(min_query_radius > 0.0))
        throw ArgumentError("PointCloud: min_query_radius must be > 0");
    dim_ = points.front().n;
    if (dim_ < 1 || dim_ > kMaxObsDim) throw ArgumentError("PointCloud: dimension out of range");
    if (metric_ == MetricKind::torus && dim_ != 1)
        throw ArgumentError("PointCloud: torus metric requires N = 1");

    count_ = points.size();
    coords_.resize(count_ * static_cast<std::size_t>(dim_));
    for (std::size_t i = 0; i < count_; ++i) {
        if (points[i].n != dim_) throw ArgumentError("PointCloud: mixed point dimensions");
        for (int d = 0; d < dim_; ++d) coords_[i * dim_ + d] = points[i][d];
    }

    double hi[kMaxObsDim];
    if (metric_ == MetricKind::torus) {
        lo_[0] = 0.0;
        hi[0] = 1.0;
        for (std::size_t i = 0; i < count_; ++i)
            if (coords_[i] < 0.0 || coords_[i] >= 1.0)
                throw ArgumentError("PointCloud: torus points must lie in [0,1)");
    } else {
        for (int d = 0; d < dim_; ++d) {
            lo_[d] = coords_[static_cast<std::size_t>(d)];
            hi[d] = coords_[static_cast<std::size_t>(d)];
        }
        for (std::size_t i = 0; i < count_; ++i)
            for (int d = 0; d < dim_; ++d) {
                lo_[d] = std::min(lo_[d], coords_[i * dim_ + d]);
                hi[d] = std::max(hi[d], coords_[i * dim_ + d]);
            }
    }

    double extent = 0.0;
    for (int d = 0; d < dim_; ++d) extent = std::max(extent, hi[d] - lo_[d]);
    cell_ = std::max(min_query_radius, extent / cells_cap(dim_));
    if (metric_ == MetricKind::torus) {
        // an integral number of cells so that wrapping is seamless
        int n = std::max(1, static_cast<int>(std::floor(1.0 / cell_)));
        gdim_[0] = std::min(n, cells_cap(1));
        cell_ = 1.0 / gdim_[0];
    } else {
        for (int d = 0; d < dim_; ++d) {
            int n = static_cast<int>(std::floor((hi[d] - lo_[d]) / cell_)) + 1;
            gdim_[d] = std::max(1, std::min(n, cells_cap(dim_)));
        }
    }
    build_grid();
}

std::size_t PointCloud::cell_of(const double* q) const {
    std::size_t idx = 0;
    for (int d = 0; d < dim_; ++d) {
        int c = static_cast<int>(std::floor((q[d] - lo_[d]) / cell_));
        c = std::clamp(c, 0, gdim_[d] - 1);
        idx = idx * static_cast<std::size_t>(gdim_[d]) + static_cast<std::size_t>(c);
    }
    return idx;
}

void PointCloud::build_grid() {
    std::size_t ncells = 1;
    for (int d = 0; d < dim_; ++d) ncells *= static_cast<std::size_t>(gdim_[d]);
    bucket_start_.assign(ncells + 1, 0);
    for (std::size_t i = 0; i < count_; ++i)
        ++bucket_start_[cell_of(&coords_[i * dim_]) + 1];
    for (std::size_t c = 1; c <= ncells; ++c) bucket_start_[c] += bucket_start_[c - 1];
    order_.resize(count_);
    std::vector<std::uint32_t> fill(bucket_start_.begin(), bucket_start_.end() - 1);
    for (std::size_t i = 0; i < count_; ++i) {
        std::size_t c = cell_of(&coords_[i * dim_]);
        order_[fill[c]++] = static_cast<std::uint32_t>(i);
    }
}

VecN PointCloud::point(std::size_t i) const {
    VecN v;
    v.n = dim_;
    for (int d = 0; d < dim_; ++d) v[d] = coords_[i * dim_ + d];
    return v;
}

double PointCloud::dist(const VecN& a, const VecN& b) const {
    return metric_dist(metric_, a, b);
}

PointCloud::DistEnvelope PointCloud::envelope(const VecN& y, const int* cell_idx) const {
    DistEnvelope env;
    if (metric_ == MetricKind::torus) {
        double a = lo_[0] + cell_idx[0] * cell_;
        double b = a + cell_;
        double ya = wrap01(y[0] - a);  // position of y relative to the cell start
        if (ya <= cell_) {
            env.lo = 0.0;  // y lies inside the cell (mod 1)
        } else {
            env.lo = std::min(torus_dist(y[0], wrap01(a)), torus_dist(y[0], wrap01(b)));
        }
        double anti = wrap01(y[0] + 0.5 - a);
        if (anti <= cell_) {
            env.hi = 0.5;  // the antipode lies inside the cell
        } else {
            env.hi = std::max(torus_dist(y[0], wrap01(a)), torus_dist(y[0], wrap01(b)));
        }
        return env;
    }
    double lo2 = 0.0, hi2 = 0.0;
    for (int d = 0; d < dim_; ++d) {
        double a = lo_[d] + cell_idx[d] * cell_;
        double b = a + cell_;
        double below = a - y[d];  // > 0 when y sits left of the cell
        double above = y[d] - b;
        double gap = std::max(0.0, std::max(below, above));
        lo2 += gap * gap;
        double far = std::max(std::fabs(y[d] - a), std::fabs(y[d] - b));
        hi2 += far * far;
    }
    env.lo = std::sqrt(lo2);
    env.hi = std::sqrt(hi2);
    return env;
}

template <typename CellFn>
void PointCloud::visit_cells(const VecN& y, double r_max, CellFn&& cell) const {
    if (y.n != dim_) throw ArgumentError("PointCloud query: dimension mismatch");
    if (!(r_max > 0.0)) throw ArgumentError("PointCloud query: radius must be > 0");

    int c_lo[kMaxObsDim], c_hi[kMaxObsDim];
    for (int d = 0; d < dim_; ++d) {
        c_lo[d] = static_cast<int>(std::floor((y[d] - r_max - lo_[d]) / cell_));
        c_hi[d] = static_cast<int>(std::floor((y[d] + r_max - lo_[d]) / cell_));
        if (metric_ == MetricKind::euclidean) {
            c_lo[d] = std::clamp(c_lo[d], 0, gdim_[d] - 1);
            c_hi[d] = std::clamp(c_hi[d], 0, gdim_[d] - 1);
        } else if (c_hi[d] - c_lo[d] + 1 >= gdim_[d]) {
            c_lo[d] = 0;  // the query band wraps all the way around
            c_hi[d] = gdim_[d] - 1;
        }
    }

    int cursor[kMaxObsDim];
    for (int d = 0; d < dim_; ++d) cursor[d] = c_lo[d];
    for (;;) {
        std::size_t idx = 0;
        int wrapped[kMaxObsDim];
        for (int d = 0; d < dim_; ++d) {
            int c = cursor[d];
            if (metric_ == MetricKind::torus) c = ((c % gdim_[d]) + gdim_[d]) % gdim_[d];
            wrapped[d] = c;
            idx = idx * static_cast<std::size_t>(gdim_[d]) + static_cast<std::size_t>(c);
        }
        if (bucket_start_[idx + 1] > bucket_start_[idx]) {
            DistEnvelope env = envelope(y, wrapped);
            if (env.lo < r_max) cell(bucket_start_[idx], bucket_start_[idx + 1], env);
        }
        int d = dim_ - 1;
        while (d >= 0) {
            if (++cursor[d] <= c_hi[d]) break;
            cursor[d] = c_lo[d];
            --d;
        }
        if (d < 0) break;
    }
}

std::vector<double> PointCloud::gather_distances(const VecN& y, double r_max) const {
    std::vector<double> out;
    visit_cells(y, r_max,
                [&](std::uint32_t from, std::uint32_t to, const DistEnvelope&) {
                    for (std::uint32_t k = from; k < to; ++k) {
                        double d2 = dist(point(order_[k]), y);
                        if (d2 < r_max) out.push_back(d2);
                    }
                });
    return out;
}

std::size_t PointCloud::count_within(const VecN& y, double r) const {
    std::size_t n = 0;
    visit_cells(y, r, [&](std::uint32_t from, std::uint32_t to, const DistEnvelope& env) {
        if (env.hi < r) {
            n += to - from;  // cell closure strictly inside the ball
            return;
        }
        for (std::uint32_t k = from; k < to; ++k)
            if (dist(point(order_[k]), y) < r) ++n;
    });
    return n;
}

std::vector<std::size_t> PointCloud::profile_counts(const VecN& y,
                                                    const std::vector<double>& radii) const {
    // bucket[j] = points whose distance d satisfies radii[j] > d >= radii[j+1];
    // counts are the suffix sums
    const std::size_t m = radii.size();
    std::vector<std::size_t> bucket(m, 0);
    auto ladder_index = [&](double d) {
        // largest j with radii[j] > d, or m when even radii[0] <= d
        std::size_t lo = 0, hi = m;
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (radii[mid] > d) lo = mid + 1;
            else hi = mid;
        }
        return lo;  // first index with radii[idx] <= d
    };
    visit_cells(y, radii.front(),
                [&](std::uint32_t from, std::uint32_t to, const DistEnvelope& env) {
                    std::size_t j_hi = ladder_index(env.hi);  // full coverage below here
                    std::size_t j_lo = ladder_index(env.lo);
                    if (j_hi == j_lo) {
                        // no radius boundary crosses the envelope: every point
                        // lands in the same rung
                        if (j_hi > 0) bucket[j_hi - 1] += to - from;
                        return;
                    }
                    for (std::uint32_t k = from; k < to; ++k) {
                        std::size_t j = ladder_index(dist(point(order_[k]), y));
                        if (j > 0) ++bucket[j - 1];
                    }
                });
    std::vector<std::size_t> counts(m, 0);
    std::size_t acc = 0;
    for (std::size_t i = m; i-- > 0;) {
        acc += bucket[i];
        counts[i] = acc;
    }
    return counts;
}

std::size_t PointCloud::count_within_scan(const VecN& y, double r) const {
    if (y.n != dim_) throw ArgumentError("PointCloud query: dimension mismatch");
    std::size_t n = 0;
    for (std::size_t i = 0; i < count_; ++i)
        if (dist(point(i), y) < r) ++n;
    return n;
}

double ball_mass(const PointCloud& cloud, const VecN& y, double r) {
    if (!(r > 0.0)) throw ArgumentError("ball_mass: r must be > 0");
    return static_cast<double>(cloud.count_within(y, r)) / static_cast<double>(cloud.size());
}

MassProfile mass_profile(const PointCloud& cloud, const VecN& y,
                         const std::vector<double>& radii) {
    if (radii.empty()) throw ArgumentError("mass_profile: radius grid is empty");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0)) throw ArgumentError("mass_profile: radii must be positive");
        if (i > 0 && !(radii[i] < radii[i - 1]))
            throw ArgumentError("mass_profile: radii must be strictly decreasing");
    }
    MassProfile prof;
    prof.center = y;
    prof.radii = radii;
    prof.counts = cloud.profile_counts(y, radii);
    prof.cloud_size = cloud.size();
    return prof;
}

PointCloud pushforward_cloud(const SystemSpec& spec, const Observable& obs, std::size_t M,
                             std::uint64_t seed, SampleMode mode, double min_query_radius) {
    if (M < 1) throw ArgumentError("pushforward_cloud: M must be >= 1");
    std::vector<VecN> pts;
    pts.reserve(M);
    if (mode == SampleMode::iid) {
        for (const auto& s : sample_invariant(spec, seed, M)) pts.push_back(obs.evaluate(s));
    } else {
        SystemState s = sample_invariant(spec, seed, 1).front();
        for (std::size_t k = 0; k < kOrbitBurnIn; ++k) s = step(spec, s);
        for (std::size_t k = 0; k < M; ++k) {
            pts.push_back(obs.evaluate(s));
            s = step(spec, s);
        }
    }
    PointCloud::Provenance prov;
    prov.system = to_string(spec.kind);
    prov.observable = to_string(obs.kind());
    prov.seed = seed;
    prov.mode = mode;
    return PointCloud(std::move(pts), obs.metric(), min_query_radius, std::move(prov));
}

void export_cloud_csv(const PointCloud& cloud, const std::filesystem::path& path) {
    std::vector<std::string> header;
    for (int d = 0; d < cloud.dim(); ++d) header.push_back("x" + std::to_string(d));
    csv::Writer w(std::move(header));
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        VecN p = cloud.point(i);
        std::vector<std::string> cells;
        for (int d = 0; d < cloud.dim(); ++d) cells.push_back(csv::fmt(p[d]));
        w.row(std::move(cells));
    }
    w.write(path);
}

PointCloud import_cloud_csv(const std::filesystem::path& path, MetricKind metric,
                            double min_query_radius) {
    csv::Table t = csv::read(path);
    int dim = static_cast<int>(t.header.size());
    if (dim < 1 || dim > kMaxObsDim)
        throw ArgumentError("import_cloud_csv: unsupported dimension " + std::to_string(dim));
    std::vector<VecN> pts;
    pts.reserve(t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        VecN p;
        p.n = dim;
        for (int d = 0; d < dim; ++d) p[d] = t.num(i, static_cast<std::size_t>(d));
        pts.push_back(p);
    }
    PointCloud::Provenance prov;
    prov.system = "import:" + path.filename().string();
    return PointCloud(std::move(pts), metric, min_query_radius, std::move(prov));
}

}  // namespace recobs
