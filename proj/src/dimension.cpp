#include "recobs/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace recobs {

DimEstimate local_dimension(const PointCloud& cloud, const VecN& y,
                            const std::vector<double>& radii, std::size_t min_count) {
    if (min_count < 1) throw ArgumentError("local_dimension: min_count must be >= 1");
    MassProfile prof = mass_profile(cloud, y, radii);

    std::vector<double> x;  // log r
    std::vector<double> v;  // log fraction
    double largest_usable = std::nan("");
    for (std::size_t i = 0; i < prof.radii.size(); ++i) {
        if (prof.counts[i] < min_count) continue;
        if (std::isnan(largest_usable)) largest_usable = prof.radii[i];
        x.push_back(std::log(prof.radii[i]));
        v.push_back(std::log(prof.fraction(i)));
    }
    DimEstimate est;
    est.min_count = min_count;
    est.n_radii = x.size();
    if (x.size() < 3)
        throw InsufficientDataError(
            "local_dimension: needs >= 3 radii with count >= " + std::to_string(min_count) +
                ", got " + std::to_string(x.size()),
            largest_usable);

    double mx = 0.0, mv = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        mv += v[i];
    }
    mx /= static_cast<double>(x.size());
    mv /= static_cast<double>(x.size());
    double sxx = 0.0, sxv = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxv += (x[i] - mx) * (v[i] - mv);
    }
    est.slope = sxv / sxx;

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        double s = (v[i + 1] - v[i]) / (x[i + 1] - x[i]);
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    est.lower = lo;
    est.upper = hi;
    double n = static_cast<double>(cloud.dim());
    est.flagged = est.slope < -0.5 || est.slope > n + 0.5;
    return est;
}

MeasureDimensions measure_dimension(const PointCloud& cloud, const std::vector<VecN>& probes,
                                    const std::vector<double>& radii,
                                    std::size_t min_count) {
    if (probes.size() < 30)
        throw ArgumentError("measure_dimension: needs >= 30 probes, got " +
                            std::to_string(probes.size()));
    std::vector<double> lowers, uppers;
    lowers.reserve(probes.size());
    uppers.reserve(probes.size());
    for (const auto& y : probes) {
        DimEstimate est = local_dimension(cloud, y, radii, min_count);
        lowers.push_back(est.lower);
        uppers.push_back(est.upper);
    }
    auto pct95 = [](std::vector<double>& v) {
        std::sort(v.begin(), v.end());
        std::size_t k = (95 * v.size() + 99) / 100;  // nearest-rank
        return v[std::min(k, v.size()) - 1];
    };
    MeasureDimensions out;
    out.hausdorff = pct95(lowers);
    out.packing = pct95(uppers);
    return out;
}

std::vector<std::size_t> maximal_separated_set(const std::vector<VecN>& points,
                                               MetricKind metric, double r) {
    if (!(r > 0.0)) throw ArgumentError("maximal_separated_set: r must be > 0");
    std::vector<std::size_t> selected;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool ok = true;
        for (std::size_t j : selected) {
            if (metric_dist(metric, points[i], points[j]) < r) {
                ok = false;
                break;
            }
        }
        if (ok) selected.push_back(i);
    }
    return selected;
}

WdrResult wdr_ratio(const PointCloud& cloud, const VecN& y, double r, double eta,
                    double eps) {
    if (!(r > 0.0 && r < 1.0)) throw ArgumentError("wdr_ratio: r must be in (0,1)");
    if (!(eta > 1.0)) throw ArgumentError("wdr_ratio: eta must be > 1");
    if (!(eps > 0.0)) throw ArgumentError("wdr_ratio: eps must be > 0");
    double inner = ball_mass(cloud, y, r);
    if (inner == 0.0)
        throw UndefinedRatioError("wdr_ratio: inner ball carries no points");
    double outer = ball_mass(cloud, y, eta * r);
    WdrResult out;
    out.ratio = outer / inner;
    out.satisfied = out.ratio <= std::pow(r, -eps);
    return out;
}

}  // namespace recobs
