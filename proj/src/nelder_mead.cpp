#include "latticefold/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace latticefold {

namespace {

std::vector<double> centroid_excluding(const std::vector<std::vector<double>>& pts, size_t skip) {
    size_t dim = pts[0].size();
    std::vector<double> c(dim, 0.0);
    for (size_t i = 0; i < pts.size(); ++i) {
        if (i == skip) continue;
        for (size_t d = 0; d < dim; ++d) c[d] += pts[i][d];
    }
    for (auto& v : c) v /= static_cast<double>(pts.size() - 1);
    return c;
}

std::vector<double> blend(const std::vector<double>& a, const std::vector<double>& b, double t) {
    std::vector<double> out(a.size());
    for (size_t d = 0; d < a.size(); ++d) out[d] = a[d] + t * (b[d] - a[d]);
    return out;
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x0, const NelderMeadConfig& cfg) {
    size_t dim = x0.size();
    if (dim == 0) throw std::invalid_argument("nelder_mead needs at least one dimension");
    if (cfg.f_tolerance <= 0.0) throw std::invalid_argument("f_tolerance must be positive");

    int evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        double v = f(x);
        ++evals;
        if (!std::isfinite(v)) throw std::domain_error("objective returned a non-finite value");
        return v;
    };

    std::vector<std::vector<double>> pts(dim + 1, x0);
    for (size_t i = 0; i < dim; ++i) pts[i + 1][i] += cfg.initial_step;
    std::vector<double> vals(dim + 1);
    for (size_t i = 0; i <= dim; ++i) vals[i] = eval(pts[i]);

    auto order = [&] {
        std::vector<size_t> idx(dim + 1);
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return vals[a] < vals[b]; });
        std::vector<std::vector<double>> p2(dim + 1);
        std::vector<double> v2(dim + 1);
        for (size_t i = 0; i <= dim; ++i) {
            p2[i] = std::move(pts[idx[i]]);
            v2[i] = vals[idx[i]];
        }
        pts = std::move(p2);
        vals = std::move(v2);
    };

    order();
    while (evals < cfg.max_evals && vals[dim] - vals[0] >= cfg.f_tolerance) {
        auto c = centroid_excluding(pts, dim);
        auto reflected = blend(c, pts[dim], -cfg.reflection);
        double fr = eval(reflected);
        if (fr < vals[0]) {
            auto expanded = blend(c, pts[dim], -cfg.reflection * cfg.expansion);
            double fe = eval(expanded);
            if (fe < fr) {
                pts[dim] = std::move(expanded);
                vals[dim] = fe;
            } else {
                pts[dim] = std::move(reflected);
                vals[dim] = fr;
            }
        } else if (fr < vals[dim - 1]) {
            pts[dim] = std::move(reflected);
            vals[dim] = fr;
        } else {
            bool outside = fr < vals[dim];
            auto contracted = outside ? blend(c, reflected, cfg.contraction)
                                      : blend(c, pts[dim], cfg.contraction);
            double fc = eval(contracted);
            if (fc < (outside ? fr : vals[dim])) {
                pts[dim] = std::move(contracted);
                vals[dim] = fc;
            } else {
                for (size_t i = 1; i <= dim; ++i) {
                    pts[i] = blend(pts[0], pts[i], cfg.shrink);
                    vals[i] = eval(pts[i]);
                }
            }
        }
        order();
    }

    NelderMeadResult r;
    r.x = pts[0];
    r.f = vals[0];
    r.evals = evals;
    return r;
}

}  // namespace latticefold
