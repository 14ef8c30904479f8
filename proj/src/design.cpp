#include "lassovar/design.hpp"

#include <stdexcept>
#include <string>

namespace lassovar {

LagDesign build_design(const Eigen::MatrixXd& centered, int p, int h, int subset) {
    const Eigen::Index T = centered.rows(), q = centered.cols();
    if (p < 1 || h < 1) throw std::invalid_argument("build_design: need p >= 1 and h >= 1");
    if (subset >= q) throw std::invalid_argument("build_design: subset out of range");
    const Eigen::Index n = T - p - h + 1;
    if (n < 1)
        throw std::invalid_argument("build_design: T=" + std::to_string(T) +
                                    " too short for p=" + std::to_string(p) +
                                    ", h=" + std::to_string(h));

    LagDesign d;
    d.n = n;
    d.p = p;
    d.h = h;
    d.subset = subset;
    d.q_effective = (subset >= 0) ? 1 : q;
    d.X.resize(n, d.q_effective * p);
    d.Y.resize(n, d.q_effective);

    // Row r targets time p+h-1+r; its lag-l regressor sits at time p-l+r.
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index jj = 0; jj < d.q_effective; ++jj) {
            const Eigen::Index j = (subset >= 0) ? subset : jj;
            for (Eigen::Index l = 1; l <= p; ++l)
                d.X(r, jj * p + (l - 1)) = centered(p - l + r, j);
            d.Y(r, jj) = centered(p + h - 1 + r, j);
        }
    }
    return d;
}

Eigen::VectorXd forecast_row(const Eigen::MatrixXd& centered, int p, int subset) {
    const Eigen::Index T = centered.rows(), q = centered.cols();
    if (p < 1 || T < p) throw std::invalid_argument("forecast_row: need T >= p >= 1");
    if (subset >= q) throw std::invalid_argument("forecast_row: subset out of range");
    const Eigen::Index q_eff = (subset >= 0) ? 1 : q;

    Eigen::VectorXd x(q_eff * p);
    for (Eigen::Index jj = 0; jj < q_eff; ++jj) {
        const Eigen::Index j = (subset >= 0) ? subset : jj;
        for (Eigen::Index l = 1; l <= p; ++l) x(jj * p + (l - 1)) = centered(T - l, j);
    }
    return x;
}

}  // namespace lassovar
