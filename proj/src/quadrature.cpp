#include "spdclat/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace spdclat::quad {

namespace {

// Newton iteration on P_n; nodes accurate to ~1 ulp for order <= 256.
Rule compute_rule(int order) {
    if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    Rule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const int half = (order + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.weights[i] = w;
        rule.nodes[order - 1 - i] = x;
        rule.weights[order - 1 - i] = w;
    }
    if (order % 2 == 1) rule.nodes[half - 1] = 0.0;
    return rule;
}

} // namespace

const Rule& gauss_legendre(int order) {
    static std::map<int, Rule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_rule(order)).first;
    return it->second;
}

} // namespace spdclat::quad
