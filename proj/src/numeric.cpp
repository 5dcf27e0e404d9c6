#include "tsteer/numeric.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace tsteer {

namespace {

long double block_sum(const double* x, std::size_t n) {
    if (n <= 16) {
        long double s = 0.0L;
        for (std::size_t i = 0; i < n; ++i) s += x[i];
        return s;
    }
    std::size_t half = n / 2;
    return block_sum(x, half) + block_sum(x + half, n - half);
}

}  // namespace

long double pairwise_sum(std::span<const double> x) { return x.empty() ? 0.0L : block_sum(x.data(), x.size()); }

double smoothstep01_integral(double s) {
    static const std::vector<double> table = [] {
        const int N = 4096;
        std::vector<double> t(N + 1, 0.0);
        for (int i = 1; i <= N; ++i) {
            double a = (i - 1) / static_cast<double>(N), b = i / static_cast<double>(N);
            // Simpson per cell; the integrand is smooth
            t[i] = t[i - 1] + (smoothstep01(a) + 4.0 * smoothstep01(0.5 * (a + b)) + smoothstep01(b)) / 6.0 / N;
        }
        return t;
    }();
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 0.5 + (s - 1.0);
    const int N = static_cast<int>(table.size()) - 1;
    double u = s * N;
    int i = std::min(static_cast<int>(u), N - 1);
    double frac = u - i;
    // cubic Hermite per cell; derivatives are the exact integrand values
    double h = 1.0 / N;
    double f0 = smoothstep01(static_cast<double>(i) / N), f1 = smoothstep01(static_cast<double>(i + 1) / N);
    double v0 = table[i], v1 = table[i + 1];
    double c2 = 3.0 * (v1 - v0) - h * (2.0 * f0 + f1);
    double c3 = -2.0 * (v1 - v0) + h * (f0 + f1);
    return v0 + h * f0 * frac + c2 * frac * frac + c3 * frac * frac * frac;
}

const GaussRule& gauss_rule(int npoints) {
    static const std::map<int, GaussRule> rules = [] {
        std::map<int, GaussRule> m;
        m[2] = {{-0.5773502691896257645, 0.5773502691896257645}, {1.0, 1.0}};
        m[3] = {{-0.7745966692414833770, 0.0, 0.7745966692414833770},
                {0.5555555555555555556, 0.8888888888888888889, 0.5555555555555555556}};
        m[4] = {{-0.8611363115940525752, -0.3399810435848562648, 0.3399810435848562648, 0.8611363115940525752},
                {0.3478548451374538574, 0.6521451548625461426, 0.6521451548625461426, 0.3478548451374538574}};
        m[8] = {{-0.9602898564975362317, -0.7966664774136267395, -0.5255324099163289858, -0.1834346424956498049,
                 0.1834346424956498049, 0.5255324099163289858, 0.7966664774136267395, 0.9602898564975362317},
                {0.1012285362903762592, 0.2223810344533744705, 0.3137066458778872873, 0.3626837833783619830,
                 0.3626837833783619830, 0.3137066458778872873, 0.2223810344533744705, 0.1012285362903762592}};
        return m;
    }();
    auto it = rules.find(npoints);
    if (it == rules.end()) throw std::invalid_argument("gauss_rule: unsupported point count");
    return it->second;
}

std::vector<double> merge_breakpoints(double a, double b, std::span<const double> pts, double tol) {
    std::vector<double> out;
    out.push_back(a);
    std::vector<double> inner(pts.begin(), pts.end());
    std::sort(inner.begin(), inner.end());
    for (double p : inner) {
        if (p <= a + tol || p >= b - tol) continue;
        if (p - out.back() > tol) out.push_back(p);
    }
    if (b - out.back() > tol)
        out.push_back(b);
    else
        out.back() = b;
    return out;
}

}  // namespace tsteer
