#include "tsteer/covering.hpp"

#include <cmath>

#include "tsteer/errors.hpp"

namespace tsteer {

CoveringSpec build_covering(double L1, double L2, double H1, double H2, int K, double d) {
    if (K <= 1) fail(Errc::NotASquare, "K must exceed 1");
    int s = static_cast<int>(std::lround(std::sqrt(static_cast<double>(K))));
    if (s * s != K) fail(Errc::NotASquare, "K = " + std::to_string(K) + " is not a perfect square");
    if (!(L1 < L2 && H1 < H2) || L1 < 0.0 || H1 < 0.0 || L2 - L1 >= kTwoPi || H2 - H1 >= kTwoPi)
        fail(Errc::ConfigError, "rectangle sides must be positive and below 2*pi");
    if (d < 0.0) fail(Errc::ConfigError, "margin d must be nonnegative");

    CoveringSpec cov;
    cov.K = K;
    cov.sqrtK = s;
    cov.l_K = kTwoPi / (s - 1);
    cov.L1 = L1;
    cov.L2 = L2;
    cov.H1 = H1;
    cov.H2 = H2;
    cov.d = d;

    double min_side = std::min(L2 - L1, H2 - H1);
    if (!(cov.l_K < min_side / 3.0))
        fail(Errc::LengthConditionViolated,
             "l_K = " + std::to_string(cov.l_K) + " must be below a third of the rectangle side " +
                 std::to_string(min_side));

    cov.p_K = {(L1 + L2 - cov.l_K) / 2.0, (H1 + H2 - cov.l_K) / 2.0};
    return cov;
}

}  // namespace tsteer
