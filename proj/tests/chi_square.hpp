#pragma once

#include <boost/math/special_functions/gamma.hpp>

#include <cstddef>
#include <vector>

namespace testing_support {

/// Pearson goodness-of-fit p-value for observed counts against expected probabilities.
inline double chi_square_p(const std::vector<long>& observed, const std::vector<double>& probs)
{
    long n = 0;
    for (long o : observed) {
        n += o;
    }
    double stat = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double e = probs[i] * static_cast<double>(n);
        const double d = static_cast<double>(observed[i]) - e;
        stat += d * d / e;
    }
    const double df = static_cast<double>(observed.size()) - 1.0;
    if (df <= 0) {
        return 1.0;
    }
    return boost::math::gamma_q(df / 2.0, stat / 2.0);
}

} // namespace testing_support
