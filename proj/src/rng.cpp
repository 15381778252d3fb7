#include "frsim/rng.hpp"

#include <cmath>

namespace frsim {

double Rng::normal(double mean, double stddev) {
    if (has_spare_) {
        has_spare_ = false;
        return mean + stddev * spare_;
    }
    // Box-Muller; u clamped away from 0 so log stays finite.
    double u = uniform01();
    if (u <= 0.0) u = 0x1.0p-53;
    const double v = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double two_pi_v = 2.0 * 3.14159265358979323846 * v;
    spare_ = r * std::sin(two_pi_v);
    has_spare_ = true;
    return mean + stddev * r * std::cos(two_pi_v);
}

}  // namespace frsim
