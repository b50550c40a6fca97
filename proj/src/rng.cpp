#include "schmidt/rng.hpp"

#include <cmath>

namespace schmidt {

double Rng::normal()
{
    if (spare_) {
        const double out = *spare_;
        spare_.reset();
        return out;
    }
    double u = 0.0;
    double v = 0.0;
    double s = 0.0;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    return u * f;
}

}  // namespace schmidt
