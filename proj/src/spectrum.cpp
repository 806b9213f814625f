#include "giantscatter/spectrum.hpp"

namespace gs {

std::string flags_to_string(std::uint32_t flags) {
    std::string s;
    auto add = [&](const char* name) {
        if (!s.empty()) s += '|';
        s += name;
    };
    if (flags & FlagOutOfBand) add("OutOfBand");
    if (flags & FlagRegimeViolation) add("RegimeViolation");
    return s;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    if (n == 1) {
        v[0] = lo;
        return v;
    }
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) v[i] = lo + step * static_cast<double>(i);
    v[n - 1] = hi;
    return v;
}

}  // namespace gs
