#pragma once

#include <cmath>
#include <cstdint>
#include <thread>

namespace xorgames {

inline constexpr double kPi = 3.14159265358979323846;

/// Kahan-Neumaier compensated accumulator. Summation order is still the
/// caller's responsibility; with a fixed order the result is deterministic
/// and correctly rounded for the term counts used here.
class NeumaierSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }

    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Reduces an angle into [0, pi). Every objective in this library is built
/// from cos^2/sin^2 of linear angle combinations, so pi is a full period.
inline double reduce_mod_pi(double x) {
    double r = std::fmod(x, kPi);
    if (r < 0.0) r += kPi;
    if (r >= kPi) r -= kPi;  // fmod can round the negative branch up to pi
    return r == 0.0 ? 0.0 : r;  // normalize -0
}

namespace detail {

/// Picks a worker count: `requested` if positive, otherwise one per hardware
/// thread, never more than one worker per work item.
inline int resolve_thread_count(int requested, std::uint64_t work_items) {
    unsigned n = requested > 0 ? static_cast<unsigned>(requested)
                               : std::thread::hardware_concurrency();
    if (n < 1) n = 1;
    if (work_items < n) n = static_cast<unsigned>(work_items > 0 ? work_items : 1);
    return static_cast<int>(n);
}

}  // namespace detail

}  // namespace xorgames
