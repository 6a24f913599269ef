#ifndef CARAB_INTERVAL_HPP
#define CARAB_INTERVAL_HPP

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace carab {

// Closed interval [lower, upper] used for certified scalar bounds
// (densities, lengths, distances). Operations keep the enclosure
// property; no outward rounding is applied, so results are certified
// up to floating-point roundoff only.
struct Interval {
    double lower = 0.0;
    double upper = 0.0;

    Interval() = default;
    explicit Interval(double v) : lower(v), upper(v) {}
    Interval(double lo, double hi) : lower(lo), upper(hi) {}

    double width() const { return upper - lower; }
    double mid() const { return 0.5 * (lower + upper); }
    bool contains(double v) const { return lower <= v && v <= upper; }
    bool wellFormed() const { return lower <= upper && std::isfinite(lower); }
};

inline Interval operator+(Interval a, Interval b) {
    return {a.lower + b.lower, a.upper + b.upper};
}
inline Interval& operator+=(Interval& a, Interval b) { a = a + b; return a; }

inline Interval operator*(Interval a, double s) {
    if (s >= 0) return {a.lower * s, a.upper * s};
    return {a.upper * s, a.lower * s};
}

inline Interval hull(Interval a, Interval b) {
    return {std::min(a.lower, b.lower), std::max(a.upper, b.upper)};
}

inline Interval intervalMax(Interval a, Interval b) {
    return {std::max(a.lower, b.lower), std::max(a.upper, b.upper)};
}

// |log .| of an interval of positive values.
inline Interval absLog(Interval a) {
    if (a.lower <= 0) throw std::domain_error("absLog: nonpositive interval");
    const double la = std::log(a.lower), lb = std::log(a.upper);
    if (la >= 0) return {la, lb};              // interval above 1
    if (lb <= 0) return {-lb, -la};            // interval below 1
    return {0.0, std::max(-la, lb)};           // straddles 1
}

// Three-valued result of comparing a certified interval to a threshold.
enum class Verdict { Pass, Fail, Inconclusive };

inline const char* verdictName(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        default: return "inconclusive";
    }
}

inline std::ostream& operator<<(std::ostream& os, Verdict v) { return os << verdictName(v); }

inline std::ostream& operator<<(std::ostream& os, const Interval& iv) {
    return os << "[" << iv.lower << ", " << iv.upper << "]";
}

// value >= threshold?
inline Verdict atLeast(Interval value, double threshold) {
    if (value.lower >= threshold) return Verdict::Pass;
    if (value.upper < threshold) return Verdict::Fail;
    return Verdict::Inconclusive;
}

// value <= threshold?
inline Verdict atMost(Interval value, double threshold) {
    if (value.upper <= threshold) return Verdict::Pass;
    if (value.lower > threshold) return Verdict::Fail;
    return Verdict::Inconclusive;
}

} // namespace carab

#endif
