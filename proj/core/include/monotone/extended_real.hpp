#pragma once

#include <cmath>
#include <string>

#include "monotone/errors.hpp"

namespace monotone {

/// Value in [ -inf < x <= +inf ] with an explicit infinity tag.
/// Distances and slopes are genuinely +inf-valued (empty images, divergent
/// suprema), and we never want sentinel floats leaking into arithmetic.
class ExtReal {
public:
    ExtReal() = default;

    /* implicit */ ExtReal(double v) : v_(v) {
        if (std::isnan(v)) throw InvalidInputError("ExtReal: NaN");
        if (std::isinf(v)) {
            inf_ = true;
            v_ = 0.0;
            if (v < 0) throw InvalidInputError("ExtReal: -inf not representable");
        }
    }

    static ExtReal infinity() {
        ExtReal r;
        r.inf_ = true;
        return r;
    }

    bool is_finite() const noexcept { return !inf_; }
    bool is_infinite() const noexcept { return inf_; }

    double value() const {
        if (inf_) throw InvalidInputError("ExtReal::value on +inf");
        return v_;
    }

    /// Finite value, or `fallback` when infinite (for reporting only).
    double value_or(double fallback) const noexcept { return inf_ ? fallback : v_; }

    bool operator==(const ExtReal& o) const noexcept {
        return inf_ == o.inf_ && (inf_ || v_ == o.v_);
    }

    bool operator<(const ExtReal& o) const noexcept {
        if (inf_) return false;
        if (o.inf_) return true;
        return v_ < o.v_;
    }

    bool operator<=(const ExtReal& o) const noexcept { return *this < o || *this == o; }
    bool operator>(const ExtReal& o) const noexcept { return o < *this; }
    bool operator>=(const ExtReal& o) const noexcept { return o <= *this; }

    friend ExtReal operator+(const ExtReal& a, double s) {
        return a.inf_ ? infinity() : ExtReal(a.v_ + s);
    }

    std::string str() const { return inf_ ? "inf" : std::to_string(v_); }

private:
    double v_ = 0.0;
    bool inf_ = false;
};

/// max(0, a - s); infinity stays infinity.
inline ExtReal minus_clamp0(const ExtReal& a, double s) {
    if (a.is_infinite()) return ExtReal::infinity();
    return ExtReal(std::max(0.0, a.value() - s));
}

inline ExtReal ext_max(const ExtReal& a, const ExtReal& b) { return a < b ? b : a; }

/// |a - b| when both finite; 0 when both infinite; +inf when exactly one is.
inline ExtReal ext_gap(const ExtReal& a, const ExtReal& b) {
    if (a.is_infinite() && b.is_infinite()) return ExtReal(0.0);
    if (a.is_infinite() || b.is_infinite()) return ExtReal::infinity();
    return ExtReal(std::abs(a.value() - b.value()));
}

}  // namespace monotone
