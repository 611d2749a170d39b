#pragma once

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <optional>
#include <utility>
#include <vector>

#include "mdyn/errors.hpp"
#include "mdyn/qty.hpp"

namespace mdyn {

enum class Direction { NonIncreasing, NonDecreasing };

/// Half-open price interval used as an integration region. `lo == nullopt`
/// means the region starts just above zero, `hi == nullopt` means it is
/// unbounded above.
struct PriceInterval {
    std::optional<Qty> lo{};
    bool lo_closed = false;
    std::optional<Qty> hi{};
    bool hi_closed = false;

    static PriceInterval all() { return {}; }
    /// [p, inf)
    static PriceInterval from(Qty p) { return {std::move(p), true, std::nullopt, false}; }
    /// (0, p]
    static PriceInterval up_to(Qty p) { return {std::nullopt, false, std::move(p), true}; }
    /// (0, inf), i.e. everything (hi == nullopt)
    static PriceInterval up_to(std::optional<Qty> p) {
        return {std::nullopt, false, std::move(p), true};
    }

    bool contains(const Qty& p) const {
        if (lo && (lo_closed ? p < *lo : p <= *lo)) return false;
        if (hi && (hi_closed ? *hi < p : *hi <= p)) return false;
        return true;
    }
};

/// Monotone right-continuous piecewise-constant function on (0, inf).
/// The value at a breakpoint is the value of the interval starting there;
/// evaluation outside the breakpoint range returns the boundary value.
class StepFn {
public:
    explicit StepFn(Direction dir) : dir_(dir) {}

    StepFn(Direction dir, Qty left_value, std::vector<Qty> breakpoints, std::vector<Qty> values)
        : dir_(dir),
          left_(std::move(left_value)),
          breakpoints_(std::move(breakpoints)),
          values_(std::move(values)) {
        canonicalize();
    }

    static StepFn constant(Direction dir, Qty v) {
        StepFn f(dir);
        f.left_ = std::move(v);
        return f;
    }
    static StepFn zero(Direction dir) { return constant(dir, Qty()); }

    Direction direction() const { return dir_; }
    const Qty& left_value() const { return left_; }
    const std::vector<Qty>& breakpoints() const { return breakpoints_; }
    const std::vector<Qty>& values() const { return values_; }
    bool is_constant() const { return breakpoints_.empty(); }
    bool is_zero() const { return breakpoints_.empty() && left_.is_zero(); }

    /// Value of the last interval, i.e. the limit at +infinity.
    const Qty& final_value() const { return values_.empty() ? left_ : values_.back(); }

    /// Largest value attained (left end for non-increasing, right end otherwise).
    const Qty& sup_value() const {
        return dir_ == Direction::NonIncreasing ? left_ : final_value();
    }

    const Qty& eval(const Qty& p) const {
        std::size_t i = interval_index(p);
        return i == 0 ? left_ : values_[i - 1];
    }

    /// lim_{q -> p^-} f(q)
    const Qty& left_limit(const Qty& p) const {
        std::size_t i = interval_index(p);
        if (i > 0 && breakpoints_[i - 1] == p) --i;  // exclude the interval starting at p
        return i == 0 ? left_ : values_[i - 1];
    }

    /// Jump locations with unsigned jump sizes (the atoms of |df|).
    std::vector<std::pair<Qty, Qty>> jumps() const {
        std::vector<std::pair<Qty, Qty>> out;
        out.reserve(breakpoints_.size());
        const Qty* prev = &left_;
        for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
            const Qty& cur = values_[i];
            out.emplace_back(breakpoints_[i],
                             dir_ == Direction::NonIncreasing ? *prev - cur : cur - *prev);
            prev = &cur;
        }
        return out;
    }

    friend bool operator==(const StepFn& a, const StepFn& b) {
        return a.dir_ == b.dir_ && a.left_ == b.left_ && a.breakpoints_ == b.breakpoints_ &&
               a.values_ == b.values_;
    }

private:
    // Index of the interval containing p: 0 is the region left of the first
    // breakpoint, i >= 1 is [breakpoints_[i-1], breakpoints_[i]).
    std::size_t interval_index(const Qty& p) const {
        std::size_t lo = 0;
        std::size_t hi = breakpoints_.size();
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (breakpoints_[mid] <= p) {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        return lo;
    }

    void canonicalize() {
        if (breakpoints_.size() != values_.size())
            throw ValidationError("StepFn: breakpoint/value count mismatch");
        for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
            if (!(breakpoints_[i - 1] < breakpoints_[i]))
                throw ValidationError("StepFn: breakpoints not strictly increasing");
        }
        // A breakpoint at zero is equivalent to replacing the left value.
        if (!breakpoints_.empty() && breakpoints_.front().is_zero()) {
            left_ = values_.front();
            breakpoints_.erase(breakpoints_.begin());
            values_.erase(values_.begin());
        }
        // Drop breakpoints that do not change the value.
        std::vector<Qty> bps;
        std::vector<Qty> vals;
        bps.reserve(breakpoints_.size());
        vals.reserve(values_.size());
        const Qty* prev = &left_;
        for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
            if (values_[i] == *prev) continue;
            bool rises = *prev < values_[i];
            if (rises != (dir_ == Direction::NonDecreasing))
                throw ValidationError("StepFn: values violate declared monotonicity");
            bps.push_back(std::move(breakpoints_[i]));
            vals.push_back(std::move(values_[i]));
            prev = &vals.back();
        }
        breakpoints_ = std::move(bps);
        values_ = std::move(vals);
    }

    Direction dir_;
    Qty left_{};
    std::vector<Qty> breakpoints_{};
    std::vector<Qty> values_{};
};

/// f(p) for every merged breakpoint region of f and g, combined with `op`.
/// The declared result direction is validated on construction.
template <typename Op>
StepFn combine_pointwise(const StepFn& f, const StepFn& g, Direction result_dir, Op op) {
    std::vector<Qty> bps;
    bps.reserve(f.breakpoints().size() + g.breakpoints().size());
    std::merge(f.breakpoints().begin(), f.breakpoints().end(), g.breakpoints().begin(),
               g.breakpoints().end(), std::back_inserter(bps));
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
    std::vector<Qty> vals;
    vals.reserve(bps.size());
    for (const Qty& p : bps) vals.push_back(op(f.eval(p), g.eval(p)));
    return StepFn(result_dir, op(f.left_value(), g.left_value()), std::move(bps),
                  std::move(vals));
}

/// Pointwise value transform; the caller states the direction of the result
/// (an order-reversing op like Z - v flips it).
template <typename Op>
StepFn transform_values(const StepFn& f, Direction result_dir, Op op) {
    std::vector<Qty> vals;
    vals.reserve(f.values().size());
    for (const Qty& v : f.values()) vals.push_back(op(v));
    return StepFn(result_dir, op(f.left_value()), f.breakpoints(), std::move(vals));
}

/// Pointwise sum; breakpoints are the merged union. Directions must agree.
inline StepFn add(const StepFn& f, const StepFn& g) {
    if (f.direction() != g.direction()) throw DomainError("StepFn add: direction mismatch");
    return combine_pointwise(f, g, f.direction(),
                             [](const Qty& a, const Qty& b) { return a + b; });
}

inline StepFn min_with_constant(const StepFn& f, const Qty& c) {
    return transform_values(f, f.direction(), [&](const Qty& v) { return min(v, c); });
}

/// h(x) = f(x) for x < p, 0 for x >= p. Keeps f's direction (f must be
/// non-increasing for the result to stay monotone, which holds at call sites).
inline StepFn zeroed_from(const StepFn& f, const Qty& p) {
    if (p.is_zero()) return StepFn::zero(f.direction());
    std::vector<Qty> bps;
    std::vector<Qty> vals;
    for (std::size_t i = 0; i < f.breakpoints().size() && f.breakpoints()[i] < p; ++i) {
        bps.push_back(f.breakpoints()[i]);
        vals.push_back(f.values()[i]);
    }
    bps.push_back(p);
    vals.push_back(Qty());
    return StepFn(f.direction(), f.left_value(), std::move(bps), std::move(vals));
}

/// h(x) = 0 for x < p, f(x) for x >= p.
inline StepFn zeroed_below(const StepFn& f, const Qty& p) {
    if (p.is_zero()) return f;
    std::vector<Qty> bps;
    std::vector<Qty> vals;
    if (!f.eval(p).is_zero()) {
        bps.push_back(p);
        vals.push_back(f.eval(p));
    }
    for (std::size_t i = 0; i < f.breakpoints().size(); ++i) {
        if (f.breakpoints()[i] <= p) continue;
        bps.push_back(f.breakpoints()[i]);
        vals.push_back(f.values()[i]);
    }
    return StepFn(f.direction(), Qty(), std::move(bps), std::move(vals));
}

/// Lebesgue-Stieltjes integral of p against the total-variation measure of f:
/// the sum of price * |jump| over jump points inside the region.
inline Qty stieltjes_price_integral(const StepFn& f, const PriceInterval& region) {
    Qty acc;
    for (const auto& [price, jump] : f.jumps()) {
        if (region.contains(price)) acc += price * jump;
    }
    return acc;
}

/// Pointwise generalized inverse with the sup-emptyset = 0 convention.
/// nullopt encodes +infinity.
inline std::optional<Qty> generalized_inverse_at(const StepFn& f, const Qty& y) {
    const auto& bps = f.breakpoints();
    const auto& vals = f.values();
    if (f.direction() == Direction::NonDecreasing) {
        // sup{ x > 0 | f(x) <= y }
        if (y < f.left_value()) return Qty();
        if (vals.empty() || vals.back() <= y) return std::nullopt;
        // smallest k with vals[k] > y: the region {f <= y} ends at bps[k]
        std::size_t k = std::upper_bound(vals.begin(), vals.end(), y) - vals.begin();
        return bps[k];
    }
    // sup{ x > 0 | f(x) > y }
    if (f.left_value() <= y) return Qty();
    if (!vals.empty() && y < vals.back()) return std::nullopt;
    if (vals.empty()) return std::nullopt;  // constant above y everywhere
    // values are strictly decreasing; find the first value <= y
    std::size_t lo = 0;
    std::size_t hi = vals.size();
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (vals[mid] <= y) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return bps[lo];
}

/// Generalized inverse emitted as a step function over [0, inf).
///
/// For a non-increasing f the inverse is finite everywhere only if f
/// vanishes on its last interval; otherwise the inverse is +infinity below
/// the floor and this throws. For a non-decreasing f the inverse is
/// +infinity at and above the top value; the emitted function covers the
/// finite part and extends its boundary value beyond (use
/// generalized_inverse_at for the exact extended semantics).
inline StepFn generalized_inverse(const StepFn& f) {
    const auto& bps = f.breakpoints();
    const auto& vals = f.values();
    if (f.direction() == Direction::NonDecreasing) {
        StepFn g(Direction::NonDecreasing);
        if (vals.empty()) return StepFn::zero(Direction::NonDecreasing);
        std::vector<Qty> gb;
        std::vector<Qty> gv;
        gb.push_back(f.left_value());
        gv.push_back(bps[0]);
        for (std::size_t k = 0; k + 1 < bps.size(); ++k) {
            gb.push_back(vals[k]);
            gv.push_back(bps[k + 1]);
        }
        return StepFn(Direction::NonDecreasing, Qty(), std::move(gb), std::move(gv));
    }
    if (!f.final_value().is_zero())
        throw DomainError("generalized_inverse: infinite below the positive floor value");
    if (vals.empty()) return StepFn::zero(Direction::NonIncreasing);
    // g(y) = bps[k+1] on [vals[k+1], vals[k]) read right to left, 0 above left_value.
    std::vector<Qty> gb;
    std::vector<Qty> gv;
    for (std::size_t k = vals.size(); k-- > 1;) {
        gb.push_back(vals[k - 1]);
        gv.push_back(bps[k - 1]);
    }
    gb.push_back(f.left_value());
    gv.push_back(Qty());
    return StepFn(Direction::NonIncreasing, bps.back(), std::move(gb), std::move(gv));
}

}  // namespace mdyn
