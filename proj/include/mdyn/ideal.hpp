#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "mdyn/book.hpp"
#include "mdyn/errors.hpp"
#include "mdyn/isoutil.hpp"
#include "mdyn/qty.hpp"

namespace mdyn {

/// Ideal market (utility log x + log y) on the iso-util x * y = T. The
/// remaining functions have the closed forms
///   F_s(p) = A (1/sqrt(p_hat) - 1/sqrt(p))   for p >= p_hat, else 0,
///   F_d(p) = A (1/sqrt(p) - 1/sqrt(p_hat))   for p <  p_hat, else 0,
/// with marginal price p_hat = x0/y0 and mean activity A = sqrt(T).
///
/// The closed forms are evaluated in floating point; discretizations convert
/// each sampled mass exactly (doubles are dyadic rationals), so everything
/// downstream of a discretized book is exact again.
class IdealMarket {
public:
    IdealMarket(Qty temperature, SupplyLevel current)
        : temperature_(std::move(temperature)), current_(std::move(current)) {
        if (current_.x.is_zero() || current_.y.is_zero())
            throw ValidationError("IdealMarket: current supply level must be interior");
        if (current_.x * current_.y != temperature_)
            throw ValidationError("IdealMarket: current level is not on the iso-util x*y = T");
    }

    const Qty& temperature() const { return temperature_; }
    const SupplyLevel& current() const { return current_; }
    double activity() const { return std::sqrt(temperature_.to_double()); }
    Qty marginal_price() const { return current_.x / current_.y; }

    double rsf(double p) const {
        double p_hat = marginal_price().to_double();
        if (p < p_hat) return 0.0;
        return activity() * (1.0 / std::sqrt(p_hat) - 1.0 / std::sqrt(p));
    }

    double rdf(double p) const {
        double p_hat = marginal_price().to_double();
        if (p >= p_hat) return 0.0;
        return activity() * (1.0 / std::sqrt(p) - 1.0 / std::sqrt(p_hat));
    }

    /// Atomic book matching the closed-form remaining functions exactly at
    /// the grid prices; mass beyond the grid is truncated. Grid prices below
    /// the marginal price sample the demand side, prices above the supply
    /// side. The residual demand mass between the top demand grid point and
    /// p_hat is parked in one atom at p_hat so RDF stays exact on the grid.
    Book discretize(std::vector<Qty> price_grid) const {
        std::sort(price_grid.begin(), price_grid.end());
        price_grid.erase(std::unique(price_grid.begin(), price_grid.end()), price_grid.end());
        const Qty p_hat = marginal_price();

        std::vector<Atom> bids;
        std::vector<Atom> asks;
        double prev_rdf = 0.0;  // walking demand prices downward would be awkward; do two passes
        std::vector<Qty> below;
        std::vector<Qty> above;
        for (const Qty& p : price_grid) {
            if (p.is_zero()) continue;
            if (p < p_hat) below.push_back(p);
            if (p_hat < p) above.push_back(p);
        }

        double prev = 0.0;
        for (const Qty& p : above) {
            double cur = rsf(p.to_double());
            if (cur > prev) asks.push_back({p, Qty::from_double_exact(cur - prev)});
            prev = cur;
        }

        for (std::size_t i = 1; i < below.size(); ++i) {
            double mass = rdf(below[i - 1].to_double()) - rdf(below[i].to_double());
            if (mass > 0.0) bids.push_back({below[i], Qty::from_double_exact(mass)});
        }
        if (!below.empty()) {
            prev_rdf = rdf(below.back().to_double());
            if (prev_rdf > 0.0) bids.push_back({p_hat, Qty::from_double_exact(prev_rdf)});
        }
        return Book(DemandMeasure(std::move(bids)), SupplyMeasure(std::move(asks)));
    }

    /// Piecewise-linear iso-util through the exact hyperbola points
    /// (x, T/x) for the given x grid; the current x0 is always included.
    IsoUtil isoutil_on(std::vector<Qty> x_grid) const {
        x_grid.push_back(current_.x);
        std::sort(x_grid.begin(), x_grid.end());
        x_grid.erase(std::unique(x_grid.begin(), x_grid.end()), x_grid.end());
        std::vector<SupplyLevel> vertices;
        vertices.reserve(x_grid.size());
        for (const Qty& x : x_grid) {
            if (x.is_zero()) continue;
            vertices.push_back({x, temperature_ / x});
        }
        return IsoUtil(std::move(vertices), current_);
    }

private:
    Qty temperature_;
    SupplyLevel current_;
};

inline IsoUtil ideal_isoutil(const Qty& temperature, const SupplyLevel& current,
                             std::vector<Qty> x_grid) {
    return IdealMarket(temperature, current).isoutil_on(std::move(x_grid));
}

/// Closed-form remaining functions of the unsettled aggregate of two ideal
/// markets with activities a1, a2 and marginal prices p1 <= p2. With equal
/// prices the aggregate is again ideal with activity a1 + a2 (temperature
/// (sqrt(T1) + sqrt(T2))^2, super-additive).
class IdealAggregateForm {
public:
    IdealAggregateForm(double a1, double p1, double a2, double p2)
        : a1_(a1), p1_(p1), a2_(a2), p2_(p2) {
        if (a1 < 0.0 || a2 < 0.0) throw ValidationError("ideal aggregate: negative activity");
        if (!(p1 > 0.0) || !(p2 > 0.0)) throw ValidationError("ideal aggregate: prices must be > 0");
        if (p1 > p2) throw ValidationError("ideal aggregate: requires p1 <= p2");
    }

    bool same_price() const { return p1_ == p2_; }
    double combined_activity() const { return a1_ + a2_; }
    double combined_temperature() const { return combined_activity() * combined_activity(); }

    double rsf(double p) const {
        double out = 0.0;
        if (p >= p1_) out += a1_ * (inv_sqrt(p1_) - inv_sqrt(p));
        if (p >= p2_) out += a2_ * (inv_sqrt(p2_) - inv_sqrt(p));
        return out;
    }

    double rdf(double p) const {
        double out = 0.0;
        if (p < p1_) out += a1_ * (inv_sqrt(p) - inv_sqrt(p1_));
        if (p < p2_) out += a2_ * (inv_sqrt(p) - inv_sqrt(p2_));
        return out;
    }

private:
    static double inv_sqrt(double v) { return 1.0 / std::sqrt(v); }

    double a1_, p1_, a2_, p2_;
};

inline IdealAggregateForm ideal_aggregate_closed_form(double a1, double p1, double a2,
                                                      double p2) {
    return IdealAggregateForm(a1, p1, a2, p2);
}

}  // namespace mdyn
