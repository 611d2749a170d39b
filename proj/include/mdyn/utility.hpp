#pragma once

#include <cmath>
#include <utility>

#include "mdyn/book.hpp"
#include "mdyn/errors.hpp"
#include "mdyn/qty.hpp"

namespace mdyn {

/// Market temperature T = e^{U(x,y)} and mean activity sqrt(T).
struct Temperature {
    double t;
    double mean_activity;
};

/// Utility function of a market: ideal (log x + log y) or Cobb-Douglas
/// (A x^beta y^alpha with A > 0 and 0 < alpha, beta < 1). Quasi-concave and
/// strictly increasing in each argument. Utility values are in nats; the
/// marginal price is evaluated analytically and stays exact.
class UtilityFn {
public:
    static UtilityFn ideal() { return UtilityFn(Kind::Ideal, 1.0, Qty(1), Qty(1)); }

    static UtilityFn cobb_douglas(double scale, Qty alpha, Qty beta) {
        if (!(scale > 0.0)) throw ValidationError("cobb_douglas: scale must be > 0");
        if (alpha.is_zero() || Qty(1) <= alpha || beta.is_zero() || Qty(1) <= beta)
            throw ValidationError("cobb_douglas: exponents must lie in (0, 1)");
        return UtilityFn(Kind::CobbDouglas, scale, std::move(alpha), std::move(beta));
    }

    double value(double x, double y) const {
        if (!(x > 0.0) || !(y > 0.0)) throw DomainError("UtilityFn: boundary supply level");
        if (kind_ == Kind::Ideal) return std::log(x) + std::log(y);
        return scale_ * std::pow(x, beta_.to_double()) * std::pow(y, alpha_.to_double());
    }

    double value(const SupplyLevel& s) const { return value(s.x.to_double(), s.y.to_double()); }

    /// P_{x/y} = dU/dy / dU/dx: ideal gives x/y, Cobb-Douglas (alpha x)/(beta y).
    Qty marginal_price(const SupplyLevel& s) const {
        if (s.x.is_zero() || s.y.is_zero())
            throw DomainError("marginal_price: boundary supply level");
        if (kind_ == Kind::Ideal) return s.x / s.y;
        return (alpha_ * s.x) / (beta_ * s.y);
    }

    bool is_ideal() const { return kind_ == Kind::Ideal; }

private:
    enum class Kind { Ideal, CobbDouglas };

    UtilityFn(Kind kind, double scale, Qty alpha, Qty beta)
        : kind_(kind), scale_(scale), alpha_(std::move(alpha)), beta_(std::move(beta)) {}

    Kind kind_;
    double scale_;
    Qty alpha_;
    Qty beta_;
};

inline Temperature temperature(const UtilityFn& u, const SupplyLevel& s) {
    double t = std::exp(u.value(s));
    return {t, std::sqrt(t)};
}

inline Qty utility_marginal_price(const UtilityFn& u, const SupplyLevel& s) {
    return u.marginal_price(s);
}

}  // namespace mdyn
