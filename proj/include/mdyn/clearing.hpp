#pragma once

#include <optional>
#include <utility>

#include "mdyn/book.hpp"
#include "mdyn/errors.hpp"
#include "mdyn/measures.hpp"
#include "mdyn/qty.hpp"
#include "mdyn/stepfn.hpp"

namespace mdyn {

enum class ClearingMode { Adiabatic, IsoUtil };

/// Crossing structure of a book:
///   p_d = inf{ p > 0 | RDF(p) <= RSF(p) }  (smallest price where supply overcomes demand)
///   p_s = sup{ p > 0 | RDF(p) >= RSF(p) }  (largest price where demand overcomes supply)
///   Z(p) = min{ lim_{q up p} RDF(q), RSF(p) },  Z = Z(p_s) = max_p Z(p).
/// p_d <= p_s always; p_s is +infinity (absent) when the book has no asks.
/// Z is the clearing volume: the total amount an arbitrageur can offset,
/// zero exactly on settled books.
struct CrossingProfile {
    Qty p_d;
    std::optional<Qty> p_s;
    Qty clearing_volume;
    StepFn rdf;
    StepFn rsf;

    Qty z_at(const Qty& p) const { return min(rdf.left_limit(p), rsf.eval(p)); }
};

inline CrossingProfile crossing(const Book& b) {
    StepFn rdf = rdf_of(b);
    StepFn rsf = rsf_of(b);

    std::vector<Qty> bps;
    bps.reserve(rdf.breakpoints().size() + rsf.breakpoints().size());
    std::merge(rdf.breakpoints().begin(), rdf.breakpoints().end(), rsf.breakpoints().begin(),
               rsf.breakpoints().end(), std::back_inserter(bps));
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

    // RDF - RSF is non-increasing, so each boundary is found at the first
    // breakpoint where the respective comparison flips.
    Qty p_d;
    bool have_p_d = rdf.left_value() <= rsf.left_value();  // holds below the first breakpoint
    std::optional<Qty> p_s;
    bool p_s_infinite = rdf.final_value() >= rsf.final_value();  // holds at +infinity
    Qty z;
    for (const Qty& p : bps) {
        if (!have_p_d && rdf.eval(p) <= rsf.eval(p)) {
            p_d = p;
            have_p_d = true;
        }
        if (!p_s && !p_s_infinite && rdf.eval(p) < rsf.eval(p)) p_s = p;
        z = max(z, min(rdf.left_limit(p), rsf.eval(p)));
    }
    return {std::move(p_d), std::move(p_s), std::move(z), std::move(rdf), std::move(rsf)};
}

struct ClearingResult {
    Book book;
    CrossingProfile profile;
};

/// Adiabatic clearing: matched volume vanishes from the book.
///   RDF_a(p) = max(RDF(p) - Z, 0) for p < p_d, else 0
///   RSF_a(p) = 0 for p < p_s, else max(RSF(p) - Z, 0)
/// The result is always settled; clearing a settled book is the identity.
inline ClearingResult clear_adiabatic(const Book& b) {
    CrossingProfile prof = crossing(b);
    const Qty& z = prof.clearing_volume;

    auto drop_z = [&z](const Qty& v) { return saturating_sub(v, z); };
    StepFn rdf_a = zeroed_from(transform_values(prof.rdf, Direction::NonIncreasing, drop_z),
                               prof.p_d);
    StepFn rsf_a = transform_values(prof.rsf, Direction::NonDecreasing, drop_z);
    rsf_a = prof.p_s ? zeroed_below(rsf_a, *prof.p_s) : StepFn::zero(Direction::NonDecreasing);

    Book settled(measure_of_rdf(rdf_a), measure_of_rsf(rsf_a));
    return {std::move(settled), std::move(prof)};
}

/// Iso-util clearing: matched volume reappears at the same price on the
/// opposite side of the book.
///   RDF_i(p) = RDF_a(p) + Z - min{RSF(p), Z} for p < p_d, else 0
///   RSF_i(p) = 0 for p < p_s, else RSF_a(p) + Z - min{RDF(p), Z}
/// The result may still have a bid and an ask touching at one price.
inline ClearingResult clear_isoutil(const Book& b) {
    ClearingResult adiabatic = clear_adiabatic(b);
    CrossingProfile prof = std::move(adiabatic.profile);
    const Qty& z = prof.clearing_volume;

    auto z_minus = [&z](const Qty& v) { return saturating_sub(z, v); };
    StepFn flipped_supply = transform_values(prof.rsf, Direction::NonIncreasing, z_minus);
    StepFn flipped_demand = transform_values(prof.rdf, Direction::NonDecreasing, z_minus);

    StepFn rdf_i = zeroed_from(add(rdf_of(adiabatic.book), flipped_supply), prof.p_d);
    StepFn rsf_i = prof.p_s
                       ? zeroed_below(add(rsf_of(adiabatic.book), flipped_demand), *prof.p_s)
                       : StepFn::zero(Direction::NonDecreasing);

    Book settled(measure_of_rdf(rdf_i), measure_of_rsf(rsf_i));
    return {std::move(settled), std::move(prof)};
}

inline ClearingResult clear(const Book& b, ClearingMode mode) {
    return mode == ClearingMode::Adiabatic ? clear_adiabatic(b) : clear_isoutil(b);
}

/// Money paid to the under-priced sell orders while clearing:
/// integral of p dA_s over (0, p_s] with A_s = min{RSF, Z}.
inline Qty clearing_money_paid(const CrossingProfile& prof) {
    StepFn a_s = min_with_constant(prof.rsf, prof.clearing_volume);
    return stieltjes_price_integral(a_s, PriceInterval::up_to(prof.p_s));
}

/// Money received from the over-priced buy orders while clearing:
/// integral of p dA_d over [p_d, inf) with A_d = min{RDF, Z}.
inline Qty clearing_money_received(const CrossingProfile& prof) {
    StepFn a_d = min_with_constant(prof.rdf, prof.clearing_volume);
    return stieltjes_price_integral(a_d, PriceInterval::from(prof.p_d));
}

/// Arbitrage profit P extracted by matching crossed orders at their limit
/// prices. Identical under both clearing modes; zero iff nothing strictly
/// profitable crosses.
inline Qty arbitrage_profit(const CrossingProfile& prof) {
    return clearing_money_received(prof) - clearing_money_paid(prof);
}

inline Qty arbitrage_profit(const Book& b) { return arbitrage_profit(crossing(b)); }

/// Liquidity removed from the market by clearing, as a vector (dx, dy).
struct Entropy {
    Qty dx;
    Qty dy;

    friend bool operator==(const Entropy&, const Entropy&) = default;
};

/// S_a = (money received by the arbitrageur, Z); S_i = (P, 0).
/// Componentwise S_i <= S_a.
inline Entropy entropy(const CrossingProfile& prof, ClearingMode mode) {
    if (mode == ClearingMode::IsoUtil) return {arbitrage_profit(prof), Qty()};
    return {clearing_money_received(prof), prof.clearing_volume};
}

inline Entropy entropy(const Book& b, ClearingMode mode) { return entropy(crossing(b), mode); }

/// Supply-level update (x_s, y_s) = (x_u, y_u) - S. A negative component
/// signals inconsistent inputs and throws.
inline SupplyLevel apply_entropy(const SupplyLevel& levels, const Entropy& e) {
    if (levels.x < e.dx || levels.y < e.dy)
        throw DomainError("apply_entropy: entropy exceeds supply levels");
    return {levels.x - e.dx, levels.y - e.dy};
}

}  // namespace mdyn
