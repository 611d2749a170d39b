#pragma once

#include <optional>
#include <utility>

#include "mdyn/errors.hpp"
#include "mdyn/measures.hpp"
#include "mdyn/qty.hpp"
#include "mdyn/stepfn.hpp"

namespace mdyn {

/// A point (x, y) of maximal available quantities: x units of the numeraire
/// X (money) and y units of the asset Y.
struct SupplyLevel {
    Qty x;
    Qty y;

    SupplyLevel operator+(const SupplyLevel& o) const { return {x + o.x, y + o.y}; }
    SupplyLevel operator-(const SupplyLevel& o) const { return {x - o.x, y - o.y}; }

    friend bool operator==(const SupplyLevel&, const SupplyLevel&) = default;
};

/// Limit order book: the pair of a demand measure (bids) and a supply
/// measure (asks). Either side may be empty.
class Book {
public:
    Book() = default;
    Book(DemandMeasure demand, SupplyMeasure supply)
        : demand_(std::move(demand)), supply_(std::move(supply)) {}

    const DemandMeasure& demand() const { return demand_; }
    const SupplyMeasure& supply() const { return supply_; }
    bool empty() const { return demand_.empty() && supply_.empty(); }

    friend bool operator==(const Book&, const Book&) = default;

private:
    DemandMeasure demand_{};
    SupplyMeasure supply_{};
};

inline StepFn rdf_of(const Book& b) { return rdf_of(b.demand()); }
inline StepFn rsf_of(const Book& b) { return rsf_of(b.supply()); }

/// p_b = sup supp(mu_d): the largest bid price, absent if there are no bids.
inline std::optional<Qty> best_bid(const Book& b) { return b.demand().max_price(); }

/// p_a = inf supp(mu_s): the smallest ask price, absent if there are no asks.
inline std::optional<Qty> best_ask(const Book& b) { return b.supply().min_price(); }

/// A book is settled iff some price m has F_d(m) = F_s(m) = 0; for atomic
/// measures this means every bid price is strictly below every ask price
/// (or a side is empty). A bid and an ask at the same price: unsettled.
inline bool is_settled(const Book& b) {
    auto bid = best_bid(b);
    auto ask = best_ask(b);
    if (!bid || !ask) return true;
    return *bid < *ask;
}

/// Midpoint of the bid-ask spread. Only defined on settled two-sided books.
inline Qty mid_price(const Book& b) {
    if (!is_settled(b)) throw DomainError("mid_price: book is unsettled");
    auto bid = best_bid(b);
    auto ask = best_ask(b);
    if (!bid || !ask) throw DomainError("mid_price: book is one-sided");
    return (*bid + *ask) / Qty(2);
}

/// Current supply level of the book: x is the total money obtainable by
/// selling into the bids, y the total volume obtainable from the asks.
inline SupplyLevel supply_levels(const Book& b) {
    Qty x;
    for (const Atom& a : b.demand().atoms()) x += a.price * a.mass;
    return {std::move(x), b.supply().total_mass()};
}

namespace detail {

// Money exchanged for the first `volume` units when walking the given
// levels in priority order. nullopt when volume exceeds the side's total.
inline std::optional<Qty> walk_depth(const std::vector<Atom>& levels, bool best_first,
                                     const Qty& volume) {
    Qty remaining = volume;
    Qty money;
    auto take = [&](const Atom& level) {
        const Qty& fill = min(remaining, level.mass);
        money += fill * level.price;
        remaining -= fill;
    };
    if (best_first) {
        for (const Atom& level : levels) {
            if (remaining.is_zero()) break;
            take(level);
        }
    } else {
        for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
            if (remaining.is_zero()) break;
            take(*it);
        }
    }
    if (!remaining.is_zero()) return std::nullopt;
    return money;
}

// Price of the y-th unit when walking levels in priority order.
inline Qty walk_price(const std::vector<Atom>& levels, bool best_first, const Qty& y) {
    if (y.is_zero()) throw DomainError("pricing function: y must be > 0");
    Qty cum;
    if (best_first) {
        for (const Atom& level : levels) {
            cum += level.mass;
            if (y <= cum) return level.price;
        }
    } else {
        for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
            cum += it->mass;
            if (y <= cum) return it->price;
        }
    }
    throw DomainError("pricing function: y exceeds side volume");
}

}  // namespace detail

/// d_a(y): money needed to buy y units walking the asks from the cheapest.
/// nullopt is the infinity marker for y beyond the side volume.
inline std::optional<Qty> depth_ask(const Book& b, const Qty& y) {
    return detail::walk_depth(b.supply().atoms(), true, y);
}

/// d_b(y): money received for selling y units walking the bids from the best.
inline std::optional<Qty> depth_bid(const Book& b, const Qty& y) {
    return detail::walk_depth(b.demand().atoms(), false, y);
}

/// p_a(y): the price paid for the y-th unit bought, 0 < y <= ask volume.
inline Qty pricing_ask(const Book& b, const Qty& y) {
    return detail::walk_price(b.supply().atoms(), true, y);
}

/// p_b(y): the price received for the y-th unit sold, 0 < y <= bid volume.
inline Qty pricing_bid(const Book& b, const Qty& y) {
    return detail::walk_price(b.demand().atoms(), false, y);
}

}  // namespace mdyn
