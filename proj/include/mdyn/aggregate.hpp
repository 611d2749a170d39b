#pragma once

#include <span>
#include <utility>
#include <vector>

#include "mdyn/book.hpp"
#include "mdyn/clearing.hpp"
#include "mdyn/errors.hpp"
#include "mdyn/measures.hpp"

namespace mdyn {

/// Unsettled aggregation: the joint book of all markets. Demand and supply
/// atoms are combined with mass summed per price level, so the remaining
/// functions add and the supply levels add componentwise. Commutative and
/// associative; all books must quote the same asset pair.
inline Book aggregate_unsettled(std::span<const Book> books) {
    if (books.empty()) throw ValidationError("aggregate_unsettled: no books given");
    std::vector<Atom> bids;
    std::vector<Atom> asks;
    for (const Book& b : books) {
        bids.insert(bids.end(), b.demand().atoms().begin(), b.demand().atoms().end());
        asks.insert(asks.end(), b.supply().atoms().begin(), b.supply().atoms().end());
    }
    return Book(DemandMeasure(std::move(bids)), SupplyMeasure(std::move(asks)));
}

struct AggregationResult {
    Book unsettled;
    Book settled;
    ClearingMode mode;
    Entropy entropy;
    Qty profit;
    SupplyLevel levels_before;
    SupplyLevel levels_after;
};

/// Settled aggregation: the unsettled sum cleared once under the chosen
/// mode, with the arbitrage accounting attached. levels_after equals the
/// settled book's supply levels.
inline AggregationResult aggregate_settled(std::span<const Book> books, ClearingMode mode) {
    Book unsettled = aggregate_unsettled(books);
    ClearingResult cleared = clear(unsettled, mode);
    Entropy s = entropy(cleared.profile, mode);
    Qty profit = arbitrage_profit(cleared.profile);
    SupplyLevel before = supply_levels(unsettled);
    SupplyLevel after = apply_entropy(before, s);
    return {std::move(unsettled), std::move(cleared.book), mode,      std::move(s),
            std::move(profit),    std::move(before),       std::move(after)};
}

struct PairwiseAggregationResult {
    Book settled;
    Entropy total_entropy;
    Qty total_profit;
};

/// Experimental variant that clears after every pairwise merge instead of
/// once at the end. Not certified to coincide with aggregate_settled.
inline PairwiseAggregationResult aggregate_settled_pairwise(std::span<const Book> books,
                                                            ClearingMode mode) {
    if (books.empty()) throw ValidationError("aggregate_settled_pairwise: no books given");
    Book acc = books.front();
    Entropy total;
    Qty profit;
    for (std::size_t i = 1; i < books.size(); ++i) {
        const Book pair[] = {std::move(acc), books[i]};
        ClearingResult cleared = clear(aggregate_unsettled(pair), mode);
        Entropy s = entropy(cleared.profile, mode);
        total.dx += s.dx;
        total.dy += s.dy;
        profit += arbitrage_profit(cleared.profile);
        acc = std::move(cleared.book);
    }
    return {std::move(acc), std::move(total), std::move(profit)};
}

}  // namespace mdyn
