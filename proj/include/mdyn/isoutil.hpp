#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mdyn/book.hpp"
#include "mdyn/errors.hpp"
#include "mdyn/measures.hpp"
#include "mdyn/qty.hpp"

namespace mdyn {

/// Iso-util (indifference curve) as a piecewise-linear strictly decreasing
/// curve together with the current supply level.
///
/// Vertices are strictly increasing in x and strictly decreasing in y, so
/// every segment has slope in (-inf, 0). The curve is convex iff slopes are
/// non-decreasing from left to right. The current supply level is always
/// materialized as a vertex; apart from it, collinear interior vertices are
/// merged away, which makes the representation canonical.
class IsoUtil {
public:
    IsoUtil(std::vector<SupplyLevel> vertices, const SupplyLevel& current)
        : vertices_(std::move(vertices)) {
        validate_shape();
        current_ = locate_or_insert(current);
        merge_collinear();
        convex_ = compute_convex();
    }

    static IsoUtil point(const SupplyLevel& p) { return IsoUtil({p}, p); }

    const std::vector<SupplyLevel>& vertices() const { return vertices_; }
    std::size_t current_index() const { return current_; }
    const SupplyLevel& current() const { return vertices_[current_]; }
    bool convex() const { return convex_; }
    bool degenerate() const { return vertices_.size() == 1; }

    friend bool operator==(const IsoUtil& a, const IsoUtil& b) {
        return a.vertices_ == b.vertices_ && a.current_ == b.current_;
    }

private:
    void validate_shape() {
        if (vertices_.empty()) throw ValidationError("IsoUtil: no vertices");
        for (std::size_t i = 1; i < vertices_.size(); ++i) {
            if (!(vertices_[i - 1].x < vertices_[i].x))
                throw ValidationError("IsoUtil: x coordinates must be strictly increasing");
            if (!(vertices_[i].y < vertices_[i - 1].y))
                throw ValidationError("IsoUtil: y coordinates must be strictly decreasing");
        }
    }

    std::size_t locate_or_insert(const SupplyLevel& c) {
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            if (vertices_[i] == c) return i;
        }
        for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) {
            const SupplyLevel& a = vertices_[i];
            const SupplyLevel& b = vertices_[i + 1];
            if (!(a.x < c.x && c.x < b.x)) continue;
            // exact collinearity: (a.y - c.y) * (b.x - a.x) == (a.y - b.y) * (c.x - a.x)
            if (a.y < c.y || c.y < b.y) break;
            if ((a.y - c.y) * (b.x - a.x) == (a.y - b.y) * (c.x - a.x)) {
                vertices_.insert(vertices_.begin() + static_cast<std::ptrdiff_t>(i) + 1, c);
                return i + 1;
            }
            break;
        }
        throw ValidationError("IsoUtil: current supply level does not lie on the curve");
    }

    static bool collinear(const SupplyLevel& a, const SupplyLevel& m, const SupplyLevel& b) {
        return (a.y - m.y) * (b.x - m.x) == (m.y - b.y) * (m.x - a.x);
    }

    void merge_collinear() {
        if (vertices_.size() < 3) return;
        std::vector<SupplyLevel> out;
        std::size_t new_current = 0;
        out.push_back(vertices_.front());
        if (current_ == 0) new_current = 0;
        for (std::size_t i = 1; i + 1 < vertices_.size(); ++i) {
            if (i != current_ && collinear(out.back(), vertices_[i], vertices_[i + 1])) continue;
            if (i == current_) new_current = out.size();
            out.push_back(vertices_[i]);
        }
        if (current_ == vertices_.size() - 1) new_current = out.size();
        out.push_back(vertices_.back());
        vertices_ = std::move(out);
        current_ = new_current;
    }

    bool compute_convex() const {
        // slope_i <= slope_{i+1}  <=>  dy_i * dx_{i+1} >= dy_{i+1} * dx_i
        for (std::size_t i = 0; i + 2 < vertices_.size(); ++i) {
            Qty dx1 = vertices_[i + 1].x - vertices_[i].x;
            Qty dy1 = vertices_[i].y - vertices_[i + 1].y;
            Qty dx2 = vertices_[i + 2].x - vertices_[i + 1].x;
            Qty dy2 = vertices_[i + 1].y - vertices_[i + 2].y;
            if (dy1 * dx2 < dy2 * dx1) return false;
        }
        return true;
    }

    std::vector<SupplyLevel> vertices_;
    std::size_t current_ = 0;
    bool convex_ = false;
};

struct MarginalPrices {
    std::optional<Qty> bid;  // -1 / f'_-(x0), absent at the left endpoint
    std::optional<Qty> ask;  // -1 / f'_+(x0), absent at the right endpoint
};

/// Marginal prices of Y at the current supply level. At a kink the bid and
/// ask differ (the bid-ask spread); on a segment interior they coincide.
inline MarginalPrices marginal_prices(const IsoUtil& i) {
    if (i.degenerate()) throw DomainError("marginal_prices: degenerate iso-util");
    MarginalPrices out;
    const auto& v = i.vertices();
    std::size_t c = i.current_index();
    if (c > 0) out.bid = (v[c].x - v[c - 1].x) / (v[c - 1].y - v[c].y);
    if (c + 1 < v.size()) out.ask = (v[c + 1].x - v[c].x) / (v[c].y - v[c + 1].y);
    return out;
}

struct BidAskParts {
    std::vector<SupplyLevel> bid;  // the part with x <= x0
    std::vector<SupplyLevel> ask;  // the part with x >= x0
};

/// Splits the curve at the current supply level. Selling Y walks the curve
/// left (hitting bids), buying Y walks it right (lifting asks); both parts
/// contain the current supply level.
inline BidAskParts split_bid_ask(const IsoUtil& i) {
    const auto& v = i.vertices();
    std::size_t c = i.current_index();
    return {{v.begin(), v.begin() + static_cast<std::ptrdiff_t>(c) + 1},
            {v.begin() + static_cast<std::ptrdiff_t>(c), v.end()}};
}

/// Book -> iso-util direction: one segment per price level, walked from the
/// current supply level (bids to the left, asks to the right). The result
/// is convex iff the book has no strictly crossed orders.
inline IsoUtil book_to_isoutil(const Book& b) {
    SupplyLevel current = supply_levels(b);
    if (b.empty()) return IsoUtil::point(current);

    std::vector<SupplyLevel> vertices;
    const auto& bids = b.demand().atoms();
    const auto& asks = b.supply().atoms();
    vertices.reserve(bids.size() + asks.size() + 1);

    // Walk bids best-first; each sale moves the level left and up. The
    // chain ends at x = 0 because x0 is exactly the total bid money.
    SupplyLevel at = current;
    for (auto it = bids.rbegin(); it != bids.rend(); ++it) {
        at = {at.x - it->price * it->mass, at.y + it->mass};
        vertices.push_back(at);
    }
    std::reverse(vertices.begin(), vertices.end());
    vertices.push_back(current);

    // Walk asks cheapest-first; each purchase moves the level right and
    // down, ending at y = 0.
    at = current;
    for (const Atom& a : asks) {
        at = {at.x + a.price * a.mass, at.y - a.mass};
        vertices.push_back(at);
    }
    return IsoUtil(std::move(vertices), current);
}

/// Iso-util -> book direction, defined for convex curves: each segment left
/// of the current level is a bid, each segment right of it an ask, with
/// price -1/slope and volume equal to the segment's height drop.
inline Book isoutil_to_book(const IsoUtil& i) {
    if (!i.convex()) {
        const auto& v = i.vertices();
        for (std::size_t k = 0; k + 2 < v.size(); ++k) {
            Qty dx1 = v[k + 1].x - v[k].x;
            Qty dy1 = v[k].y - v[k + 1].y;
            Qty dx2 = v[k + 2].x - v[k + 1].x;
            Qty dy2 = v[k + 1].y - v[k + 2].y;
            if (dy1 * dx2 < dy2 * dx1) {
                const auto as_fraction = [](const Qty& q) {
                    return q.numerator().str() + "/" + q.denominator().str();
                };
                throw DomainError("isoutil_to_book: non-convex iso-util, slope -" +
                                  as_fraction(dy1 / dx1) + " is followed by slope -" +
                                  as_fraction(dy2 / dx2) + " at vertex " + std::to_string(k + 1));
            }
        }
    }
    const auto& v = i.vertices();
    std::size_t c = i.current_index();
    std::vector<Atom> bids;
    std::vector<Atom> asks;
    for (std::size_t k = 0; k < c; ++k) {
        Qty volume = v[k].y - v[k + 1].y;
        bids.push_back({(v[k + 1].x - v[k].x) / volume, volume});
    }
    for (std::size_t k = c; k + 1 < v.size(); ++k) {
        Qty volume = v[k].y - v[k + 1].y;
        asks.push_back({(v[k + 1].x - v[k].x) / volume, volume});
    }
    return Book(DemandMeasure(std::move(bids)), SupplyMeasure(std::move(asks)));
}

}  // namespace mdyn
