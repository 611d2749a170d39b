#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "mdyn/errors.hpp"
#include "mdyn/qty.hpp"
#include "mdyn/stepfn.hpp"

namespace mdyn {

struct Atom {
    Qty price;
    Qty mass;

    friend bool operator==(const Atom&, const Atom&) = default;
};

/// Finite sum of Dirac atoms on (0, inf): strictly positive prices and
/// masses, sorted by price, duplicate price levels merged by summing mass.
class AtomicMeasure {
public:
    AtomicMeasure() = default;

    explicit AtomicMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
        std::sort(atoms_.begin(), atoms_.end(),
                  [](const Atom& a, const Atom& b) { return a.price < b.price; });
        std::vector<Atom> merged;
        merged.reserve(atoms_.size());
        for (Atom& a : atoms_) {
            if (a.price.is_zero()) throw ValidationError("AtomicMeasure: price must be > 0");
            if (a.mass.is_zero()) throw ValidationError("AtomicMeasure: mass must be > 0");
            if (!merged.empty() && merged.back().price == a.price) {
                merged.back().mass += a.mass;
            } else {
                merged.push_back(std::move(a));
            }
        }
        atoms_ = std::move(merged);
    }

    const std::vector<Atom>& atoms() const { return atoms_; }
    bool empty() const { return atoms_.empty(); }
    std::size_t size() const { return atoms_.size(); }

    Qty total_mass() const {
        Qty t;
        for (const Atom& a : atoms_) t += a.mass;
        return t;
    }

    std::optional<Qty> min_price() const {
        if (atoms_.empty()) return std::nullopt;
        return atoms_.front().price;
    }
    std::optional<Qty> max_price() const {
        if (atoms_.empty()) return std::nullopt;
        return atoms_.back().price;
    }

    friend bool operator==(const AtomicMeasure&, const AtomicMeasure&) = default;

private:
    std::vector<Atom> atoms_{};
};

/// Role tag around AtomicMeasure: demand and supply measures share the
/// representation but are distinct types, so sides cannot be mixed up.
template <typename Tag>
class RoleMeasure {
public:
    RoleMeasure() = default;
    explicit RoleMeasure(AtomicMeasure m) : m_(std::move(m)) {}
    explicit RoleMeasure(std::vector<Atom> atoms) : m_(AtomicMeasure(std::move(atoms))) {}

    const AtomicMeasure& measure() const { return m_; }
    const std::vector<Atom>& atoms() const { return m_.atoms(); }
    bool empty() const { return m_.empty(); }
    Qty total_mass() const { return m_.total_mass(); }
    std::optional<Qty> min_price() const { return m_.min_price(); }
    std::optional<Qty> max_price() const { return m_.max_price(); }

    friend bool operator==(const RoleMeasure&, const RoleMeasure&) = default;

private:
    AtomicMeasure m_{};
};

using DemandMeasure = RoleMeasure<struct DemandTag>;
using SupplyMeasure = RoleMeasure<struct SupplyTag>;

/// Remaining demand function F_d(p) = mu_d((p, inf)): total buy volume
/// strictly above p. Non-increasing, right-continuous, vanishes beyond the
/// largest atom.
inline StepFn rdf_of(const DemandMeasure& d) {
    const auto& atoms = d.atoms();
    Qty running = d.total_mass();
    std::vector<Qty> bps;
    std::vector<Qty> vals;
    bps.reserve(atoms.size());
    vals.reserve(atoms.size());
    Qty left = running;
    for (const Atom& a : atoms) {
        running -= a.mass;
        bps.push_back(a.price);
        vals.push_back(running);
    }
    return StepFn(Direction::NonIncreasing, std::move(left), std::move(bps), std::move(vals));
}

/// Remaining supply function F_s(p) = mu_s((0, p]): total sell volume at or
/// below p. Non-decreasing, right-continuous, vanishes at zero.
inline StepFn rsf_of(const SupplyMeasure& s) {
    Qty running;
    std::vector<Qty> bps;
    std::vector<Qty> vals;
    bps.reserve(s.atoms().size());
    vals.reserve(s.atoms().size());
    for (const Atom& a : s.atoms()) {
        running += a.mass;
        bps.push_back(a.price);
        vals.push_back(running);
    }
    return StepFn(Direction::NonDecreasing, Qty(), std::move(bps), std::move(vals));
}

/// Inverse of rdf_of: atoms at the jump points with mass equal to the jump
/// size. Rejects functions that do not vanish at the right boundary.
inline DemandMeasure measure_of_rdf(const StepFn& f) {
    if (f.direction() != Direction::NonIncreasing)
        throw ValidationError("measure_of_rdf: function must be non-increasing");
    if (!f.final_value().is_zero())
        throw ValidationError("measure_of_rdf: function must vanish at infinity");
    std::vector<Atom> atoms;
    for (auto& [price, jump] : f.jumps()) atoms.push_back({std::move(price), std::move(jump)});
    return DemandMeasure(std::move(atoms));
}

inline SupplyMeasure measure_of_rsf(const StepFn& f) {
    if (f.direction() != Direction::NonDecreasing)
        throw ValidationError("measure_of_rsf: function must be non-decreasing");
    if (!f.left_value().is_zero())
        throw ValidationError("measure_of_rsf: function must vanish at zero");
    std::vector<Atom> atoms;
    for (auto& [price, jump] : f.jumps()) atoms.push_back({std::move(price), std::move(jump)});
    return SupplyMeasure(std::move(atoms));
}

}  // namespace mdyn
