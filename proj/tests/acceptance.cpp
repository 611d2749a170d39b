// Acceptance suite: every criterion runs at its stated tolerance and prints
// one pass/fail line. Golden criteria go through the CLI and are exact
// (rational arithmetic end to end); closed-form criteria carry the
// documented floating-point tolerances.

#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "test_support.hpp"

using namespace mdyn;
using namespace mdyn::test;

namespace {

class Check {
public:
    void require(bool cond, const std::string& what) {
        if (!cond && first_failure_.empty()) first_failure_ = what;
        ok_ = ok_ && cond;
    }
    template <typename A, typename B>
    void equal(const A& a, const B& b, const std::string& what) {
        require(a == b, what);
    }
    void near(double a, double b, double rel, const std::string& what) {
        require(std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)}), what);
    }
    bool ok() const { return ok_; }
    const std::string& first_failure() const { return first_failure_; }

private:
    bool ok_ = true;
    std::string first_failure_;
};

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

// 1. clear --mode adiabatic on Table 2 reproduces Table 1 and the worked
//    entropy/profit numbers, all exact.
void golden_adiabatic(Check& c) {
    fs::path dir = make_temp_dir();
    fs::path out = dir / "out.json";
    fs::path rep = dir / "rep.json";
    CmdResult r = run_cli("clear " + q(fixture("table2.json")) + " --mode adiabatic --out " +
                          q(out) + " --report-json " + q(rep));
    c.equal(r.exit_code, 0, "clear exits 0");
    c.require(slurp(out) == slurp(fixture("table1.json")), "output == table1.json bytes");
    auto doc = nlohmann::json::parse(slurp(rep));
    c.equal(doc["Z"], "49", "Z = 49");
    c.equal(doc["p_d"], "110", "p_d = 110");
    c.equal(doc["p_s"], "110", "p_s = 110");
    c.equal(doc["profit"], "3190", "P = 3190");
    c.require(doc["entropy"]["dx"] == "7790" && doc["entropy"]["dy"] == "49",
              "S_a = (7790, 49)");
    c.require(doc["levels_before"]["x"] == "13230" && doc["levels_before"]["y"] == "211",
              "levels before = (13230, 211)");
    c.require(doc["levels_after"]["x"] == "5440" && doc["levels_after"]["y"] == "162",
              "levels after = (5440, 162)");
}

// 2. clear --mode isoutil on Table 2 reproduces Table 4, S_i and levels.
void golden_isoutil(Check& c) {
    fs::path dir = make_temp_dir();
    fs::path out = dir / "out.json";
    fs::path rep = dir / "rep.json";
    CmdResult r = run_cli("clear " + q(fixture("table2.json")) + " --mode isoutil --out " +
                          q(out) + " --report-json " + q(rep));
    c.equal(r.exit_code, 0, "clear exits 0");
    c.require(slurp(out) == slurp(fixture("table4.json")), "output == table4.json bytes");
    auto doc = nlohmann::json::parse(slurp(rep));
    c.require(doc["entropy"]["dx"] == "3190" && doc["entropy"]["dy"] == "0", "S_i = (3190, 0)");
    c.require(doc["levels_after"]["x"] == "10040" && doc["levels_after"]["y"] == "211",
              "levels after = (10040, 211)");
}

// 3. Table 1 <-> Table 5 in both directions; Table 2 -> Table 6 with the
//    non-convexity flagged; non-convex -> book rejected with exit 4.
void golden_conversion(Check& c) {
    fs::path dir = make_temp_dir();
    fs::path out = dir / "out.json";
    CmdResult r =
        run_cli("convert " + q(fixture("table1.json")) + " --to isoutil --out " + q(out));
    c.equal(r.exit_code, 0, "table1 -> isoutil exits 0");
    c.require(slurp(out) == slurp(fixture("table5.isoutil.json")), "table1 -> table5 bytes");

    r = run_cli("convert " + q(fixture("table5.isoutil.json")) + " --to book --out " + q(out));
    c.equal(r.exit_code, 0, "table5 -> book exits 0");
    c.require(slurp(out) == slurp(fixture("table1.json")), "table5 -> table1 bytes");

    r = run_cli("convert " + q(fixture("table2.json")) + " --to isoutil --out " + q(out));
    c.equal(r.exit_code, 0, "table2 -> isoutil exits 0");
    c.require(slurp(out) == slurp(fixture("table6.isoutil.json")), "table2 -> table6 bytes");
    auto doc = nlohmann::json::parse(slurp(out));
    c.equal(doc["convex"], nlohmann::json(false), "table6 flagged non-convex");

    r = run_cli("convert " + q(fixture("table6.isoutil.json")) + " --to book");
    c.equal(r.exit_code, 4, "non-convex -> book exits 4");
}

// 4. Marginal prices of the Table 5 iso-util at (5440, 162).
void marginal_prices_criterion(Check& c) {
    IsoUtil iso(table5_vertices(), {5440, 162});
    MarginalPrices mp = marginal_prices(iso);
    c.equal(mp.bid, std::optional<Qty>(Qty(100)), "bid marginal price = 100");
    c.equal(mp.ask, std::optional<Qty>(Qty(110)), "ask marginal price = 110");
    c.equal(mp.bid, best_bid(table1_book()), "bid matches the book's best bid");
    c.equal(mp.ask, best_ask(table1_book()), "ask matches the book's best ask");
}

// 5. Five consumers and one producer aggregate and clear to the settled
//    car-market iso-util; Z, entropy and profit checked against the
//    greedy-matching oracle.
void car_market(Check& c) {
    fs::path dir = make_temp_dir();
    fs::path prefix = dir / "car";
    fs::path rep = dir / "rep.json";
    std::string files;
    for (int i = 0; i < 5; ++i) files += q(fixture("consumer.isoutil.json")) + " ";
    files += q(fixture("producer.isoutil.json"));
    CmdResult r = run_cli("aggregate " + files + " --mode adiabatic --out " + q(prefix) +
                          " --report-json " + q(rep));
    c.equal(r.exit_code, 0, "aggregate exits 0");

    auto iso = nlohmann::json::parse(slurp(prefix.string() + ".settled.isoutil.json"));
    auto expected = nlohmann::json::parse(R"([["0","2"],["20000","1"],["60000","0"]])");
    c.equal(iso["vertices"], expected, "settled iso-util vertices (0,2),(20000,1),(60000,0)");

    auto doc = nlohmann::json::parse(slurp(rep));
    c.equal(doc["Z"], "4", "Z = 4");
    c.require(doc["entropy"]["dx"] == "80000" && doc["entropy"]["dy"] == "4",
              "S_a = (80000, 4)");
    c.equal(doc["profit"], "20000", "profit = 20000");

    std::vector<Book> markets(5, consumer_book());
    markets.push_back(producer_book());
    GreedyOutcome oracle = greedy_match_oracle(aggregate_unsettled(markets));
    c.equal(oracle.profit, Qty(20000), "greedy oracle profit = 20000");
    c.equal(oracle.volume, Qty(4), "greedy oracle volume = 4");
}

// 6. Discretized ideal books reproduce the closed forms within 1e-6
//    relative; four times the temperature doubles the liquidity.
void ideal_closed_forms(Check& c) {
    IdealMarket m(Qty(1), {1, 1});
    std::vector<Qty> grid;
    for (int i = 1; i <= 100; ++i) grid.push_back(Qty::ratio(i, 25));  // 0.04 .. 4
    Book b = m.discretize(grid);
    StepFn rsf = rsf_of(b);
    StepFn rdf = rdf_of(b);
    bool rsf_ok = true;
    bool rdf_ok = true;
    for (const Qty& p : grid) {
        double pd = p.to_double();
        double want_s = pd >= 1.0 ? 1.0 - 1.0 / std::sqrt(pd) : 0.0;
        double want_d = pd < 1.0 ? 1.0 / std::sqrt(pd) - 1.0 : 0.0;
        rsf_ok = rsf_ok &&
                 std::abs(rsf.eval(p).to_double() - want_s) <= 1e-6 * std::max(1.0, want_s);
        rdf_ok = rdf_ok &&
                 std::abs(rdf.eval(p).to_double() - want_d) <= 1e-6 * std::max(1.0, want_d);
    }
    c.require(rsf_ok, "F_s(p) = 1 - 1/sqrt(p) on the grid (1e-6 rel)");
    c.require(rdf_ok, "F_d(p) = 1/sqrt(p) - 1 on the grid (1e-6 rel)");

    IdealMarket hot(Qty(4), {2, 2});
    bool doubled = true;
    for (double p : {1.2, 1.7, 2.5, 3.5, 9.0}) {
        doubled = doubled && std::abs(hot.rsf(p) - 2.0 * m.rsf(p)) <= 1e-9;
    }
    c.require(doubled, "T -> 4T doubles F_s (twice the liquidity)");
}

// 7. Two same-price ideal markets aggregate to the activity-additive ideal
//    market; temperature is super-additive: (sqrt(T1) + sqrt(T2))^2.
void ideal_aggregation_law(Check& c) {
    IdealMarket m1(Qty(1), {1, 1});
    IdealMarket m2(Qty(4), {2, 2});
    std::vector<Qty> grid;
    for (int i = 1; i <= 120; ++i) grid.push_back(Qty::ratio(i, 20));
    Book agg = aggregate_unsettled(std::vector<Book>{m1.discretize(grid), m2.discretize(grid)});
    IdealAggregateForm form = ideal_aggregate_closed_form(1.0, 1.0, 2.0, 1.0);
    c.require(form.same_price(), "closed form detects equal marginal prices");
    c.near(form.combined_activity(), 3.0, 1e-12, "mean activity is additive");
    c.near(form.combined_temperature(), 9.0, 1e-12,
           "temperature is (sqrt(T1)+sqrt(T2))^2 = 9");
    bool additive = true;
    StepFn rsf = rsf_of(agg);
    StepFn rdf = rdf_of(agg);
    for (const Qty& p : grid) {
        double pd = p.to_double();
        additive = additive && std::abs(rsf.eval(p).to_double() - form.rsf(pd)) <=
                                   1e-6 * std::max(1.0, form.rsf(pd));
        additive = additive && std::abs(rdf.eval(p).to_double() - form.rdf(pd)) <=
                                   1e-6 * std::max(1.0, form.rdf(pd));
    }
    c.require(additive, "aggregate book matches activity A1+A2 on the grid (1e-6 rel)");
}

// 8. Randomized property suite over 1e4 generated atomic books, fixed seed.
void property_suite(Check& c) {
    constexpr int kBooks = 10000;
    Rng rng(424242);
    for (int i = 0; i < kBooks && c.ok(); ++i) {
        Book b = random_book(rng);
        CrossingProfile prof = crossing(b);
        GreedyOutcome oracle = greedy_match_oracle(b);
        Qty profit = arbitrage_profit(prof);

        ClearingResult adiabatic = clear_adiabatic(b);
        c.require(is_settled(adiabatic.book), "clear_adiabatic output is settled");
        c.require(clear_adiabatic(adiabatic.book).book == adiabatic.book,
                  "clear_adiabatic is idempotent");

        ClearingResult isoutil = clear_isoutil(b);
        SupplyLevel before = supply_levels(b);
        Entropy s_a = entropy(prof, ClearingMode::Adiabatic);
        Entropy s_i = entropy(prof, ClearingMode::IsoUtil);
        c.require(supply_levels(adiabatic.book) == apply_entropy(before, s_a),
                  "conservation (x_s,y_s) = (x_u,y_u) - S_a");
        c.require(supply_levels(isoutil.book) == apply_entropy(before, s_i),
                  "conservation (x_s,y_s) = (x_u,y_u) - S_i");

        c.require(profit == oracle.profit, "profit equals the greedy-matching oracle");
        c.require(prof.clearing_volume == oracle.volume,
                  "Z equals the oracle's matched volume");
        c.require(arbitrage_profit(isoutil.profile) == profit,
                  "profit is identical under both clearing modes");
        c.require(s_i.dx <= s_a.dx && s_i.dy <= s_a.dy, "S_i <= S_a componentwise");

        // settled <=> convex iso-util; at a touching price level the curve
        // stays convex while the book counts as unsettled, so the exact
        // biconditional is checked on books without a bid/ask price tie.
        IsoUtil iso = book_to_isoutil(b);
        auto bid = best_bid(b);
        auto ask = best_ask(b);
        bool touching = bid && ask && *bid == *ask;
        bool crossed = bid && ask && *ask < *bid;
        if (!touching) {
            c.require(is_settled(b) == iso.convex(), "settled <=> convex iso-util");
        } else {
            c.require(iso.convex() && !is_settled(b) && profit.is_zero(),
                      "touching book: convex, unsettled, zero profit");
        }
        c.require(crossed == !iso.convex(), "strictly crossed <=> non-convex");

        // round-trip book <-> iso-util on settled books
        c.require(isoutil_to_book(book_to_isoutil(adiabatic.book)) == adiabatic.book,
                  "round-trip book -> iso-util -> book on settled books");

        // generalized-inverse laws on the book's remaining functions
        StepFn rdf = rdf_of(b);
        if (!rdf.is_constant()) {
            StepFn inv = generalized_inverse(rdf);
            c.require(inv.direction() == Direction::NonIncreasing,
                      "generalized inverse keeps the direction");
            bool proper = true;
            const Qty* prev = nullptr;
            for (const Qty& v : inv.values()) {
                if (prev && !(v < *prev)) proper = false;
                prev = &v;
            }
            c.require(proper, "generalized inverse is monotone");
            for (const Qty& bp : rdf.breakpoints()) {
                if (inv.eval(rdf.eval(bp)) != bp) {
                    c.require(false, "proper-inverse property g(f(b)) = b");
                    break;
                }
            }
            c.require(generalized_inverse(inv) == rdf, "double inverse returns the function");
        }
    }
    std::ostringstream note;
    note << kBooks << " books";
    c.require(true, note.str());
}

// 9. Analytic marginal prices vs central finite differences on a 20x20
//    interior grid, relative error <= 1e-8, both utility kinds.
void derivative_check(Check& c) {
    for (const UtilityFn& u : {UtilityFn::ideal(),
                               UtilityFn::cobb_douglas(1.5, Qty::ratio(2, 5), Qty::ratio(3, 7))}) {
        double worst = 0.0;
        for (int xi = 1; xi <= 20; ++xi) {
            for (int yi = 1; yi <= 20; ++yi) {
                double x = 0.5 + 0.5 * xi;
                double y = 0.5 + 0.5 * yi;
                double analytic =
                    utility_marginal_price(u, {Qty::from_double_exact(x),
                                               Qty::from_double_exact(y)})
                        .to_double();
                double hx = x * 1e-5;
                double hy = y * 1e-5;
                double fd = ((u.value(x, y + hy) - u.value(x, y - hy)) / (2 * hy)) /
                            ((u.value(x + hx, y) - u.value(x - hx, y)) / (2 * hx));
                worst = std::max(worst, std::abs(analytic - fd) / std::abs(analytic));
            }
        }
        c.require(worst <= 1e-8, "relative error <= 1e-8 on the 20x20 grid");
    }
}

struct Criterion {
    int id;
    std::string name;
    std::function<void(Check&)> run;
};

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "golden adiabatic clearing: Table 2 -> Table 1, Z=49, P=3190, S_a=(7790,49)",
         golden_adiabatic},
        {2, "golden iso-util clearing: Table 2 -> Table 4, S_i=(3190,0), levels (10040,211)",
         golden_isoutil},
        {3, "golden conversion: Table 1 <-> Table 5, Table 2 -> Table 6 (non-convex flagged)",
         golden_conversion},
        {4, "marginal prices of the Table 5 iso-util at (5440,162): bid 100 / ask 110",
         marginal_prices_criterion},
        {5, "car market: 5 consumers + producer -> iso-util (0,2),(20000,1),(60000,0), Z=4",
         car_market},
        {6, "ideal-market closed forms on a grid (1e-6 rel), 4x temperature = 2x liquidity",
         ideal_closed_forms},
        {7, "ideal aggregation: activity additive, temperature (sqrt(T1)+sqrt(T2))^2",
         ideal_aggregation_law},
        {8, "property suite over 10^4 random books (seed 424242)", property_suite},
        {9, "analytic vs finite-difference marginal prices (<= 1e-8 rel, 20x20 grid)",
         derivative_check},
    };

    int failures = 0;
    for (const Criterion& criterion : criteria) {
        Check check;
        try {
            criterion.run(check);
        } catch (const std::exception& e) {
            check.require(false, std::string("exception: ") + e.what());
        }
        if (check.ok()) {
            std::cout << "[PASS] " << criterion.id << ": " << criterion.name << "\n";
        } else {
            ++failures;
            std::cout << "[FAIL] " << criterion.id << ": " << criterion.name << " -- "
                      << check.first_failure() << "\n";
        }
    }
    if (failures == 0) {
        std::cout << "acceptance: all " << criteria.size() << " criteria passed\n";
    } else {
        std::cout << "acceptance: " << failures << " criteria FAILED\n";
    }
    return failures == 0 ? 0 : 1;
}
