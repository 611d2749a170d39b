// mdyn - batch front end for limit order book clearing, iso-util
// conversion, market aggregation and plot-data export.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mdyn/mdyn.hpp"

namespace fs = std::filesystem;
using namespace mdyn;

namespace {

std::string level_str(const SupplyLevel& s) { return "(" + s.x.str() + ", " + s.y.str() + ")"; }

struct Report {
    ClearingMode mode;
    const CrossingProfile& profile;
    Qty profit;
    Entropy s;
    SupplyLevel before;
    SupplyLevel after;
};

void print_report(std::ostream& os, const Report& r) {
    os << "mode:          " << (r.mode == ClearingMode::Adiabatic ? "adiabatic" : "isoutil")
       << "\n"
       << "p_d:           " << r.profile.p_d.str() << "\n"
       << "p_s:           " << (r.profile.p_s ? r.profile.p_s->str() : "inf") << "\n"
       << "Z:             " << r.profile.clearing_volume.str() << "\n"
       << "profit:        " << r.profit.str() << "\n"
       << "entropy:       (" << r.s.dx.str() << ", " << r.s.dy.str() << ")\n"
       << "levels before: " << level_str(r.before) << "\n"
       << "levels after:  " << level_str(r.after) << "\n";
}

io::Json report_json(const Report& r) {
    io::Json doc;
    doc["mode"] = r.mode == ClearingMode::Adiabatic ? "adiabatic" : "isoutil";
    doc["p_d"] = r.profile.p_d.str();
    doc["p_s"] = r.profile.p_s ? io::Json(r.profile.p_s->str()) : io::Json("inf");
    doc["Z"] = r.profile.clearing_volume.str();
    doc["profit"] = r.profit.str();
    doc["entropy"] = {{"dx", r.s.dx.str()}, {"dy", r.s.dy.str()}};
    doc["levels_before"] = {{"x", r.before.x.str()}, {"y", r.before.y.str()}};
    doc["levels_after"] = {{"x", r.after.x.str()}, {"y", r.after.y.str()}};
    return doc;
}

void emit_report(const Report& r, const std::string& report_json_path) {
    print_report(std::cout, r);
    if (!report_json_path.empty())
        io::write_text_file(report_json_path, report_json(r).dump(2) + "\n");
}

Book load_book_input(const fs::path& path) {
    io::Document doc = io::load_document(path);
    if (const Book* b = io::as_book(doc)) return *b;
    throw ValidationError(path.string() + ": expected a book document");
}

std::vector<Qty> parse_grid(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw ParseError("--grid expects lo:hi:step");
    Qty lo = Qty::parse(parts[0]);
    Qty hi = Qty::parse(parts[1]);
    Qty step = Qty::parse(parts[2]);
    if (step.is_zero() || hi < lo) throw ParseError("--grid expects lo <= hi and step > 0");
    std::vector<Qty> grid;
    for (Qty p = lo; p <= hi; p += step) grid.push_back(p);
    return grid;
}

void write_or_print(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        io::write_text_file(out_path, text);
    }
}

int run_clear(const std::string& input, ClearingMode mode, const std::string& out,
              const std::string& report_path) {
    Book book = load_book_input(input);
    SupplyLevel before = supply_levels(book);
    ClearingResult result = clear(book, mode);
    Entropy s = entropy(result.profile, mode);
    Report report{mode,
                  result.profile,
                  arbitrage_profit(result.profile),
                  s,
                  before,
                  apply_entropy(before, s)};
    emit_report(report, report_path);
    if (!out.empty()) io::write_text_file(out, io::to_json_string(result.book));
    return 0;
}

int run_aggregate(const std::vector<std::string>& inputs, ClearingMode mode,
                  const std::string& out_prefix, const std::string& report_path) {
    std::vector<Book> books;
    books.reserve(inputs.size());
    for (const std::string& path : inputs) books.push_back(io::to_book(io::load_document(path)));
    AggregationResult agg = aggregate_settled(books, mode);
    Report report{mode,       crossing(agg.unsettled), agg.profit,
                  agg.entropy, agg.levels_before,       agg.levels_after};
    emit_report(report, report_path);
    if (!out_prefix.empty()) {
        io::write_text_file(out_prefix + ".unsettled.book.json",
                            io::to_json_string(agg.unsettled));
        io::write_text_file(out_prefix + ".settled.book.json", io::to_json_string(agg.settled));
        io::write_text_file(out_prefix + ".unsettled.isoutil.json",
                            io::to_json_string(book_to_isoutil(agg.unsettled)));
        io::write_text_file(out_prefix + ".settled.isoutil.json",
                            io::to_json_string(book_to_isoutil(agg.settled)));
    }
    return 0;
}

int run_convert(const std::string& input, const std::string& to, const std::string& out) {
    io::Document doc = io::load_document(input);
    std::string text;
    if (to == "book") {
        text = io::to_json_string(io::to_book(doc));
    } else {
        const Book* b = io::as_book(doc);
        text = io::to_json_string(b ? book_to_isoutil(*b) : std::get<IsoUtil>(doc));
    }
    write_or_print(out, text);
    return 0;
}

std::string csv_rows_of_stepfn(const StepFn& f, const std::vector<Qty>& grid) {
    std::ostringstream os;
    os << "price,quantity\n";
    if (!grid.empty()) {
        for (const Qty& p : grid) os << p.str() << "," << f.eval(p).str() << "\n";
        return os.str();
    }
    // both corner points of every jump
    const Qty* prev = &f.left_value();
    for (std::size_t i = 0; i < f.breakpoints().size(); ++i) {
        os << f.breakpoints()[i].str() << "," << prev->str() << "\n";
        os << f.breakpoints()[i].str() << "," << f.values()[i].str() << "\n";
        prev = &f.values()[i];
    }
    return os.str();
}

int run_plot_data(const std::string& input, const std::string& series, const std::string& grid,
                  const std::string& out) {
    io::Document doc = io::load_document(input);
    std::string text;
    if (series == "isoutil") {
        const Book* b = io::as_book(doc);
        IsoUtil iso = b ? book_to_isoutil(*b) : std::get<IsoUtil>(doc);
        std::ostringstream os;
        os << "x,y\n";
        for (const SupplyLevel& v : iso.vertices()) os << v.x.str() << "," << v.y.str() << "\n";
        text = os.str();
    } else {
        Book book = io::to_book(doc);
        std::vector<Qty> grid_points;
        if (!grid.empty()) grid_points = parse_grid(grid);
        text = csv_rows_of_stepfn(series == "rdf" ? rdf_of(book) : rsf_of(book), grid_points);
    }
    write_or_print(out, text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"limit order book clearing, iso-util conversion and market aggregation"};
    app.require_subcommand(1);

    std::map<std::string, ClearingMode> mode_names{{"adiabatic", ClearingMode::Adiabatic},
                                                   {"isoutil", ClearingMode::IsoUtil}};

    std::string input;
    std::vector<std::string> inputs;
    std::string out;
    std::string report_path;
    std::string to;
    std::string series;
    std::string grid;
    ClearingMode mode = ClearingMode::Adiabatic;

    CLI::App* clear_cmd = app.add_subcommand("clear", "settle an unsettled book");
    clear_cmd->add_option("input", input, "book file (.json or .csv)")->required();
    clear_cmd->add_option("--mode", mode, "clearing mode")
        ->required()
        ->transform(CLI::CheckedTransformer(mode_names, CLI::ignore_case));
    clear_cmd->add_option("--out", out, "path for the cleared book document");
    clear_cmd->add_option("--report-json", report_path, "path for the machine-readable report");

    CLI::App* agg_cmd = app.add_subcommand("aggregate", "aggregate markets via arbitrage");
    agg_cmd->add_option("inputs", inputs, "book or iso-util files")->required();
    agg_cmd->add_option("--mode", mode, "clearing mode")
        ->required()
        ->transform(CLI::CheckedTransformer(mode_names, CLI::ignore_case));
    agg_cmd->add_option("--out", out, "output prefix for the four result documents");
    agg_cmd->add_option("--report-json", report_path, "path for the machine-readable report");

    CLI::App* conv_cmd = app.add_subcommand("convert", "convert between book and iso-util");
    conv_cmd->add_option("input", input, "book or iso-util file")->required();
    conv_cmd->add_option("--to", to, "target representation")
        ->required()
        ->check(CLI::IsMember({"book", "isoutil"}));
    conv_cmd->add_option("--out", out, "output path (stdout when omitted)");

    CLI::App* plot_cmd = app.add_subcommand("plot-data", "export plot-ready CSV series");
    plot_cmd->add_option("input", input, "book or iso-util file")->required();
    plot_cmd->add_option("--series", series, "series to export")
        ->required()
        ->check(CLI::IsMember({"isoutil", "rdf", "rsf"}));
    plot_cmd->add_option("--grid", grid, "sample prices lo:hi:step instead of jump corners");
    plot_cmd->add_option("--out", out, "output path (stdout when omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (clear_cmd->parsed()) return run_clear(input, mode, out, report_path);
        if (agg_cmd->parsed()) return run_aggregate(inputs, mode, out, report_path);
        if (conv_cmd->parsed()) return run_convert(input, to, out);
        if (plot_cmd->parsed()) return run_plot_data(input, series, grid, out);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 3;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
