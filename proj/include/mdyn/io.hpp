#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "mdyn/book.hpp"
#include "mdyn/errors.hpp"
#include "mdyn/isoutil.hpp"
#include "mdyn/measures.hpp"
#include "mdyn/qty.hpp"

namespace mdyn::io {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kBookVersion = "book-v1";
inline constexpr std::string_view kIsoUtilVersion = "isoutil-v1";

namespace detail {

inline Qty qty_field(const Json& j, const char* context) {
    if (j.is_string()) return Qty::parse(j.get<std::string>());
    if (j.is_number_unsigned()) return Qty(j.get<unsigned long long>());
    if (j.is_number_integer()) return Qty(j.get<long long>());
    throw ParseError(std::string(context) + ": expected a decimal string");
}

inline std::vector<Atom> atoms_field(const Json& j, const char* side) {
    if (!j.is_array()) throw ValidationError(std::string(side) + ": expected an array");
    std::vector<Atom> atoms;
    atoms.reserve(j.size());
    for (const Json& row : j) {
        if (!row.is_object() || !row.contains("price") || !row.contains("qty"))
            throw ValidationError(std::string(side) + ": entries need price and qty");
        atoms.push_back({qty_field(row.at("price"), side), qty_field(row.at("qty"), side)});
    }
    return atoms;
}

inline SupplyLevel level_field(const Json& j, const char* context) {
    if (!j.is_array() || j.size() != 2)
        throw ValidationError(std::string(context) + ": expected an [x, y] pair");
    return {qty_field(j.at(0), context), qty_field(j.at(1), context)};
}

inline std::string trimmed(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace detail

inline Book book_from_json(const Json& doc) {
    if (!doc.is_object() || !doc.contains("version"))
        throw ValidationError("book document: missing version tag");
    if (doc.at("version") != kBookVersion)
        throw ValidationError("book document: unsupported version");
    if (!doc.contains("bids") || !doc.contains("asks"))
        throw ValidationError("book document: missing bids or asks");
    return Book(DemandMeasure(detail::atoms_field(doc.at("bids"), "bids")),
                SupplyMeasure(detail::atoms_field(doc.at("asks"), "asks")));
}

inline IsoUtil isoutil_from_json(const Json& doc) {
    if (!doc.is_object() || !doc.contains("version"))
        throw ValidationError("iso-util document: missing version tag");
    if (doc.at("version") != kIsoUtilVersion)
        throw ValidationError("iso-util document: unsupported version");
    if (!doc.contains("vertices") || !doc.contains("current"))
        throw ValidationError("iso-util document: missing vertices or current");
    const Json& verts = doc.at("vertices");
    if (!verts.is_array()) throw ValidationError("iso-util document: vertices must be an array");
    std::vector<SupplyLevel> vertices;
    vertices.reserve(verts.size());
    for (const Json& v : verts) vertices.push_back(detail::level_field(v, "vertices"));
    return IsoUtil(std::move(vertices), detail::level_field(doc.at("current"), "current"));
}

/// Hand-authored fixture format: header "side,price,qty", one bid/ask row
/// per level.
inline Book book_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    bool saw_header = false;
    std::vector<Atom> bids;
    std::vector<Atom> asks;
    while (std::getline(in, line)) {
        std::string row = detail::trimmed(line);
        if (row.empty()) continue;
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            std::size_t comma = row.find(',', start);
            cells.push_back(detail::trimmed(
                std::string_view(row).substr(start, comma == std::string::npos ? comma
                                                                               : comma - start)));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (!saw_header) {
            if (cells != std::vector<std::string>{"side", "price", "qty"})
                throw ParseError("book csv: expected header side,price,qty");
            saw_header = true;
            continue;
        }
        if (cells.size() != 3) throw ParseError("book csv: expected 3 columns");
        if (cells[0] == "bid") {
            bids.push_back({Qty::parse(cells[1]), Qty::parse(cells[2])});
        } else if (cells[0] == "ask") {
            asks.push_back({Qty::parse(cells[1]), Qty::parse(cells[2])});
        } else {
            throw ParseError("book csv: side must be bid or ask");
        }
    }
    if (!saw_header) throw ParseError("book csv: empty input");
    return Book(DemandMeasure(std::move(bids)), SupplyMeasure(std::move(asks)));
}

inline Json to_json(const Book& b) {
    Json doc;
    doc["version"] = kBookVersion;
    Json bids = Json::array();
    // bids listed best price first, asks cheapest first (table convention)
    const auto& d = b.demand().atoms();
    for (auto it = d.rbegin(); it != d.rend(); ++it)
        bids.push_back({{"price", it->price.str()}, {"qty", it->mass.str()}});
    Json asks = Json::array();
    for (const Atom& a : b.supply().atoms())
        asks.push_back({{"price", a.price.str()}, {"qty", a.mass.str()}});
    doc["bids"] = std::move(bids);
    doc["asks"] = std::move(asks);
    return doc;
}

inline Json to_json(const IsoUtil& i) {
    Json doc;
    doc["version"] = kIsoUtilVersion;
    Json verts = Json::array();
    for (const SupplyLevel& v : i.vertices()) verts.push_back({v.x.str(), v.y.str()});
    doc["vertices"] = std::move(verts);
    doc["current"] = {i.current().x.str(), i.current().y.str()};
    doc["convex"] = i.convex();
    return doc;
}

template <typename T>
std::string to_json_string(const T& value) {
    return to_json(value).dump(2) + "\n";
}

using Document = std::variant<Book, IsoUtil>;

inline Document parse_document(const std::string& text, bool csv) {
    if (csv) return book_from_csv(text);
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid json: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("version"))
        throw ValidationError("document: missing version tag");
    if (doc.at("version") == kBookVersion) return book_from_json(doc);
    if (doc.at("version") == kIsoUtilVersion) return isoutil_from_json(doc);
    throw ValidationError("document: unknown version tag");
}

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot write " + path.string());
    out << text;
}

inline Document load_document(const std::filesystem::path& path) {
    return parse_document(read_text_file(path), path.extension() == ".csv");
}

inline const Book* as_book(const Document& doc) { return std::get_if<Book>(&doc); }
inline const IsoUtil* as_isoutil(const Document& doc) { return std::get_if<IsoUtil>(&doc); }

/// A book either way: iso-util documents are converted (requires convexity).
inline Book to_book(const Document& doc) {
    if (const Book* b = as_book(doc)) return *b;
    return isoutil_to_book(std::get<IsoUtil>(doc));
}

}  // namespace mdyn::io
