#include "covsep/document.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "covsep/errors.hpp"

namespace covsep {

namespace {

using nlohmann::json;

int require_positive_int(const json& j, const char* key) {
    if (!j.contains(key))
        throw ParseError(std::string("missing field '") + key + "'");
    const json& value = j.at(key);
    if (!value.is_number_integer())
        throw ParseError(std::string("field '") + key + "' must be an integer");
    const auto n = value.get<long long>();
    if (n < 1)
        throw ParseError(std::string("field '") + key + "' must be at least 1");
    return static_cast<int>(n);
}

}  // namespace

MatrixDocument parse_document(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid document: ") + e.what());
    }
    if (!j.is_object())
        throw ParseError("document must be a single object");

    MatrixDocument doc;
    doc.f_a = require_positive_int(j, "f_a");
    doc.f_b = require_positive_int(j, "f_b");
    const Index n = 2 * static_cast<Index>(doc.f_a + doc.f_b);

    if (!j.contains("gamma") || !j.at("gamma").is_array())
        throw ParseError("field 'gamma' must be an array of rows");
    const json& rows = j.at("gamma");
    if (static_cast<Index>(rows.size()) != n)
        throw ParseError("gamma must have 2*(f_a+f_b) = " + std::to_string(n) + " rows");

    doc.gamma.resize(n, n);
    for (Index i = 0; i < n; ++i) {
        const json& row = rows.at(static_cast<std::size_t>(i));
        if (!row.is_array() || static_cast<Index>(row.size()) != n)
            throw ParseError("gamma row " + std::to_string(i) + " must have " +
                             std::to_string(n) + " numbers");
        for (Index k = 0; k < n; ++k) {
            const json& entry = row.at(static_cast<std::size_t>(k));
            if (!entry.is_number())
                throw ParseError("gamma entry (" + std::to_string(i) + "," +
                                 std::to_string(k) + ") is not a number");
            doc.gamma(i, k) = entry.get<double>();
        }
    }

    if (j.contains("mean")) {
        const json& mean = j.at("mean");
        if (!mean.is_array() || static_cast<Index>(mean.size()) != n)
            throw ParseError("mean must have " + std::to_string(n) + " numbers");
        RealVector m(n);
        for (Index i = 0; i < n; ++i) {
            const json& entry = mean.at(static_cast<std::size_t>(i));
            if (!entry.is_number())
                throw ParseError("mean entry " + std::to_string(i) + " is not a number");
            m(i) = entry.get<double>();
        }
        doc.mean = std::move(m);
    }

    if (j.contains("meta")) {
        const json& meta = j.at("meta");
        if (!meta.is_object())
            throw ParseError("meta must be an object of strings");
        for (const auto& [key, value] : meta.items()) {
            if (!value.is_string())
                throw ParseError("meta entry '" + key + "' must be a string");
            doc.meta[key] = value.get<std::string>();
        }
    }
    return doc;
}

MatrixDocument read_document(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_document(buffer.str());
}

std::string serialize_document(const MatrixDocument& doc) {
    json j;
    j["f_a"] = doc.f_a;
    j["f_b"] = doc.f_b;

    json rows = json::array();
    for (Index i = 0; i < doc.gamma.rows(); ++i) {
        json row = json::array();
        for (Index k = 0; k < doc.gamma.cols(); ++k)
            row.push_back(doc.gamma(i, k));
        rows.push_back(std::move(row));
    }
    j["gamma"] = std::move(rows);

    if (doc.mean) {
        json mean = json::array();
        for (Index i = 0; i < doc.mean->size(); ++i)
            mean.push_back((*doc.mean)(i));
        j["mean"] = std::move(mean);
    }
    if (!doc.meta.empty()) {
        json meta = json::object();
        for (const auto& [key, value] : doc.meta)
            meta[key] = value;
        j["meta"] = std::move(meta);
    }
    return j.dump(2) + "\n";
}

void write_document(const MatrixDocument& doc, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw ParseError("cannot write file: " + path);
    out << serialize_document(doc);
    if (!out)
        throw ParseError("write failed: " + path);
}

}  // namespace covsep
