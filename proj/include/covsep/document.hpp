#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "covsep/types.hpp"

namespace covsep {

/// On-disk representation of a covariance matrix: mode counts for the two
/// sides, the matrix itself, an optional mean vector, and free-form metadata.
struct MatrixDocument {
    int f_a = 1;
    int f_b = 1;
    RealMatrix gamma;
    std::optional<RealVector> mean;
    std::map<std::string, std::string> meta;

    SystemShape shape() const { return {f_a, f_b}; }
};

/// Parses a document from JSON text. Throws ParseError with a description of
/// the offending field on malformed input; dimension consistency between
/// (f_a, f_b) and gamma is enforced here.
MatrixDocument parse_document(const std::string& text);

/// Reads and parses a document file. Throws ParseError when the file cannot
/// be opened.
MatrixDocument read_document(const std::string& path);

/// Serializes a document to JSON. Numbers are written so that they round-trip
/// exactly through the shortest representation that restores the double.
std::string serialize_document(const MatrixDocument& doc);

/// Writes a document to a file. Throws ParseError when the file cannot be
/// written.
void write_document(const MatrixDocument& doc, const std::string& path);

}  // namespace covsep
