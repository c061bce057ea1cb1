#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "qvertex/qvertex.hpp"

namespace qvertex::cli {

using Json = nlohmann::ordered_json;
using Matrix = CMatrix<double>;
using Coupling = VertexCoupling<double>;

/// Unreadable input or a document that does not have the expected layout.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A coupling plus the optional metadata carried by its document.
struct CouplingDocument {
  Coupling coupling;
  std::string label;
  std::string description;
  std::vector<Index> blocks;
};

/// Reads JSON from `path`, or from `in` when path is "-".
Json read_json(const std::string& path, std::istream& in);

/// Complex matrix as rows of [re, im] pairs. Zero-row matrices are [].
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const char* name, Index rows, Index cols);

/// Accepts a plain coupling document ({"n", "A", "B"}) or any form document
/// written by form_to_json(); forms are turned back into (A, B).
CouplingDocument coupling_from_json(const Json& j);

Json coupling_to_json(const CouplingDocument& doc);

/// target: st, reverse-st, pqrs, unitary or projector.
Json form_to_json(const Coupling& c, const std::string& target);

/// Shortest round-trip decimal text.
std::string format_number(double x);

}  // namespace qvertex::cli
