#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "pcgauge/consistencization.hpp"
#include "pcgauge/integration.hpp"

namespace pcgauge {

using json = nlohmann::ordered_json;

/// Malformed input. line/column are 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0);
  std::size_t line;
  std::size_t column;
};

// Elements: rplus as a decimal, u1 as {"theta": t}, su2 as {"q": [w,x,y,z]},
// zmod:<m> as an integer.
json element_to_json(const Group& group, const Element& g);
/// Out-of-carrier scalars (e.g. a negative rplus value) are returned as-is so
/// that validate() can report them; structurally wrong values throw ParseError.
Element element_from_json(const Group& group, const json& j);

/// {"group": tag, "n": n, "variance": ..., "entries": row-major, null for gaps}
json matrix_to_json(const PCMatrix& a);
/// Accepts "entries" flat (n*n) or as n rows. Entries are stored raw; call
/// validate() on the result.
PCMatrix matrix_from_json(const json& j);

/// n rows of n comma-separated positive decimals (rplus only).
PCMatrix matrix_from_csv(std::istream& in);
void matrix_to_csv(std::ostream& out, const PCMatrix& a);

/// Reads a matrix file; ".csv" files use the CSV format, everything else JSON.
PCMatrix load_matrix(const std::filesystem::path& path);
void save_matrix(const std::filesystem::path& path, const PCMatrix& a);

/// {"vertices": V, "edges": [[i,j],...], "triangles": [[i,j,k],...], "base": 0}
json complex_to_json(const SimplicialComplex2& k);
SimplicialComplex2 complex_from_json(const json& j);

/// {"group": tag, "values": {"i-j": element, ...}}
json field_to_json(const EdgeField& f);
EdgeField field_from_json(const json& j);

json result_to_json(const ConsistencizationResult& r);
json estimate_to_json(const MCEstimate& e, const Group& group);
json histogram_to_json(const Histogram& h);
void histogram_to_csv(std::ostream& out, const Histogram& h);

/// Parses a whole file as JSON, converting syntax errors into ParseError.
json read_json_file(const std::filesystem::path& path);

}  // namespace pcgauge
