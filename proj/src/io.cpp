#include "pcgauge/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace pcgauge {
namespace {

std::string location(std::size_t line, std::size_t column) {
  if (line == 0) return {};
  return " at line " + std::to_string(line) + ", column " + std::to_string(column);
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::size_t index_of(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw ParseError(std::string(what) + " must be a non-negative integer");
  }
  return j.get<std::size_t>();
}

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing \"") + key + "\"");
  return j.at(key);
}

}  // namespace

ParseError::ParseError(const std::string& what, std::size_t l, std::size_t c)
    : Error("parse error: " + what + location(l, c)), line(l), column(c) {}

json element_to_json(const Group& group, const Element& g) {
  group.check(g);
  switch (group.kind()) {
    case GroupKind::RPlus: return std::get<PositiveReal>(g).value;
    case GroupKind::U1: return json{{"theta", std::get<Phase>(g).theta}};
    case GroupKind::SU2: {
      const auto& q = std::get<Quaternion>(g);
      return json{{"q", json::array({q.w, q.x, q.y, q.z})}};
    }
    case GroupKind::ZMod: return std::get<Residue>(g).value;
  }
  return nullptr;
}

Element element_from_json(const Group& group, const json& j) {
  switch (group.kind()) {
    case GroupKind::RPlus:
      if (!j.is_number()) throw ParseError("rplus element must be a number");
      return PositiveReal{j.get<double>()};
    case GroupKind::U1: {
      const json& t = member(j, "theta");
      if (!t.is_number()) throw ParseError("u1 theta must be a number");
      const double theta = t.get<double>();
      return std::isfinite(theta) ? group.make(theta) : Element{Phase{theta}};
    }
    case GroupKind::SU2: {
      const json& q = member(j, "q");
      if (!q.is_array() || q.size() != 4) throw ParseError("su2 element needs \"q\": [w,x,y,z]");
      for (const auto& c : q)
        if (!c.is_number()) throw ParseError("su2 quaternion components must be numbers");
      const Quaternion raw{q[0].get<double>(), q[1].get<double>(), q[2].get<double>(),
                           q[3].get<double>()};
      try {
        return group.make_quaternion(raw.w, raw.x, raw.y, raw.z);
      } catch (const Error&) {
        return raw;  // far from unit norm; validate() reports it
      }
    }
    case GroupKind::ZMod:
      if (!j.is_number_integer()) throw ParseError("zmod element must be an integer");
      return Residue{j.get<std::int64_t>()};
  }
  return {};
}

json matrix_to_json(const PCMatrix& a) {
  json entries = json::array();
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      entries.push_back(a.has(i, j) ? element_to_json(a.group(), *a.entry(i, j)) : json(nullptr));
  return json{{"group", a.group().tag()},
              {"n", a.size()},
              {"variance", to_string(a.variance())},
              {"entries", std::move(entries)}};
}

PCMatrix matrix_from_json(const json& j) {
  Group group = Group::rplus();
  try {
    group = Group::parse(member(j, "group").get<std::string>());
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(e.what());
  }
  const std::size_t n = index_of(member(j, "n"), "\"n\"");
  if (n < 2) throw ParseError("\"n\" must be at least 2");
  Variance variance = Variance::Covariant;
  if (j.contains("variance")) {
    try {
      variance = parse_variance(j.at("variance").get<std::string>());
    } catch (const std::exception& e) {
      throw ParseError(e.what());
    }
  }
  const json& entries = member(j, "entries");
  if (!entries.is_array()) throw ParseError("\"entries\" must be an array");
  json flat = json::array();
  // Elements are never JSON arrays, so an array in the first slot means rows.
  if (!entries.empty() && entries[0].is_array()) {
    if (entries.size() != n) throw ParseError("expected n rows");
    for (const auto& row : entries) {
      if (!row.is_array() || row.size() != n) throw ParseError("every row needs n entries");
      for (const auto& e : row) flat.push_back(e);
    }
  } else {
    flat = entries;
  }
  if (flat.size() != n * n) throw ParseError("\"entries\" must hold n*n values");
  PCMatrix a(group, n, variance);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const json& e = flat[i * n + k];
      a.set_raw(i, k, e.is_null() ? std::nullopt : std::optional<Element>(element_from_json(group, e)));
    }
  }
  return a;
}

PCMatrix matrix_from_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<double> row;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = line.find(',', start);
      const std::string cell = trim(std::string_view(line).substr(
          start, comma == std::string::npos ? std::string::npos : comma - start));
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
        throw ParseError("expected a decimal number, got '" + cell + "'", line_no, start + 1);
      }
      row.push_back(v);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError("row has " + std::to_string(row.size()) + " columns, expected " +
                           std::to_string(rows.front().size()),
                       line_no, 1);
    }
    rows.push_back(std::move(row));
  }
  const std::size_t n = rows.size();
  if (n < 2) throw ParseError("a CSV matrix needs at least two rows", line_no, 1);
  if (rows.front().size() != n) {
    throw ParseError("matrix is not square: " + std::to_string(n) + " rows, " +
                     std::to_string(rows.front().size()) + " columns");
  }
  PCMatrix a(Group::rplus(), n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a.set_raw(i, j, PositiveReal{rows[i][j]});
  return a;
}

void matrix_to_csv(std::ostream& out, const PCMatrix& a) {
  if (a.group().kind() != GroupKind::RPlus) throw Error("CSV output is limited to rplus matrices");
  if (!a.gap_free()) throw Error("CSV cannot represent gaps");
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (j) out << ',';
      out << json(std::get<PositiveReal>(a(i, j)).value).dump();
    }
    out << '\n';
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t p = 0; p + 1 < e.byte && p < text.size(); ++p) {
      if (text[p] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("invalid JSON in " + path.string(), line, column);
  }
}

PCMatrix load_matrix(const std::filesystem::path& path) {
  if (path.extension() == ".csv") {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    return matrix_from_csv(in);
  }
  return matrix_from_json(read_json_file(path));
}

void save_matrix(const std::filesystem::path& path, const PCMatrix& a) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  if (path.extension() == ".csv") {
    matrix_to_csv(out, a);
  } else {
    out << matrix_to_json(a).dump(2) << '\n';
  }
}

json complex_to_json(const SimplicialComplex2& k) {
  json edges = json::array();
  for (const auto& e : k.edges()) edges.push_back({e.i, e.j});
  json triangles = json::array();
  for (const auto& t : k.triangles()) triangles.push_back({t.i, t.j, t.k});
  return json{{"vertices", k.vertex_count()},
              {"edges", std::move(edges)},
              {"triangles", std::move(triangles)},
              {"base", k.base()}};
}

SimplicialComplex2 complex_from_json(const json& j) {
  const std::size_t v = index_of(member(j, "vertices"), "\"vertices\"");
  std::vector<Edge> edges;
  for (const auto& e : member(j, "edges")) {
    if (!e.is_array() || e.size() != 2) throw ParseError("edges are [i, j] pairs");
    edges.push_back({index_of(e[0], "edge index"), index_of(e[1], "edge index")});
  }
  std::vector<Triangle> triangles;
  if (j.contains("triangles")) {
    for (const auto& t : j.at("triangles")) {
      if (!t.is_array() || t.size() != 3) throw ParseError("triangles are [i, j, k] triples");
      triangles.push_back({index_of(t[0], "triangle index"), index_of(t[1], "triangle index"),
                           index_of(t[2], "triangle index")});
    }
  }
  const std::size_t base = j.contains("base") ? index_of(j.at("base"), "\"base\"") : 0;
  return SimplicialComplex2(v, std::move(edges), std::move(triangles), base);
}

json field_to_json(const EdgeField& f) {
  json values = json::object();
  for (const auto& [e, h] : f.values()) {
    values[std::to_string(e.i) + "-" + std::to_string(e.j)] = element_to_json(f.group(), h);
  }
  return json{{"group", f.group().tag()}, {"values", std::move(values)}};
}

EdgeField field_from_json(const json& j) {
  Group group = Group::rplus();
  try {
    group = Group::parse(member(j, "group").get<std::string>());
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(e.what());
  }
  EdgeField f(group);
  const json& values = member(j, "values");
  if (!values.is_object()) throw ParseError("\"values\" must be an object");
  for (const auto& [key, val] : values.items()) {
    const auto dash = key.find('-');
    std::size_t i = 0, k = 0;
    const auto r1 = std::from_chars(key.data(), key.data() + dash, i);
    const auto r2 = dash == std::string::npos
                        ? std::from_chars_result{key.data(), std::errc::invalid_argument}
                        : std::from_chars(key.data() + dash + 1, key.data() + key.size(), k);
    if (dash == std::string::npos || r1.ec != std::errc() || r1.ptr != key.data() + dash ||
        r2.ec != std::errc() || r2.ptr != key.data() + key.size()) {
      throw ParseError("edge key '" + key + "' is not of the form \"i-j\"");
    }
    const Element h = element_from_json(group, val);
    if (!group.contains(h)) throw ParseError("edge " + key + " holds an element outside " + group.tag());
    f.set(i, k, h);
  }
  return f;
}

json result_to_json(const ConsistencizationResult& r) {
  const Group& g = r.consistent.group();
  json lambda = json::array();
  for (const auto& l : r.lambda.values) lambda.push_back(element_to_json(g, l));
  return json{{"lambda", std::move(lambda)},
              {"consistent", matrix_to_json(r.consistent)},
              {"residual", r.residual},
              {"ii_before", r.ii_before},
              {"ii_after", r.ii_after},
              {"iterations", r.iterations},
              {"converged", r.converged},
              {"status", r.status}};
}

json estimate_to_json(const MCEstimate& e, const Group& group) {
  return json{{"observable", e.observable}, {"group", group.tag()}, {"N", e.samples},
              {"seed", e.seed},             {"mean", e.mean},       {"std_error", e.std_error}};
}

json histogram_to_json(const Histogram& h) {
  return json{{"lo", h.lo}, {"hi", h.hi}, {"counts", h.counts}};
}

void histogram_to_csv(std::ostream& out, const Histogram& h) {
  out << "bin_lo,bin_hi,count\n";
  const std::size_t bins = h.counts.size();
  for (std::size_t b = 0; b < bins; ++b) {
    const double lo = h.lo + (h.hi - h.lo) * static_cast<double>(b) / static_cast<double>(bins);
    const double hi = h.lo + (h.hi - h.lo) * static_cast<double>(b + 1) / static_cast<double>(bins);
    out << json(lo).dump() << ',' << json(hi).dump() << ',' << h.counts[b] << '\n';
  }
}

}  // namespace pcgauge
