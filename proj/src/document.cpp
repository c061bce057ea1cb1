#include "document.hpp"

#include <charconv>
#include <fstream>
#include <iostream>

namespace qvertex::cli {

namespace {

Index get_index(const Json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  const Json& v = j.at(key);
  if (!v.is_number_integer()) throw ParseError(std::string("field \"") + key + "\" must be an integer");
  return v.get<Index>();
}

std::string get_string(const Json& j, const char* key) {
  if (!j.contains(key)) return {};
  if (!j.at(key).is_string()) throw ParseError(std::string("field \"") + key + "\" must be a string");
  return j.at(key).get<std::string>();
}

const Json& field(const Json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Json permutation_to_json(const Permutation& p) {
  Json out = Json::array();
  for (Index i = 0; i < p.size(); ++i) out.push_back(p.indices()(i) + 1);
  return out;
}

Permutation permutation_from_json(const Json& j, Index n) {
  if (!j.is_array() || static_cast<Index>(j.size()) != n)
    throw ParseError("\"permutation\" must list n edge numbers");
  Eigen::VectorXi idx(n);
  for (Index i = 0; i < n; ++i) {
    const Json& v = j[static_cast<std::size_t>(i)];
    if (!v.is_number_integer()) throw ParseError("\"permutation\" entries must be integers");
    idx(i) = v.get<int>() - 1;
  }
  return Permutation(idx);
}

std::vector<Index> blocks_from_json(const Json& j, Index n) {
  std::vector<Index> blocks;
  if (!j.contains("blocks")) return blocks;
  const Json& b = j.at("blocks");
  if (!b.is_array()) throw ParseError("\"blocks\" must be an array of sizes");
  Index total = 0;
  for (const Json& v : b) {
    if (!v.is_number_integer() || v.get<Index>() < 0) throw ParseError("block sizes must be non-negative integers");
    blocks.push_back(v.get<Index>());
    total += blocks.back();
  }
  if (total != n) throw ParseError("block sizes must add up to n");
  return blocks;
}

Coupling coupling_from_form(const Json& j, const std::string& form, Index n) {
  if (form == "st") {
    STForm<double> f;
    f.n = n;
    f.rank_B = get_index(j, "rank_B");
    if (f.rank_B < 0 || f.rank_B > n) throw ParseError("rank_B outside [0, n]");
    f.perm = permutation_from_json(field(j, "permutation"), n);
    f.S = matrix_from_json(field(j, "S"), "S", f.rank_B, f.rank_B);
    f.T = matrix_from_json(field(j, "T"), "T", f.rank_B, n - f.rank_B);
    return st_to_matrices(f);
  }
  if (form == "reverse-st") {
    ReverseSTForm<double> f;
    f.n = n;
    f.rank_A = get_index(j, "rank_A");
    if (f.rank_A < 0 || f.rank_A > n) throw ParseError("rank_A outside [0, n]");
    f.perm = permutation_from_json(field(j, "permutation"), n);
    f.S = matrix_from_json(field(j, "S"), "S", f.rank_A, f.rank_A);
    f.T = matrix_from_json(field(j, "T"), "T", f.rank_A, n - f.rank_A);
    return reverse_st_to_matrices(f);
  }
  if (form == "pqrs") {
    PQRSForm<double> f;
    f.n = n;
    f.rank_A = get_index(j, "rank_A");
    f.rank_B = get_index(j, "rank_B");
    const Index m = f.overlap(), a = f.a_size(), b = f.b_size();
    if (m < 0 || a < 0 || b < 0) throw ParseError("rank pair outside the admissible range");
    f.perm = permutation_from_json(field(j, "permutation"), n);
    f.P = matrix_from_json(field(j, "P"), "P", m, b);
    f.Q = matrix_from_json(field(j, "Q"), "Q", a, b);
    f.R = matrix_from_json(field(j, "R"), "R", a, m);
    f.S = matrix_from_json(field(j, "S"), "S", m, m);
    return pqrs_to_matrices(f);
  }
  if (form == "unitary") return from_unitary<double>({matrix_from_json(field(j, "U"), "U", n, n)});
  if (form == "projector") {
    ProjectorForm<double> f;
    f.n = n;
    f.P = matrix_from_json(field(j, "P"), "P", n, n);
    f.Q = matrix_from_json(field(j, "Q"), "Q", n, n);
    f.C = matrix_from_json(field(j, "C"), "C", n, n);
    f.Lambda = matrix_from_json(field(j, "Lambda"), "Lambda", n, n);
    return projector_to_matrices(f);
  }
  throw ParseError("unknown form \"" + form + "\"");
}

}  // namespace

Json read_json(const std::string& path, std::istream& in) {
  try {
    if (path == "-") return Json::parse(in);
    std::ifstream file(path);
    if (!file) throw ParseError("cannot open " + path);
    return Json::parse(file);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, const char* name, Index rows, Index cols) {
  const std::string label = std::string("\"") + name + "\"";
  if (!j.is_array()) throw ParseError(label + " must be an array of rows");
  if (static_cast<Index>(j.size()) != rows)
    throw ParseError(label + " has " + std::to_string(j.size()) + " rows, expected " + std::to_string(rows));
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols)
      throw ParseError(label + " row " + std::to_string(i + 1) + " must have " + std::to_string(cols) + " entries");
    for (Index k = 0; k < cols; ++k) {
      const Json& z = row[static_cast<std::size_t>(k)];
      if (z.is_number()) {
        m(i, k) = z.get<double>();
      } else if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number()) {
        m(i, k) = {z[0].get<double>(), z[1].get<double>()};
      } else {
        throw ParseError(label + " entries must be [re, im] pairs");
      }
    }
  }
  return m;
}

CouplingDocument coupling_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("document must be a JSON object");
  const Index n = get_index(j, "n");
  if (n < 1) throw ParseError("n must be positive");
  CouplingDocument doc{
      j.contains("form") ? coupling_from_form(j, get_string(j, "form"), n)
                         : validate<double>(matrix_from_json(field(j, "A"), "A", n, n),
                                            matrix_from_json(field(j, "B"), "B", n, n)),
      get_string(j, "label"), get_string(j, "description"), blocks_from_json(j, n)};
  return doc;
}

Json coupling_to_json(const CouplingDocument& doc) {
  Json j = Json::object();
  if (!doc.label.empty()) j["label"] = doc.label;
  if (!doc.description.empty()) j["description"] = doc.description;
  j["n"] = doc.coupling.n();
  if (!doc.blocks.empty()) j["blocks"] = doc.blocks;
  j["A"] = matrix_to_json(doc.coupling.A());
  j["B"] = matrix_to_json(doc.coupling.B());
  return j;
}

Json form_to_json(const Coupling& c, const std::string& target) {
  Json j = Json::object();
  j["form"] = target;
  j["n"] = c.n();
  if (target == "st") {
    const auto f = to_st_form(c);
    j["rank_B"] = f.rank_B;
    j["permutation"] = permutation_to_json(f.perm);
    j["S"] = matrix_to_json(f.S);
    j["T"] = matrix_to_json(f.T);
  } else if (target == "reverse-st") {
    const auto f = to_reverse_st_form(c);
    j["rank_A"] = f.rank_A;
    j["permutation"] = permutation_to_json(f.perm);
    j["S"] = matrix_to_json(f.S);
    j["T"] = matrix_to_json(f.T);
  } else if (target == "pqrs") {
    const auto f = to_pqrs_form(c);
    j["rank_A"] = f.rank_A;
    j["rank_B"] = f.rank_B;
    j["permutation"] = permutation_to_json(f.perm);
    j["P"] = matrix_to_json(f.P);
    j["Q"] = matrix_to_json(f.Q);
    j["R"] = matrix_to_json(f.R);
    j["S"] = matrix_to_json(f.S);
  } else if (target == "unitary") {
    j["U"] = matrix_to_json(to_unitary(c).U);
  } else if (target == "projector") {
    const auto f = to_projector_form(c);
    j["P"] = matrix_to_json(f.P);
    j["Q"] = matrix_to_json(f.Q);
    j["C"] = matrix_to_json(f.C);
    j["Lambda"] = matrix_to_json(f.Lambda);
  } else {
    throw ParseError("unknown target form \"" + target + "\"");
  }
  return j;
}

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace qvertex::cli
