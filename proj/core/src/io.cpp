#include "ncg/io.hpp"

#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ncg/config.hpp"
#include "ncg/errors.hpp"

namespace ncg::io {

using json = nlohmann::ordered_json;
using labelcover::Assignment;
using labelcover::Label;
using labelcover::LabelCoverInstance;

namespace {

json parse(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

const json& field_of(const json& doc, const char* key, const char* what) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw ParseError(std::string(what) + ": missing field '" + key + "'");
  }
  return doc.at(key);
}

std::size_t as_size(const json& v, const char* key, const char* what) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ParseError(std::string(what) + ": '" + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

double as_double(const json& v, const char* key, const char* what) {
  if (!v.is_number()) throw ParseError(std::string(what) + ": '" + key + "' must be a number");
  return v.get<double>();
}

void check_version(const json& doc, const char* what) {
  const json& v = field_of(doc, "version", what);
  if (!v.is_number_integer() || v.get<int>() != defaults::file_version) {
    throw ParseError(std::string(what) + ": unsupported version");
  }
}

json labels_to_json(const std::vector<Label>& labels) {
  json arr = json::array();
  for (Label l : labels) arr.push_back(static_cast<std::uint64_t>(l) + 1);
  return arr;
}

std::vector<Label> labels_from_json(const json& arr, std::size_t range, const char* key,
                                    const char* what) {
  if (!arr.is_array()) throw ParseError(std::string(what) + ": '" + key + "' must be an array");
  std::vector<Label> out;
  out.reserve(arr.size());
  for (const auto& x : arr) {
    const std::size_t l = as_size(x, key, what);
    if (l < 1 || l > range) {
      throw ParseError(std::string(what) + ": label " + std::to_string(l) + " in '" + key +
                       "' outside 1.." + std::to_string(range));
    }
    out.push_back(static_cast<Label>(l - 1));
  }
  return out;
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& v, const char* what) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ParseError(std::string(what) + ": complex values must be [re, im]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

std::string dump(const json& doc) { return doc.dump(1) + "\n"; }

}  // namespace

std::string write_instance(const LabelCoverInstance& inst) {
  json doc;
  doc["version"] = defaults::file_version;
  doc["n"] = inst.n;
  doc["k"] = inst.k;
  doc["t"] = inst.t;
  doc["gamma"] = inst.gamma;
  doc["zeta"] = inst.zeta;
  doc["vertices"] = inst.vertices;
  json edges = json::array();
  for (const auto& e : inst.edges) {
    json je;
    je["u"] = e.u;
    je["v"] = e.v;
    je["pi_u"] = labels_to_json(e.pi_u);
    je["pi_v"] = labels_to_json(e.pi_v);
    edges.push_back(std::move(je));
  }
  doc["edges"] = std::move(edges);
  return dump(doc);
}

LabelCoverInstance read_instance(const std::string& text) {
  constexpr const char* what = "instance";
  const json doc = parse(text, what);
  check_version(doc, what);
  LabelCoverInstance inst;
  inst.n = as_size(field_of(doc, "n", what), "n", what);
  inst.k = as_size(field_of(doc, "k", what), "k", what);
  inst.t = as_size(field_of(doc, "t", what), "t", what);
  inst.gamma = as_double(field_of(doc, "gamma", what), "gamma", what);
  inst.zeta = as_double(field_of(doc, "zeta", what), "zeta", what);
  inst.vertices = as_size(field_of(doc, "vertices", what), "vertices", what);
  const json& edges = field_of(doc, "edges", what);
  if (!edges.is_array()) throw ParseError("instance: 'edges' must be an array");
  for (const auto& je : edges) {
    labelcover::Edge e;
    e.u = as_size(field_of(je, "u", what), "u", what);
    e.v = as_size(field_of(je, "v", what), "v", what);
    e.pi_u = labels_from_json(field_of(je, "pi_u", what), inst.k, "pi_u", what);
    e.pi_v = labels_from_json(field_of(je, "pi_v", what), inst.k, "pi_v", what);
    inst.edges.push_back(std::move(e));
  }
  try {
    labelcover::validate(inst);
  } catch (const DomainError& e) {
    throw ParseError(std::string("instance: ") + e.what());
  }
  return inst;
}

std::string write_assignment(const Assignment& a, std::size_t n) {
  json doc;
  doc["version"] = defaults::file_version;
  doc["vertices"] = a.labels.size();
  doc["n"] = n;
  doc["labels"] = labels_to_json(a.labels);
  return dump(doc);
}

Assignment read_assignment(const std::string& text) {
  constexpr const char* what = "assignment";
  const json doc = parse(text, what);
  check_version(doc, what);
  const std::size_t vertices = as_size(field_of(doc, "vertices", what), "vertices", what);
  const std::size_t n = as_size(field_of(doc, "n", what), "n", what);
  Assignment a;
  a.labels = labels_from_json(field_of(doc, "labels", what), n, "labels", what);
  if (a.labels.size() != vertices) {
    throw ParseError("assignment: label count does not match 'vertices'");
  }
  return a;
}

Assignment read_assignment(const std::string& text, const LabelCoverInstance& inst) {
  Assignment a = read_assignment(text);
  if (a.labels.size() != inst.vertices) {
    throw ShapeError("assignment has " + std::to_string(a.labels.size()) +
                     " labels, instance has " + std::to_string(inst.vertices) + " vertices");
  }
  for (Label l : a.labels) {
    if (l >= inst.n) throw ShapeError("assignment label exceeds instance n");
  }
  return a;
}

std::string write_field(const reduction::VertexVectorField& b) {
  json doc;
  doc["version"] = defaults::file_version;
  doc["vertices"] = b.vertices;
  doc["n"] = b.n;
  json values = json::array();
  for (std::size_t v = 0; v < b.vertices; ++v) {
    json row = json::array();
    for (std::size_t i = 0; i < b.n; ++i) {
      row.push_back(complex_to_json(b.values(static_cast<Eigen::Index>(v * b.n + i))));
    }
    values.push_back(std::move(row));
  }
  doc["values"] = std::move(values);
  return dump(doc);
}

reduction::VertexVectorField read_field(const std::string& text) {
  constexpr const char* what = "field";
  const json doc = parse(text, what);
  check_version(doc, what);
  const std::size_t vertices = as_size(field_of(doc, "vertices", what), "vertices", what);
  const std::size_t n = as_size(field_of(doc, "n", what), "n", what);
  const json& values = field_of(doc, "values", what);
  if (!values.is_array() || values.size() != vertices) {
    throw ParseError("field: 'values' must hold one row per vertex");
  }
  auto b = reduction::VertexVectorField::zero(vertices, n);
  for (std::size_t v = 0; v < vertices; ++v) {
    const json& row = values[v];
    if (!row.is_array() || row.size() != n) {
      throw ParseError("field: row " + std::to_string(v) + " must have n entries");
    }
    for (std::size_t i = 0; i < n; ++i) {
      const Complex z = complex_from_json(row[i], what);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw ParseError("field: non-finite value");
      }
      b.values(static_cast<Eigen::Index>(v * n + i)) = z;
    }
  }
  return b;
}

std::string write_tensor(const solvers::NcgTensor& t) {
  json doc;
  doc["version"] = defaults::file_version;
  doc["d"] = t.d;
  json entries = json::array();
  for (const auto& e : t.entries) {
    entries.push_back(json::array({e.i, e.j, e.k, e.l, e.value.real(), e.value.imag()}));
  }
  doc["entries"] = std::move(entries);
  return dump(doc);
}

solvers::NcgTensor read_tensor(const std::string& text) {
  constexpr const char* what = "tensor";
  const json doc = parse(text, what);
  check_version(doc, what);
  solvers::NcgTensor t;
  t.d = as_size(field_of(doc, "d", what), "d", what);
  const json& entries = field_of(doc, "entries", what);
  if (!entries.is_array()) throw ParseError("tensor: 'entries' must be an array");
  for (std::size_t idx = 0; idx < entries.size(); ++idx) {
    const json& row = entries[idx];
    if (!row.is_array() || row.size() != 6) {
      throw ParseError("tensor: entry " + std::to_string(idx) + " must be [i, j, k, l, re, im]");
    }
    solvers::TensorEntry e;
    e.i = as_size(row[0], "i", what);
    e.j = as_size(row[1], "j", what);
    e.k = as_size(row[2], "k", what);
    e.l = as_size(row[3], "l", what);
    e.value = {as_double(row[4], "re", what), as_double(row[5], "im", what)};
    t.entries.push_back(e);
  }
  try {
    t.validate();
  } catch (const std::exception& e) {
    throw ParseError(std::string("tensor: ") + e.what());
  }
  return t;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw ParseError("write failed for '" + path.string() + "'");
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header.size()) throw ShapeError("CsvTable: row width does not match header");
  rows.push_back(std::move(row));
}

std::string CsvTable::to_string() const {
  std::string out;
  auto emit = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  emit(header);
  for (const auto& r : rows) emit(r);
  return out;
}

}  // namespace ncg::io
