#pragma once

// Versioned JSON file formats and CSV tables.
//
// Every document carries "version": 1. Vertices are zero-based; labels of
// [n] and [k] are stored one-based. Complex numbers are [re, im] pairs.
// Writers emit a fixed key order, so write -> read -> write is byte-identical.
//
//   instance   {version, n, k, t, gamma, zeta, vertices, edges: [{u, v, pi_u, pi_v}]}
//   assignment {version, vertices, n, labels}
//   field      {version, vertices, n, values: [[[re, im] x n] x vertices]}
//   tensor     {version, d, entries: [[i, j, k, l, re, im], ...]}

#include <filesystem>
#include <string>
#include <vector>

#include "ncg/labelcover.hpp"
#include "ncg/reduction.hpp"
#include "ncg/solvers.hpp"

namespace ncg::io {

std::string write_instance(const labelcover::LabelCoverInstance& inst);
labelcover::LabelCoverInstance read_instance(const std::string& text);

std::string write_assignment(const labelcover::Assignment& a, std::size_t n);
/// Checks the stored vertex count and label range against `inst`.
labelcover::Assignment read_assignment(const std::string& text,
                                       const labelcover::LabelCoverInstance& inst);
labelcover::Assignment read_assignment(const std::string& text);

std::string write_field(const reduction::VertexVectorField& b);
reduction::VertexVectorField read_field(const std::string& text);

std::string write_tensor(const solvers::NcgTensor& t);
solvers::NcgTensor read_tensor(const std::string& text);

/// Whole-file helpers; ParseError when the file cannot be opened.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

/// Shortest round-trip decimal form.
std::string format_double(double x);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  std::string to_string() const;
};

}  // namespace ncg::io
