#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wigrot/triangle.hpp"

// Serialization of coefficient tables in three formats:
//
//   csv    header "n,m_prime,m,value", one row per entry, %.17g values
//          (lossless round-trip), LF line endings; parsing and re-emitting
//          a file produced here reproduces it byte for byte.
//   json   pretty-printed document {"metadata": {...}, "subspaces": [...]}
//          with stable key order; metadata always carries algo, beta and
//          version (in that order).
//   binary one record per subspace: magic "HROT", u32 version (1), u32 n,
//          f64 beta, u32 layout (0 = triangle, 1 = dense), then the payload
//          doubles; everything little-endian.  Records concatenate.
//
// Entry order is canonical in every format: triangle payloads run m = 0..n
// outer, m' = -m..m inner; dense payloads run m' = -n..n outer, m = -n..n
// inner (row-major with index (m'+n)(2n+1) + (m+n)).

namespace wigrot::io {

struct TableMetadata {
  std::string algo;
  double beta = 0.0;  // angle the tables were computed at
  int version = 1;
  // Set when an out-of-range request angle was reduced into [0, pi]; the
  // original is then recorded alongside the reduced value.
  bool has_input_beta = false;
  double beta_input = 0.0;
};

struct CsvRow {
  int n = 0;
  int m_prime = 0;
  int m = 0;
  double value = 0.0;
};

void write_csv(std::ostream& out, const std::vector<CoeffTriangle>& tables,
               bool dense);
void write_csv_rows(std::ostream& out, const std::vector<CsvRow>& rows);

// Throws std::runtime_error on a malformed header or row.
std::vector<CsvRow> read_csv(std::istream& in);

void write_json(std::ostream& out, const std::vector<CoeffTriangle>& tables,
                const TableMetadata& meta, bool dense);

void write_binary(std::ostream& out, const std::vector<CoeffTriangle>& tables,
                  bool dense);

// Reads concatenated records until EOF; dense records are folded back into
// triangle storage.  Throws std::runtime_error on a malformed stream.
std::vector<CoeffTriangle> read_binary(std::istream& in);

}  // namespace wigrot::io
