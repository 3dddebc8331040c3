#include "wigrot/io.hpp"

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace wigrot::io {

namespace {

constexpr char kCsvHeader[] = "n,m_prime,m,value";
constexpr std::uint32_t kBinaryVersion = 1;
constexpr int kMaxDegree = 1 << 20;  // sanity cap when reading untrusted files

void format_value(char* buf, std::size_t cap, double v) {
  std::snprintf(buf, cap, "%.17g", v);
}

void emit_row(std::ostream& out, int n, int m_prime, int m, double value) {
  char buf[64];
  format_value(buf, sizeof buf, value);
  out << n << ',' << m_prime << ',' << m << ',' << buf << '\n';
}

template <typename Fn>
void for_each_entry(const CoeffTriangle& t, bool dense, Fn&& fn) {
  const int n = t.degree();
  if (dense) {
    for (int mp = -n; mp <= n; ++mp)
      for (int m = -n; m <= n; ++m) fn(mp, m, t.get(mp, m));
  } else {
    for (int m = 0; m <= n; ++m)
      for (int mp = -m; mp <= m; ++mp) fn(mp, m, t.at(mp, m));
  }
}

const char* parse_int(const char* p, const char* end, int& out) {
  const auto [next, ec] = std::from_chars(p, end, out);
  if (ec != std::errc()) return nullptr;
  return next;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<CoeffTriangle>& tables,
               bool dense) {
  out << kCsvHeader << '\n';
  for (const CoeffTriangle& t : tables)
    for_each_entry(t, dense, [&out, &t](int mp, int m, double v) {
      emit_row(out, t.degree(), mp, m, v);
    });
}

void write_csv_rows(std::ostream& out, const std::vector<CsvRow>& rows) {
  out << kCsvHeader << '\n';
  for (const CsvRow& r : rows) emit_row(out, r.n, r.m_prime, r.m, r.value);
}

std::vector<CsvRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader)
    throw std::runtime_error("csv: unexpected header \"" + line + "\"");

  std::vector<CsvRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    CsvRow row;
    const char* p = line.data();
    const char* end = p + line.size();
    const auto bad = [line_no]() -> std::runtime_error {
      return std::runtime_error("csv: malformed row at line " +
                                std::to_string(line_no));
    };
    p = parse_int(p, end, row.n);
    if (!p || p == end || *p != ',') throw bad();
    p = parse_int(p + 1, end, row.m_prime);
    if (!p || p == end || *p != ',') throw bad();
    p = parse_int(p + 1, end, row.m);
    if (!p || p == end || *p != ',') throw bad();
    const auto [next, ec] =
        std::from_chars(p + 1, end, row.value, std::chars_format::general);
    if (ec != std::errc() || next != end) throw bad();
    rows.push_back(row);
  }
  return rows;
}

void write_json(std::ostream& out, const std::vector<CoeffTriangle>& tables,
                const TableMetadata& meta, bool dense) {
  nlohmann::ordered_json doc;
  nlohmann::ordered_json md;
  md["algo"] = meta.algo;
  md["beta"] = meta.beta;
  md["version"] = meta.version;
  md["layout"] = dense ? "dense" : "triangle";
  if (meta.has_input_beta) {
    md["beta_input"] = meta.beta_input;
    md["beta_reduced"] = meta.beta;
  }
  doc["metadata"] = std::move(md);

  nlohmann::ordered_json subs = nlohmann::ordered_json::array();
  for (const CoeffTriangle& t : tables) {
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for_each_entry(t, dense, [&entries](int mp, int m, double v) {
      entries.push_back({mp, m, v});
    });
    subs.push_back({{"n", t.degree()}, {"entries", std::move(entries)}});
  }
  doc["subspaces"] = std::move(subs);
  out << doc.dump(2) << '\n';
}

namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
  const unsigned char b[4] = {
      static_cast<unsigned char>(v & 0xFF),
      static_cast<unsigned char>((v >> 8) & 0xFF),
      static_cast<unsigned char>((v >> 16) & 0xFF),
      static_cast<unsigned char>((v >> 24) & 0xFF)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

void put_f64(std::ostream& out, double d) {
  std::uint64_t v;
  std::memcpy(&v, &d, sizeof v);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i)
    b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFF);
  out.write(reinterpret_cast<const char*>(b), 8);
}

bool get_bytes(std::istream& in, unsigned char* b, std::streamsize count) {
  in.read(reinterpret_cast<char*>(b), count);
  return in.gcount() == count;
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  if (!get_bytes(in, b, 4)) throw std::runtime_error("binary: truncated record");
  return static_cast<std::uint32_t>(b[0]) |
         (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}

double get_f64(std::istream& in) {
  unsigned char b[8];
  if (!get_bytes(in, b, 8)) throw std::runtime_error("binary: truncated record");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  double d;
  std::memcpy(&d, &v, sizeof d);
  return d;
}

}  // namespace

void write_binary(std::ostream& out, const std::vector<CoeffTriangle>& tables,
                  bool dense) {
  for (const CoeffTriangle& t : tables) {
    out.write("HROT", 4);
    put_u32(out, kBinaryVersion);
    put_u32(out, static_cast<std::uint32_t>(t.degree()));
    put_f64(out, t.beta());
    put_u32(out, dense ? 1u : 0u);
    for_each_entry(t, dense,
                   [&out](int, int, double v) { put_f64(out, v); });
  }
}

std::vector<CoeffTriangle> read_binary(std::istream& in) {
  std::vector<CoeffTriangle> tables;
  for (;;) {
    unsigned char magic[4];
    in.read(reinterpret_cast<char*>(magic), 4);
    if (in.gcount() == 0) break;  // clean end of stream
    if (in.gcount() != 4 || std::memcmp(magic, "HROT", 4) != 0)
      throw std::runtime_error("binary: bad magic");
    const std::uint32_t version = get_u32(in);
    if (version != kBinaryVersion)
      throw std::runtime_error("binary: unsupported version " +
                               std::to_string(version));
    const std::uint32_t n_raw = get_u32(in);
    if (n_raw > static_cast<std::uint32_t>(kMaxDegree))
      throw std::runtime_error("binary: implausible degree " +
                               std::to_string(n_raw));
    const int n = static_cast<int>(n_raw);
    const double beta = get_f64(in);
    const std::uint32_t layout = get_u32(in);

    CoeffTriangle t(n, beta);
    if (layout == 0) {
      for (int m = 0; m <= n; ++m)
        for (int mp = -m; mp <= m; ++mp) t.at(mp, m) = get_f64(in);
    } else if (layout == 1) {
      // Dense payload: keep only the stored wedge; the rest is redundant
      // under the symmetries.
      for (int mp = -n; mp <= n; ++mp)
        for (int m = -n; m <= n; ++m) {
          const double v = get_f64(in);
          if (m >= std::abs(mp)) t.at(mp, m) = v;
        }
    } else {
      throw std::runtime_error("binary: unknown layout " +
                               std::to_string(layout));
    }
    tables.push_back(std::move(t));
  }
  return tables;
}

}  // namespace wigrot::io
