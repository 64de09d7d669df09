#include "scatrec/csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "scatrec/errors.hpp"

namespace scatrec::csv {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

void strip_cr(std::string& s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
}

}  // namespace

std::size_t Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw DataError("csv: missing column '" + name + "'");
}

Table read(std::istream& in) {
  Table t;
  std::string line;
  if (!std::getline(in, line)) throw DataError("csv: empty input");
  strip_cr(line);
  t.header = split(line);
  while (std::getline(in, line)) {
    strip_cr(line);
    if (line.empty()) continue;
    auto row = split(line);
    if (row.size() != t.header.size())
      throw DataError("csv: row with " + std::to_string(row.size()) + " cells, expected " +
                      std::to_string(t.header.size()));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("csv: cannot open " + path);
  return read(in);
}

std::string format(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw DataError("csv: bad number '" + s + "'");
  return v;
}

long long parse_int(const std::string& s) {
  long long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw DataError("csv: bad integer '" + s + "'");
  return v;
}

Writer::Writer(std::ostream& out, const std::vector<std::string>& header) : out_(out) {
  for (const auto& h : header) *this << h;
  end_row();
}

void Writer::sep() {
  if (!first_) out_ << ',';
  first_ = false;
}

Writer& Writer::operator<<(double v) {
  sep();
  out_ << format(v);
  return *this;
}

Writer& Writer::operator<<(long long v) {
  sep();
  out_ << v;
  return *this;
}

Writer& Writer::operator<<(const std::string& v) {
  sep();
  out_ << v;
  return *this;
}

void Writer::end_row() {
  out_ << '\n';
  first_ = true;
}

}  // namespace scatrec::csv
