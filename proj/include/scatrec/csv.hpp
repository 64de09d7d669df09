#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace scatrec::csv {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Column index by name; throws DataError if absent.
  std::size_t column(const std::string& name) const;
};

// Plain comma-separated values with a header row; no quoting.
Table read(std::istream& in);
Table read_file(const std::string& path);

// Shortest representation that parses back to the same double.
std::string format(double v);
double parse_double(const std::string& s);
long long parse_int(const std::string& s);

class Writer {
 public:
  Writer(std::ostream& out, const std::vector<std::string>& header);
  Writer& operator<<(double v);
  Writer& operator<<(long long v);
  Writer& operator<<(int v) { return *this << static_cast<long long>(v); }
  Writer& operator<<(const std::string& v);
  void end_row();

 private:
  void sep();
  std::ostream& out_;
  bool first_ = true;
};

}  // namespace scatrec::csv
