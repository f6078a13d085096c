#pragma once

// JSON-lines records for lattices and stiffness tensors.
//
// Lattice record:
//   {"name": "bcc", "cell": [9 reals, row-major A], "nodes": [3N reals],
//    "edges": [[i, j, tx, ty, tz], ...], "radius": 0.05}
// Stiffness record:
//   {"name": "bcc", "radius": 0.05, "relative_density": 0.1,
//    "basis": "mandel", "mandel": [36 reals, row-major]}
// Blank lines and lines starting with '#' are skipped.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "latmech/lattice.hpp"
#include "latmech/tensor4.hpp"

namespace latmech::io {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& reason);
  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }
  const std::string& reason() const { return reason_; }

 private:
  std::string source_;
  std::size_t line_;
  std::string reason_;
};

struct StiffnessRecord {
  std::string name;
  std::optional<double> radius;
  std::optional<double> relative_density;
  /// Kept in the file's basis so records round-trip bit for bit.
  MandelMatrix mandel;

  ElasticTensor4 tensor() const { return from_mandel(mandel); }
};

/// Parse one record; throws std::invalid_argument with the reason.
Lattice parse_lattice(std::string_view json);
StiffnessRecord parse_stiffness(std::string_view json);

/// One line, no trailing newline. Doubles round-trip exactly.
std::string to_json_line(const Lattice& lat);
std::string to_json_line(const StiffnessRecord& rec);

/// Read a whole file. `source` names the stream in error messages.
std::vector<Lattice> read_lattices(std::istream& in, const std::string& source = "<stream>");
std::vector<StiffnessRecord> read_stiffness(std::istream& in, const std::string& source = "<stream>");
std::vector<Lattice> read_lattices_file(const std::string& path);
std::vector<StiffnessRecord> read_stiffness_file(const std::string& path);

void write_lattices(std::ostream& out, const std::vector<Lattice>& lats);
void write_stiffness(std::ostream& out, const std::vector<StiffnessRecord>& recs);

}  // namespace latmech::io
