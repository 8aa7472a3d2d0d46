#pragma once

// Comma-separated tables with a "# key: value" metadata block. Doubles are
// written with 17 significant digits so they read back bit-exact.

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace prbdim {

struct Scenario;

using CsvCell = std::variant<std::int64_t, double, std::string>;

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  // Only valid before the header.
  void meta(std::string_view key, std::string_view value);
  void header(std::vector<std::string> columns);
  // Throws DomainError if the cell count differs from the header.
  void row(const std::vector<CsvCell>& cells);

  std::size_t columns() const noexcept { return columns_.size(); }

 private:
  std::ostream& out_;
  std::vector<std::string> columns_;
  bool header_written_ = false;
};

std::string format_double(double value);

// tool version, seed, realization count, radius sampler, kernel ISA.
std::vector<std::pair<std::string, std::string>> standard_metadata(const Scenario& scenario);

inline constexpr std::string_view kToolVersion = "0.1.0";

}  // namespace prbdim
