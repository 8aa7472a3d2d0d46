#include "prbdim/csv.hpp"

#include <cmath>
#include <cstdio>

#include "prbdim/congestion.hpp"
#include "prbdim/error.hpp"
#include "prbdim/kernels.hpp"

namespace prbdim {

void CsvWriter::meta(std::string_view key, std::string_view value) {
  if (header_written_) throw DomainError("csv: metadata after header");
  out_ << "# " << key << ": " << value << '\n';
}

void CsvWriter::header(std::vector<std::string> columns) {
  if (header_written_) throw DomainError("csv: header written twice");
  if (columns.empty()) throw DomainError("csv: empty header");
  columns_ = std::move(columns);
  for (std::size_t i = 0; i < columns_.size(); ++i) out_ << (i ? "," : "") << columns_[i];
  out_ << '\n';
  header_written_ = true;
}

void CsvWriter::row(const std::vector<CsvCell>& cells) {
  if (!header_written_) throw DomainError("csv: row before header");
  if (cells.size() != columns_.size()) {
    throw DomainError("csv: row has " + std::to_string(cells.size()) + " cells, header has " +
                      std::to_string(columns_.size()));
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    if (const auto* v = std::get_if<std::int64_t>(&cells[i])) {
      out_ << *v;
    } else if (const auto* d = std::get_if<double>(&cells[i])) {
      out_ << format_double(*d);
    } else {
      out_ << std::get<std::string>(cells[i]);
    }
  }
  out_ << '\n';
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", value);
  return std::string(buf, static_cast<std::size_t>(n));
}

std::vector<std::pair<std::string, std::string>> standard_metadata(const Scenario& scenario) {
  return {
      {"tool", "prbdim " + std::string(kToolVersion)},
      {"seed", std::to_string(scenario.seed)},
      {"realizations", std::to_string(scenario.mc_realizations)},
      {"radius_sampler", std::string(to_string(scenario.sampler))},
      {"outdoor_model", std::string(to_string(scenario.outdoor_model))},
      {"kernel_isa", std::string(kernels::isa_name(kernels::active_isa()))},
  };
}

}  // namespace prbdim
