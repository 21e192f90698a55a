#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "csm/pss.hpp"
#include "csm/scan.hpp"
#include "csm/spectrum.hpp"

namespace csm {

using Cell = std::variant<std::string, long long, double>;

/// A versioned record table. CSV form:
///   # <schema> v<version>
///   col1,col2,...
///   ...
/// JSON form: {"schema": ..., "version": ..., "columns": [...], "records": [{...}, ...]}.
struct Table {
  std::string schema;
  int version = 1;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  [[nodiscard]] std::size_t column(const std::string& name) const;
};

/// Shortest decimal that round-trips the double.
std::string format_number(double v);

void write_csv(std::ostream& out, const Table& t);
void write_json(std::ostream& out, const Table& t);

/// Parse a CSV written by write_csv. Cells that parse completely as integers
/// or doubles come back as numbers, everything else as strings.
///
/// Throws ArgumentError on a missing or malformed header.
Table read_csv(std::istream& in);

/// Numeric cell value (integers widen to double). Throws ArgumentError for text.
double number(const Cell& c);
std::string text(const Cell& c);

/// Records (class, E_r, E_i, Gamma, kappa, index, label, displacement), sorted
/// by class (bound, resonance, continuum, negative) then E_r. Gamma = -2 E_i,
/// clamped at 0 for bound and resonant rows; index is 0 outside those classes.
Table spectrum_table(const Spectrum& s);
Table trajectory_table(const std::vector<Trajectory>& trajectories);
Table doublet_table(const DoubletReport& r);
Table splitting_table(ScanParameter which, const std::vector<SplittingPoint>& scan);
Table plateau_table(const std::vector<PlateauPoint>& scan);

}  // namespace csm
