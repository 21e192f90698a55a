#include "csm/io.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "csm/error.hpp"

namespace csm {

std::size_t Table::column(const std::string& name) const {
  auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw ArgumentError("table " + schema + " has no column '" + name + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::string csv_cell(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) {
    if (s->find_first_of(",\"\n") == std::string::npos) return *s;
    std::string q = "\"";
    for (char ch : *s) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + '"';
  }
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return format_number(std::get<double>(c));
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

Cell parse_cell(const std::string& s) {
  if (s.empty()) return s;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  long long i = 0;
  if (auto r = std::from_chars(first, last, i); r.ec == std::errc{} && r.ptr == last) return i;
  double d = 0.0;
  if (auto r = std::from_chars(first, last, d); r.ec == std::errc{} && r.ptr == last) return d;
  return s;
}

nlohmann::ordered_json json_cell(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  if (const auto* i = std::get_if<long long>(&c)) return *i;
  return std::get<double>(c);
}

int class_rank(StateClass c) {
  switch (c) {
    case StateClass::Bound: return 0;
    case StateClass::Resonance: return 1;
    case StateClass::Continuum: return 2;
    case StateClass::NegativeEnergy: return 3;
  }
  return 4;
}

}  // namespace

void write_csv(std::ostream& out, const Table& t) {
  out << "# " << t.schema << " v" << t.version << '\n';
  for (std::size_t j = 0; j < t.columns.size(); ++j) out << (j ? "," : "") << t.columns[j];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << csv_cell(row[j]);
    out << '\n';
  }
}

void write_json(std::ostream& out, const Table& t) {
  nlohmann::ordered_json j;
  j["schema"] = t.schema;
  j["version"] = t.version;
  j["columns"] = t.columns;
  auto records = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::object();
    for (std::size_t k = 0; k < row.size() && k < t.columns.size(); ++k) r[t.columns[k]] = json_cell(row[k]);
    records.push_back(std::move(r));
  }
  j["records"] = std::move(records);
  out << j.dump(2) << '\n';
}

Table read_csv(std::istream& in) {
  Table t;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) throw ArgumentError("CSV: missing '# schema vN' line");
  const auto sp = line.rfind(" v");
  if (sp == std::string::npos || sp < 2) throw ArgumentError("CSV: malformed schema line '" + line + "'");
  t.schema = line.substr(2, sp - 2);
  try {
    t.version = std::stoi(line.substr(sp + 2));
  } catch (const std::exception&) {
    throw ArgumentError("CSV: malformed schema version in '" + line + "'");
  }
  if (!std::getline(in, line)) throw ArgumentError("CSV: missing column header");
  t.columns = split_csv_line(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    if (cells.size() != t.columns.size()) throw ArgumentError("CSV: row has wrong number of cells: " + line);
    std::vector<Cell> row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(parse_cell(c));
    t.rows.push_back(std::move(row));
  }
  return t;
}

double number(const Cell& c) {
  if (const auto* i = std::get_if<long long>(&c)) return static_cast<double>(*i);
  if (const auto* d = std::get_if<double>(&c)) return *d;
  throw ArgumentError("expected a numeric cell, got '" + std::get<std::string>(c) + "'");
}

std::string text(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return format_number(std::get<double>(c));
}

Table spectrum_table(const Spectrum& s) {
  Table t;
  t.schema = "csm-spectrum";
  t.columns = {"class", "E_r", "E_i", "Gamma", "kappa", "index", "label", "displacement"};
  struct Rec {
    StateClass cls;
    cplx e;
    double disp;
    int index = 0;
    std::string label;
  };
  std::vector<Rec> recs;
  const auto phys = s.physical_states();
  for (const auto& p : s.states) {
    Rec r{p.cls, p.energy, p.displacement, 0, {}};
    if (p.cls == StateClass::Bound || p.cls == StateClass::Resonance) {
      for (const auto& q : phys) {
        if (q.E_r == p.energy.real() && q.Gamma == std::max(0.0, -2.0 * p.energy.imag())) {
          r.index = q.index;
          r.label = q.label;
          break;
        }
      }
    }
    recs.push_back(std::move(r));
  }
  std::stable_sort(recs.begin(), recs.end(), [](const Rec& a, const Rec& b) {
    if (class_rank(a.cls) != class_rank(b.cls)) return class_rank(a.cls) < class_rank(b.cls);
    if (a.e.real() != b.e.real()) return a.e.real() < b.e.real();
    return a.e.imag() < b.e.imag();
  });
  for (const auto& r : recs) {
    const bool physical = r.cls == StateClass::Bound || r.cls == StateClass::Resonance;
    const double gamma = physical ? std::max(0.0, -2.0 * r.e.imag()) : -2.0 * r.e.imag();
    t.rows.push_back({std::string(to_string(r.cls)), r.e.real(), r.e.imag(), gamma,
                      static_cast<long long>(s.params.kappa), static_cast<long long>(r.index), r.label, r.disp});
  }
  return t;
}

Table trajectory_table(const std::vector<Trajectory>& trajectories) {
  Table t;
  t.schema = "csm-trajectory";
  t.columns = {"trajectory", "key", "parameter", "value", "E_r", "Gamma", "index", "label"};
  for (std::size_t k = 0; k < trajectories.size(); ++k) {
    const auto& tr = trajectories[k];
    for (std::size_t i = 0; i < tr.points.size(); ++i) {
      if (!tr.points[i]) continue;
      const auto& s = *tr.points[i];
      t.rows.push_back({static_cast<long long>(k), tr.key, std::string(to_string(tr.which)), tr.grid[i], s.E_r,
                        s.Gamma, static_cast<long long>(s.index), s.label});
    }
  }
  return t;
}

namespace {

std::vector<std::string> doublet_columns() {
  return {"kappa_a", "kappa_b", "n_a", "label_a", "E_r_a", "Gamma_a", "n_b", "label_b", "E_r_b", "Gamma_b", "dE", "dGamma"};
}

void doublet_rows(const DoubletReport& r, std::vector<Cell> prefix, Table& t) {
  for (const auto& m : r.members) {
    std::vector<Cell> row = prefix;
    row.insert(row.end(), {static_cast<long long>(r.kappa_a), static_cast<long long>(r.kappa_b),
                           static_cast<long long>(m.a.index), m.a.label, m.a.E_r, m.a.Gamma,
                           static_cast<long long>(m.b.index), m.b.label, m.b.E_r, m.b.Gamma, m.dE, m.dGamma});
    t.rows.push_back(std::move(row));
  }
  for (const auto& u : r.unpaired_a) {
    std::vector<Cell> row = prefix;
    row.insert(row.end(), {static_cast<long long>(r.kappa_a), static_cast<long long>(r.kappa_b),
                           static_cast<long long>(u.index), u.label, u.E_r, u.Gamma, 0LL, std::string(), std::string(),
                           std::string(), std::string(), std::string()});
    t.rows.push_back(std::move(row));
  }
  for (const auto& u : r.unpaired_b) {
    std::vector<Cell> row = prefix;
    row.insert(row.end(), {static_cast<long long>(r.kappa_a), static_cast<long long>(r.kappa_b), 0LL, std::string(),
                           std::string(), std::string(), static_cast<long long>(u.index), u.label, u.E_r, u.Gamma,
                           std::string(), std::string()});
    t.rows.push_back(std::move(row));
  }
}

}  // namespace

Table doublet_table(const DoubletReport& r) {
  Table t;
  t.schema = "csm-doublets";
  t.columns = doublet_columns();
  doublet_rows(r, {}, t);
  return t;
}

Table splitting_table(ScanParameter which, const std::vector<SplittingPoint>& scan) {
  Table t;
  t.schema = "csm-splitting";
  t.columns = {"parameter", "value"};
  const auto cols = doublet_columns();
  t.columns.insert(t.columns.end(), cols.begin(), cols.end());
  for (const auto& p : scan) doublet_rows(p.report, {std::string(to_string(which)), p.value}, t);
  return t;
}

Table plateau_table(const std::vector<PlateauPoint>& scan) {
  Table t;
  t.schema = "csm-plateau";
  t.columns = {"b0", "stable_states", "drift", "selected"};
  const double chosen = scan.empty() ? 0.0 : select_plateau_b0(scan);
  for (const auto& p : scan) {
    t.rows.push_back({p.b0, static_cast<long long>(p.stable_states), p.drift, static_cast<long long>(p.b0 == chosen)});
  }
  return t;
}

}  // namespace csm
