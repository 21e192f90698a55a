#include "csm/scan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "csm/error.hpp"
#include "csm/parallel.hpp"

namespace csm {

std::string_view to_string(ScanParameter p) {
  switch (p) {
    case ScanParameter::V0: return "V0";
    case ScanParameter::r0: return "r0";
    case ScanParameter::alpha: return "alpha";
  }
  return "?";
}

ScanParameter parse_scan_parameter(std::string_view s) {
  for (ScanParameter p : {ScanParameter::V0, ScanParameter::r0, ScanParameter::alpha}) {
    if (to_string(p) == s) return p;
  }
  throw ArgumentError("unknown scan parameter '" + std::string(s) + "' (expected V0, r0 or alpha)");
}

ModelParams with_parameter(ModelParams base, ScanParameter which, double value) {
  switch (which) {
    case ScanParameter::V0: base.V0 = value; break;
    case ScanParameter::r0: base.r0 = value; break;
    case ScanParameter::alpha: base.alpha = value; break;
  }
  return base;
}

void check_grid(std::span<const double> grid) {
  if (grid.empty()) throw ArgumentError("scan grid is empty");
  if (grid.size() < 2) return;
  const bool up = grid[1] > grid[0];
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || (up ? !(grid[i] > grid[i - 1]) : !(grid[i] < grid[i - 1]))) {
      throw ArgumentError("scan grid must be strictly monotone");
    }
  }
}

std::vector<double> linspace(double lo, double hi, int count) {
  if (count < 1) throw ArgumentError("linspace needs at least one point");
  if (count == 1) return {lo};
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (count - 1);
  return out;
}

std::size_t Trajectory::first() const {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i]) return i;
  }
  return points.size();
}

std::size_t Trajectory::present() const {
  return static_cast<std::size_t>(std::count_if(points.begin(), points.end(), [](const auto& p) { return p.has_value(); }));
}

namespace {

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (v.size() % 2 == 1) return *mid;
  const double hi = *mid;
  const double lo = *std::max_element(v.begin(), mid);
  return 0.5 * (lo + hi);
}

struct Track {
  Trajectory traj;
  std::size_t last = 0;
  std::optional<std::size_t> prev;
  int missed = 0;
};

std::string make_key(const ResonanceState& s, ScanParameter which, double value) {
  std::ostringstream k;
  k << s.label << '@' << to_string(which) << '=' << value;
  return k.str();
}

}  // namespace

std::vector<Trajectory> link_states(ScanParameter which, std::span<const double> grid,
                                    const std::vector<std::vector<ResonanceState>>& states,
                                    const LinkOptions& link) {
  check_grid(grid);
  if (states.size() != grid.size()) throw ArgumentError("link_states: one state list per grid value required");

  std::vector<Track> tracks;
  auto start = [&](std::size_t i, const ResonanceState& s) {
    Track t;
    t.traj.which = which;
    t.traj.grid.assign(grid.begin(), grid.end());
    t.traj.points.assign(grid.size(), std::nullopt);
    t.traj.points[i] = s;
    t.traj.key = make_key(s, which, grid[i]);
    t.last = i;
    tracks.push_back(std::move(t));
  };
  for (const auto& s : states[0]) start(0, s);

  for (std::size_t i = 1; i < grid.size(); ++i) {
    const auto& cand = states[i];
    std::vector<std::size_t> active;
    for (std::size_t t = 0; t < tracks.size(); ++t) {
      if (tracks[t].missed < link.dissolve_after) active.push_back(t);
    }
    // Velocity per unit parameter of every track with two linked points.
    std::vector<std::optional<std::pair<double, double>>> vel(active.size());
    for (std::size_t a = 0; a < active.size(); ++a) {
      const Track& t = tracks[active[a]];
      if (!t.prev) continue;
      const ResonanceState& x = *t.traj.points[t.last];
      const ResonanceState& y = *t.traj.points[*t.prev];
      const double h = grid[t.last] - grid[*t.prev];
      vel[a] = std::pair{(x.E_r - y.E_r) / h, (x.Gamma - y.Gamma) / h};
    }
    std::vector<double> pe(active.size());
    std::vector<double> pg(active.size());
    std::vector<double> step_e(active.size(), 0.0);
    std::vector<double> step_g(active.size(), 0.0);
    for (std::size_t a = 0; a < active.size(); ++a) {
      const Track& t = tracks[active[a]];
      const ResonanceState& x = *t.traj.points[t.last];
      std::optional<std::pair<double, double>> v = vel[a];
      if (!v) {
        // A fresh state drifts like its nearest neighbour in the (E_r, Gamma) plane.
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t o = 0; o < active.size(); ++o) {
          if (!vel[o]) continue;
          const ResonanceState& y = *tracks[active[o]].traj.points[tracks[active[o]].last];
          const double d = std::hypot(y.E_r - x.E_r, y.Gamma - x.Gamma);
          if (d < best) {
            best = d;
            v = vel[o];
          }
        }
      }
      const double h = grid[i] - grid[t.last];
      pe[a] = x.E_r + (v ? v->first * h : 0.0);
      pg[a] = x.Gamma + (v ? v->second * h : 0.0);
      step_e[a] = std::abs(pe[a] - x.E_r);
      step_g[a] = std::abs(pg[a] - x.Gamma);
    }

    std::vector<bool> taken(cand.size(), false);
    if (!active.empty() && !cand.empty()) {
      std::vector<double> de;
      std::vector<double> dg;
      for (std::size_t a = 0; a < active.size(); ++a) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bc = 0;
        for (std::size_t c = 0; c < cand.size(); ++c) {
          const double d = std::hypot(cand[c].E_r - pe[a], cand[c].Gamma - pg[a]);
          if (d < best) {
            best = d;
            bc = c;
          }
        }
        de.push_back(std::abs(cand[bc].E_r - pe[a]));
        dg.push_back(std::abs(cand[bc].Gamma - pg[a]));
      }
      // Drift scale: how far states move per grid step, or how badly they are
      // predicted, whichever is larger.
      // A track that moves faster than the median is measured in its own step.
      const double se = std::max({median(de), median(step_e), link.drift_floor});
      const double sg = std::max({median(dg), median(step_g), link.drift_floor});

      Matrix<double> dist(active.size(), cand.size());
      std::vector<double> nearest(active.size(), std::numeric_limits<double>::infinity());
      for (std::size_t a = 0; a < active.size(); ++a) {
        const double ue = std::max(se, step_e[a]);
        const double ug = std::max(sg, step_g[a]);
        for (std::size_t c = 0; c < cand.size(); ++c) {
          dist(a, c) = std::hypot((cand[c].E_r - pe[a]) / ue, (cand[c].Gamma - pg[a]) / ug);
          nearest[a] = std::min(nearest[a], dist(a, c));
        }
      }
      const double threshold = link.threshold_factor * std::max(median(nearest), 1.0);

      struct Pair {
        double d;
        std::size_t a;
        std::size_t c;
      };
      std::vector<Pair> pairs;
      for (std::size_t a = 0; a < active.size(); ++a) {
        for (std::size_t c = 0; c < cand.size(); ++c) {
          if (dist(a, c) <= threshold) pairs.push_back({dist(a, c), a, c});
        }
      }
      std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) { return x.d < y.d; });
      std::vector<bool> linked(active.size(), false);
      for (const Pair& p : pairs) {
        if (linked[p.a] || taken[p.c]) continue;
        for (std::size_t c = 0; c < cand.size(); ++c) {
          if (c == p.c || taken[c]) continue;
          const double d = dist(p.a, c);
          if (d <= threshold && d <= link.ambiguity_ratio * p.d + 1e-12) {
            std::ostringstream msg;
            msg << "ambiguous link at " << to_string(which) << " = " << grid[i] << " for trajectory "
                << tracks[active[p.a]].traj.key << ": candidates (" << cand[p.c].E_r << ", " << cand[p.c].Gamma
                << ") and (" << cand[c].E_r << ", " << cand[c].Gamma << ")";
            throw ClassificationError(msg.str());
          }
        }
        linked[p.a] = true;
        taken[p.c] = true;
        Track& t = tracks[active[p.a]];
        t.traj.points[i] = cand[p.c];
        t.prev = t.last;
        t.last = i;
        t.missed = 0;
      }
      for (std::size_t a = 0; a < active.size(); ++a) {
        if (!linked[a]) ++tracks[active[a]].missed;
      }
    } else {
      for (std::size_t t : active) ++tracks[t].missed;
    }
    for (std::size_t c = 0; c < cand.size(); ++c) {
      if (!taken[c]) start(i, cand[c]);
    }
  }

  std::vector<Trajectory> out;
  out.reserve(tracks.size());
  for (auto& t : tracks) out.push_back(std::move(t.traj));
  std::stable_sort(out.begin(), out.end(), [](const Trajectory& a, const Trajectory& b) {
    const std::size_t fa = a.first();
    const std::size_t fb = b.first();
    if (fa != fb) return fa < fb;
    return a.points[fa]->index < b.points[fb]->index;
  });
  return out;
}

std::vector<Trajectory> scan_parameter(const ModelParams& base, const BasisSpec& spec, ScanParameter which,
                                       std::span<const double> grid, const SolveOptions& options,
                                       const LinkOptions& link) {
  check_grid(grid);
  for (double v : grid) with_parameter(base, which, v).validate();
  std::vector<std::vector<ResonanceState>> states(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    states[i] = solve(with_parameter(base, which, grid[i]), spec, options).physical_states();
  });
  return link_states(which, grid, states, link);
}

}  // namespace csm
