#include "csm/pss.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "csm/error.hpp"
#include "csm/parallel.hpp"

namespace csm {

double DoubletReport::max_abs_dE() const {
  double m = 0.0;
  for (const auto& p : members) m = std::max(m, std::abs(p.dE));
  return m;
}

double DoubletReport::max_abs_dGamma() const {
  double m = 0.0;
  for (const auto& p : members) m = std::max(m, std::abs(p.dGamma));
  return m;
}

void check_pseudospin_partners(int kappa_a, int kappa_b) {
  if (kappa_a >= 0) throw ArgumentError("pseudospin pairing needs kappa_a < 0, got " + std::to_string(kappa_a));
  ModelParams pa;
  pa.kappa = kappa_a;
  ModelParams pb;
  pb.kappa = kappa_b;
  if (kappa_b != 1 - kappa_a || pa.l_tilde() != pb.l_tilde()) {
    throw ArgumentError("kappa " + std::to_string(kappa_a) + " and " + std::to_string(kappa_b) +
                        " are not pseudospin partners (l~ " + std::to_string(pa.l_tilde()) + " vs " +
                        std::to_string(pb.l_tilde()) + ")");
  }
}

DoubletReport pair_doublets(int kappa_a, std::span<const ResonanceState> a, int kappa_b,
                            std::span<const ResonanceState> b) {
  check_pseudospin_partners(kappa_a, kappa_b);
  DoubletReport r;
  r.kappa_a = kappa_a;
  r.kappa_b = kappa_b;
  std::vector<ResonanceState> sa(a.begin(), a.end());
  std::vector<ResonanceState> sb(b.begin(), b.end());
  auto by_index = [](const ResonanceState& x, const ResonanceState& y) { return x.index < y.index; };
  std::stable_sort(sa.begin(), sa.end(), by_index);
  std::stable_sort(sb.begin(), sb.end(), by_index);

  std::vector<bool> used_b(sb.size(), false);
  for (const auto& s : sa) {
    auto it = std::find_if(sb.begin(), sb.end(), [&](const ResonanceState& x) { return x.index == s.index - 1; });
    if (it == sb.end()) {
      r.unpaired_a.push_back(s);
      continue;
    }
    used_b[static_cast<std::size_t>(it - sb.begin())] = true;
    r.members.push_back({s, *it, s.E_r - it->E_r, s.Gamma - it->Gamma});
  }
  for (std::size_t i = 0; i < sb.size(); ++i) {
    if (!used_b[i]) r.unpaired_b.push_back(sb[i]);
  }
  return r;
}

DoubletReport pair_doublets(const Spectrum& a, const Spectrum& b) {
  ModelParams pa = a.params;
  ModelParams pb = b.params;
  pb.kappa = pa.kappa;
  if (!(pa == pb)) throw ArgumentError("pair_doublets: spectra must share every parameter except kappa");
  const auto sa = a.physical_states();
  const auto sb = b.physical_states();
  return pair_doublets(a.params.kappa, sa, b.params.kappa, sb);
}

std::vector<SplittingPoint> splitting_scan(const ModelParams& base, const BasisSpec& spec, ScanParameter which,
                                           std::span<const double> grid, int kappa_a,
                                           const SolveOptions& options) {
  check_grid(grid);
  const int kappa_b = 1 - kappa_a;
  check_pseudospin_partners(kappa_a, kappa_b);
  for (double v : grid) with_parameter(base, which, v).validate();
  std::vector<Spectrum> sa(grid.size());
  std::vector<Spectrum> sb(grid.size());
  parallel_for(2 * grid.size(), [&](std::size_t k) {
    const std::size_t i = k / 2;
    ModelParams p = with_parameter(base, which, grid[i]);
    p.kappa = k % 2 == 0 ? kappa_a : kappa_b;
    (k % 2 == 0 ? sa : sb)[i] = solve(p, spec, options);
  });
  std::vector<SplittingPoint> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out[i].value = grid[i];
    out[i].report = pair_doublets(sa[i], sb[i]);
  }
  return out;
}

}  // namespace csm
