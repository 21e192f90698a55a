#include "csm/model.hpp"

#include <cmath>
#include <sstream>

#include "csm/error.hpp"

namespace csm {

std::string_view to_string(UnitSystem u) {
  return u == UnitSystem::NaturalFm ? "fm" : "au";
}

UnitSystem parse_unit_system(std::string_view s) {
  if (s == "fm") return UnitSystem::NaturalFm;
  if (s == "au") return UnitSystem::AtomicUnits;
  throw ArgumentError("unknown unit system '" + std::string(s) + "' (expected fm or au)");
}

void ModelParams::validate() const {
  if (!(alpha > 0.0)) throw ArgumentError("alpha must be > 0");
  if (kappa == 0) throw ArgumentError("kappa must be nonzero");
  if (!(M > 0.0)) throw ArgumentError("M must be > 0");
  if (!(c_factor >= 1.0)) throw ArgumentError("c_factor must be >= 1");
  if (!std::isfinite(V0) || !std::isfinite(r0)) throw ArgumentError("V0 and r0 must be finite");
}

cplx morse_potential(const ModelParams& p, cplx z) {
  const cplx exponent = -(z - p.r0) * p.alpha;
  if (std::abs(exponent.real()) > 700.0) {
    std::ostringstream msg;
    msg << "Morse exponent out of range at z = " << z << " (Re = " << exponent.real() << ")";
    throw DomainError(msg.str());
  }
  const cplx w = std::exp(exponent);
  return p.V0 * w * (2.0 - w);
}

cplx report_energy(const ModelParams& p, cplx eps) {
  return p.energy_scale() * (eps - p.rest_energy());
}

cplx internal_energy(const ModelParams& p, cplx reported) {
  return reported / p.energy_scale() + p.rest_energy();
}

std::string spectroscopic_label(int n, int kappa) {
  static constexpr std::string_view letters = "spdfghiklmnoqrtuv";
  const int l = kappa > 0 ? kappa : -kappa - 1;
  const int two_j = 2 * std::abs(kappa) - 1;
  std::ostringstream out;
  out << n;
  if (l < static_cast<int>(letters.size())) {
    out << letters[static_cast<std::size_t>(l)];
  } else {
    out << "[l=" << l << "]";
  }
  out << two_j << "/2";
  return out.str();
}

}  // namespace csm
