#include "vdw/materials.hpp"

#include <cmath>
#include <string>

#include "vdw/error.hpp"

namespace vdw {

ResonanceAtom ResonanceAtom::electric(double omega10, double alpha0) {
  ResonanceAtom a{omega10, alpha0, AtomKind::electric};
  validate(a);
  return a;
}

ResonanceAtom ResonanceAtom::magnetic(double omega10, double alpha0) {
  ResonanceAtom a{omega10, alpha0, AtomKind::magnetic};
  validate(a);
  return a;
}

void validate(const ResonanceAtom &atom) {
  if (!(atom.omega10 > 0.0) || !std::isfinite(atom.omega10))
    throw DomainError("atom resonance frequency must be positive, got " + std::to_string(atom.omega10));
  if (!(atom.alpha0 > 0.0) || !std::isfinite(atom.alpha0))
    throw DomainError("atom static response must be positive, got " + std::to_string(atom.alpha0));
}

double response_iu(const ResonanceAtom &atom, double u) {
  if (!(u >= 0.0)) throw DomainError("imaginary frequency must be >= 0");
  const double w2 = atom.omega10 * atom.omega10;
  return atom.alpha0 * w2 / (w2 + u * u);
}

LorentzMedium LorentzMedium::vacuum() { return {0.0, 1.0, 0.0, MediumKind::vacuum}; }

LorentzMedium LorentzMedium::electric(double omega_p, double omega_t, double gamma) {
  LorentzMedium m{omega_p, omega_t, gamma, MediumKind::electric};
  validate(m);
  return m;
}

LorentzMedium LorentzMedium::magnetic(double omega_p, double omega_t, double gamma) {
  LorentzMedium m{omega_p, omega_t, gamma, MediumKind::magnetic};
  validate(m);
  return m;
}

double LorentzMedium::static_value() const { return lorentz_iu(*this, 0.0); }

void validate(const LorentzMedium &m) {
  if (!(m.omega_t > 0.0)) throw DomainError("medium resonance frequency must be positive");
  if (!(m.gamma >= 0.0)) throw DomainError("medium damping must be >= 0");
  if (!(m.omega_p >= 0.0)) throw DomainError("medium plasma frequency must be >= 0");
  if (m.kind == MediumKind::vacuum && m.omega_p != 0.0)
    throw DomainError("vacuum medium must have zero plasma frequency");
}

double lorentz_iu(const LorentzMedium &m, double u) {
  if (!(u >= 0.0)) throw DomainError("imaginary frequency must be >= 0");
  if (m.kind == MediumKind::vacuum) return 1.0;
  return 1.0 + m.omega_p * m.omega_p / (m.omega_t * m.omega_t + u * u + u * m.gamma);
}

double permittivity_iu(const LorentzMedium &m, double u) {
  if (!(u >= 0.0)) throw DomainError("imaginary frequency must be >= 0");
  return m.kind == MediumKind::electric ? lorentz_iu(m, u) : 1.0;
}

double permeability_iu(const LorentzMedium &m, double u) {
  if (!(u >= 0.0)) throw DomainError("imaginary frequency must be >= 0");
  return m.kind == MediumKind::magnetic ? lorentz_iu(m, u) : 1.0;
}

} // namespace vdw
