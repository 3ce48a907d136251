#pragma once

// Linear response of atoms and media on the positive imaginary frequency
// axis (reduced units: hbar = c = eps0 = mu0 = 1).

namespace vdw {

enum class AtomKind { electric, magnetic };

// Single-resonance atom: response(iu) = alpha0 w10^2 / (w10^2 + u^2).
// alpha0 is the static polarizability (electric) or magnetizability
// (magnetic), dimension length^3.
struct ResonanceAtom {
  double omega10 = 1.0;
  double alpha0 = 1.0;
  AtomKind kind = AtomKind::electric;

  static ResonanceAtom electric(double omega10 = 1.0, double alpha0 = 1.0);
  static ResonanceAtom magnetic(double omega10 = 1.0, double alpha0 = 1.0);
};

void validate(const ResonanceAtom &atom);

double response_iu(const ResonanceAtom &atom, double u);

enum class MediumKind { electric, magnetic, vacuum };

// Lorentz oscillator: 1 + wP^2 / (wT^2 + u^2 + u gamma) at omega = iu.
struct LorentzMedium {
  double omega_p = 0.0;
  double omega_t = 1.0;
  double gamma = 0.0;
  MediumKind kind = MediumKind::vacuum;

  static LorentzMedium vacuum();
  static LorentzMedium electric(double omega_p, double omega_t, double gamma);
  static LorentzMedium magnetic(double omega_p, double omega_t, double gamma);

  double static_value() const;
};

void validate(const LorentzMedium &m);

// Generic Lorentz response, independent of kind.
double lorentz_iu(const LorentzMedium &m, double u);

// eps(iu); a magnetic or vacuum medium has no electric response and yields 1.
double permittivity_iu(const LorentzMedium &m, double u);
// mu(iu); an electric or vacuum medium yields 1.
double permeability_iu(const LorentzMedium &m, double u);

} // namespace vdw
