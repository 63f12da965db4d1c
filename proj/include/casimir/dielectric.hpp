#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace casimir {

/// epsilon(i xi), with a distinguished infinite value for the ideal metal.
///
/// The susceptibility eps - 1 is stored rather than eps itself, so that the
/// reflection coefficients never form 1 + tiny or huge - huge.
class Permittivity {
 public:
  static Permittivity infinite() { return Permittivity(true, 0.0); }
  static Permittivity finite(double susceptibility) { return Permittivity(false, susceptibility); }

  bool is_infinite() const { return infinite_; }
  /// eps - 1. Throws ContractViolation when infinite.
  double susceptibility() const;
  /// eps. Throws ContractViolation when infinite.
  double value() const;

 private:
  Permittivity(bool inf, double chi) : infinite_(inf), chi_(chi) {}
  bool infinite_;
  double chi_;
};

struct PermittivitySample {
  double xi;   // rad/s
  double eps;  // dimensionless, >= 1
};

/// Imaginary-axis permittivity samples.
///
/// Interpolation is linear in (log xi, log(eps - 1)). Below the first
/// sample eps follows a plasma tail W^2 / xi^2 anchored to that sample;
/// above the last sample eps is clamped to 1. With extrapolation disabled
/// any query outside [xi_min, xi_max] throws.
class PermittivityTable {
 public:
  explicit PermittivityTable(std::vector<PermittivitySample> samples, bool extrapolate = true);

  const std::vector<PermittivitySample>& samples() const { return samples_; }
  double xi_min() const { return samples_.front().xi; }
  double xi_max() const { return samples_.back().xi; }
  bool extrapolates() const { return extrapolate_; }

  /// Plasma frequency W of the low-frequency tail, rad/s.
  double tail_plasma_frequency() const { return tail_omega_p_; }

  /// eps(i xi) - 1.
  double susceptibility(double xi) const;

 private:
  std::vector<PermittivitySample> samples_;
  bool extrapolate_;
  double tail_omega_p_;
};

/// Parses the two-column CSV table format: xi [rad/s], eps. Blank lines and
/// lines starting with '#' are skipped. Throws ParseError with line numbers.
PermittivityTable load_permittivity_table(std::istream& in, bool extrapolate = true);
PermittivityTable load_permittivity_table_file(const std::string& path, bool extrapolate = true);

enum class ZeroModeClass {
  TM_perfect_TE_perfect,
  TM_perfect_TE_plasma,
  TM_perfect_TE_absent,
};

std::string to_string(ZeroModeClass cls);

class DielectricModel {
 public:
  struct PerfectConductor {};
  struct Plasma {
    double omega_p;
  };
  struct Drude {
    double omega_p;
    double gamma;
  };
  struct Tabulated {
    PermittivityTable table;
  };
  using Variant = std::variant<PerfectConductor, Plasma, Drude, Tabulated>;

  static DielectricModel perfect_conductor();
  static DielectricModel plasma(double omega_p);
  /// gamma == 0 yields a Plasma model.
  static DielectricModel drude(double omega_p, double gamma);
  static DielectricModel tabulated(PermittivityTable table);

  const Variant& variant() const { return v_; }
  bool is_perfect() const { return std::holds_alternative<PerfectConductor>(v_); }
  bool is_drude() const { return std::holds_alternative<Drude>(v_); }

  /// Plasma frequency of the model (tail fit for tables); nullopt for the ideal metal.
  std::optional<double> plasma_frequency() const;

  /// Short comma-free label such as "plasma:1.92e+16" or "drude:1.92e+16:9.6e+13".
  std::string label() const;

 private:
  explicit DielectricModel(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

/// Aluminium defaults used throughout the examples and studies.
inline constexpr double kAluminiumPlasmaFrequency = 1.92e16;  // rad/s
inline constexpr double kAluminiumDrudeGamma = 9.6e13;        // rad/s

/// eps(i xi) for xi > 0. Throws ContractViolation for xi <= 0.
Permittivity permittivity(const DielectricModel& model, double xi);

ZeroModeClass zero_mode_class(const DielectricModel& model);

}  // namespace casimir
