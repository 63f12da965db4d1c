#include "casimir/dielectric.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "casimir/error.hpp"

namespace casimir {

double Permittivity::susceptibility() const {
  if (infinite_) throw ContractViolation("infinite permittivity has no finite susceptibility");
  return chi_;
}

double Permittivity::value() const { return 1.0 + susceptibility(); }

// --- table -------------------------------------------------------------------

PermittivityTable::PermittivityTable(std::vector<PermittivitySample> samples, bool extrapolate)
    : samples_(std::move(samples)), extrapolate_(extrapolate) {
  if (samples_.empty()) throw ParseError(0, "no samples");
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const auto& s = samples_[i];
    if (!(s.xi > 0.0) || !std::isfinite(s.xi)) throw ParseError(0, "sample " + std::to_string(i) + ": xi must be positive");
    if (!(s.eps >= 1.0) || !std::isfinite(s.eps)) throw ParseError(0, "sample " + std::to_string(i) + ": eps < 1");
    if (i > 0 && !(s.xi > samples_[i - 1].xi))
      throw ParseError(0, "sample " + std::to_string(i) + ": xi not strictly increasing");
    if (i > 0 && s.eps > samples_[i - 1].eps)
      throw ParseError(0, "sample " + std::to_string(i) + ": eps increases with xi");
  }
  const auto& lo = samples_.front();
  if (!(lo.eps > 1.0)) throw ParseError(0, "lowest-frequency sample must have eps > 1 (metallic tail)");
  tail_omega_p_ = lo.xi * std::sqrt(lo.eps - 1.0);
}

double PermittivityTable::susceptibility(double xi) const {
  if (!(xi > 0.0)) throw ContractViolation("permittivity evaluated at xi <= 0");
  const double lo = xi_min();
  const double hi = xi_max();
  if (xi < lo || xi > hi) {
    if (!extrapolate_) {
      std::ostringstream msg;
      msg << "xi = " << xi << " outside table domain [" << lo << ", " << hi << "]";
      throw ContractViolation(msg.str());
    }
    if (xi < lo) return tail_omega_p_ * tail_omega_p_ / (xi * xi);
    return 0.0;
  }
  auto it = std::upper_bound(samples_.begin(), samples_.end(), xi,
                             [](double v, const PermittivitySample& s) { return v < s.xi; });
  if (it == samples_.end()) return samples_.back().eps - 1.0;
  const auto& right = *it;
  const auto& left = *(it - 1);
  const double t = std::log(xi / left.xi) / std::log(right.xi / left.xi);
  const double chi_l = left.eps - 1.0;
  const double chi_r = right.eps - 1.0;
  if (chi_l > 0.0 && chi_r > 0.0) return std::exp((1.0 - t) * std::log(chi_l) + t * std::log(chi_r));
  return (1.0 - t) * chi_l + t * chi_r;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

double parse_number(std::string_view field, std::size_t line, const char* what) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty() || !std::isfinite(v))
    throw ParseError(line, std::string("malformed ") + what + " value '" + std::string(field) + "'");
  return v;
}

}  // namespace

PermittivityTable load_permittivity_table(std::istream& in, bool extrapolate) {
  std::vector<PermittivitySample> samples;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto row = trim(raw);
    if (row.empty() || row.front() == '#') continue;
    auto comma = row.find(',');
    if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos)
      throw ParseError(line, "expected two comma-separated columns");
    PermittivitySample s{parse_number(row.substr(0, comma), line, "xi"),
                         parse_number(row.substr(comma + 1), line, "eps")};
    if (!(s.xi > 0.0)) throw ParseError(line, "xi must be positive");
    if (s.eps < 1.0) throw ParseError(line, "eps < 1");
    if (!samples.empty()) {
      if (s.xi == samples.back().xi) throw ParseError(line, "duplicate xi");
      if (s.xi < samples.back().xi) throw ParseError(line, "xi not increasing (rows must be sorted)");
      if (s.eps > samples.back().eps) throw ParseError(line, "eps increases with xi");
    }
    samples.push_back(s);
  }
  if (samples.empty()) throw ParseError(0, "no samples");
  return PermittivityTable(std::move(samples), extrapolate);
}

PermittivityTable load_permittivity_table_file(const std::string& path, bool extrapolate) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open permittivity table '" + path + "'");
  return load_permittivity_table(in, extrapolate);
}

// --- models ------------------------------------------------------------------

std::string to_string(ZeroModeClass cls) {
  switch (cls) {
    case ZeroModeClass::TM_perfect_TE_perfect: return "TM_perfect_TE_perfect";
    case ZeroModeClass::TM_perfect_TE_plasma: return "TM_perfect_TE_plasma";
    case ZeroModeClass::TM_perfect_TE_absent: return "TM_perfect_TE_absent";
  }
  return "unknown";
}

DielectricModel DielectricModel::perfect_conductor() { return DielectricModel(PerfectConductor{}); }

DielectricModel DielectricModel::plasma(double omega_p) {
  if (!(omega_p > 0.0) || !std::isfinite(omega_p)) throw ContractViolation("plasma frequency must be positive");
  return DielectricModel(Plasma{omega_p});
}

DielectricModel DielectricModel::drude(double omega_p, double gamma) {
  if (!(omega_p > 0.0) || !std::isfinite(omega_p)) throw ContractViolation("plasma frequency must be positive");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw ContractViolation("relaxation frequency must be >= 0");
  if (gamma == 0.0) return plasma(omega_p);
  return DielectricModel(Drude{omega_p, gamma});
}

DielectricModel DielectricModel::tabulated(PermittivityTable table) {
  return DielectricModel(Tabulated{std::move(table)});
}

std::optional<double> DielectricModel::plasma_frequency() const {
  return std::visit(
      [](const auto& m) -> std::optional<double> {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, PerfectConductor>) return std::nullopt;
        else if constexpr (std::is_same_v<M, Tabulated>) return m.table.tail_plasma_frequency();
        else return m.omega_p;
      },
      v_);
}

std::string DielectricModel::label() const {
  std::ostringstream os;
  os.precision(6);
  std::visit(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, PerfectConductor>) os << "perfect";
        else if constexpr (std::is_same_v<M, Plasma>) os << "plasma:" << m.omega_p;
        else if constexpr (std::is_same_v<M, Drude>) os << "drude:" << m.omega_p << ":" << m.gamma;
        else os << "table:" << m.table.samples().size();
      },
      v_);
  return os.str();
}

Permittivity permittivity(const DielectricModel& model, double xi) {
  if (!(xi > 0.0)) throw ContractViolation("permittivity evaluated at xi <= 0; zero mode uses the analytic path");
  return std::visit(
      [xi](const auto& m) -> Permittivity {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, DielectricModel::PerfectConductor>) return Permittivity::infinite();
        else if constexpr (std::is_same_v<M, DielectricModel::Plasma>) {
          const double r = m.omega_p / xi;
          return Permittivity::finite(r * r);
        } else if constexpr (std::is_same_v<M, DielectricModel::Drude>) {
          return Permittivity::finite(m.omega_p * m.omega_p / (xi * (xi + m.gamma)));
        } else {
          return Permittivity::finite(m.table.susceptibility(xi));
        }
      },
      model.variant());
}

ZeroModeClass zero_mode_class(const DielectricModel& model) {
  return std::visit(
      [](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, DielectricModel::PerfectConductor>) return ZeroModeClass::TM_perfect_TE_perfect;
        else if constexpr (std::is_same_v<M, DielectricModel::Drude>) return ZeroModeClass::TM_perfect_TE_absent;
        else return ZeroModeClass::TM_perfect_TE_plasma;
      },
      model.variant());
}

}  // namespace casimir
