#include "extint/moments.hpp"

#include <cmath>
#include <sstream>

#include "extint/error.hpp"
#include "extint/pairstats.hpp"

namespace extint {

namespace {

constexpr double kMomentTol = 1e-12;

bool fourth_moment_is_five(double m4) { return std::abs(m4 - 5.0) <= kMomentTol * 5.0; }

}  // namespace

MomentClass MomentClass::poly(double s) {
  if (!(s > 2.0)) throw DomainError("POLY(s) requires s > 2");
  MomentClass c;
  c.kind = TailClass::Poly;
  c.s = s;
  return c;
}

MomentClass MomentClass::subexp(double r, double eta) {
  if (!(r > 0.0) || !(eta > 0.0)) throw DomainError("SUBEXP(r, eta) requires r > 0 and eta > 0");
  MomentClass c;
  c.kind = TailClass::SubExp;
  c.r = r;
  c.eta = eta;
  return c;
}

MomentClass MomentClass::bounded(double k) {
  if (!(k > 0.0)) throw DomainError("BOUNDED(K) requires K > 0");
  MomentClass c;
  c.kind = TailClass::Bounded;
  c.bound = k;
  return c;
}

std::string MomentClass::describe() const {
  std::ostringstream os;
  switch (kind) {
    case TailClass::Poly: os << "POLY(" << s << ")"; break;
    case TailClass::SubExp: os << "SUBEXP(" << r << "," << eta << ")"; break;
    case TailClass::Bounded: os << "BOUNDED(" << bound << ")"; break;
  }
  return os.str();
}

MomentProfile::MomentProfile(double m3, double m4, std::optional<double> m6,
                             MomentClass moment_class, double m2)
    : m2_(m2), m3_(m3), m4_(m4), m6_(m6), class_(moment_class) {
  if (!std::isfinite(m2) || std::abs(m2 - 1.0) > kMomentTol) {
    throw DomainError("moment profile must be standardized: E[X^2] = 1");
  }
  if (!std::isfinite(m3) || !std::isfinite(m4)) throw DomainError("moments must be finite");
  if (m4 < 1.0 - kMomentTol) throw DomainError("E[X^4] >= E[X^2]^2 = 1 violated");
  if (m6) {
    if (!std::isfinite(*m6)) throw DomainError("E[X^6] must be finite");
    if (*m6 < std::pow(m4, 1.5) * (1.0 - kMomentTol)) {
      throw DomainError("E[X^6] >= E[X^4]^{3/2} violated");
    }
  }
}

double MomentProfile::rho() const { return rho_from_fourth_moment(m4_); }

double MomentProfile::kappa_tilde() const {
  if (!m6_) throw UnavailableError("kappa_tilde needs E[X^6]");
  return extint::kappa_tilde(m3_, m4_, *m6_);
}

MomentProfile preset_profile(std::string_view name) {
  if (name == "rademacher") {
    return MomentProfile(0.0, 1.0, 1.0, MomentClass::bounded(1.0));
  }
  if (name == "gaussian") {
    // exp(eta |X|) is integrable, i.e. SUBEXP with r = 1/2.
    return MomentProfile(0.0, 3.0, 15.0, MomentClass::subexp(0.5, 1.0));
  }
  if (name == "uniform") {
    // Uniform on [-sqrt 3, sqrt 3]: E[X^k] = 3^{k/2} / (k + 1).
    return MomentProfile(0.0, 9.0 / 5.0, 27.0 / 7.0, MomentClass::bounded(std::sqrt(3.0)));
  }
  if (name == "threepoint5") {
    // +-sqrt 5 with probability 1/10 each, 0 otherwise.
    return MomentProfile(0.0, 5.0, 25.0, MomentClass::bounded(std::sqrt(5.0)));
  }
  throw ConfigError("unknown moment profile '" + std::string(name) + "'");
}

double rho_from_fourth_moment(double m4) {
  if (!(m4 >= 1.0)) throw DomainError("E[X^4] < 1 violates Jensen's inequality");
  return (m4 - 1.0) / (2.0 * (m4 + 1.0));
}

double kappa_tilde(double m3, double m4, double m6) {
  if (!(m4 >= 1.0)) throw DomainError("E[X^4] < 1 violates Jensen's inequality");
  if (m6 < std::pow(m4, 1.5) * (1.0 - kMomentTol)) {
    throw DomainError("E[X^6] >= E[X^4]^{3/2} violated");
  }
  return (m6 + 9.0 * m4 - 10.0 * m3 * m3 - 10.0) / (std::sqrt(2.0) * std::pow(m4 + 1.0, 1.5));
}

std::string_view to_string(Condition c) {
  switch (c) {
    case Condition::B1: return "B1";
    case Condition::B2: return "B2";
    case Condition::B3: return "B3";
    case Condition::B4: return "B4";
  }
  return "?";
}

RegimeReport classify_regime(const MomentProfile& profile, std::size_t n, std::size_t p) {
  const double m4 = profile.m4();
  const MomentClass& cls = profile.moment_class();
  const bool is_five = fourth_moment_is_five(m4);
  if (m4 > 5.0 && !is_five) {
    throw NoConditionError("E[X^4] > 5: none of B1-B4 applies (rho > 1/3)");
  }

  RegimeReport report;
  switch (cls.kind) {
    case TailClass::Poly:
      report.condition = Condition::B1;
      report.rate_exponent = (cls.s - 2.0) / 4.0;
      break;
    case TailClass::SubExp:
      if (is_five) {
        if (cls.r < 0.5) {
          throw NoConditionError("E[X^4] = 5 needs SUBEXP with r >= 1/2 (B3)");
        }
        report.condition = Condition::B3;
        report.rate_exponent = 1.0 / (3.0 + 2.0 / cls.r);
      } else {
        // exp(eta |X|^{2r}) integrable implies the same for any smaller r.
        const double r = std::min(cls.r, 2.0 / 3.0);
        report.condition = Condition::B2;
        report.rate_exponent = r / (2.0 - r);
        report.dnorm_choice = r > 0.5;
      }
      break;
    case TailClass::Bounded:
      if (is_five) {
        report.condition = Condition::B4;
        report.rate_exponent = 1.0 / 3.0;
      } else {
        report.condition = Condition::B2;
        report.rate_exponent = 0.5 / 1.5;
      }
      break;
  }

  const double nd = static_cast<double>(n);
  const double pd = static_cast<double>(p);
  std::ostringstream os;
  if (report.condition == Condition::B1) {
    report.advisory_ratio = pd / std::pow(nd, report.rate_exponent);
    os << "p = O(n^" << report.rate_exponent << ")";
  } else {
    report.advisory_ratio = std::log(pd) / std::pow(nd, report.rate_exponent);
    os << "p = exp(o(n^" << report.rate_exponent << "))";
  }
  os << " (asymptotic statement, not checked at finite n, p)";
  report.growth_statement = os.str();
  return report;
}

Eigen::MatrixXd pair_covariance_matrix(std::size_t p, double rho) {
  if (p < 3) throw SizeError("pair_covariance_matrix needs p >= 3");
  if (!(rho >= 0.0 && rho <= 0.5)) throw DomainError("rho must lie in [0, 1/2]");
  const std::size_t m = p * (p - 1) / 2;
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m),
                                              static_cast<Eigen::Index>(m));
  for (std::size_t a = 0; a < m; ++a) {
    const Pair pa = pair_at(a, p);
    for (std::size_t b = 0; b < m; ++b) {
      const Pair pb = pair_at(b, p);
      double v = 0.0;
      if (a == b) {
        v = 1.0;
      } else if (pa.i == pb.i || pa.i == pb.j || pa.j == pb.i || pa.j == pb.j) {
        v = rho;
      }
      cov(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = v;
    }
  }
  return cov;
}

Eigen::MatrixXd equicorrelation_matrix(std::size_t d, double rho) {
  if (d < 1) throw SizeError("equicorrelation_matrix needs d >= 1");
  const auto dd = static_cast<Eigen::Index>(d);
  Eigen::MatrixXd m = Eigen::MatrixXd::Constant(dd, dd, rho);
  m.diagonal().setOnes();
  return m;
}

double min_eigenvalue(const Eigen::MatrixXd& symmetric) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool is_positive_semidefinite(const Eigen::MatrixXd& symmetric) {
  const double tol = 1e-10 * static_cast<double>(symmetric.rows());
  return min_eigenvalue(symmetric) >= -tol;
}

}  // namespace extint
