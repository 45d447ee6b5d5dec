#pragma once

// Closed-form oscillation bounds, certificate thresholds and the
// certification pipeline.

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "willmore/geometry.hpp"

namespace willmore {

/// Inputs closer than this to the 4 pi (torus) or 2 pi (disk) poles are
/// rejected.
inline constexpr double kPoleGuard = 1e-6;

/// q = p / (p - 1). Throws std::invalid_argument for p <= 1.
double conjugate_exponent(double p);

struct BoundParams {
  double K = 0.0;
  double p = 2.0;
  double q = 2.0;
  double V = 1.0;

  /// Validates K >= 0, p > 1, V > 0 and fills q.
  static BoundParams make(double K, double p, double V);
};

/// S(K, p, V) = 1/2 |log(1 - K/4pi)| + K/(8pi - 2K) q log(2q) + qK/(4pi) + KV/8.
/// Throws std::domain_error("S undefined at or above 4π") near or above 4 pi.
double S_bound(const BoundParams& bp);
double S_bound(double K, double p, double V);

/// Q = exp(2 S).
double Q_bound(const BoundParams& bp);
double Q_bound(double K, double p, double V);

/// Raised when a threshold is not needed because a region rule applies.
class UnconstrainedThreshold : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Root K of Q(K, p, y) = (y + 1/y) / 2 for y > 1. Any K_p below it
/// certifies. Throws UnconstrainedThreshold for y <= 1.
double tau(double y, double p);

/// Root K of Q(K, p, V) = sqrt(V) for V > 1.
double sigma1(double V, double p);

/// min { sigma1(V, p), min_{sqrt V <= v <= V} tau(v, p) } for V > 1, with the
/// inner minimum from 256 samples plus golden-section refinement to 1e-6.
/// Throws UnconstrainedThreshold for V <= 1.
double sigma(double V, double p);

/// Upper end of the interval that contains the true V(g) given a graph
/// systole measurement: V_g (1 + tol_sys).
double V_upper(const GeometryReport& r);

struct OscBoundCheck {
  double osc = 0.0;
  double bound_a = 0.0;  // S(K_p, p, V(g0))
  double bound_b = 0.0;  // S(K_p, p, V(g)) with V(g) at its upper end
  bool holds_a = false;
  bool holds_b = false;
  bool holds = false;
};

/// Throws std::domain_error("theorem hypothesis violated") when K_p >= 4 pi.
OscBoundCheck osc_bound_check(const GeometryReport& r);

/// max u <= 1/2 |log(1 - K+/2pi)| + K+/(4pi - 2K+) q log q for fields on a
/// disk vanishing on the boundary.
double disk_max_bound(double Kp_plus, double p);

/// min u >= -q K-/(4pi) for nonpositive fields vanishing on the boundary.
double disk_min_bound(double Kp_minus, double p);

struct MidBoundCheck {
  double v1 = 0.0;
  double v2 = 0.0;
  double gap = 0.0;
  double bound_a = 0.0;  // K1 V(g0) / 8
  double bound_b = 0.0;  // K1 V(g) / 8, V(g) at its upper end
  bool holds = false;
};

/// Checks v2 - v1 <= K1 V / 8 when {u >= v2} and {u <= v1} both carry
/// noncontractible loops. Throws std::invalid_argument("hypothesis not met")
/// otherwise.
MidBoundCheck mid_bound_check(const ConformalTorusMetric& metric, const GeometryReport& r,
                              double v1, double v2);

/// Same, at the extreme levels returned by level_band.
MidBoundCheck mid_bound_check(const ConformalTorusMetric& metric, const GeometryReport& r);

struct LowerBound {
  std::string rule;
  double value = 0.0;
};

/// Every applicable Willmore lower bound, tagged li_yau, montiel_ros,
/// systole, direct_oscillation, q_bound_v, q_bound_y.
std::vector<LowerBound> willmore_lower_bounds(const GeometryReport& r);

double max_lower_bound(const std::vector<LowerBound>& bounds);

enum class CertificateStatus { Certified, Uncertified };
enum class CertificateRule {
  LiYauRegion,
  MontielRosRegion,
  SystoleBound,
  MainTheoremI,
  MainTheoremII,
  DirectOscillation,
  None
};

std::string_view to_string(CertificateStatus s);
std::string_view to_string(CertificateRule r);

struct Certificate {
  CertificateStatus status = CertificateStatus::Uncertified;
  CertificateRule rule = CertificateRule::None;
  double lower_bound = 0.0;
  std::map<std::string, double> witnesses;
  std::vector<LowerBound> lower_bounds;
};

/// Applies the rules in order LiYauRegion, MontielRosRegion, SystoleBound,
/// MainTheoremI, MainTheoremII, DirectOscillation and reports the first
/// that fires. Systole-dependent rules must hold for every V in the
/// measurement interval [V_g, V_upper].
Certificate certify(const GeometryReport& r);
Certificate certify(const ConformalTorusMetric& metric, double p,
                    const SystoleOptions& options = {});

void to_json(nlohmann::json& j, const LowerBound& b);
void to_json(nlohmann::json& j, const Certificate& c);

}  // namespace willmore
