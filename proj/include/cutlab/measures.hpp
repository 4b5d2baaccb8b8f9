#pragma once

#include <array>
#include <optional>
#include <string>

#include "cutlab/alt_optima.hpp"
#include "cutlab/model.hpp"

namespace cutlab {

class MeasureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The reference point coincides with the LP optimum; no direction exists.
class DegenerateDirectionError : public MeasureError {
public:
    using MeasureError::MeasureError;
};

/// The cut hyperplane is parallel to the scoring direction.
class ParallelDirectionError : public MeasureError {
public:
    using MeasureError::MeasureError;
};

enum class MeasureKind { Eff, Dcd, ExpImprov, AEff, ADcd, AppADcd, AvgEff, MinEff };

inline constexpr std::array<MeasureKind, 8> kAllMeasures = {
    MeasureKind::Eff,    MeasureKind::Dcd,     MeasureKind::ExpImprov,
    MeasureKind::AEff,   MeasureKind::ADcd,    MeasureKind::AppADcd,
    MeasureKind::AvgEff, MeasureKind::MinEff};

std::string measure_name(MeasureKind kind);
MeasureKind measure_from_name(const std::string& name);  // throws MeasureError

/// Everything a measure may need, assembled per separation round.
struct ScoringContext {
    Vec x_lp;
    std::optional<Incumbent> incumbent;     // dcd
    std::optional<CenterPoint> x_face;      // a-eff
    std::optional<CenterPoint> x_center;    // a-dcd
    std::optional<CenterPoint> cached_center;  // app-a-dcd
    bool cache_valid = false;
    std::optional<OptimaSet> optima;        // avgeff / mineff
    Vec objective;                          // exp-improv
};

/// Signed Euclidean distance of x_lp to the cut hyperplane.
double score_eff(const Cut& cut, const Vec& x_lp);

/// Length of the segment of [x_lp, ray toward incumbent] cut off.
double score_dcd(const Cut& cut, const Vec& x_lp, const Incumbent& incumbent);

/// ||c|| cos(alpha, c) eff(alpha, beta, x_lp).
double score_exp_improv(const Cut& cut, const Vec& x_lp, const Vec& c);

double score_a_eff(const Cut& cut, const CenterPoint& x_face);

double score_a_dcd(const Cut& cut, const Vec& x_lp, const CenterPoint& x_center);

/// Re-uses the analytic center from the previous round. Returns nullopt (the
/// CacheInvalid signal) when the cached center is separated by some current
/// cut; the pipeline then recomputes a fresh center and updates the cache.
std::optional<double> score_app_a_dcd(const Cut& cut, const Vec& x_lp,
                                      const CenterPoint& cached_center,
                                      const std::vector<Cut>& current_cuts,
                                      double feas_tol = 1e-6);

double score_avgeff(const Cut& cut, const OptimaSet& optima);
double score_mineff(const Cut& cut, const OptimaSet& optima);

int density(const Cut& cut, double zero_tol = 1e-9);
double relative_density(const Cut& cut, int n, double zero_tol = 1e-9);

}  // namespace cutlab
