#include "cutlab/measures.hpp"

#include <cmath>

namespace cutlab {

namespace {
constexpr double kZeroTol = 1e-9;

double checked_norm(const Vec& alpha) {
    const double na = norm2(alpha);
    if (na <= kZeroTol) throw MeasureError("cut coefficient vector is zero");
    return na;
}

double directed_distance(const Cut& cut, const Vec& x_from, const Vec& target) {
    const Vec diff = sub(target, x_from);
    const double len = norm2(diff);
    if (len <= kZeroTol)
        throw DegenerateDirectionError("direction target coincides with the reference point");
    const double ay = dot(cut.coeffs, diff) / len;
    if (std::abs(ay) <= kZeroTol)
        throw ParallelDirectionError("cut hyperplane is parallel to the scoring direction");
    return violation(cut, x_from) / std::abs(ay);
}
}  // namespace

std::string measure_name(MeasureKind kind) {
    switch (kind) {
        case MeasureKind::Eff: return "eff";
        case MeasureKind::Dcd: return "dcd";
        case MeasureKind::ExpImprov: return "exp-improv";
        case MeasureKind::AEff: return "a-eff";
        case MeasureKind::ADcd: return "a-dcd";
        case MeasureKind::AppADcd: return "app-a-dcd";
        case MeasureKind::AvgEff: return "avgeff";
        case MeasureKind::MinEff: return "mineff";
    }
    throw MeasureError("unknown measure kind");
}

MeasureKind measure_from_name(const std::string& name) {
    for (MeasureKind k : kAllMeasures)
        if (measure_name(k) == name) return k;
    throw MeasureError("unknown measure name '" + name + "'");
}

double score_eff(const Cut& cut, const Vec& x_lp) {
    return violation(cut, x_lp) / checked_norm(cut.coeffs);
}

double score_dcd(const Cut& cut, const Vec& x_lp, const Incumbent& incumbent) {
    return directed_distance(cut, x_lp, incumbent.point);
}

double score_exp_improv(const Cut& cut, const Vec& x_lp, const Vec& c) {
    const double na = checked_norm(cut.coeffs);
    if (norm2(c) <= kZeroTol) throw MeasureError("objective vector is zero");
    return (dot(cut.coeffs, c) / na) * score_eff(cut, x_lp);
}

double score_a_eff(const Cut& cut, const CenterPoint& x_face) {
    return score_eff(cut, x_face.point);
}

double score_a_dcd(const Cut& cut, const Vec& x_lp, const CenterPoint& x_center) {
    return directed_distance(cut, x_lp, x_center.point);
}

std::optional<double> score_app_a_dcd(const Cut& cut, const Vec& x_lp,
                                      const CenterPoint& cached_center,
                                      const std::vector<Cut>& current_cuts, double feas_tol) {
    for (const Cut& c : current_cuts)
        if (violation(c, cached_center.point) > feas_tol) return std::nullopt;  // CacheInvalid
    return directed_distance(cut, x_lp, cached_center.point);
}

double score_avgeff(const Cut& cut, const OptimaSet& optima) {
    if (optima.points.empty()) throw MeasureError("avgeff: empty optima set");
    double s = 0.0;
    for (const Vec& x : optima.points) s += score_eff(cut, x);
    return s / static_cast<double>(optima.points.size());
}

double score_mineff(const Cut& cut, const OptimaSet& optima) {
    if (optima.points.empty()) throw MeasureError("mineff: empty optima set");
    double mn = kInf;
    for (const Vec& x : optima.points) mn = std::min(mn, score_eff(cut, x));
    return mn;
}

int density(const Cut& cut, double zero_tol) {
    int cnt = 0;
    for (double a : cut.coeffs)
        if (std::abs(a) > zero_tol) ++cnt;
    return cnt;
}

double relative_density(const Cut& cut, int n, double zero_tol) {
    return static_cast<double>(density(cut, zero_tol)) / static_cast<double>(n);
}

}  // namespace cutlab
