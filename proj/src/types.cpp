#include "ddest/types.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ddest {

void SystemDims::validate() const {
    if (M < 2) throw std::invalid_argument("SystemDims: M >= 2 violated");
    if (N < 2) throw std::invalid_argument("SystemDims: N >= 2 violated");
    if (!(ell_max >= 1.0 && ell_max < M))
        throw std::invalid_argument("SystemDims: 1 <= ell_max < M violated");
    if (!(kappa_max > 0.0 && kappa_max < N / 2.0))
        throw std::invalid_argument("SystemDims: 0 < kappa_max < N/2 violated");
}

void DDPath::validate(const SystemDims& dims) const {
    if (!(delay >= 0.0 && delay <= dims.ell_max - 1.0))
        throw std::invalid_argument("DDPath: delay in [0, ell_max-1] violated");
    if (!(std::abs(doppler) <= dims.kappa_max / 2.0))
        throw std::invalid_argument("DDPath: doppler in [-kappa_max/2, kappa_max/2] violated");
    if (!std::isfinite(gain.real()) || !std::isfinite(gain.imag()))
        throw std::invalid_argument("DDPath: |gain| finite violated");
}

void PilotConfig::validate(const SystemDims& dims) const {
    if (M_ZC < 1) throw std::invalid_argument("PilotConfig: M_ZC >= 1 violated");
    if (M_CP < 0) throw std::invalid_argument("PilotConfig: M_CP >= 0 violated");
    if (M_CP < static_cast<int>(std::ceil(dims.ell_max)))
        throw std::invalid_argument("PilotConfig: M_CP >= ceil(ell_max) violated");
    if (M_PCP() >= dims.M)
        throw std::invalid_argument("PilotConfig: M_PCP < M violated");
    if (zc_root < 1 || std::gcd(zc_root, M_ZC) != 1)
        throw std::invalid_argument("PilotConfig: gcd(zc_root, M_ZC) = 1 violated");
    if (Q < 1) throw std::invalid_argument("PilotConfig: Q >= 1 violated");
    const int capacity = static_cast<int>(std::floor(dims.N / (2.0 * dims.kappa_max + 1.0)));
    if (Q > capacity)
        throw std::invalid_argument("PilotConfig: Q <= floor(N/(2*kappa_max+1)) violated");
}

int Scenario::total_paths() const {
    int p = 0;
    for (const auto& u : users) p += static_cast<int>(u.size());
    return p;
}

void Scenario::validate() const {
    dims.validate();
    pilot.validate(dims);
    if (static_cast<int>(users.size()) != pilot.Q)
        throw std::invalid_argument("Scenario: one path list per user violated");
    for (const auto& u : users) {
        if (u.empty()) throw std::invalid_argument("Scenario: P_q >= 1 violated");
        for (const auto& p : u) p.validate(dims);
    }
}

void EstimatorFlags::merge(const EstimatorFlags& o) {
    root_shortfall |= o.root_shortfall;
    separation_relaxed |= o.separation_relaxed;
    clustered_poles |= o.clustered_poles;
    ill_conditioned |= o.ill_conditioned;
    delay_root_fallback |= o.delay_root_fallback;
    rank_deficient |= o.rank_deficient;
    unassigned_dopplers.insert(unassigned_dopplers.end(), o.unassigned_dopplers.begin(),
                               o.unassigned_dopplers.end());
}

std::vector<std::string> EstimatorFlags::notes() const {
    std::vector<std::string> out;
    if (root_shortfall) out.push_back("root_shortfall");
    if (separation_relaxed) out.push_back("separation_relaxed");
    if (clustered_poles) out.push_back("clustered_poles");
    if (ill_conditioned) out.push_back("ill_conditioned");
    if (delay_root_fallback) out.push_back("delay_root_fallback");
    if (rank_deficient) out.push_back("rank_deficient");
    if (!unassigned_dopplers.empty())
        out.push_back("unassigned_dopplers:" + std::to_string(unassigned_dopplers.size()));
    return out;
}

double wrap_to_period(double x, double period) {
    double r = x - period * std::floor(x / period);
    if (r >= period) r -= period;  // guard against floor rounding at the edge
    if (r < 0) r += period;
    return r;
}

double wrap_to_centered(double x, double period) {
    double r = x - period * std::round(x / period);
    if (r <= -period / 2) r += period;
    if (r > period / 2) r -= period;
    return r;
}

}  // namespace ddest
