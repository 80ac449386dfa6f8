#pragma once

#include <string>
#include <vector>

#include "ddest/matrix_pencil.hpp"
#include "ddest/types.hpp"
#include "ddest/wmusic.hpp"

namespace ddest {

/// Cubic-term constants of the closed-form complex-multiplication counts.
/// The defaults are unit constants; `root_const` multiplies the (2G)^3
/// companion-eigenvalue model (0.125 reproduces the published count).
struct ComplexityConstants {
    double evd_const = 1.0;
    double svd_const = 1.0;
    double root_const = 1.0;
};

struct StageCount {
    std::string name;
    double cms;  // complex multiplications
};

struct ComplexityReport {
    std::vector<StageCount> wmusic;
    std::vector<StageCount> mp;
    double wmusic_total = 0;
    double mp_total = 0;
    double ratio = 0;  // wmusic_total / mp_total
};

/// Closed-form per-stage complex-multiplication counts for both estimators.
ComplexityReport complexity_report(const SystemDims& dims, const WMusicConfig& wm,
                                   const MpConfig& mp, int p_tot,
                                   const ComplexityConstants& consts = {});

std::string format_complexity_report(const ComplexityReport& report);

}  // namespace ddest
