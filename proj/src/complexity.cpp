#include "ddest/complexity.hpp"

#include <cmath>
#include <cstdio>

namespace ddest {

ComplexityReport complexity_report(const SystemDims& dims, const WMusicConfig& wm,
                                   const MpConfig& mp, int p_tot,
                                   const ComplexityConstants& consts) {
    ComplexityReport rep;
    const double sub = static_cast<double>(wm.M_sub) * wm.N_sub;
    const double l_snap = wm.L_snap(dims);
    const double poly_len = 2.0 * wm.G + 1.0;

    rep.wmusic = {
        {"C_cov", l_snap * sub * sub},
        {"C_EVD", consts.evd_const * sub * sub * sub},
        {"C_spec", wm.Q_sample * wm.M_sub * sub * sub},
        {"C_WLS", wm.Q_sample * poly_len * poly_len + poly_len * poly_len * poly_len},
        {"C_root", consts.root_const * std::pow(2.0 * wm.G, 3.0)},
        {"C_delay", p_tot * wm.M_sub * sub * sub},
    };

    const double mn_p = static_cast<double>(mp.M_pencil) * mp.N_pencil;
    const double k_m = mp.K_M(dims);
    const double k_n = mp.K_N(dims);
    const double pencil_cols = k_m * (k_n - 1.0);  // X_left columns
    const double p = p_tot;
    rep.mp = {
        {"C_Hankel", mn_p * k_m * k_n},
        {"C_SVD", consts.svd_const * (mn_p * pencil_cols * pencil_cols +
                                      pencil_cols * pencil_cols * pencil_cols)},
        {"C_T", p * mn_p * pencil_cols + p * p * pencil_cols},
        {"C_EVD", p * p * p},
        {"C_proj", static_cast<double>(dims.M) * dims.N * p + dims.N * p * p + p * p * p},
    };

    for (const auto& s : rep.wmusic) rep.wmusic_total += s.cms;
    for (const auto& s : rep.mp) rep.mp_total += s.cms;
    rep.ratio = rep.mp_total > 0 ? rep.wmusic_total / rep.mp_total : 0.0;
    return rep;
}

std::string format_complexity_report(const ComplexityReport& report) {
    std::string out;
    char line[128];
    auto emit = [&](const char* name, double v) {
        std::snprintf(line, sizeof(line), "%-10s %12.3e\n", name, v);
        out += line;
    };
    out += "MU-W-MUSIC stages (complex multiplications):\n";
    for (const auto& s : report.wmusic) emit(s.name.c_str(), s.cms);
    emit("total", report.wmusic_total);
    out += "MU-MP stages (complex multiplications):\n";
    for (const auto& s : report.mp) emit(s.name.c_str(), s.cms);
    emit("total", report.mp_total);
    std::snprintf(line, sizeof(line), "ratio (W-MUSIC / MP): %.2f\n", report.ratio);
    out += line;
    return out;
}

}  // namespace ddest
