#ifndef QCHAOS_MODEL_HPP
#define QCHAOS_MODEL_HPP

#include <array>
#include <cmath>
#include <map>
#include <string>

#include "qchaos/errors.hpp"

namespace qchaos {

// Coefficients of the polynomial potential family
//   V(x,y) = v0 + v11 xy + v2 (x^2+y^2) + v22 x^2 y^2 + v13 (x y^3 + x^3 y)
//          + v4 (x^4 + y^4) + v24 (x^2 y^4 + x^4 y^2) + v44 x^4 y^4
// Units: hbar = 1, lengths and times dimensionless, coefficients in energy units.
struct PotentialCoeffs {
    double v0 = 0.0;
    double v11 = 0.0;
    double v2 = 0.0;
    double v22 = 0.0;
    double v13 = 0.0;
    double v4 = 0.0;
    double v24 = 0.0;
    double v44 = 0.0;

    bool finite() const {
        for (double c : {v0, v11, v2, v22, v13, v4, v24, v44})
            if (!std::isfinite(c)) return false;
        return true;
    }
};

// Coupled-oscillator instance: v2 (x^2+y^2) + v22 x^2 y^2, everything else zero.
inline PotentialCoeffs coupled_oscillator(double v2, double v22) {
    if (!(v2 > 0.0) || v22 < 0.0)
        throw config_error("coupled oscillator needs v2 > 0 and v22 >= 0");
    PotentialCoeffs c;
    c.v2 = v2;
    c.v22 = v22;
    return c;
}

// One action: mass, log of the amplitude normalization, and the potential.
struct ActionParams {
    double mass = 1.0;
    double log_norm = 0.0;
    PotentialCoeffs coeffs;

    void validate() const {
        if (!(mass > 0.0)) throw config_error("action mass must be positive");
        if (!coeffs.finite() || !std::isfinite(log_norm))
            throw config_error("action parameters must be finite");
    }
};

// One point of 2-D phase space.
struct PhaseState {
    double x = 0.0, y = 0.0;
    double px = 0.0, py = 0.0;
    double t = 0.0;

    bool finite() const {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(px) &&
               std::isfinite(py) && std::isfinite(t);
    }
};

inline double eval_potential(const PotentialCoeffs& c, double x, double y) {
    const double x2 = x * x, y2 = y * y;
    const double x4 = x2 * x2, y4 = y2 * y2;
    return c.v0 + c.v11 * x * y + c.v2 * (x2 + y2) + c.v22 * x2 * y2 +
           c.v13 * (x * y * y2 + x * x2 * y) + c.v4 * (x4 + y4) +
           c.v24 * (x2 * y4 + x4 * y2) + c.v44 * x4 * y4;
}

inline std::array<double, 2> grad_potential(const PotentialCoeffs& c, double x, double y) {
    const double x2 = x * x, y2 = y * y;
    const double x3 = x2 * x, y3 = y2 * y;
    const double x4 = x2 * x2, y4 = y2 * y2;
    const double gx = c.v11 * y + 2.0 * c.v2 * x + 2.0 * c.v22 * x * y2 +
                      c.v13 * (y3 + 3.0 * x2 * y) + 4.0 * c.v4 * x3 +
                      c.v24 * (2.0 * x * y4 + 4.0 * x3 * y2) + 4.0 * c.v44 * x3 * y4;
    const double gy = c.v11 * x + 2.0 * c.v2 * y + 2.0 * c.v22 * x2 * y +
                      c.v13 * (3.0 * x * y2 + x3) + 4.0 * c.v4 * y3 +
                      c.v24 * (4.0 * x2 * y3 + 2.0 * x4 * y) + 4.0 * c.v44 * x4 * y3;
    return {gx, gy};
}

// Symmetric second-derivative matrix {Vxx, Vxy, Vyy}.
struct Hessian2 {
    double xx = 0.0, xy = 0.0, yy = 0.0;
};

inline Hessian2 hessian_potential(const PotentialCoeffs& c, double x, double y) {
    const double x2 = x * x, y2 = y * y;
    const double x3 = x2 * x, y3 = y2 * y;
    const double x4 = x2 * x2, y4 = y2 * y2;
    Hessian2 h;
    h.xx = 2.0 * c.v2 + 2.0 * c.v22 * y2 + 6.0 * c.v13 * x * y + 12.0 * c.v4 * x2 +
           c.v24 * (2.0 * y4 + 12.0 * x2 * y2) + 12.0 * c.v44 * x2 * y4;
    h.yy = 2.0 * c.v2 + 2.0 * c.v22 * x2 + 6.0 * c.v13 * x * y + 12.0 * c.v4 * y2 +
           c.v24 * (12.0 * x2 * y2 + 2.0 * x4) + 12.0 * c.v44 * x4 * y2;
    h.xy = c.v11 + 4.0 * c.v22 * x * y + 3.0 * c.v13 * (x2 + y2) +
           c.v24 * (8.0 * x * y3 + 8.0 * x3 * y) + 16.0 * c.v44 * x3 * y3;
    return h;
}

// Flat key-value form used by the config file and fit artifacts.
inline std::map<std::string, double> action_to_kv(const ActionParams& p) {
    return {{"v0", p.coeffs.v0},   {"v11", p.coeffs.v11}, {"v2", p.coeffs.v2},
            {"v22", p.coeffs.v22}, {"v13", p.coeffs.v13}, {"v4", p.coeffs.v4},
            {"v24", p.coeffs.v24}, {"v44", p.coeffs.v44}, {"mass", p.mass},
            {"log_norm", p.log_norm}};
}

inline ActionParams action_from_kv(const std::map<std::string, double>& kv) {
    ActionParams p;
    auto get = [&](const std::string& k, double fallback) {
        auto it = kv.find(k);
        return it == kv.end() ? fallback : it->second;
    };
    p.mass = get("mass", 1.0);
    p.log_norm = get("log_norm", 0.0);
    p.coeffs.v0 = get("v0", 0.0);
    p.coeffs.v11 = get("v11", 0.0);
    p.coeffs.v2 = get("v2", 0.0);
    p.coeffs.v22 = get("v22", 0.0);
    p.coeffs.v13 = get("v13", 0.0);
    p.coeffs.v4 = get("v4", 0.0);
    p.coeffs.v24 = get("v24", 0.0);
    p.coeffs.v44 = get("v44", 0.0);
    p.validate();
    return p;
}

} // namespace qchaos

#endif
