#pragma once

#include <array>
#include <cstddef>

namespace flockopt {

// The 12 controller decision variables.
struct FlockParams {
    double r0_rep = 33.69;   // repulsion cutoff distance [m]
    double p_rep = 0.023;    // repulsion gain [1/s]
    double r0_frict = 59.26; // alignment cutoff distance [m]
    double a_frict = 5.38;   // decay curve acceleration [m/s^2]
    double p_frict = 4.62;   // decay curve slope [1/s]
    double v_frict = 1.73;   // alignment velocity slack [m/s]
    double c_frict = 0.035;  // alignment gain
    double r0_shill = -2.45; // wall offset for shill decay [m]
    double v_shill = 12.93;  // shill agent speed [m/s]
    double a_shill = 4.84;   // shill decay acceleration [m/s^2]
    double p_shill = 4.83;   // shill decay slope [1/s]
    double c_shill = 0.55;   // shill alignment gain, in [0,1]

    static constexpr std::size_t kDim = 12;

    std::array<double, kDim> to_array() const {
        return {r0_rep, p_rep, r0_frict, a_frict, p_frict, v_frict,
                c_frict, r0_shill, v_shill, a_shill, p_shill, c_shill};
    }

    static FlockParams from_array(const std::array<double, kDim>& a) {
        FlockParams p;
        p.r0_rep = a[0];
        p.p_rep = a[1];
        p.r0_frict = a[2];
        p.a_frict = a[3];
        p.p_frict = a[4];
        p.v_frict = a[5];
        p.c_frict = a[6];
        p.r0_shill = a[7];
        p.v_shill = a[8];
        p.a_shill = a[9];
        p.p_shill = a[10];
        p.c_shill = a[11];
        return p;
    }
};

// Box constraints on the decision variables.
struct ParamBounds {
    std::array<double, FlockParams::kDim> lower{30.8, 0.02, 58.5, 5.04, 0.38, 0.3,
                                                0.03, -10.0, 10.0, 1.54, 0.48, 0.3};
    std::array<double, FlockParams::kDim> upper{51.0, 0.10, 100.0, 10.0, 9.67, 2.7,
                                                0.22, 0.0, 15.0, 6.55, 9.96, 1.0};

    bool contains(const std::array<double, FlockParams::kDim>& g) const {
        for (std::size_t i = 0; i < FlockParams::kDim; ++i)
            if (g[i] < lower[i] || g[i] > upper[i]) return false;
        return true;
    }
};

inline const char* const kParamNames[FlockParams::kDim] = {
    "r0_rep", "p_rep",    "r0_frict", "a_frict", "p_frict", "v_frict",
    "c_frict", "r0_shill", "v_shill",  "a_shill", "p_shill", "c_shill"};

}  // namespace flockopt
