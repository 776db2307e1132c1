#pragma once

// Generated by tests/oracles/generate.py (mpmath, numpy); do not edit.

namespace oracle {

inline constexpr double kF1_k2 = 0.5;
inline constexpr double kF1_k3 = 0.76051489553302859;
inline constexpr double kF1_k4 = 1.0;
inline constexpr double kF1_k6 = 1.76663875028545;
inline constexpr double kF1_k7p5 = 5.6428020336243076;
inline constexpr double kF_k6_x0p5 = 1.1129126745223054;
inline constexpr double kF_k2_x0p9 = 0.55;
inline constexpr double kF_k7p5_x0p3 = 1.084448456311806;
inline constexpr double kF_k3_x0p99 = 0.76523374987992214;
inline constexpr double kG_k6_x0p5 = 0.85269651125063942;
inline constexpr double kG_k3_x0p8 = -0.83565375218102442;
inline constexpr double kLogGamma_0p1 = 2.252712651734206;
inline constexpr double kLogGamma_7p3 = 7.147892523022249;
inline constexpr double kLogGamma_150 = 600.00947055532743;
inline constexpr double kJacobi_5_1p5_2_0p3 = 0.81871575317382812;
inline constexpr double kJacobi_7_0p33_4_m0p8 = -32.723755460346492;
inline constexpr double kJacobiNormSq_4_0p5_3 = 1.417773820292356;
inline constexpr double kGquad_sym_k6 = 0.71317412781265986;
inline constexpr double kGquad_asym_k6 = 0.6704519895582822;
inline constexpr double kGquad_asym_k3 = 0.28419666271945766;
inline constexpr double kGu_half_k6 = 0.71317412781265986;
inline constexpr double kZ_k6 = 2.0026679441061815;
inline constexpr double kZ_k6_midpoint2000 = 2.00266814981758;
inline constexpr double kZ_k4 = 4.0;
inline constexpr double kZ_k2 = 32.594932345220165;

}  // namespace oracle
