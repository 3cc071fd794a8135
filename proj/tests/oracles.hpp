#pragma once
// Generated by tests/oracles/generate.py. Do not edit by hand.

#include <array>
#include <complex>

namespace oracle {

using C = std::complex<double>;

// Profile solutions (collocation, 64 points): a, k, c, w_0, w_2, w_3.
struct ProfilePoint { double a, k, c, w0, w2, w3; };
inline constexpr std::array<ProfilePoint, 5> profiles{{
    {0.01, 1, 1.0104323080371369, -0.00074393783829791705, 2.4999687505859292e-05, 9.3748242220481476e-08},
    {0.02, 1, 1.0409701170054084, -0.0029077114447601526, 9.999500037496809e-05, 7.4994375421821794e-07},
    {0.050000000000000003, 1, 1.2320330386663523, -0.016009601521341968, 0.00062480477900513217, 1.1713259409652375e-05},
    {0.050000000000000003, 2, 16.259881379068894, -0.0046288653191486114, 0.00015624694833159169, 7.3240041795623233e-07},
    {0.02, 0.5, 0.095627952954527751, -0.0087906054648079282, 0.00039968038348871574, 1.1985617259289027e-05},
}};

// Low-lying Bloch eigenvalues (|lambda| < cutoff) by collocation; sorted by Im.
// a = 0.02, k = 1, xi = 0.1, cutoff 40
inline const std::array<C, 5> bloch_a002_xi01{{
    {3.3248455920145366e-10, -39.060460975017868},
    {4.228233983856969e-10, -0.5264121804963402},
    {1.9717590611081536e-10, -0.31118245489564017},
    {2.7677565801484175e-10, 0.10314065640617456},
    {9.9223253609800822e-11, 23.084001758940303},
}};
// a = 0.05, k = 1, xi = 0.3, cutoff 40
inline const std::array<C, 4> bloch_a005_xi03{{
    {5.579230601035519e-10, -2.6660151923190942},
    {-1.0894982639327762e-10, -0.58430178931139554},
    {-4.6469291286986371e-11, 0.3440541338123555},
    {6.4664564817817109e-10, 13.31133900017249},
}};
// a = 0.04, k = 1, xi = 0.08, cutoff 2
inline const std::array<C, 3> bloch_a004_xi008{{
    {-5.274676352230795e-10, -0.4391016009445145},
    {-1.2093945163785851e-10, -0.2632929444117223},
    {3.3084993070580685e-10, 0.089254859376721257},
}};

// Closed-form cubic: det(B - lambda I) and the listed polynomial, coefficients
// of lambda^2, lambda, 1; discriminant of the real cubic by sympy vs the closed form.
struct CubicPoint { double a, xi, k; std::array<C, 3> charpoly, listed; double disc_sympy, disc_closed; };
inline const std::array<CubicPoint, 3> cubics{{
    {0.029999999999999999, 0.070000000000000007, 1, {{{0, -0.48999999999999999}, {0.036468250000000001, 0}, {0, -0.00494949}}}, {{{0, -0.48999999999999999}, {0.036468250000000001, 0}, {0, -0.00494949}}}, 0.00020109134785690518, 0.00020109134785690518},
    {0.01, 0.050000000000000003, 2, {{{0, -5.5999999999999996}, {4.9596999999999998, 0}, {0, -8.0601599999999998}}}, {{{0, -5.5999999999999996}, {4.9596999999999998, 0}, {0, -8.0601599999999998}}}, 161.71272737290801, 161.71272737290801},
    {0.050000000000000003, 0.02, 0.5, {{{0, -0.0087500000000000008}, {7.7500000000000003e-06, 0}, {0, 6.2578124999999996e-08}}}, {{{0, -0.0087500000000000008}, {7.7500000000000003e-06, 0}, {0, 6.2578124999999996e-08}}}, -1.9430138452148438e-13, -1.9430138452148438e-13},
}};

// Time evolution, N = 16, a = 0.02, k = 1, perturbed by 1e-3 (cos 2z + sin 3z);
// integrating factor + DOP853 (rtol 1e-13) to T = 0.2. Modes -N..N.
inline constexpr int evolve_N = 16;
inline constexpr double evolve_a = 0.02, evolve_k = 1, evolve_c = 1.0409701170054084, evolve_T = 0.20000000000000001;
inline const std::array<C, 33> evolve_u0{{
    {0, 2.1684043449710089e-19},
    {-1.0842021724855044e-19, 6.9370360558596294e-19},
    {-5.5904174518783822e-20, 9.4867690092481638e-20},
    {-2.8455013071824152e-20, -2.1858396583142064e-19},
    {2.9654269863661188e-20, 1.2812717495716691e-19},
    {1.1630159412495569e-19, 5.0315576903433564e-20},
    {1.7194768829262297e-19, -2.1175823681357508e-20},
    {1.3552527156068805e-19, -1.6077247782522673e-20},
    {6.4183125838673235e-18, -5.4210108624275222e-20},
    {1.0932916424849219e-15, -1.1479753167592125e-19},
    {1.8747183500737469e-13, 1.6454806666667674e-20},
    {3.1246093938067168e-11, -1.149977423567213e-19},
    {4.9995000437531837e-09, 1.0486453113690659e-19},
    {7.4994375421821804e-07, 0.00050000000000000012},
    {0.00059999500037496815, 1.4016720755632477e-19},
    {0.010000000000000002, 1.527315051406667e-18},
    {-0.0029077114447601526, 0},
    {0.010000000000000002, -1.4204906307607708e-18},
    {0.00059999500037496815, -1.4738373282224826e-19},
    {7.4994375421821794e-07, -0.00050000000000000012},
    {4.9995000437531829e-09, -1.0486494327700925e-19},
    {3.1246093938052653e-11, 1.1500771824998075e-19},
    {1.8747183625232372e-13, -1.6093625997831706e-20},
    {1.0936076263318162e-15, 2.0076318671457821e-19},
    {6.4183125838673235e-18, 5.4210108624275222e-20},
    {-8.1315162936412833e-20, 1.9186115166075359e-19},
    {1.7357727935568853e-19, 2.1175823681357508e-20},
    {1.163090065791032e-19, -5.0275532276758027e-20},
    {2.9654350350857585e-20, -1.28126788703326e-19},
    {-2.8456470216209228e-20, 2.185832647783572e-19},
    {-5.592483078739659e-20, -8.6758541288774602e-20},
    {-5.6070305465172876e-19, -2.956308768070599e-19},
    {0, -2.1684043449710089e-19},
}};
inline const std::array<C, 33> evolve_uT{{
    {5.4171462998201549e-13, -5.3262786080471303e-13},
    {7.2067771717380407e-14, 3.106882724643064e-14},
    {-4.8998317043359537e-15, 4.0034262429549136e-14},
    {-5.9948331732609408e-14, -3.2313692824152172e-13},
    {-2.5066924033207743e-14, 4.5153200871743725e-14},
    {-8.536824387728926e-15, 1.7605347635707644e-16},
    {1.3317627917477989e-16, -3.8656464977193711e-14},
    {-8.8753895050812697e-13, -1.4550777130779886e-12},
    {7.7934940569933473e-12, -2.3398146497388793e-12},
    {1.571134326220473e-10, -1.3851695651161783e-10},
    {-2.8222617027717828e-09, -4.1376343431388864e-08},
    {9.7618667053080622e-08, 4.6508570644547695e-08},
    {2.3773438743960334e-06, 1.8841508932453951e-06},
    {0.00045107809423637624, -0.00022880444012842032},
    {0.00058209459404018511, -0.00010346230661035999},
    {0.010000054582855689, 3.1972407013058952e-06},
    {-0.0029077114447601526, 0},
    {0.010000054582855689, -3.1972407013058138e-06},
    {0.0005820945940401849, 0.00010346230661036005},
    {0.00045107809423637624, 0.00022880444012842032},
    {2.3773438743960356e-06, -1.884150893245393e-06},
    {9.76186670530818e-08, -4.6508570644547331e-08},
    {-2.8222617027719809e-09, 4.137634343138758e-08},
    {1.5711343254338645e-10, 1.3851695681979113e-10},
    {7.7934940505014852e-12, 2.339814677464454e-12},
    {-8.8753872200944001e-13, 1.4550778707617068e-12},
    {1.3322725711770309e-16, 3.8656435410281559e-14},
    {-8.5368210873209703e-15, -1.7606044077293293e-16},
    {-2.5066924032829815e-14, -4.5153200871630407e-14},
    {-5.9948339008582556e-14, 3.2313691876376774e-13},
    {-4.8998198570557629e-15, -4.0034252644367354e-14},
    {7.2067870387545597e-14, -3.1068238803097783e-14},
    {5.4171464255565194e-13, 5.3262781504442894e-13},
}};

// 64-bit FNV-1a reference vectors.
inline constexpr unsigned long long fnv_empty = 0xcbf29ce484222325ULL;
inline constexpr unsigned long long fnv_a = 0xaf63dc4c8601ec8cULL;
inline constexpr unsigned long long fnv_foobar = 0x85944171f73967e8ULL;

} // namespace oracle
