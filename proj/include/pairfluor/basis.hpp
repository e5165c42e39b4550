#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <string_view>

namespace pairfluor {

using cplx = std::complex<double>;
using Mat4 = Eigen::Matrix<cplx, 4, 4>;
using Mat16 = Eigen::Matrix<cplx, 16, 16>;
using Vec16 = Eigen::Matrix<cplx, 16, 1>;
using Mat15 = Eigen::Matrix<cplx, 15, 15>;
using Vec15 = Eigen::Matrix<cplx, 15, 1>;

inline constexpr int kMoments = 15;

// Bare basis |n1 n2> in the order |00>, |10>, |01>, |11>; index = n1 + 2*n2.
inline constexpr std::array<std::string_view, 4> kBasisLabels = {"00", "10", "01", "11"};

// Lowering operators of emitter 1 and emitter 2.
Mat4 lowering1();
Mat4 lowering2();

// Moment index table shared by the one-time and two-time systems.
namespace moment {
inline constexpr int s1 = 0;          // <s1>
inline constexpr int s2 = 1;          // <s2>
inline constexpr int s1d = 2;         // <s1+>
inline constexpr int s2d = 3;         // <s2+>
inline constexpr int n1 = 4;          // <s1+ s1>
inline constexpr int n2 = 5;          // <s2+ s2>
inline constexpr int s1s2 = 6;        // <s1 s2>
inline constexpr int s1ds2d = 7;      // <s1+ s2+>
inline constexpr int s1ds2 = 8;       // <s1+ s2>
inline constexpr int s1s2d = 9;       // <s1 s2+>
inline constexpr int n1s2 = 10;       // <s1+ s1 s2>
inline constexpr int s1n2 = 11;       // <s1 s2+ s2>
inline constexpr int n1s2d = 12;      // <s1+ s1 s2+>
inline constexpr int s1dn2 = 13;      // <s1+ s2+ s2>
inline constexpr int nx = 14;         // <s1+ s1 s2+ s2>
}  // namespace moment

inline constexpr std::array<std::string_view, kMoments> kMomentLabels = {
    "s1",        "s2",        "s1+",        "s2+",        "s1+s1",
    "s2+s2",     "s1s2",      "s1+s2+",     "s1+s2",      "s1s2+",
    "s1+s1s2",   "s1s2+s2",   "s1+s1s2+",   "s1+s2+s2",   "s1+s1s2+s2"};

// Operator whose expectation value is moment k.
Mat4 moment_operator(int k);
const std::array<Mat4, kMoments>& moment_operators();

}  // namespace pairfluor
