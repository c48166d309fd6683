#pragma once

#include <complex>

namespace dbarrier {

using cplx = std::complex<double>;
using BranchIndex = int;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

}  // namespace dbarrier
